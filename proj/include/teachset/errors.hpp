#pragma once

#include <stdexcept>
#include <string>

namespace teachset {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// geometry
struct EmptyDataset : Error { using Error::Error; };
struct RaggedRows : Error { using Error::Error; };
struct NonFiniteInput : Error { using Error::Error; };
struct PointOutsideBall : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };

// density / surrogate
struct MetricMismatch : Error { using Error::Error; };
struct NPrimeOutOfRange : Error { using Error::Error; };

// halving
struct EtaNonPositive : Error { using Error::Error; };
struct AlreadySelected : Error { using Error::Error; };
struct KOutOfRange : Error { using Error::Error; };
struct TooSmallToHalve : Error { using Error::Error; };
struct TooManyHalvings : Error { using Error::Error; };

// teaching
struct TargetTooLarge : Error { using Error::Error; };
struct KExceedsPool : Error { using Error::Error; };
struct BadConfig : Error { using Error::Error; };

// eval
struct LengthMismatch : Error { using Error::Error; };
struct NoLabels : Error { using Error::Error; };
struct EmptyTraining : Error { using Error::Error; };
struct ProbBelowFloor : Error { using Error::Error; };
struct EpsilonOutOfRange : Error { using Error::Error; };

// io
struct IoError : Error { using Error::Error; };
struct ParseError : Error {
  ParseError(std::size_t row, std::size_t col, const std::string& what_arg)
      : Error("row " + std::to_string(row) + ", col " + std::to_string(col) + ": " + what_arg),
        row(row), col(col) {}
  std::size_t row = 0;
  std::size_t col = 0;
};
struct NonNumericCell : ParseError {
  using ParseError::ParseError;
};
struct MalformedLine : Error {
  MalformedLine(std::size_t line_no, const std::string& what_arg)
      : Error("line " + std::to_string(line_no) + ": " + what_arg), line_no(line_no) {}
  std::size_t line_no = 0;
};

}  // namespace teachset
