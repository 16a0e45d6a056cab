#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "teachset/io.hpp"
#include "teachset/report.hpp"

using namespace teachset;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content, const std::string& name) {
    path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

std::string serialize_full_precision(const RawTable& t) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (std::size_t j = 0; j < t.rows[i].size(); ++j) {
      if (j) out << ',';
      out << t.rows[i][j];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

TEST_CASE("parse_csv: plain numeric grid") {
  TempFile f("0.1,0.2\n0.3,0.4\n", "teachset_csv_plain.csv");
  const RawTable t = parse_csv(f.path);
  REQUIRE(t.n() == 2);
  REQUIRE(t.dim() == 2);
  CHECK(t.rows[0][0] == 0.1);
  CHECK(t.rows[1][1] == 0.4);
  CHECK(t.header.empty());
  CHECK_FALSE(t.labels.has_value());
}

TEST_CASE("parse_csv: header auto-detection plus label column") {
  TempFile f("x1,x2,y\n0.5,1.5,0\n0.25,2.5,1\n", "teachset_csv_labeled.csv");
  CsvOptions opts;
  opts.label_column = 2;
  const RawTable t = parse_csv(f.path, opts);
  REQUIRE(t.n() == 2);
  CHECK(t.dim() == 2);
  CHECK(t.header == std::vector<std::string>{"x1", "x2", "y"});
  REQUIRE(t.labels.has_value());
  CHECK(*t.labels == std::vector<int>{0, 1});
}

TEST_CASE("parse_csv: error contracts carry coordinates") {
  TempFile bad_cell("1.0,2.0\n3.0,abc\n", "teachset_csv_badcell.csv");
  CHECK_THROWS_AS(parse_csv(bad_cell.path), ParseError);
  try {
    parse_csv(bad_cell.path);
  } catch (const ParseError& e) {
    CHECK(e.row == 1);
    CHECK(e.col == 1);
  }

  TempFile ragged("1.0,2.0\n3.0\n", "teachset_csv_ragged.csv");
  CHECK_THROWS_AS(parse_csv(ragged.path), ParseError);

  TempFile fractional_label("1.0,0.5\n", "teachset_csv_fraclabel.csv");
  CsvOptions opts;
  opts.label_column = 1;
  CHECK_THROWS_AS(parse_csv(fractional_label.path, opts), ParseError);

  CHECK_THROWS_AS(parse_csv("/nonexistent/teachset.csv"), IoError);
}

TEST_CASE("parse_csv: explicit delimiter and forced header") {
  TempFile f("1.0;2.0\n3.0;4.0\n", "teachset_csv_semi.csv");
  CsvOptions opts;
  opts.delimiter = ';';
  opts.header = false;
  const RawTable t = parse_csv(f.path, opts);
  CHECK(t.n() == 2);
  CHECK(t.rows[1][0] == 3.0);
}

TEST_CASE("parse_libsvm: densification and label mapping") {
  TempFile f("+1 1:0.5 3:0.2\n", "teachset_libsvm_a.txt");
  const RawTable t = parse_libsvm(f.path);
  REQUIRE(t.n() == 1);
  CHECK(t.rows[0] == std::vector<double>{0.5, 0.0, 0.2});
  CHECK(*t.labels == std::vector<int>{1});

  TempFile g("-1 2:1\n+1 4:1\n", "teachset_libsvm_b.txt");
  const RawTable u = parse_libsvm(g.path);
  REQUIRE(u.n() == 2);
  CHECK(u.dim() == 4);
  CHECK(u.rows[0] == std::vector<double>{0.0, 1.0, 0.0, 0.0});
  CHECK(u.rows[1] == std::vector<double>{0.0, 0.0, 0.0, 1.0});
  CHECK(*u.labels == std::vector<int>{-1, 1});
}

TEST_CASE("parse_libsvm: malformed lines") {
  TempFile zero_based("1 0:5\n", "teachset_libsvm_zero.txt");
  CHECK_THROWS_AS(parse_libsvm(zero_based.path), MalformedLine);

  TempFile no_colon("1 15\n", "teachset_libsvm_nocolon.txt");
  CHECK_THROWS_AS(parse_libsvm(no_colon.path), MalformedLine);

  TempFile bad_label("x 1:2\n", "teachset_libsvm_badlabel.txt");
  CHECK_THROWS_AS(parse_libsvm(bad_label.path), MalformedLine);

  TempFile huge_index("1 999999999:1\n", "teachset_libsvm_huge.txt");
  CHECK_THROWS_AS(parse_libsvm(huge_index.path), MalformedLine);
  try {
    parse_libsvm(zero_based.path);
  } catch (const MalformedLine& e) {
    CHECK(e.line_no == 1);
  }
}

TEST_CASE("round-trip: parse -> serialize -> parse is identical") {
  TempFile f("0.125,-3.75,10\n1e-3,2.5e2,-0.0625\n42,0.1,0.30000000000000004\n",
             "teachset_csv_roundtrip.csv");
  const RawTable first = parse_csv(f.path);
  TempFile g(serialize_full_precision(first), "teachset_csv_roundtrip2.csv");
  const RawTable second = parse_csv(g.path);
  REQUIRE(second.n() == first.n());
  for (std::size_t i = 0; i < first.rows.size(); ++i) CHECK(first.rows[i] == second.rows[i]);
}

TEST_CASE("parse_table rejects unknown formats") {
  TempFile f("1,2\n", "teachset_fmt.csv");
  CHECK_THROWS_AS(parse_table(f.path, "parquet"), BadConfig);
  CHECK_NOTHROW(parse_table(f.path, "csv"));
}

TEST_CASE("to_ball_dataset: labels ride along and norms shrink") {
  TempFile f("3,4,0\n-6,8,1\n", "teachset_csv_ball.csv");
  CsvOptions opts;
  opts.label_column = 2;
  const RawTable t = parse_csv(f.path, opts);
  const BallDataset ds = to_ball_dataset(t, 0.999);
  REQUIRE(ds.labels.has_value());
  CHECK(ds.labels->size() == 2);
  CHECK(ds.points.rowwise().norm().maxCoeff() <= 0.999);
}

TEST_CASE("format_real: 12 significant digits, stable") {
  CHECK(format_real(0.0001) == "0.0001");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(1230.0) == "1230");
  CHECK(format_real(0.4) == "0.4");
}

TEST_CASE("file digest is stable across re-reads") {
  TempFile f("payload bytes", "teachset_digest.txt");
  const std::string a = file_digest(f.path);
  const std::string b = file_digest(f.path);
  CHECK(a == b);
  CHECK(a.size() == 16);
}

TEST_CASE("write_file_atomic writes and overwrites") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "teachset_atomic.txt").string();
  write_file_atomic(path, "first\n");
  write_file_atomic(path, "second\n");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "second\n");
  std::remove(path.c_str());
}

TEST_CASE("manifest rendering is deterministic") {
  RunManifest man;
  man.command = "teach";
  man.input_path = "data.csv";
  man.input_format = "csv";
  man.input_digest = "0123456789abcdef";
  man.config.halvings = 6;
  const std::string a = man.to_text();
  const std::string b = man.to_text();
  CHECK(a == b);
  CHECK(a.find("schema=teachset-report/1\n") == 0);
  CHECK(a.find("halvings=6") != std::string::npos);
}
