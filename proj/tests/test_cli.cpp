#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dynlis/cli.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct TempDir {
  TempDir() {
    dir = fs::temp_directory_path() / "dynlis_cli_test";
    fs::create_directories(dir);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  fs::path dir;
};

}  // namespace

TEST_CASE("gen then verify round trip") {
  TempDir tmp;
  fs::path trace = tmp.dir / "mixed.trace";
  CHECK(dynlis::run_cli({"gen", "--seed", "7", "--n", "100", "--out", trace.string()}) == 0);

  std::string text = slurp(trace);
  CHECK(std::count(text.begin(), text.end(), '\n') == 100);

  CHECK(dynlis::run_cli({"verify", "--trace", trace.string()}) == 0);
  CHECK(dynlis::run_cli({"verify", "--trace", trace.string(), "--mode", "length_only"}) == 0);
}

TEST_CASE("gen adversarial workloads") {
  TempDir tmp;
  fs::path trace = tmp.dir / "inc.trace";
  CHECK(dynlis::run_cli({"gen", "--n", "50", "--adversarial", "increasing", "--out",
                         trace.string()}) == 0);
  std::string text = slurp(trace);
  CHECK(text.rfind("append v=0\nappend v=1\n", 0) == 0);
}

TEST_CASE("verify flags a bad op with exit 1") {
  TempDir tmp;
  fs::path trace = tmp.dir / "bad.trace";
  std::ofstream(trace) << "append v=1\ndelete_key k=123\n";
  CHECK(dynlis::run_cli({"verify", "--trace", trace.string()}) == 1);
}

TEST_CASE("usage and parse problems exit 2") {
  TempDir tmp;
  CHECK(dynlis::run_cli({"frobnicate"}) == 2);
  CHECK(dynlis::run_cli({"gen"}) == 2);  // missing --n
  CHECK(dynlis::run_cli({"gen", "--n", "10", "--mix", "append=2.0", "--out",
                         (tmp.dir / "x").string()}) == 2);
  CHECK(dynlis::run_cli({"gen", "--n", "10", "--adversarial", "nope", "--out",
                         (tmp.dir / "x").string()}) == 2);

  fs::path garbled = tmp.dir / "garbled.trace";
  std::ofstream(garbled) << "append v=1\nwat\n";
  CHECK(dynlis::run_cli({"verify", "--trace", garbled.string()}) == 2);
}

TEST_CASE("io problems exit 3") {
  CHECK(dynlis::run_cli({"verify", "--trace", "/nonexistent/trace.txt"}) == 3);
  CHECK(dynlis::run_cli({"gen", "--n", "5", "--out", "/nonexistent/dir/trace.txt"}) == 3);
}

TEST_CASE("bench emits the fixed CSV header and summary") {
  TempDir tmp;
  fs::path csv = tmp.dir / "bench.csv";
  CHECK(dynlis::run_cli({"bench", "--seed", "5", "--n", "200", "--out", csv.string()}) == 0);
  std::string text = slurp(csv);
  CHECK(text.rfind("op_index,op_kind,n_before,r_before,tree_ops,side_ops,ns\n", 0) == 0);
  CHECK(text.find("# max_insert_ratio") != std::string::npos);

  // From a trace file as well.
  fs::path trace = tmp.dir / "apps.trace";
  CHECK(dynlis::run_cli({"gen", "--n", "64", "--mix", "append=1.0", "--out",
                         trace.string()}) == 0);
  fs::path csv2 = tmp.dir / "bench2.csv";
  CHECK(dynlis::run_cli({"bench", "--trace", trace.string(), "--out", csv2.string()}) == 0);
  CHECK(slurp(csv2).find("# max_append_ratio") != std::string::npos);
}
