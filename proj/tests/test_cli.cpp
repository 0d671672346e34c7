#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "circlelink/csvio.hpp"
#include "circlelink/timeutil.hpp"

using namespace circlelink;
namespace fs = std::filesystem;

namespace {

// the build exports the tool path for ctest; fall back to the sibling
// binary when the test runner is invoked by hand
std::string tool_path() {
  if (const char* env = std::getenv("CIRCLELINK_BIN"); env && *env) return env;
  auto self = fs::read_symlink("/proc/self/exe");
  return (self.parent_path() / "circlelink").string();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("circlelink_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
}

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run(const TempDir& tmp, const std::string& args) {
  auto out_file = tmp.file("stdout.txt");
  auto err_file = tmp.file("stderr.txt");
  std::string cmd = "'" + tool_path() + "' " + args + " >'" + out_file +
                    "' 2>'" + err_file + "'";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out_file), slurp(err_file)};
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char ch : text)
    if (ch == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("help works and bad invocations exit with the config code") {
  TempDir tmp;
  CHECK(run(tmp, "--help").exit_code == 0);
  CHECK(run(tmp, "predict --help").exit_code == 0);
  CHECK(run(tmp, "").exit_code == 1);                     // verb required
  CHECK(run(tmp, "predict --frobnicate").exit_code == 1);
  CHECK(run(tmp, "conjure").exit_code == 1);
}

TEST_CASE("synth, predict and supervised form a working pipeline") {
  TempDir tmp;
  auto data_dir = tmp.file("data");
  auto r = run(tmp, "synth --egos 24 --seed 7 --out '" + data_dir + "'");
  REQUIRE(r.exit_code == 0);
  for (const char* name : {"edges.csv", "classes.csv", "new_edges.csv",
                           "truth.csv"})
    CHECK(fs::exists(fs::path(data_dir) / name));
  CHECK(!load_weighted_edges(data_dir + "/edges.csv").empty());
  CHECK(!load_edge_pairs(data_dir + "/new_edges.csv").empty());

  auto pred_dir = tmp.file("pred");
  r = run(tmp, "predict --edges '" + data_dir + "/edges.csv' --classes '" +
                   data_dir + "/classes.csv' --new '" + data_dir +
                   "/new_edges.csv' --slices C1,all --methods RA --k 10 "
                   "--seed 5 --out '" + pred_dir + "'");
  REQUIRE(r.exit_code == 0);
  for (const char* name : {"report.csv", "report.json", "manifest.json"})
    CHECK(fs::exists(fs::path(pred_dir) / name));
  auto report = slurp(pred_dir + "/report.csv");
  CHECK(line_count(report) == 3);  // header + C1 row + all row
  CHECK(report.find("C1,RA,K=10") != std::string::npos);
  CHECK(report.find("all,RA,K=10") != std::string::npos);
  CHECK(r.out.find("C1") != std::string::npos);  // table echoed to stdout

  auto sup_dir = tmp.file("sup");
  r = run(tmp, "supervised --edges '" + data_dir + "/edges.csv' --classes '" +
                   data_dir + "/classes.csv' --new '" + data_dir +
                   "/new_edges.csv' --slices C1 --learners lr --folds 4 "
                   "--seed 5 --out '" + sup_dir + "'");
  REQUIRE(r.exit_code == 0);
  report = slurp(sup_dir + "/report.csv");
  CHECK(line_count(report) == 2);
  CHECK(report.find("C1,logistic_regression,folds=4") != std::string::npos);
}

TEST_CASE("config and data problems map to exit codes 1 and 2") {
  TempDir tmp;
  auto r = run(tmp, "predict --config '" + tmp.file("nope.json") + "'");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("config error") != std::string::npos);

  // flags alone but no input files
  r = run(tmp, "predict --k 10");
  CHECK(r.exit_code == 1);

  // files exist but the edge CSV is garbage: a data error
  auto edges = tmp.file("edges.csv");
  spit(edges, "src,dst,weight\na,b,not-a-number\n");
  auto classes = tmp.file("classes.csv");
  spit(classes, "node,class\na,ego\nb,ego\n");
  auto new_edges = tmp.file("new.csv");
  spit(new_edges, "src,dst\na,b\n");
  r = run(tmp, "predict --edges '" + edges + "' --classes '" + classes +
                   "' --new '" + new_edges + "'");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("data error") != std::string::npos);
}

TEST_CASE("extract-ego writes circles and filter reasons") {
  TempDir tmp;
  auto ts = [](int y, unsigned m, unsigned d) {
    return days_from_civil(y, m, d) * std::int64_t{86400};
  };
  // anna: xeno daily-ish, yuri and wren monthly-ish; with two low-frequency
  // alters the nearest-neighbour bandwidth stays below the ring gap
  std::vector<InteractionRecord> records;
  for (int month = 0; month < 20; ++month) {
    int y = 2023 + month / 12;
    unsigned m = 1 + month % 12;
    for (unsigned d = 1; d <= 23; d += 2) {
      records.push_back({"anna", "xeno", ts(y, m, d)});
      if (d <= 3) {
        records.push_back({"anna", "yuri", ts(y, m, d)});
        records.push_back({"anna", "wren", ts(y, m, d)});
      }
    }
    // one contact a month is far below the daily-rate bar
    records.push_back({"elio", "zara", ts(y, m, 2)});
  }
  auto log_path = tmp.file("log.csv");
  write_interaction_log(records, log_path);

  auto out_dir = tmp.file("rings");
  auto r = run(tmp, "extract-ego --log '" + log_path + "' --out '" + out_dir +
                        "'");
  REQUIRE(r.exit_code == 0);

  auto circles = slurp(out_dir + "/circles.csv");
  CHECK(circles.find("ego,ring,alter,frequency") == 0);
  CHECK(circles.find("anna,1,xeno,") != std::string::npos);
  CHECK(circles.find("anna,2,yuri,") != std::string::npos);

  auto filtered = slurp(out_dir + "/filtered.csv");
  CHECK(filtered.find("ego,reason") == 0);
  CHECK(filtered.find("elio,regularity") != std::string::npos);
}

TEST_CASE("bench writes a per-size table") {
  TempDir tmp;
  auto out_dir = tmp.file("bench");
  auto r = run(tmp, "bench --sizes 12,24 --reps 1 --seed 3 --out '" + out_dir +
                        "'");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("slope") != std::string::npos);
  auto table = slurp(out_dir + "/bench.csv");
  CHECK(line_count(table) == 3);  // header + two sizes
  CHECK(table.find("12,") != std::string::npos);
}
