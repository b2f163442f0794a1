#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Sandbox {
 public:
  explicit Sandbox(const std::string& name)
      : dir_(fs::temp_directory_path() / ("qdc_cli_" + name)) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Sandbox() { fs::remove_all(dir_); }

  const fs::path& dir() const { return dir_; }

  void file(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }

  Result run(const std::string& args) const {
    const std::string cmd = "cd '" + dir_.string() + "' && '" QDC_CLI_PATH "' " + args +
                            " > stdout.txt 2> stderr.txt";
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(dir_ / "stdout.txt"),
            slurp(dir_ / "stderr.txt")};
  }

 private:
  fs::path dir_;
};

// Value following `key` on its report line.
double report_value(const std::string& report, const std::string& key) {
  const auto pos = report.find("\n" + key);
  REQUIRE(pos != std::string::npos);
  return std::stod(report.substr(pos + 1 + key.size()));
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("steady run without pumping reports empty populations") {
  Sandbox box("steady");
  box.file("vac.cfg", "mode = steady\npump = 0\nn_exc = 4\nout = vac\n");
  const auto r = box.run("vac.cfg");
  REQUIRE(r.status == 0);
  CHECK(r.err.empty());
  const std::string report = slurp(box.dir() / "vac.report.txt");
  CHECK(report_value(report, "n_c") == doctest::Approx(0.0));
  CHECK(report_value(report, "n_sigma") == doctest::Approx(0.0));
  CHECK(fs::exists(box.dir() / "vac.steady.csv"));
}

TEST_CASE("dot spectrum of the large-pump set is normalized") {
  Sandbox box("qd");
  const auto r = box.run("--set delta=5 --set kappa=5 --set gamma=0.1 --set pump=1 --set emitter=qd "
                         "--set n_exc=6 --set grid_span=30 --set grid_step=0.01 --set out=qd");
  REQUIRE(r.status == 0);
  const std::string report = slurp(box.dir() / "qd.report.txt");
  CHECK(report_value(report, "sum rule") == doctest::Approx(1.0).epsilon(0.02));
  const auto rows = read_csv(box.dir() / "qd.spectrum.csv");
  CHECK(rows.size() == 6001u);
  CHECK(slurp(box.dir() / "qd.spectrum.csv").rfind("omega_mev,s_per_mev\n", 0) == 0);
}

TEST_CASE("repeated runs write identical spectra") {
  Sandbox box("repeat");
  box.file("a.cfg", "n_exc = 4\ngrid_span = 5\ngrid_step = 0.05\n");
  REQUIRE(box.run("a.cfg --set out=one").status == 0);
  REQUIRE(box.run("a.cfg --set out=two").status == 0);
  CHECK(slurp(box.dir() / "one.spectrum.csv") == slurp(box.dir() / "two.spectrum.csv"));
  CHECK(slurp(box.dir() / "one.peaks.csv") == slurp(box.dir() / "two.peaks.csv"));
}

TEST_CASE("compare mode reports both routes and their difference") {
  Sandbox box("compare");
  const auto r = box.run("--set mode=compare --set n_exc=4 --set grid_span=5 --set grid_step=0.05 "
                         "--set out=cmp");
  REQUIRE(r.status == 0);
  const std::string report = slurp(box.dir() / "cmp.report.txt");
  CHECK(report.find("[gft]") != std::string::npos);
  CHECK(report.find("[qrt]") != std::string::npos);
  CHECK(report_value(report, "max_abs") <= 2e-2);
  CHECK(read_csv(box.dir() / "cmp.diff.csv").size() == 201u);
  CHECK(fs::exists(box.dir() / "cmp.qrt.spectrum.csv"));
}

TEST_CASE("failures exit non-zero with a one-line diagnosis") {
  Sandbox box("fail");
  box.file("bad.cfg", "g = banana\n");
  const auto check_fail = [](const Result& r, const std::string& needle) {
    CHECK(r.status != 0);
    CHECK(r.err.find(needle) != std::string::npos);
    CHECK(r.err.find('\n') == r.err.size() - 1);
  };
  check_fail(box.run("bad.cfg"), "config line 1");
  check_fail(box.run("missing.cfg"), "cannot read");
  check_fail(box.run("--set g=0 --set n_exc=3"), "cavity unpopulated");
  check_fail(box.run("--set kappa=-1"), "kappa");
  check_fail(box.run("--set n_exc=3 --set grid_span=1 --set out=no/such/dir/x"), "cannot open");
}
