#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

const char* cli_path() {
  const char* p = std::getenv("FBMAX_CLI");
  REQUIRE_MESSAGE(p != nullptr, "FBMAX_CLI must point at the CLI binary");
  return p;
}

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "fbmax_cli_tests";
  fs::create_directories(dir);
  return dir;
}

RunResult run(const std::string& args) {
  const fs::path log = work_dir() / "last_output.txt";
  const std::string cmd = std::string(cli_path()) + " " + args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream f(log);
  std::stringstream ss;
  ss << f.rdbuf();
  r.output = ss.str();
  return r;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// first CSV data row (skips # comments and the header line)
std::vector<std::string> first_data_row(const std::string& csv) {
  std::stringstream ss(csv);
  std::string line;
  bool header_seen = false;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    return fields;
  }
  return {};
}

std::size_t data_row_count(const std::string& csv) {
  std::stringstream ss(csv);
  std::string line;
  std::size_t rows = 0;
  bool header_seen = false;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    ++rows;
  }
  return rows;
}

}  // namespace

TEST_CASE("bounds: single point matches the library value") {
  const fs::path out = work_dir() / "bounds.csv";
  const RunResult r = run("bounds --h 0.25 --n 16 --alpha 2 --kind upper --out " + out.string());
  REQUIRE(r.exit_code == 0);
  const auto row = first_data_row(read_file(out));
  REQUIRE(row.size() >= 6);
  CHECK(std::stod(row[4]) == doctest::Approx(2.1271519196378351).epsilon(1e-12));
  CHECK(row[5] == "true");
}

TEST_CASE("bounds: pickands pair has the published ratio") {
  const fs::path out = work_dir() / "pick.csv";
  const RunResult r =
      run("bounds --h 0.45 --kind pickands_ours,pickands_shao --out " + out.string());
  REQUIRE(r.exit_code == 0);
  const std::string csv = read_file(out);
  REQUIRE(data_row_count(csv) == 2);
  std::stringstream ss(csv);
  std::string line;
  double ours = 0.0, shao = 0.0;
  while (std::getline(ss, line)) {
    if (line.find("pickands_ours") != std::string::npos && line[0] != '#' &&
        line.find("value") == std::string::npos) {
      std::stringstream ls(line);
      std::string f;
      std::vector<std::string> fields;
      while (std::getline(ls, f, ',')) fields.push_back(f);
      ours = std::stod(fields[4]);
    }
    if (line.find("pickands_shao") != std::string::npos && line[0] != '#' &&
        line.find("value") == std::string::npos) {
      std::stringstream ls(line);
      std::string f;
      std::vector<std::string> fields;
      while (std::getline(ls, f, ',')) fields.push_back(f);
      shao = std::stod(fields[4]);
    }
  }
  REQUIRE(shao > 0.0);
  CHECK(std::abs(ours / shao - 0.344) < 0.005);
}

TEST_CASE("bounds: empty grid is a usage error") {
  CHECK(run("bounds --n 16").exit_code != 0);          // missing --h
  CHECK(run("bounds --h 0.25 --kind upper").exit_code != 0);  // grid kind without --n
}

TEST_CASE("validity: recomputed endpoints plus published annotation") {
  const fs::path out = work_dir() / "validity.csv";
  const RunResult r = run("validity --h 0.01 --alpha 16 --out " + out.string());
  REQUIRE(r.exit_code == 0);
  const std::string csv = read_file(out);
  const auto row = first_data_row(csv);
  REQUIRE(row.size() >= 8);
  CHECK(std::stod(row[2]) == doctest::Approx(7.9469994472784856).epsilon(1e-9));
  CHECK(std::stod(row[3]) == doctest::Approx(68.270487983469243).epsilon(1e-9));
  CHECK(row[4] == "61");
  CHECK(csv.find("(7.534") != std::string::npos);
}

TEST_CASE("validity: alpha-star flag") {
  const RunResult r = run("validity --alpha-star");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("7.48704") != std::string::npos);
}

TEST_CASE("validity: empty feasible set is still success") {
  const RunResult r = run("validity --h 0.48 --alpha 8");
  CHECK(r.exit_code == 0);
}

TEST_CASE("estimate: single-point mean is near zero") {
  const fs::path out = work_dir() / "mn1.json";
  const RunResult r = run("estimate mn --h 0.3 --n 1 --samples 1000 --seed 7 --format json --out " +
                          out.string());
  REQUIRE(r.exit_code == 0);
  const std::string payload = read_file(out);
  CHECK(payload.find("\"mean\"") != std::string::npos);
  CHECK(r.output.find("samples/s") != std::string::npos);  // wall-clock report on stderr
}

TEST_CASE("estimate: byte-identical reruns and worker independence") {
  const fs::path a = work_dir() / "est_a.json";
  const fs::path b = work_dir() / "est_b.json";
  const fs::path c = work_dir() / "est_c.json";
  const std::string base = "estimate mn --h 0.35 --n 32 --samples 2000 --seed 99 --format json";
  REQUIRE(run(base + " --threads 1 --out " + a.string()).exit_code == 0);
  REQUIRE(run(base + " --threads 1 --out " + b.string()).exit_code == 0);
  REQUIRE(run(base + " --threads 4 --out " + c.string()).exit_code == 0);
  const std::string pa = read_file(a);
  CHECK(pa == read_file(b));
  CHECK(pa == read_file(c));
  CHECK_FALSE(pa.empty());
}

TEST_CASE("estimate: precondition violations name the condition") {
  const RunResult r = run("estimate mn --h 0.3 --n 4 --samples 50");
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("at least 100") != std::string::npos);
}

TEST_CASE("estimate: path dump in long format") {
  const fs::path dump = work_dir() / "paths.csv";
  const RunResult r = run("estimate mn --h 0.3 --n 8 --samples 200 --dump-paths " +
                          dump.string() + " --dump-count 3");
  REQUIRE(r.exit_code == 0);
  const std::string csv = read_file(dump);
  CHECK(csv.find("path_id,t,value") != std::string::npos);
  CHECK(data_row_count(csv) == 3 * 8);
}

TEST_CASE("validate: closed-form suite passes quickly") {
  const RunResult r = run("validate --suite closed_form");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("PASS") != std::string::npos);
  CHECK(r.output.find("FAIL") == std::string::npos);
}

TEST_CASE("validate: perturbed constant fails and exits nonzero") {
  const RunResult r = run("validate --criteria 2 --mh-upper-coef 1.5");
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("FAIL") != std::string::npos);
}

TEST_CASE("report: pickands sweep has ten rows ending at the published ratios") {
  const fs::path out = work_dir() / "pickands.csv";
  const RunResult r = run(
      "report --series pickands --h-min 0.05 --h-max 0.5 --h-step 0.05 --out " + out.string());
  REQUIRE(r.exit_code == 0);
  const std::string csv = read_file(out);
  REQUIRE(data_row_count(csv) == 10);
  // ratio column increases with h and is ~0.046 at h=0.15
  std::stringstream ss(csv);
  std::string line;
  bool header_seen = false;
  double prev = -1.0;
  bool checked_015 = false;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::stringstream ls(line);
    std::string f;
    std::vector<std::string> fields;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    const double h = std::stod(fields[0]);
    const double ratio = std::stod(fields[3]);
    CHECK(ratio > prev);
    prev = ratio;
    if (std::abs(h - 0.15) < 1e-9) {
      checked_015 = true;
      CHECK(std::abs(ratio - 0.046) < 0.002);
    }
  }
  CHECK(checked_015);
}

TEST_CASE("report: upper bound decreases along the n sweep") {
  const fs::path out = work_dir() / "bvn.csv";
  const RunResult r = run("report --series bound-vs-n --h 0.25 --alpha 2 --n-list "
                          "16,32,64,128,256 --out " + out.string());
  REQUIRE(r.exit_code == 0);
  const std::string csv = read_file(out);
  std::stringstream ss(csv);
  std::string line;
  bool header_seen = false;
  double prev = 1e300;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::stringstream ls(line);
    std::string f;
    std::vector<std::string> fields;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    REQUIRE(fields.size() >= 3);
    CHECK(fields[2] == "true");  // upper_valid
    const double upper = std::stod(fields[1]);
    CHECK(upper < prev);
    prev = upper;
  }
}

TEST_CASE("report: sweep passthrough and empty input") {
  const fs::path sweep = work_dir() / "sweep.csv";
  REQUIRE(run("bounds --h 0.2 0.3 --n 16 32 --alpha 2 --kind upper,upper_series --out " +
              sweep.string()).exit_code == 0);
  const fs::path tidy = work_dir() / "tidy.csv";
  const RunResult ok =
      run("report --series from-sweep --in " + sweep.string() + " --out " + tidy.string());
  REQUIRE(ok.exit_code == 0);
  const std::string csv = read_file(tidy);
  CHECK(csv.find(",upper,upper_series") != std::string::npos);
  CHECK(data_row_count(csv) == 4);  // both kinds pivot onto one row per grid point

  const fs::path empty = work_dir() / "empty.csv";
  std::ofstream(empty).close();
  CHECK(run("report --series from-sweep --in " + empty.string()).exit_code != 0);
}

TEST_CASE("config file values are overridden by flags") {
  const fs::path cfg = work_dir() / "fbmax.ini";
  {
    std::ofstream f(cfg);
    f << "seed=1234\n";
  }
  const fs::path a = work_dir() / "cfg_a.json";
  const fs::path b = work_dir() / "cfg_b.json";
  REQUIRE(run("--config " + cfg.string() +
              " estimate mn --h 0.3 --n 4 --samples 500 --format json --out " + a.string())
              .exit_code == 0);
  REQUIRE(run("estimate mn --h 0.3 --n 4 --samples 500 --seed 1234 --format json --out " +
              b.string()).exit_code == 0);
  CHECK(read_file(a) == read_file(b));

  const fs::path c = work_dir() / "cfg_c.json";
  REQUIRE(run("--config " + cfg.string() +
              " estimate mn --h 0.3 --n 4 --samples 500 --seed 777 --format json --out " +
              c.string()).exit_code == 0);
  CHECK(read_file(c) != read_file(a));  // flag wins over the file
}
