// Copyright (C) 2026 The jcorners authors
// Distributed under the MIT License (see LICENSE)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("jcorners_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(JCORNERS_CLI_PATH) + " " + args + " > " + (scratch() / "stdout.txt").string() +
                          " 2> " + (scratch() / "stderr.txt").string();
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
};

Csv read_csv(const fs::path& p) {
  std::ifstream in(p);
  Csv c;
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char ch : l) {
      if (ch == '"') quoted = !quoted;
      else if (ch == ',' && !quoted) {
        out.push_back(cur);
        cur.clear();
      } else cur += ch;
    }
    out.push_back(cur);
    return out;
  };
  std::getline(in, line);
  c.header = split(line);
  while (std::getline(in, line)) {
    const auto f = split(line);
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < f.size() && i < c.header.size(); ++i) row[c.header[i]] = f[i];
    c.rows.push_back(row);
  }
  return c;
}

std::string dir(const std::string& name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("sample: schema and determinism") {
  REQUIRE(run("sample --seed 5 --N 4 --M 2 --theta 1/2 --alpha 1 --samples 30 --burn-in 10 --out " + dir("s1")) == 0);
  REQUIRE(run("sample --seed 5 --N 4 --M 2 --theta 1/2 --alpha 1 --samples 30 --burn-in 10 --out " + dir("s2")) == 0);
  const std::string a = slurp(scratch() / "s1" / "samples.csv");
  CHECK(a == slurp(scratch() / "s2" / "samples.csv"));
  CHECK(a.rfind("sample_id,level,index,value\n", 0) == 0);
  const Csv c = read_csv(scratch() / "s1" / "samples.csv");
  CHECK(c.rows.size() == 30u * (1 + 2 + 2 + 2));
  for (const auto& r : c.rows) {
    const int level = std::stoi(r.at("level"));
    const int index = std::stoi(r.at("index"));
    CHECK(level <= 4);
    CHECK(index <= std::min(level, 2));
  }
  const auto meta = nlohmann::json::parse(slurp(scratch() / "s1" / "metadata.json"));
  CHECK(meta["seed"] == 5);
  CHECK(meta["config"]["ensemble"]["theta"] == "1/2");
  CHECK(meta.contains("build_id"));
  REQUIRE(run("sample --seed 6 --N 4 --M 2 --theta 1/2 --alpha 1 --samples 30 --burn-in 10 --out " + dir("s3")) == 0);
  CHECK(a != slurp(scratch() / "s3" / "samples.csv"));
}

TEST_CASE("moments: exact anchor, z-scores and JSON mirror") {
  REQUIRE(run("moments --seed 1 --samples 8000 --out " + dir("m_csv")) == 0);
  REQUIRE(run("moments --seed 1 --samples 8000 --format json --out " + dir("m_json")) == 0);
  const Csv c = read_csv(scratch() / "m_csv" / "moments.csv");
  CHECK(c.header == std::vector<std::string>{"observable", "level", "degree", "exact_value", "mc_mean", "mc_se", "z_score"});
  bool found = false;
  for (const auto& r : c.rows) {
    CHECK(std::fabs(std::stod(r.at("z_score"))) <= 4.0);
    if (r.at("observable") == "mean_p" && r.at("level") == "1" && r.at("degree") == "1") {
      found = true;
      CHECK(std::stod(r.at("exact_value")) == doctest::Approx(2.0 / 5.0).epsilon(1e-16));
    }
  }
  CHECK(found);
  const auto j = nlohmann::json::parse(slurp(scratch() / "m_json" / "moments.json"));
  REQUIRE(j.size() == c.rows.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    CHECK(j[i]["observable"] == c.rows[i].at("observable"));
    CHECK(j[i]["mc_mean"].get<double>() == std::stod(c.rows[i].at("mc_mean")));
    CHECK(j[i]["exact_value"].get<double>() == std::stod(c.rows[i].at("exact_value")));
  }
}

TEST_CASE("asymptotics: Chebyshev diagonal, path agreement and frozen boundary") {
  const fs::path cfg = scratch() / "asym.json";
  std::ofstream(cfg) << R"({"hat": {"m_hat": 1, "alpha_hat": 1, "theta": 2, "n_hats": [1.0, 0.5], "exact_scale": 0}})";
  REQUIRE(run("asymptotics --config " + cfg.string() + " --out " + dir("a")) == 0);
  const Csv ch = read_csv(scratch() / "a" / "chebyshev_cov.csv");
  int diag = 0;
  for (const auto& r : ch.rows) {
    CHECK(std::stod(r.at("abs_diff")) < 1e-8);
    if (r.at("n1_hat") == r.at("n2_hat") && r.at("n1") == r.at("n2")) {
      ++diag;
      CHECK(std::stod(r.at("closed_form")) == doctest::Approx(std::stoi(r.at("n1")) / 8.0).epsilon(1e-10));
    }
  }
  CHECK(diag == 8);
  for (const auto& r : read_csv(scratch() / "a" / "power_cov.csv").rows) CHECK(std::stod(r.at("abs_diff")) < 1e-6);
  const Csv fb = read_csv(scratch() / "a" / "frozen_boundary.csv");
  CHECK(fb.header == std::vector<std::string>{"n_hat", "l", "r"});
  CHECK(fb.rows.size() == 101u);
}

TEST_CASE("beta-infinity: monotone roots") {
  REQUIRE(run("beta-infinity --seed 2 --out " + dir("b")) == 0);
  const Csv r = read_csv(scratch() / "b" / "roots.csv");
  std::map<std::string, double> last;
  for (const auto& row : r.rows) {
    const double v = std::stod(row.at("root"));
    if (last.count(row.at("level"))) CHECK(v > last[row.at("level")]);
    last[row.at("level")] = v;
  }
  CHECK(last.size() == 3u);
}

TEST_CASE("ho: identity table passes") {
  REQUIRE(run("ho --out " + dir("h")) == 0);
  for (const auto& row : read_csv(scratch() / "h" / "checks.csv").rows) CHECK(row.at("pass") == "true");
}

TEST_CASE("exit codes") {
  const fs::path strict = scratch() / "strict.json";
  std::ofstream(strict) << R"({"sampler": {"samples": 2000}, "tolerances": {"z": 1e-9}})";
  CHECK(run("moments --config " + strict.string() + " --out " + dir("x1")) == 1);
  const fs::path bad = scratch() / "bad.json";
  std::ofstream(bad) << R"({"ensemble": {"theta": "-1"}})";
  CHECK(run("moments --config " + bad.string() + " --out " + dir("x2")) == 2);
  CHECK(slurp(scratch() / "stderr.txt").find("ensemble") != std::string::npos);
  CHECK(run("moments --format xml") != 0);
  CHECK(run("") != 0);
  CHECK(run("--help") == 0);
  const std::string help = slurp(scratch() / "stdout.txt");
  for (const char* flag : {"--seed", "--config", "--out", "--format", "all-checks"}) CHECK(help.find(flag) != std::string::npos);
}
