// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

// Drives the installed binary end to end: schemas, reference values, exit
// codes and byte stability of repeated runs.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#ifndef CIRCMAT_CLI_PATH
#error "CIRCMAT_CLI_PATH must point at the CLI binary"
#endif

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CmdResult run_cli(const std::string& args) {
  const std::string err_path = "/tmp/circmat_cli_stderr.txt";
  const std::string cmd =
      std::string(CIRCMAT_CLI_PATH) + " " + args + " 2>" + err_path;
  CmdResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0)
    result.out.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WEXITSTATUS(status);
  std::ifstream errs(err_path);
  std::stringstream ss;
  ss << errs.rdbuf();
  result.err = ss.str();
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

// First data row (after '#' metadata and the header).
std::vector<std::string> first_row(const std::string& text,
                                   std::string* header = nullptr) {
  bool saw_header = false;
  for (const std::string& line : lines_of(text)) {
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      if (header) *header = line;
      saw_header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  }
  return {};
}

}  // namespace

TEST_CASE("cov command") {
  SUBCASE("closed-form row values") {
    const CmdResult r = run_cli("cov --alpha 1 --kappa 1 --n 4 --closed");
    CHECK(r.exit_code == 0);
    std::string header;
    const std::vector<std::string> row = first_row(r.out, &header);
    CHECK(header == "lag,theta,value");
    REQUIRE(row.size() == 3);
    CHECK(row[0] == "0");
    CHECK(std::stod(row[2]) == doctest::Approx(1.081977).epsilon(1e-6));
  }
  SUBCASE("series agrees with the closed form") {
    const CmdResult closed = run_cli("cov --alpha 1 --kappa 1 --n 4 --closed");
    const CmdResult series =
        run_cli("cov --alpha 1 --kappa 1 --n 4 --series --tol 1e-12");
    CHECK(series.exit_code == 0);
    const std::vector<std::string> a = lines_of(closed.out);
    const std::vector<std::string> b = lines_of(series.out);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].empty() || a[i][0] == '#' || a[i][0] == 'l') continue;
      std::istringstream sa(a[i]), sb(b[i]);
      std::string ca, cb;
      for (int col = 0; col < 3; ++col) {
        std::getline(sa, ca, ',');
        std::getline(sb, cb, ',');
        if (col == 2)
          CHECK(std::stod(ca) == doctest::Approx(std::stod(cb)).epsilon(1e-9));
      }
    }
  }
  SUBCASE("invalid smoothness exits 2 with one diagnostic line") {
    const CmdResult r = run_cli("cov --alpha 0.4 --kappa 1 --n 4");
    CHECK(r.exit_code == 2);
    CHECK(r.out.empty());
    const std::vector<std::string> errs = lines_of(r.err);
    CHECK(errs.size() == 1);
    CHECK(errs[0].find("error:") == 0);
  }
}

TEST_CASE("car command") {
  SUBCASE("reference covariance") {
    const CmdResult r = run_cli("car --n 3 --order 1 --a 0.3 --sigma2 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("psd=true") != std::string::npos);
    std::string header;
    const std::vector<std::string> row = first_row(r.out, &header);
    CHECK(header == "lag,theta,precision_row,covariance");
    REQUIRE(row.size() == 4);
    CHECK(std::stod(row[3]) == doctest::Approx(1.346154).epsilon(1e-6));
  }
  SUBCASE("order 2 needs n >= 5") {
    const CmdResult r = run_cli("car --n 4 --order 2 --a 0.3 --sigma2 1");
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("match command") {
  SUBCASE("alpha 1 exact match report") {
    const CmdResult r = run_cli("match --alpha 1 --kappa 10 --n 50");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("a=0.49016") != std::string::npos);
    CHECK(r.out.find("sigma2=0.00986876") != std::string::npos);
    // exact match: the reported max correlation difference is tiny
    const std::string key = "max_corr_diff=";
    const std::size_t pos = r.out.find(key);
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(r.out.substr(pos + key.size())) <= 1e-10);
    CHECK(r.err.empty());
  }
  SUBCASE("alpha 2 coarse lattice warns about the discrepancy factor") {
    const CmdResult r = run_cli("match --alpha 2 --kappa 10 --n 10");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("discrepancy_factor=1.313035") != std::string::npos);
    CHECK(r.err.find("warning:") != std::string::npos);
  }
  SUBCASE("besag flag reports both weights") {
    const CmdResult r = run_cli("match --alpha 1 --kappa 10 --n 50 --besag");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("besag_a=0.490196") != std::string::npos);
    CHECK(r.out.find("a=0.49016") != std::string::npos);
  }
}

TEST_CASE("figure1 command uses the published parameters") {
  const CmdResult r = run_cli("figure1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("kappa=10") != std::string::npos);
  CHECK(r.out.find("alpha=2") != std::string::npos);
  CHECK(r.out.find("n_left=10") != std::string::npos);
  CHECK(r.out.find("n_right=50") != std::string::npos);
  const std::string lkey = "max_corr_diff_left=";
  const std::string rkey = "max_corr_diff_right=";
  const std::size_t lpos = r.out.find(lkey);
  const std::size_t rpos = r.out.find(rkey);
  REQUIRE(lpos != std::string::npos);
  REQUIRE(rpos != std::string::npos);
  const double left = std::stod(r.out.substr(lpos + lkey.size()));
  const double right = std::stod(r.out.substr(rpos + rkey.size()));
  CHECK(right < left);
}

TEST_CASE("sample command") {
  SUBCASE("fixed seed reproduces bytes") {
    const CmdResult a = run_cli("sample --kappa 2 --alpha 1 --n 8 --replicates 3 --seed 5");
    const CmdResult b = run_cli("sample --kappa 2 --alpha 1 --n 8 --replicates 3 --seed 5");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
  SUBCASE("summary stays near the model curve") {
    const CmdResult r = run_cli(
        "sample --kappa 1 --alpha 1 --n 16 --replicates 20000 --seed 6 "
        "--summary");
    CHECK(r.exit_code == 0);
    std::string header;
    const std::vector<std::string> row = first_row(r.out, &header);
    CHECK(header == "lag,theta,empirical_cov,model_cov,abs_error,std_error");
    REQUIRE(row.size() == 6);
    const double abs_error = std::stod(row[4]);
    const double std_error = std::stod(row[5]);
    CHECK(abs_error <= 4.0 * std_error);
  }
  SUBCASE("car model sampling") {
    const CmdResult r =
        run_cli("sample --order 1 --a 0.3 --sigma2 1 --n 8 --seed 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("model=car") != std::string::npos);
  }
  SUBCASE("invalid seed string exits 2") {
    const CmdResult r = run_cli("sample --kappa 2 --alpha 1 --n 8 --seed abc");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("model selection must be unambiguous") {
    const CmdResult r =
        run_cli("sample --kappa 2 --alpha 1 --order 1 --a 0.3 --sigma2 1 "
                "--n 8 --seed 1");
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("fit command round trip") {
  const std::string field_path = "/tmp/circmat_cli_fields.csv";
  const CmdResult gen = run_cli(
      "sample --kappa 5 --alpha 1 --n 64 --replicates 50 --seed 11 --out " +
      field_path);
  REQUIRE(gen.exit_code == 0);
  const CmdResult fit = run_cli("fit --input " + field_path + " --alpha 1");
  CHECK(fit.exit_code == 0);
  std::string header;
  const std::vector<std::string> row = first_row(fit.out, &header);
  CHECK(header == "kappa,log_likelihood,boundary_hit,iterations");
  REQUIRE(row.size() == 4);
  const double kappa = std::stod(row[0]);
  CHECK(kappa > 3.0);
  CHECK(kappa < 8.0);
  CHECK(row[2] == "false");
  SUBCASE("missing input exits 2") {
    const CmdResult r = run_cli("fit --input /tmp/does_not_exist.csv --alpha 1");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("constant-zero field reports a boundary hit without crashing") {
    const std::string degenerate_path = "/tmp/circmat_cli_zero_field.csv";
    {
      std::ofstream f(degenerate_path);
      f << "replicate,index,value\n";
      for (int j = 0; j < 16; ++j) f << "0," << j << ",0\n";
    }
    const CmdResult r = run_cli("fit --input " + degenerate_path + " --alpha 1");
    CHECK(r.exit_code == 0);
    std::string hdr;
    const std::vector<std::string> row2 = first_row(r.out, &hdr);
    REQUIRE(row2.size() == 4);
    CHECK(row2[2] == "true");
  }
}

TEST_CASE("ergodicity command") {
  SUBCASE("zero replicates exit 2") {
    const CmdResult r =
        run_cli("ergodicity --kappa 10 --alpha 1 --replicates 0 --seed 1");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("small run emits one row per size") {
    const CmdResult r = run_cli(
        "ergodicity --kappa 10 --alpha 1 --sizes 8,16 --replicates 500 "
        "--seed 2");
    CHECK(r.exit_code == 0);
    std::string header;
    first_row(r.out, &header);
    CHECK(header == "n,variance,std_error,floor,z");
    int data_rows = 0;
    bool past_header = false;
    for (const std::string& line : lines_of(r.out)) {
      if (line.empty() || line[0] == '#') continue;
      if (!past_header) {
        past_header = true;
        continue;
      }
      ++data_rows;
    }
    CHECK(data_rows == 2);
    CHECK(r.out.find("floor=0.01") != std::string::npos);
  }
}

TEST_CASE("json format mirrors the csv fields") {
  const CmdResult r =
      run_cli("match --alpha 1 --kappa 10 --n 10 --format json");
  CHECK(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["command"] == "match");
  CHECK(doc["a"].get<double>() == doctest::Approx(0.3240271).epsilon(1e-6));
  CHECK(doc["rows"].size() == 10);
  CHECK(doc["rows"][0]["matern_corr"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("golden byte stability of the deterministic commands") {
  const std::vector<std::string> invocations{
      "cov --alpha 2 --kappa 10 --n 12 --closed",
      "cov --alpha 1.4 --kappa 3 --n 8 --series --tol 1e-8",
      "car --n 7 --order 2 --a 0.25 --sigma2 0.5",
      "match --alpha 2 --kappa 10 --n 50",
      "figure1 --kappa 10 --n-left 10 --n-right 50",
      "match --alpha 1 --kappa 10 --n 50 --format json",
  };
  for (const std::string& args : invocations) {
    const CmdResult a = run_cli(args);
    const CmdResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}

TEST_CASE("config file provides defaults and flags win") {
  const std::string cfg_path = "/tmp/circmat_cli_config.ini";
  {
    std::ofstream cfg(cfg_path);
    cfg << "[cov]\nalpha=1\nkappa=1\nn=4\n";
  }
  const CmdResult from_cfg = run_cli("--config " + cfg_path + " cov");
  CHECK(from_cfg.exit_code == 0);
  CHECK(from_cfg.out.find("kappa=1") != std::string::npos);
  const CmdResult overridden =
      run_cli("--config " + cfg_path + " cov --kappa 2");
  CHECK(overridden.exit_code == 0);
  CHECK(overridden.out.find("kappa=2") != std::string::npos);
}
