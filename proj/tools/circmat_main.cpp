// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

// Command-line surface: covariance tables, CAR models, parameter matching,
// sampling, fitting and the grid-refinement experiment, as CSV or JSON.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "circmat/circmat.hpp"

namespace {

using nlohmann::json;

std::string g9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

struct OutputOptions {
  std::string format = "csv";
  std::string out_path;
};

void add_output_options(CLI::App* cmd, OutputOptions* out) {
  cmd->add_option("--format", out->format, "Output format (csv or json)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", out->out_path, "Write output to this path");
}

// Table with '#' metadata lines in CSV mode, mirrored keys in JSON mode.
class Report {
 public:
  explicit Report(std::string command) {
    meta_json_["command"] = command;
    meta_line_ = " command=" + command;
  }

  void meta(const std::string& key, double v) {
    meta_line_ += " " + key + "=" + g9(v);
    meta_json_[key] = v;
  }
  void meta(const std::string& key, int v) {
    meta_line_ += " " + key + "=" + std::to_string(v);
    meta_json_[key] = v;
  }
  void meta(const std::string& key, std::uint64_t v) {
    meta_line_ += " " + key + "=" + std::to_string(v);
    meta_json_[key] = v;
  }
  void meta(const std::string& key, const std::string& v) {
    meta_line_ += " " + key + "=" + v;
    meta_json_[key] = v;
  }
  void meta_break() {
    meta_lines_.push_back("#" + meta_line_);
    meta_line_.clear();
  }

  void header(const std::vector<std::string>& columns) { columns_ = columns; }

  void row(const std::vector<std::string>& cells, const json& mirror) {
    rows_.push_back(cells);
    json_rows_.push_back(mirror);
  }

  void write(const OutputOptions& opts) const {
    std::ostringstream os;
    if (opts.format == "json") {
      json doc = meta_json_;
      doc["rows"] = json_rows_;
      os << doc.dump(2) << "\n";
    } else {
      for (const std::string& line : meta_lines_) os << line << "\n";
      if (!meta_line_.empty()) os << "#" << meta_line_ << "\n";
      for (std::size_t i = 0; i < columns_.size(); ++i)
        os << (i ? "," : "") << columns_[i];
      os << "\n";
      for (const auto& cells : rows_) {
        for (std::size_t i = 0; i < cells.size(); ++i)
          os << (i ? "," : "") << cells[i];
        os << "\n";
      }
    }
    if (opts.out_path.empty()) {
      std::cout << os.str();
    } else {
      std::ofstream f(opts.out_path);
      if (!f) throw std::invalid_argument("cannot open output path");
      f << os.str();
    }
  }

 private:
  std::string meta_line_;
  std::vector<std::string> meta_lines_;
  json meta_json_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
  json json_rows_ = json::array();
};

// ---------------------------------------------------------------- cov ----

struct CovArgs {
  double kappa = 1.0;
  double alpha = 1.0;
  double variance_scale = 1.0;
  int n = 0;
  bool closed = false;
  bool series = false;
  double tol = 1e-12;
  OutputOptions out;
};

void run_cov(const CovArgs& args) {
  circmat::MaternParams params{args.kappa, args.alpha, args.variance_scale};
  params.validate();
  const double rounded = std::round(args.alpha);
  const bool has_closed =
      std::abs(args.alpha - rounded) < 1e-9 && rounded >= 1 && rounded <= 3;
  const bool use_closed = args.closed || (!args.series && has_closed);
  if (args.closed && !has_closed)
    throw std::invalid_argument("--closed requires alpha in {1,2,3}");
  if (args.n < 3) throw std::invalid_argument("lattice needs n >= 3");

  Report report("cov");
  report.meta("alpha", args.alpha);
  report.meta("kappa", args.kappa);
  report.meta("variance_scale", args.variance_scale);
  report.meta("n", args.n);
  report.meta("mode", std::string(use_closed ? "closed" : "series"));
  report.meta("tol", args.tol);
  report.meta_break();
  report.header({"lag", "theta", "value"});

  circmat::LagCovariance curve;
  if (use_closed) {
    curve = circmat::matern_curve(params, args.n);
  } else {
    std::vector<double> vals(static_cast<std::size_t>(args.n));
    for (int k = 0; k <= args.n / 2; ++k) {
      const double v = circmat::psi_series(static_cast<double>(k) / args.n,
                                           params, args.tol);
      vals[static_cast<std::size_t>(k)] = v;
      if (k > 0 && k < args.n - k) vals[static_cast<std::size_t>(args.n - k)] = v;
    }
    curve = circmat::LagCovariance::create(std::move(vals));
  }
  for (int k = 0; k < args.n; ++k) {
    const double theta = static_cast<double>(k) / args.n;
    const double v = curve.values[static_cast<std::size_t>(k)];
    report.row({std::to_string(k), g9(theta), g9(v)},
               {{"lag", k}, {"theta", theta}, {"value", v}});
  }
  report.write(args.out);
}

// ---------------------------------------------------------------- car ----

struct CarArgs {
  int n = 0;
  int order = 1;
  double a = 0.0;
  double sigma2 = 1.0;
  OutputOptions out;
};

void run_car(const CarArgs& args) {
  const circmat::CarSpec spec =
      circmat::CarSpec::create(args.n, args.order, args.a, args.sigma2);
  const circmat::CirculantMatrix precision = circmat::build_precision(spec);
  const circmat::LagCovariance curve = circmat::car_covariance_curve(spec);
  // create() ran the PSD check; reaching here means it holds.
  Report report("car");
  report.meta("n", spec.n);
  report.meta("order", spec.order);
  report.meta("a", spec.a);
  report.meta("sigma2", spec.sigma2);
  if (spec.order == 2) {
    report.meta("a1", spec.a1());
    report.meta("a2", spec.a2());
  }
  report.meta_break();
  report.meta("beta", spec.beta());
  report.meta("log_beta", spec.log_beta());
  report.meta("psd", std::string("true"));
  report.meta_break();
  report.header({"lag", "theta", "precision_row", "covariance"});
  for (int k = 0; k < spec.n; ++k) {
    const double theta = static_cast<double>(k) / spec.n;
    const double p = precision.first_row[static_cast<std::size_t>(k)];
    const double c = curve.values[static_cast<std::size_t>(k)];
    report.row({std::to_string(k), g9(theta), g9(p), g9(c)},
               {{"lag", k},
                {"theta", theta},
                {"precision_row", p},
                {"covariance", c}});
  }
  report.write(args.out);
}

// -------------------------------------------------------------- match ----

struct MatchArgs {
  double kappa = 0.0;
  int alpha = 1;
  int n = 0;
  bool besag = false;
  OutputOptions out;
};

void run_match(const MatchArgs& args) {
  const circmat::CurveComparison cmp =
      circmat::compare_curves(args.kappa, args.alpha, args.n);

  Report report("match");
  report.meta("alpha", args.alpha);
  report.meta("kappa", args.kappa);
  report.meta("n", args.n);
  report.meta_break();
  report.meta("order", cmp.car.order);
  report.meta("a", cmp.car.a);
  report.meta("sigma2", cmp.car.sigma2);
  if (cmp.car.order == 2) {
    report.meta("a1", cmp.car.a1());
    report.meta("a2", cmp.car.a2());
  }
  if (args.besag)
    report.meta("besag_a", circmat::besag_approx_a(args.kappa, args.n));
  report.meta_break();
  report.meta("discrepancy_factor", cmp.discrepancy_factor);
  report.meta("max_corr_diff", cmp.max_corr_diff);
  report.meta("max_abs_diff", cmp.max_abs_diff);
  report.meta_break();
  report.header({"lag", "theta", "matern_cov", "car_cov", "matern_corr",
                 "car_corr", "corr_diff"});
  for (const circmat::LagComparisonRow& r : cmp.rows) {
    report.row({std::to_string(r.lag), g9(r.theta), g9(r.matern_cov),
                g9(r.car_cov), g9(r.matern_corr), g9(r.car_corr),
                g9(r.corr_diff)},
               {{"lag", r.lag},
                {"theta", r.theta},
                {"matern_cov", r.matern_cov},
                {"car_cov", r.car_cov},
                {"matern_corr", r.matern_corr},
                {"car_corr", r.car_corr},
                {"corr_diff", r.corr_diff}});
  }
  if (cmp.discrepancy_factor > 1.05) {
    std::cerr << "warning: discrepancy factor " << g9(cmp.discrepancy_factor)
              << " exceeds 1.05; increase n for a closer match\n";
  }
  report.write(args.out);
}

// ------------------------------------------------------------ figure1 ----

struct Figure1Args {
  double kappa = 10.0;
  int n_left = 10;
  int n_right = 50;
  OutputOptions out;
};

void run_figure1(const Figure1Args& args) {
  const circmat::CurveComparison left =
      circmat::compare_curves(args.kappa, 2, args.n_left);
  const circmat::CurveComparison right =
      circmat::compare_curves(args.kappa, 2, args.n_right);

  Report report("figure1");
  report.meta("kappa", args.kappa);
  report.meta("alpha", 2);
  report.meta("n_left", args.n_left);
  report.meta("n_right", args.n_right);
  report.meta_break();
  report.meta("max_corr_diff_left", left.max_corr_diff);
  report.meta("max_corr_diff_right", right.max_corr_diff);
  report.meta_break();
  report.header(
      {"panel", "lag", "theta", "matern_corr", "car_corr", "corr_diff"});
  const auto emit = [&](const char* panel, const circmat::CurveComparison& c) {
    for (const circmat::LagComparisonRow& r : c.rows) {
      report.row({panel, std::to_string(r.lag), g9(r.theta), g9(r.matern_corr),
                  g9(r.car_corr), g9(r.corr_diff)},
                 {{"panel", panel},
                  {"lag", r.lag},
                  {"theta", r.theta},
                  {"matern_corr", r.matern_corr},
                  {"car_corr", r.car_corr},
                  {"corr_diff", r.corr_diff}});
    }
  };
  emit("left", left);
  emit("right", right);
  report.write(args.out);
}

// ------------------------------------------------------------- sample ----

struct ModelArgs {
  std::optional<double> kappa;
  std::optional<double> alpha;
  double variance_scale = 1.0;
  std::optional<int> order;
  std::optional<double> a;
  std::optional<double> sigma2;
  double tol = 1e-12;
};

// Either a circular covariance model (--kappa/--alpha) or a CAR model
// (--order/--a/--sigma2).
circmat::LagCovariance model_curve(const ModelArgs& m, int n,
                                   Report* report) {
  const bool matern = m.kappa.has_value() || m.alpha.has_value();
  const bool car =
      m.order.has_value() || m.a.has_value() || m.sigma2.has_value();
  if (matern == car)
    throw std::invalid_argument(
        "specify either --kappa/--alpha or --order/--a/--sigma2");
  if (matern) {
    if (!m.kappa || !m.alpha)
      throw std::invalid_argument("--kappa and --alpha are both required");
    circmat::MaternParams params{*m.kappa, *m.alpha, m.variance_scale};
    params.validate();
    report->meta("model", std::string("matern"));
    report->meta("kappa", params.kappa);
    report->meta("alpha", params.alpha);
    report->meta("variance_scale", params.variance_scale);
    return circmat::matern_curve(params, n, m.tol);
  }
  if (!m.order || !m.a || !m.sigma2)
    throw std::invalid_argument("--order, --a and --sigma2 are all required");
  const circmat::CarSpec spec =
      circmat::CarSpec::create(n, *m.order, *m.a, *m.sigma2);
  report->meta("model", std::string("car"));
  report->meta("order", spec.order);
  report->meta("a", spec.a);
  report->meta("sigma2", spec.sigma2);
  return circmat::car_covariance_curve(spec);
}

struct SampleArgs {
  ModelArgs model;
  int n = 0;
  int replicates = 1;
  std::uint64_t seed = 0;
  bool summary = false;
  OutputOptions out;
};

void run_sample(const SampleArgs& args) {
  if (args.replicates < 1)
    throw std::invalid_argument("need at least one replicate");
  Report report("sample");
  const circmat::LagCovariance curve = model_curve(args.model, args.n, &report);
  report.meta("n", args.n);
  report.meta("replicates", args.replicates);
  report.meta("seed", args.seed);
  report.meta_break();

  if (!args.summary) {
    report.header({"replicate", "index", "value"});
    for (int r = 0; r < args.replicates; ++r) {
      const circmat::GridField field = circmat::sample_field(
          curve,
          circmat::derive_seed(args.seed, static_cast<std::uint64_t>(r)));
      for (int j = 0; j < args.n; ++j) {
        const double v = field.values[static_cast<std::size_t>(j)];
        report.row({std::to_string(r), std::to_string(j), g9(v)},
                   {{"replicate", r}, {"index", j}, {"value", v}});
      }
    }
    report.write(args.out);
    return;
  }

  // Per-lag Monte Carlo summary, accumulated replicate by replicate.
  const int n = args.n;
  std::vector<double> sum(static_cast<std::size_t>(n), 0.0);
  std::vector<double> sumsq(static_cast<std::size_t>(n), 0.0);
  for (int r = 0; r < args.replicates; ++r) {
    const circmat::GridField field = circmat::sample_field(
        curve, circmat::derive_seed(args.seed, static_cast<std::uint64_t>(r)));
    for (int lag = 0; lag < n; ++lag) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        s += field.values[static_cast<std::size_t>(j)] *
             field.values[static_cast<std::size_t>((j + lag) % n)];
      s /= n;
      sum[static_cast<std::size_t>(lag)] += s;
      sumsq[static_cast<std::size_t>(lag)] += s * s;
    }
  }
  report.header(
      {"lag", "theta", "empirical_cov", "model_cov", "abs_error", "std_error"});
  const double r_count = args.replicates;
  for (int lag = 0; lag < n; ++lag) {
    const double mean = sum[static_cast<std::size_t>(lag)] / r_count;
    double se = 0.0;
    if (args.replicates > 1) {
      const double var =
          (sumsq[static_cast<std::size_t>(lag)] - r_count * mean * mean) /
          (r_count - 1.0);
      se = std::sqrt(std::max(0.0, var) / r_count);
    }
    const double model_v = curve.values[static_cast<std::size_t>(lag)];
    const double theta = static_cast<double>(lag) / n;
    report.row({std::to_string(lag), g9(theta), g9(mean), g9(model_v),
                g9(std::abs(mean - model_v)), g9(se)},
               {{"lag", lag},
                {"theta", theta},
                {"empirical_cov", mean},
                {"model_cov", model_v},
                {"abs_error", std::abs(mean - model_v)},
                {"std_error", se}});
  }
  report.write(args.out);
}

// ---------------------------------------------------------------- fit ----

struct FitArgs {
  std::string input;
  double alpha = 1.0;
  double bracket_lo = 1e-3;
  double bracket_hi = 1e3;
  OutputOptions out;
};

std::vector<circmat::GridField> read_fields_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open field file: " + path);
  std::string line;
  bool saw_header = false;
  std::map<int, std::vector<std::pair<int, double>>> by_replicate;
  std::vector<int> order;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      if (line != "replicate,index,value")
        throw std::invalid_argument(
            "field file must have header replicate,index,value");
      saw_header = true;
      continue;
    }
    std::istringstream ss(line);
    std::string cell;
    int rep = 0, idx = 0;
    double value = 0.0;
    try {
      std::getline(ss, cell, ',');
      rep = std::stoi(cell);
      std::getline(ss, cell, ',');
      idx = std::stoi(cell);
      std::getline(ss, cell, ',');
      value = std::stod(cell);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed field row: " + line);
    }
    if (!std::isfinite(value))
      throw std::invalid_argument("non-finite field value");
    if (by_replicate.find(rep) == by_replicate.end()) order.push_back(rep);
    by_replicate[rep].emplace_back(idx, value);
  }
  if (!saw_header || order.empty())
    throw std::invalid_argument("field file contains no data");

  std::vector<circmat::GridField> fields;
  int n = -1;
  for (int rep : order) {
    auto& entries = by_replicate[rep];
    std::sort(entries.begin(), entries.end());
    const int count = static_cast<int>(entries.size());
    if (n < 0) n = count;
    if (count != n)
      throw std::invalid_argument("replicates have differing lengths");
    circmat::GridField field;
    field.n = n;
    field.values.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      if (entries[static_cast<std::size_t>(j)].first != j)
        throw std::invalid_argument("field indices must cover 0..n-1");
      field.values[static_cast<std::size_t>(j)] =
          entries[static_cast<std::size_t>(j)].second;
    }
    fields.push_back(std::move(field));
  }
  return fields;
}

void run_fit(const FitArgs& args) {
  const std::vector<circmat::GridField> fields = read_fields_csv(args.input);
  const circmat::FitResult fit =
      circmat::fit_kappa(fields, args.alpha, args.bracket_lo, args.bracket_hi);
  Report report("fit");
  report.meta("alpha", args.alpha);
  report.meta("n", fields[0].n);
  report.meta("fields", static_cast<int>(fields.size()));
  report.meta("bracket_lo", args.bracket_lo);
  report.meta("bracket_hi", args.bracket_hi);
  report.meta_break();
  report.header({"kappa", "log_likelihood", "boundary_hit", "iterations"});
  report.row({g9(fit.kappa), g9(fit.log_likelihood),
              fit.boundary_hit ? "true" : "false",
              std::to_string(fit.iterations)},
             {{"kappa", fit.kappa},
              {"log_likelihood", fit.log_likelihood},
              {"boundary_hit", fit.boundary_hit},
              {"iterations", fit.iterations}});
  report.write(args.out);
}

// --------------------------------------------------------- ergodicity ----

struct ErgodicityArgs {
  double kappa = 10.0;
  double alpha = 1.0;
  std::vector<int> sizes{16, 64, 256};
  int replicates = 0;
  std::uint64_t seed = 0;
  double extra_variance = 0.0;
  OutputOptions out;
};

void run_ergodicity(const ErgodicityArgs& args) {
  const circmat::MaternParams params{args.kappa, args.alpha, 1.0};
  const circmat::ErgodicityReport rep = circmat::run_ergodicity_experiment(
      params, args.sizes, args.replicates, args.seed, args.extra_variance);
  Report report("ergodicity");
  report.meta("kappa", args.kappa);
  report.meta("alpha", args.alpha);
  report.meta("replicates", args.replicates);
  report.meta("seed", args.seed);
  report.meta("extra_variance", args.extra_variance);
  report.meta_break();
  report.meta("floor", rep.floor_variance);
  report.meta_break();
  report.header({"n", "variance", "std_error", "floor", "z"});
  for (const circmat::ErgodicityEntry& e : rep.entries) {
    const double z = (e.variance - rep.floor_variance) / e.std_error;
    report.row({std::to_string(e.n), g9(e.variance), g9(e.std_error),
                g9(rep.floor_variance), g9(z)},
               {{"n", e.n},
                {"variance", e.variance},
                {"std_error", e.std_error},
                {"floor", rep.floor_variance},
                {"z", z}});
  }
  report.write(args.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circular covariance fields and their CAR lattice models"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Read options from a key=value file (flags win)");

  CovArgs cov;
  CLI::App* cov_cmd = app.add_subcommand("cov", "Tabulate a covariance curve");
  cov_cmd->add_option("--kappa", cov.kappa, "Inverse range")->required();
  cov_cmd->add_option("--alpha", cov.alpha, "Smoothness exponent")->required();
  cov_cmd->add_option("--n", cov.n, "Lattice size")->required();
  cov_cmd->add_option("--variance-scale", cov.variance_scale, "Variance scale");
  CLI::Option* closed_opt =
      cov_cmd->add_flag("--closed", cov.closed, "Force the closed form");
  cov_cmd->add_flag("--series", cov.series, "Force the spectral series")
      ->excludes(closed_opt);
  cov_cmd->add_option("--tol", cov.tol, "Series truncation tolerance");
  add_output_options(cov_cmd, &cov.out);

  CarArgs car;
  CLI::App* car_cmd =
      app.add_subcommand("car", "CAR precision row and covariance curve");
  car_cmd->add_option("--n", car.n, "Lattice size")->required();
  car_cmd->add_option("--order", car.order, "CAR order (1 or 2)")->required();
  car_cmd->add_option("--a", car.a, "Neighbour weight")->required();
  car_cmd->add_option("--sigma2", car.sigma2, "Conditional variance")
      ->required();
  add_output_options(car_cmd, &car.out);

  MatchArgs match;
  CLI::App* match_cmd =
      app.add_subcommand("match", "Match a CAR model to a circular covariance");
  match_cmd->add_option("--kappa", match.kappa, "Inverse range")->required();
  match_cmd->add_option("--alpha", match.alpha, "Smoothness (1 or 2)")
      ->required();
  match_cmd->add_option("--n", match.n, "Lattice size")->required();
  match_cmd->add_flag("--besag", match.besag,
                      "Also report the Taylor-matched neighbour weight");
  add_output_options(match_cmd, &match.out);

  Figure1Args fig;
  CLI::App* fig_cmd = app.add_subcommand(
      "figure1", "Two-panel correlation comparison (alpha = 2)");
  fig_cmd->add_option("--kappa", fig.kappa, "Inverse range");
  fig_cmd->add_option("--n-left", fig.n_left, "Left panel lattice size");
  fig_cmd->add_option("--n-right", fig.n_right, "Right panel lattice size");
  add_output_options(fig_cmd, &fig.out);

  SampleArgs sample;
  CLI::App* sample_cmd =
      app.add_subcommand("sample", "Draw lattice fields from a model");
  sample_cmd->add_option("--n", sample.n, "Lattice size")->required();
  sample_cmd->add_option("--kappa", sample.model.kappa, "Inverse range");
  sample_cmd->add_option("--alpha", sample.model.alpha, "Smoothness exponent");
  sample_cmd->add_option("--variance-scale", sample.model.variance_scale,
                         "Variance scale");
  sample_cmd->add_option("--order", sample.model.order, "CAR order");
  sample_cmd->add_option("--a", sample.model.a, "CAR neighbour weight");
  sample_cmd->add_option("--sigma2", sample.model.sigma2,
                         "CAR conditional variance");
  sample_cmd->add_option("--tol", sample.model.tol,
                         "Series tolerance (non-integer alpha)");
  sample_cmd->add_option("--replicates", sample.replicates, "Replicate count");
  sample_cmd
      ->add_option("--seed", sample.seed,
                   "Seed (required, never read from the environment)")
      ->required();
  sample_cmd->add_flag("--summary", sample.summary,
                       "Per-lag Monte Carlo summary instead of raw values");
  add_output_options(sample_cmd, &sample.out);

  FitArgs fit;
  CLI::App* fit_cmd =
      app.add_subcommand("fit", "Maximum-likelihood kappa from a field file");
  fit_cmd->add_option("--input", fit.input, "Field CSV (replicate,index,value)")
      ->required();
  fit_cmd->add_option("--alpha", fit.alpha, "Smoothness exponent (1, 2 or 3)")
      ->required();
  fit_cmd->add_option("--bracket-lo", fit.bracket_lo, "Lower kappa bracket");
  fit_cmd->add_option("--bracket-hi", fit.bracket_hi, "Upper kappa bracket");
  add_output_options(fit_cmd, &fit.out);

  ErgodicityArgs ergo;
  CLI::App* ergo_cmd = app.add_subcommand(
      "ergodicity", "Variance of the circle average under grid refinement");
  ergo_cmd->add_option("--kappa", ergo.kappa, "Inverse range")->required();
  ergo_cmd->add_option("--alpha", ergo.alpha, "Smoothness exponent")
      ->required();
  ergo_cmd->add_option("--sizes", ergo.sizes, "Grid sizes")->delimiter(',');
  ergo_cmd->add_option("--replicates", ergo.replicates, "Replicate count")
      ->required();
  ergo_cmd
      ->add_option("--seed", ergo.seed,
                   "Seed (required, never read from the environment)")
      ->required();
  ergo_cmd->add_option("--extra-variance", ergo.extra_variance,
                       "Variance of an added constant shift");
  add_output_options(ergo_cmd, &ergo.out);

  try {
    app.parse(argc, argv);
    if (cov_cmd->parsed()) run_cov(cov);
    if (car_cmd->parsed()) run_car(car);
    if (match_cmd->parsed()) run_match(match);
    if (fig_cmd->parsed()) run_figure1(fig);
    if (sample_cmd->parsed()) run_sample(sample);
    if (fit_cmd->parsed()) run_fit(fit);
    if (ergo_cmd->parsed()) run_ergodicity(ergo);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const circmat::numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
