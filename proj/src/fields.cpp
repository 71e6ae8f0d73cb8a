// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#include "circmat/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "circmat/common.hpp"
#include "circmat/kernels.hpp"

namespace circmat {

namespace {

// Dense SPD Cholesky for the observation block of the kriging system.
// Row-major lower factor in place; throws numeric_error if not positive
// definite.
class SpdCholesky {
 public:
  explicit SpdCholesky(std::vector<double> a, int m) : a_(std::move(a)), m_(m) {
    for (int j = 0; j < m_; ++j) {
      double d = at(j, j);
      for (int k = 0; k < j; ++k) d -= at(j, k) * at(j, k);
      if (!(d > 0.0))
        throw numeric_error("observation covariance is singular");
      const double root = std::sqrt(d);
      at(j, j) = root;
      for (int i = j + 1; i < m_; ++i) {
        double v = at(i, j);
        for (int k = 0; k < j; ++k) v -= at(i, k) * at(j, k);
        at(i, j) = v / root;
      }
    }
  }

  std::vector<double> solve(std::vector<double> b) const {
    for (int i = 0; i < m_; ++i) {
      double v = b[static_cast<std::size_t>(i)];
      for (int k = 0; k < i; ++k) v -= at(i, k) * b[static_cast<std::size_t>(k)];
      b[static_cast<std::size_t>(i)] = v / at(i, i);
    }
    for (int i = m_ - 1; i >= 0; --i) {
      double v = b[static_cast<std::size_t>(i)];
      for (int k = i + 1; k < m_; ++k)
        v -= at(k, i) * b[static_cast<std::size_t>(k)];
      b[static_cast<std::size_t>(i)] = v / at(i, i);
    }
    return b;
  }

 private:
  double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * m_ + j]; }
  double at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * m_ + j];
  }

  std::vector<double> a_;
  int m_;
};

double curve_at_lag(const LagCovariance& curve, int i, int j) {
  int d = (i - j) % curve.n;
  if (d < 0) d += curve.n;
  return curve.values[static_cast<std::size_t>(d)];
}

struct Spectrum {
  detail::TrigTables tables;
  std::vector<double> lambda;
};

Spectrum curve_spectrum(const LagCovariance& curve) {
  Spectrum s;
  s.tables = detail::trig_tables(curve.n);
  s.lambda.resize(static_cast<std::size_t>(curve.n));
  kernels::ops().circulant_eigenvalues(curve.values.data(), curve.n,
                                       s.tables.cos_t.data(), s.lambda.data());
  return s;
}

// Frequency-domain draw shared by sample_field and the experiment loop.
// Draw order per replicate: k = 0, then (re, im) pairs for 0 < k < n/2,
// then the Nyquist coefficient for even n.
void synthesize(const Spectrum& spec, int n, NormalSampler& normal,
                double psd_floor, std::vector<double>& out) {
  const int h = n / 2;
  const bool even = (n % 2) == 0;
  const int kmax = even ? h - 1 : h;
  std::vector<double> re(static_cast<std::size_t>(h) + 1);
  std::vector<double> im(static_cast<std::size_t>(h) + 1, 0.0);
  const auto checked_sqrt = [&](double lambda) {
    if (lambda < -psd_floor)
      throw numeric_error("covariance curve is not positive semidefinite");
    return lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  };
  re[0] = checked_sqrt(spec.lambda[0]) * normal();
  for (int k = 1; k <= kmax; ++k) {
    const double amp =
        checked_sqrt(spec.lambda[static_cast<std::size_t>(k)]) / std::sqrt(2.0);
    re[static_cast<std::size_t>(k)] = amp * normal();
    im[static_cast<std::size_t>(k)] = amp * normal();
  }
  if (even)
    re[static_cast<std::size_t>(h)] =
        checked_sqrt(spec.lambda[static_cast<std::size_t>(h)]) * normal();

  out.resize(static_cast<std::size_t>(n));
  kernels::ops().inverse_half_spectrum(re.data(), im.data(), n,
                                       spec.tables.cos_t.data(),
                                       spec.tables.sin_t.data(), out.data());
  const double scale = std::sqrt(static_cast<double>(n));
  for (double& v : out) v *= scale;
}

double sample_variance(const std::vector<double>& xs, double* std_error) {
  const std::size_t r = xs.size();
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / r;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = ss / (static_cast<double>(r) - 1.0);
  if (std_error) *std_error = var * std::sqrt(2.0 / (static_cast<double>(r) - 1.0));
  return var;
}

}  // namespace

GridField sample_field(const LagCovariance& curve, std::uint64_t seed) {
  const Spectrum spec = curve_spectrum(curve);
  NormalSampler normal(seed);
  GridField field;
  field.n = curve.n;
  field.seed = seed;
  field.model = "curve";
  synthesize(spec, curve.n, normal, 1e-9 * std::abs(curve.values[0]),
             field.values);
  return field;
}

double circle_average(const GridField& field) {
  if (field.n <= 0 || field.values.empty())
    throw std::invalid_argument("empty field");
  return std::accumulate(field.values.begin(), field.values.end(), 0.0) /
         field.n;
}

ErgodicityReport run_ergodicity_experiment(const MaternParams& params,
                                           std::span<const int> grid_sizes,
                                           int replicates, std::uint64_t seed,
                                           double extra_variance) {
  params.validate();
  if (grid_sizes.empty())
    throw std::invalid_argument("at least one grid size required");
  if (replicates < 2)
    throw std::invalid_argument("need at least 2 replicates");
  if (extra_variance < 0.0)
    throw std::invalid_argument("extra variance must be nonnegative");

  ErgodicityReport report;
  report.params = params;
  report.grid_sizes.assign(grid_sizes.begin(), grid_sizes.end());
  report.replicates = replicates;
  report.seed = seed;
  report.extra_variance = extra_variance;
  report.floor_variance =
      std::pow(params.kappa, -2.0 * params.alpha) + extra_variance;

  const double sigma0 = std::sqrt(extra_variance);
  std::vector<double> buffer;
  std::vector<double> averages(static_cast<std::size_t>(replicates));
  for (std::size_t s = 0; s < report.grid_sizes.size(); ++s) {
    const int n = report.grid_sizes[s];
    const LagCovariance curve = matern_curve(params, n);
    const Spectrum spec = curve_spectrum(curve);
    const double psd_floor = 1e-9 * curve.values[0];
    const std::uint64_t size_seed = derive_seed(seed, s);
    for (int r = 0; r < replicates; ++r) {
      NormalSampler normal(derive_seed(size_seed, static_cast<std::uint64_t>(r)));
      synthesize(spec, n, normal, psd_floor, buffer);
      double avg = std::accumulate(buffer.begin(), buffer.end(), 0.0) / n;
      if (sigma0 > 0.0) avg += sigma0 * normal();
      averages[static_cast<std::size_t>(r)] = avg;
    }
    ErgodicityEntry entry;
    entry.n = n;
    entry.variance = sample_variance(averages, &entry.std_error);
    report.entries.push_back(entry);
  }
  return report;
}

double log_likelihood(const LagCovariance& curve, const GridField& field) {
  if (field.n != curve.n)
    throw std::invalid_argument("field and covariance sizes differ");
  const std::vector<double> lambda = detail::eigenvalues_of_row(curve.values);
  double lambda_max = 0.0;
  for (double l : lambda) lambda_max = std::max(lambda_max, std::abs(l));
  double logdet = 0.0;
  for (double l : lambda) {
    if (!(l > 1e-14 * lambda_max))
      throw numeric_error("covariance matrix is singular");
    logdet += std::log(l);
  }
  const std::vector<double> solved =
      circulant_solve(curve.to_circulant(), field.values);
  const double quad = kernels::ops().dot(field.values.data(), solved.data(),
                                         field.values.size());
  constexpr double log_two_pi = 1.8378770664093454836;
  return -0.5 * (field.n * log_two_pi + logdet + quad);
}

FitResult fit_kappa(std::span<const GridField> fields, double alpha,
                    double kappa_lo, double kappa_hi) {
  if (fields.empty()) throw std::invalid_argument("need at least one field");
  const double rounded = std::round(alpha);
  if (std::abs(alpha - rounded) > 1e-9 || rounded < 1.0 || rounded > 3.0)
    throw std::invalid_argument("fit supports alpha in {1,2,3}");
  if (!(kappa_lo > 0.0) || !(kappa_hi > kappa_lo))
    throw std::invalid_argument("invalid kappa bracket");
  const int n = fields[0].n;
  for (const GridField& f : fields) {
    if (f.n != n) throw std::invalid_argument("fields must share one lattice");
  }

  // The field spectra do not depend on kappa: fold them once, then each
  // likelihood evaluation is O(n) plus one curve tabulation.
  const detail::TrigTables tables = detail::trig_tables(n);
  const int h = n / 2;
  const bool even = (n % 2) == 0;
  std::vector<double> power(static_cast<std::size_t>(h) + 1, 0.0);
  std::vector<double> re(static_cast<std::size_t>(h) + 1);
  std::vector<double> im(static_cast<std::size_t>(h) + 1);
  for (const GridField& f : fields) {
    kernels::ops().forward_half_spectrum(f.values.data(), n,
                                         tables.cos_t.data(),
                                         tables.sin_t.data(), re.data(),
                                         im.data());
    for (int k = 0; k <= h; ++k) {
      const double weight = (k == 0 || (even && k == h)) ? 1.0 : 2.0;
      power[static_cast<std::size_t>(k)] +=
          weight * (re[static_cast<std::size_t>(k)] * re[static_cast<std::size_t>(k)] +
                    im[static_cast<std::size_t>(k)] * im[static_cast<std::size_t>(k)]);
    }
  }

  const double f_count = static_cast<double>(fields.size());
  std::vector<double> lambda(static_cast<std::size_t>(n));
  const auto total_loglik = [&](double log_kappa) {
    const MaternParams params{std::exp(log_kappa), rounded, 1.0};
    const LagCovariance curve = matern_curve(params, n);
    kernels::ops().circulant_eigenvalues(curve.values.data(), n,
                                         tables.cos_t.data(), lambda.data());
    double logdet = 0.0;
    double quad = 0.0;
    for (int k = 0; k <= h; ++k) {
      const double l = lambda[static_cast<std::size_t>(k)];
      if (!(l > 0.0)) return -std::numeric_limits<double>::infinity();
      const double weight = (k == 0 || (even && k == h)) ? 1.0 : 2.0;
      logdet += weight * std::log(l);
      quad += power[static_cast<std::size_t>(k)] / l;
    }
    quad /= n;
    constexpr double log_two_pi = 1.8378770664093454836;
    return -0.5 * (f_count * (n * log_two_pi + logdet) + quad);
  };

  // Golden-section maximization on log(kappa).
  const double inv_phi = 0.6180339887498949;
  double a = std::log(kappa_lo);
  double b = std::log(kappa_hi);
  const double span0 = b - a;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = total_loglik(x1);
  double f2 = total_loglik(x2);
  int iterations = 0;
  while (b - a > 1e-6 && iterations < 200) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = total_loglik(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = total_loglik(x1);
    }
    ++iterations;
  }
  const double x_best = f1 > f2 ? x1 : x2;

  FitResult result;
  result.kappa = std::exp(x_best);
  result.log_likelihood = std::max(f1, f2);
  result.iterations = iterations;
  result.boundary_hit = (x_best - std::log(kappa_lo)) < 1e-4 * span0 ||
                        (std::log(kappa_hi) - x_best) < 1e-4 * span0;
  return result;
}

std::vector<Prediction> conditional_predict(
    const LagCovariance& curve,
    const std::vector<std::pair<int, double>>& observed,
    const std::vector<int>& targets) {
  const int n = curve.n;
  std::vector<int> seen;
  seen.reserve(observed.size());
  for (const auto& [idx, value] : observed) {
    (void)value;
    if (idx < 0 || idx >= n)
      throw std::invalid_argument("observed index out of range");
    seen.push_back(idx);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw std::invalid_argument("observed indices must be distinct");
  for (int t : targets) {
    if (t < 0 || t >= n) throw std::invalid_argument("target out of range");
  }

  const double prior = curve.values[0];
  std::vector<Prediction> out;
  out.reserve(targets.size());
  if (observed.empty()) {
    for (int t : targets) out.push_back({t, 0.0, prior});
    return out;
  }

  const int m = static_cast<int>(observed.size());
  std::vector<double> s_oo(static_cast<std::size_t>(m) * m);
  std::vector<double> y(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    y[static_cast<std::size_t>(i)] = observed[static_cast<std::size_t>(i)].second;
    for (int j = 0; j < m; ++j) {
      s_oo[static_cast<std::size_t>(i) * m + j] =
          curve_at_lag(curve, observed[static_cast<std::size_t>(i)].first,
                       observed[static_cast<std::size_t>(j)].first);
    }
  }
  const SpdCholesky chol(std::move(s_oo), m);
  const std::vector<double> weights = chol.solve(y);

  std::vector<double> cross(static_cast<std::size_t>(m));
  for (int t : targets) {
    for (int i = 0; i < m; ++i) {
      cross[static_cast<std::size_t>(i)] =
          curve_at_lag(curve, t, observed[static_cast<std::size_t>(i)].first);
    }
    double mean = 0.0;
    for (int i = 0; i < m; ++i)
      mean += cross[static_cast<std::size_t>(i)] * weights[static_cast<std::size_t>(i)];
    const std::vector<double> solved_cross = chol.solve(cross);
    double reduction = 0.0;
    for (int i = 0; i < m; ++i)
      reduction +=
          cross[static_cast<std::size_t>(i)] * solved_cross[static_cast<std::size_t>(i)];
    out.push_back({t, mean, std::max(0.0, prior - reduction)});
  }
  return out;
}

LagStatistic empirical_lag_covariance(std::span<const GridField> fields,
                                      int lag) {
  if (fields.empty()) throw std::invalid_argument("need at least one field");
  const int n = fields[0].n;
  if (lag < 0 || lag >= n) throw std::invalid_argument("lag out of range");
  std::vector<double> stats;
  stats.reserve(fields.size());
  for (const GridField& f : fields) {
    if (f.n != n) throw std::invalid_argument("fields must share one lattice");
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      s += f.values[static_cast<std::size_t>(j)] *
           f.values[static_cast<std::size_t>((j + lag) % n)];
    }
    stats.push_back(s / n);
  }
  LagStatistic out;
  out.lag = lag;
  const double r = static_cast<double>(stats.size());
  out.mean = std::accumulate(stats.begin(), stats.end(), 0.0) / r;
  if (stats.size() > 1) {
    double ss = 0.0;
    for (double x : stats) ss += (x - out.mean) * (x - out.mean);
    out.std_error = std::sqrt(ss / (r - 1.0) / r);
  }
  return out;
}

}  // namespace circmat
