// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "circmat/circulant.hpp"
#include "circmat/matern.hpp"
#include "circmat/rng.hpp"

namespace circmat {

// One realization of a zero-mean Gaussian field on the n-point lattice.
struct GridField {
  int n = 0;
  std::vector<double> values;
  std::string model;       // provenance descriptor
  std::uint64_t seed = 0;  // seed the sampler was run with
};

// Exact draw with covariance circulant(curve), by scaling independent
// standard-normal frequency variates with the square roots of the curve's
// DFT eigenvalues and transforming back. Deterministic given the seed.
// Throws numeric_error if an eigenvalue is negative beyond the PSD tolerance.
GridField sample_field(const LagCovariance& curve, std::uint64_t seed);

// Lattice analogue of the circle-average estimator: (1/n) sum values.
double circle_average(const GridField& field);

struct ErgodicityEntry {
  int n = 0;
  double variance = 0.0;   // sample variance of the circle average
  double std_error = 0.0;  // Gaussian standard error of that variance
};

struct ErgodicityReport {
  MaternParams params;
  std::vector<int> grid_sizes;
  int replicates = 0;
  std::uint64_t seed = 0;
  double extra_variance = 0.0;   // sigma0^2 of the added constant, 0 if none
  double floor_variance = 0.0;   // kappa^(-2 alpha) + sigma0^2
  std::vector<ErgodicityEntry> entries;
};

// Variance of the circle average across grid refinements. The variance does
// not decay with n: it stays at the k = 0 spectral coefficient
// kappa^(-2 alpha). With extra_variance > 0 every replicate is shifted by an
// independent N(0, sigma0^2) constant, which raises the variance additively
// at every grid size; the average cannot separate the shift from the mean.
ErgodicityReport run_ergodicity_experiment(const MaternParams& params,
                                           std::span<const int> grid_sizes,
                                           int replicates, std::uint64_t seed,
                                           double extra_variance = 0.0);

// Exact zero-mean Gaussian log-density of the field under circulant(curve):
// log det via the eigenvalue sum, quadratic form via circulant_solve.
// Requires strictly positive eigenvalues and matching n.
double log_likelihood(const LagCovariance& curve, const GridField& field);

struct FitResult {
  double kappa = 0.0;
  double log_likelihood = 0.0;
  bool boundary_hit = false;  // maximum pinned at a bracket end
  int iterations = 0;
};

// Maximum likelihood for kappa over the given fields (common n), alpha fixed
// in {1,2,3}. Golden-section search on log(kappa); the bracket shrinks below
// 1e-6 relative width. Monotone likelihoods are reported as boundary hits.
FitResult fit_kappa(std::span<const GridField> fields, double alpha,
                    double kappa_lo = 1e-3, double kappa_hi = 1e3);

struct Prediction {
  int index = 0;
  double mean = 0.0;
  double variance = 0.0;
};

// Gaussian conditioning on the observed sites under circulant(curve).
// Observed targets reproduce their observation with variance 0; with no
// observations the prior (0, curve.values[0]) is returned.
std::vector<Prediction> conditional_predict(
    const LagCovariance& curve,
    const std::vector<std::pair<int, double>>& observed,
    const std::vector<int>& targets);

struct LagStatistic {
  int lag = 0;
  double mean = 0.0;       // Monte Carlo estimate of the lag covariance
  double std_error = 0.0;  // standard error across replicates
};

// Empirical lag covariance (1/n) sum_j X_j X_{j+lag}, averaged over fields.
LagStatistic empirical_lag_covariance(std::span<const GridField> fields,
                                      int lag);

}  // namespace circmat
