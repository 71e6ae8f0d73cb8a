// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#include <cmath>
#include <random>

#include <doctest.h>

#include "circmat/car.hpp"
#include "circmat/circulant.hpp"
#include "circmat/common.hpp"
#include "support/dense.hpp"

using namespace circmat;

TEST_CASE("spec validation and derived quantities") {
  CHECK_THROWS_AS(CarSpec::create(3, 1, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(CarSpec::create(3, 1, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(CarSpec::create(3, 1, -0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(CarSpec::create(4, 2, 0.3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(CarSpec::create(2, 1, 0.3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(CarSpec::create(5, 3, 0.3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(CarSpec::create(5, 1, 0.3, 0.0), std::invalid_argument);

  const CarSpec c = CarSpec::create(3, 1, 0.3, 1.0);
  CHECK(c.beta() == doctest::Approx(3.0).epsilon(1e-14));

  const CarSpec c2 = CarSpec::create(8, 2, 0.490164, 1.0);
  CHECK(c2.a1() == doctest::Approx(0.662151).epsilon(1e-6));
  CHECK(c2.a2() == doctest::Approx(-0.162281).epsilon(1e-6));
}

TEST_CASE("beta identity") {
  for (double t : {0.05, 0.3, 1.0, 2.5}) {
    const double a = 1.0 / (2.0 * std::cosh(t));
    const CarSpec spec = CarSpec::create(8, 1, a, 1.0);
    CHECK(spec.beta() == doctest::Approx(std::exp(t)).epsilon(1e-12));
  }
}

TEST_CASE("build_precision") {
  SUBCASE("order 1 row") {
    const CirculantMatrix p =
        build_precision(CarSpec::create(3, 1, 0.3, 1.0));
    CHECK(p.first_row[0] == doctest::Approx(1.0));
    CHECK(p.first_row[1] == doctest::Approx(-0.3));
    CHECK(p.first_row[2] == doctest::Approx(-0.3));
  }
  SUBCASE("order 2 row carries both taps and sigma2") {
    const CarSpec spec = CarSpec::create(7, 2, 0.3, 0.5);
    const CirculantMatrix p = build_precision(spec);
    CHECK(p.first_row[0] == doctest::Approx(2.0));
    CHECK(p.first_row[1] == doctest::Approx(-spec.a1() * 2.0));
    CHECK(p.first_row[2] == doctest::Approx(-spec.a2() * 2.0));
    CHECK(p.first_row[3] == doctest::Approx(0.0));
    CHECK(p.first_row[5] == doctest::Approx(-spec.a2() * 2.0));
    CHECK(p.first_row[6] == doctest::Approx(-spec.a1() * 2.0));
  }
  SUBCASE("eigenvalues strictly positive across the domain") {
    for (int order : {1, 2}) {
      for (double a : {0.01, 0.25, 0.49, 0.4999}) {
        const CarSpec spec = CarSpec::create(16, order, a, 1.0);
        for (double l : dft_eigenvalues(build_precision(spec))) CHECK(l > 0.0);
      }
    }
  }
}

TEST_CASE("spectral covariance reference values") {
  const CarSpec spec = CarSpec::create(3, 1, 0.3, 1.0);
  CHECK(car_covariance_spectral(spec, 0) ==
        doctest::Approx(1.346154).epsilon(5e-7));
  CHECK(car_covariance_spectral(spec, 1) ==
        doctest::Approx(0.576923).epsilon(5e-7));
  CHECK_THROWS_AS(car_covariance_spectral(spec, 3), std::invalid_argument);
  CHECK_THROWS_AS(car_covariance_spectral(spec, -1), std::invalid_argument);
  SUBCASE("even in the lag") {
    const CarSpec s = CarSpec::create(9, 2, 0.21, 1.4);
    for (int lag = 1; lag < 9; ++lag)
      CHECK(car_covariance_spectral(s, lag) ==
            doctest::Approx(car_covariance_spectral(s, 9 - lag))
                .epsilon(1e-12));
  }
}

TEST_CASE("closed forms match the spectral sums") {
  SUBCASE("reference points") {
    const CarSpec spec = CarSpec::create(3, 1, 0.3, 1.0);
    CHECK(phi1_closed(0.0, spec) == doctest::Approx(1.346154).epsilon(5e-7));
    CHECK(phi1_closed(1.0 / 3, spec) ==
          doctest::Approx(0.576923).epsilon(5e-7));
    CHECK(phi1_closed(0.25, spec) ==
          doctest::Approx(phi1_closed(0.75, spec)).epsilon(1e-13));
  }
  SUBCASE("grid") {
    for (int n = 3; n <= 64; ++n) {
      for (double a : {0.05, 0.15, 0.25, 0.35, 0.45, 0.49}) {
        const CarSpec s1 = CarSpec::create(n, 1, a, 1.3);
        const double ref1 = phi1_closed(0.0, s1);
        for (int lag = 0; lag < n; ++lag) {
          CHECK(std::fabs(phi1_closed(static_cast<double>(lag) / n, s1) -
                          car_covariance_spectral(s1, lag)) <= 1e-10 * ref1);
        }
        if (n < 5) continue;
        const CarSpec s2 = CarSpec::create(n, 2, a, 0.7);
        const double ref2 = phi2_closed(0.0, s2);
        for (int lag = 0; lag < n; ++lag) {
          CHECK(std::fabs(phi2_closed(static_cast<double>(lag) / n, s2) -
                          car_covariance_spectral(s2, lag)) <= 1e-9 * ref2);
        }
      }
    }
  }
  SUBCASE("order mismatch rejected") {
    CHECK_THROWS_AS(phi1_closed(0.0, CarSpec::create(5, 2, 0.3, 1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(phi2_closed(0.0, CarSpec::create(5, 1, 0.3, 1.0)),
                    std::invalid_argument);
  }
}

TEST_CASE("closed forms match dense inversion") {
  for (int n = 3; n <= 16; ++n) {
    for (double a : {0.05, 0.25, 0.45, 0.49}) {
      for (int order : {1, 2}) {
        if (order == 2 && n < 5) continue;
        const CarSpec spec = CarSpec::create(n, order, a, 0.8);
        const testsupport::Dense cov = testsupport::invert(
            testsupport::circulant_dense(build_precision(spec).first_row));
        const double ref = cov.at(0, 0);
        for (int lag = 0; lag < n; ++lag) {
          const double closed =
              order == 1 ? phi1_closed(static_cast<double>(lag) / n, spec)
                         : phi2_closed(static_cast<double>(lag) / n, spec);
          CHECK(std::fabs(closed - cov.at(0, lag)) <= 1e-9 * ref);
        }
      }
    }
  }
}

TEST_CASE("phi_m spectral family") {
  SUBCASE("m = 1 reproduces phi1 without the sigma2 factor") {
    const CarSpec spec = CarSpec::create(3, 1, 0.3, 2.0);
    for (int lag = 0; lag < 3; ++lag)
      CHECK(phi_m_spectral(1, 3, 0.3, lag) ==
            doctest::Approx(phi1_closed(static_cast<double>(lag) / 3, spec) /
                            spec.sigma2)
                .epsilon(1e-12));
  }
  SUBCASE("maximal at lag zero") {
    for (int m : {1, 2, 3, 4}) {
      for (int lag = 1; lag < 7; ++lag)
        CHECK(phi_m_spectral(m, 7, 0.2, 0) >=
              phi_m_spectral(m, 7, 0.2, lag));
    }
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(phi_m_spectral(0, 7, 0.2, 0), std::invalid_argument);
    CHECK_THROWS_AS(phi_m_spectral(1, 7, 0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(phi_m_spectral(1, 7, 0.2, 7), std::invalid_argument);
  }
}

// phi2 = phi1 + a dphi1/da and phi3 = phi2 + (a/2) dphi2/da, probed with
// central differences in a.
TEST_CASE("a-derivative ladder") {
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> u_a(0.06, 0.44);
  std::uniform_int_distribution<int> u_n(5, 32);
  const double step = 1e-6;
  SUBCASE("reference point for phi3 via the exact finite sum") {
    const double phi2_hi = phi_m_spectral(2, 7, 0.2 + step, 0);
    const double phi2_lo = phi_m_spectral(2, 7, 0.2 - step, 0);
    const double ladder =
        phi_m_spectral(2, 7, 0.2, 0) + 0.1 * (phi2_hi - phi2_lo) / (2.0 * step);
    CHECK(phi_m_spectral(3, 7, 0.2, 0) ==
          doctest::Approx(ladder).epsilon(1e-5));
  }
  SUBCASE("random points") {
    for (int i = 0; i < 20; ++i) {
      // keep to lags where the covariance retains relative accuracy; deeply
      // decayed lags leave the finite sum with cancellation noise only
      int n = 0, lag = 0;
      double a = 0.0;
      do {
        n = u_n(rng);
        a = u_a(rng);
        lag = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
      } while (phi_m_spectral(2, n, a, lag) <
               1e-6 * phi_m_spectral(2, n, a, 0));
      const double phi1_hi = phi_m_spectral(1, n, a + step, lag);
      const double phi1_lo = phi_m_spectral(1, n, a - step, lag);
      const double lhs2 = phi_m_spectral(2, n, a, lag);
      CHECK(phi_m_spectral(1, n, a, lag) +
                a * (phi1_hi - phi1_lo) / (2.0 * step) ==
            doctest::Approx(lhs2).epsilon(1e-5));
      const double phi2_hi = phi_m_spectral(2, n, a + step, lag);
      const double phi2_lo = phi_m_spectral(2, n, a - step, lag);
      CHECK(lhs2 + 0.5 * a * (phi2_hi - phi2_lo) / (2.0 * step) ==
            doctest::Approx(phi_m_spectral(3, n, a, lag)).epsilon(1e-5));
    }
  }
}

TEST_CASE("car_covariance_curve") {
  SUBCASE("order 1 reference curve") {
    const LagCovariance c = car_covariance_curve(CarSpec::create(3, 1, 0.3, 1.0));
    CHECK(c.values[0] == doctest::Approx(1.346154).epsilon(5e-7));
    CHECK(c.values[1] == doctest::Approx(0.576923).epsilon(5e-7));
    CHECK(c.values[2] == doctest::Approx(0.576923).epsilon(5e-7));
  }
  SUBCASE("curve DFT inverts the precision eigenvalues") {
    for (const CarSpec& spec :
         {CarSpec::create(12, 1, 0.4, 0.7), CarSpec::create(12, 2, 0.3, 1.1)}) {
      const std::vector<double> cov_eigen =
          detail::eigenvalues_of_row(car_covariance_curve(spec).values);
      const std::vector<double> prec_eigen =
          dft_eigenvalues(build_precision(spec));
      for (int k = 0; k < 12; ++k)
        CHECK(cov_eigen[static_cast<std::size_t>(k)] ==
              doctest::Approx(1.0 / prec_eigen[static_cast<std::size_t>(k)])
                  .epsilon(1e-9));
    }
  }
  SUBCASE("order 2 curve matches dense inversion near the domain edge") {
    const CarSpec spec = CarSpec::create(10, 2, 0.49, 1.0);
    const LagCovariance c = car_covariance_curve(spec);
    const testsupport::Dense dense = testsupport::invert(
        testsupport::circulant_dense(build_precision(spec).first_row));
    for (int lag = 0; lag < 10; ++lag)
      CHECK(c.values[static_cast<std::size_t>(lag)] ==
            doctest::Approx(dense.at(0, lag)).epsilon(1e-9));
  }
  SUBCASE("consistent with circulant_solve on unit vectors") {
    const CarSpec spec = CarSpec::create(9, 1, 0.31, 1.7);
    const LagCovariance c = car_covariance_curve(spec);
    std::vector<double> e0(9, 0.0);
    e0[0] = 1.0;
    const std::vector<double> col =
        circulant_solve(build_precision(spec), e0);
    for (int lag = 0; lag < 9; ++lag)
      CHECK(c.values[static_cast<std::size_t>(lag)] ==
            doctest::Approx(col[static_cast<std::size_t>(lag)]).epsilon(1e-9));
  }
}
