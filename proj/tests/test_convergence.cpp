#include <cmath>
#include <vector>

#include "doctest.h"
#include "dicke/coherent.hpp"
#include "dicke/convergence.hpp"
#include "dicke/errors.hpp"
#include "oracles.hpp"

using namespace dicke;

namespace {

double dense_ground(const Eigen::MatrixXd& m) { return oracle::dense_spectrum(m)(0); }

}  // namespace

TEST_CASE("delta_e examples") {
  SUBCASE("zero coupling is exact at every Fock cutoff") {
    const ModelParams p(1.0, 1.0, 0.0, 7);
    for (int c = 0; c <= 6; ++c) CHECK(delta_e(p, BasisKind::Fock, c) == 0.0);
  }
  SUBCASE("vanishing splitting is exact at coherent cutoff 0") {
    for (double gamma : {0.3, 1.0, 2.0}) CHECK(delta_e(ModelParams(1.0, 0.0, gamma, 10), BasisKind::Coherent, 0) == 0.0);
  }
  SUBCASE("two-solve oracle") {
    const ModelParams p(1.0, 1.0, 0.5, 10);
    const double e5 = dense_ground(oracle::dicke_fock(1.0, 1.0, 0.5, 10, 5).total());
    const double e6 = dense_ground(oracle::dicke_fock(1.0, 1.0, 0.5, 10, 6).total());
    const double d = delta_e(p, BasisKind::Fock, 5);
    CHECK(d > 0.0);
    CHECK(d == doctest::Approx(std::abs(e6 - e5)).epsilon(1e-9));
  }
  SUBCASE("excited levels") {
    const ModelParams p(1.0, 1.0, 0.5, 4);
    const double e3 = oracle::dense_spectrum(oracle::dicke_fock(1.0, 1.0, 0.5, 4, 3).total())(2);
    const double e4 = oracle::dense_spectrum(oracle::dicke_fock(1.0, 1.0, 0.5, 4, 4).total())(2);
    CHECK(delta_e(p, BasisKind::Fock, 3, 2) == doctest::Approx(std::abs(e4 - e3)).epsilon(1e-9));
  }
  SUBCASE("levels beyond the truncated space are rejected") {
    CHECK_THROWS_AS(delta_e(ModelParams(1.0, 1.0, 0.5, 1), BasisKind::Fock, 0, 2), InvalidParameter);
  }
}

TEST_CASE("energy ladder memoizes") {
  EnergyLadder ladder(ModelParams(1.0, 1.0, 0.7, 6), BasisKind::Coherent, 0);
  const double first = ladder.energy(4);
  CHECK(ladder.energy(4) == first);
  CHECK(ladder.delta(3) == std::abs(ladder.energy(4) - ladder.energy(3)));
}

TEST_CASE("minimal cutoff examples") {
  SUBCASE("integrable limits converge immediately") {
    const auto fock = find_minimal_cutoff(ModelParams(1.0, 1.0, 0.0, 10), BasisKind::Fock, 0, 10);
    CHECK(fock.converged);
    CHECK(fock.minimal_cutoff == 0);
    CHECK(fock.energy_at_min == doctest::Approx(-5.0).epsilon(1e-14));
    const auto coherent = find_minimal_cutoff(ModelParams(1.0, 0.0, 1.0, 10), BasisKind::Coherent, 0, 10);
    CHECK(coherent.converged);
    CHECK(coherent.minimal_cutoff == 0);
    CHECK(coherent.energy_at_min == doctest::Approx(-10.0).epsilon(1e-14));
  }
  SUBCASE("j = 10 at gamma = 1 (regression values)") {
    const ModelParams p(1.0, 1.0, 1.0, 20);
    const auto fock = find_minimal_cutoff(p, BasisKind::Fock, 0, default_cutoff_limit(p, BasisKind::Fock));
    const auto coherent = find_minimal_cutoff(p, BasisKind::Coherent, 0, 200);
    REQUIRE(fock.converged);
    REQUIRE(coherent.converged);
    CHECK(coherent.minimal_cutoff < fock.minimal_cutoff);
    CHECK(fock.minimal_cutoff == 46);
    CHECK(coherent.minimal_cutoff == 9);
    CHECK(std::abs(fock.energy_at_min - coherent.energy_at_min) < 2e-6);
  }
  SUBCASE("limit reached reports the full trajectory") {
    const auto r = find_minimal_cutoff(ModelParams(1.0, 1.0, 1.0, 10), BasisKind::Fock, 0, 4);
    CHECK_FALSE(r.converged);
    CHECK(r.minimal_cutoff == 4);
    REQUIRE(r.delta_e_trajectory.size() == 5);
    for (int c = 0; c <= 4; ++c) CHECK(r.delta_e_trajectory[c].cutoff == c);
    CHECK(r.final_delta() >= 1e-6);
  }
}

TEST_CASE("converged reports satisfy the criterion exactly at the minimum") {
  for (const auto& [two_j, gamma, omega0] :
       std::vector<std::tuple<int, double, double>>{{2, 0.5, 1.0}, {6, 0.8, 1.0}, {10, 0.3, 0.5}, {7, 1.1, 1.5}}) {
    const ModelParams p(1.0, omega0, gamma, two_j);
    for (auto kind : {BasisKind::Fock, BasisKind::Coherent}) {
      const auto r = find_minimal_cutoff(p, kind, 0, 200);
      INFO("2j=" << two_j << " gamma=" << gamma << " basis=" << to_string(kind));
      REQUIRE(r.converged);
      CHECK(r.delta_e_trajectory.back().cutoff == r.minimal_cutoff);
      CHECK(delta_e(p, kind, r.minimal_cutoff) < p.epsilon());
      if (r.minimal_cutoff > 0) CHECK(delta_e(p, kind, r.minimal_cutoff - 1) >= p.epsilon());
      for (std::size_t i = 0; i + 1 < r.delta_e_trajectory.size(); ++i)
        CHECK(r.delta_e_trajectory[i].delta_e >= p.epsilon());
    }
  }
}

TEST_CASE("coherent basis needs no more bosons in the superradiant regime") {
  for (int two_j : {10, 14}) {
    for (double gamma : {0.5, 0.8}) {
      const ModelParams p(1.0, 1.0, gamma, two_j);
      const auto fock = find_minimal_cutoff(p, BasisKind::Fock, 0, default_cutoff_limit(p, BasisKind::Fock));
      const auto coherent = find_minimal_cutoff(p, BasisKind::Coherent, 0, 200);
      INFO("2j=" << two_j << " gamma=" << gamma);
      CHECK(coherent.minimal_cutoff <= fock.minimal_cutoff);
    }
  }
}

TEST_CASE("coherent basis is exact without atomic splitting") {
  for (int two_j : {1, 4, 11, 20})
    for (double gamma : {0.1, 0.5, 1.0, 1.7}) {
      const auto r = find_minimal_cutoff(ModelParams(1.0, 0.0, gamma, two_j), BasisKind::Coherent, 0, 10);
      CHECK(r.converged);
      CHECK(r.minimal_cutoff == 0);
    }
}

TEST_CASE("truncation estimate") {
  CHECK(analytic_nmax_bound(ModelParams(1.0, 1.0, 0.5, 20)) == 0.0);
  CHECK(analytic_nmax_bound(ModelParams(1.0, 1.0, 1.0, 20)) == doctest::Approx(18.75 + 5.0 * std::sqrt(18.75)).epsilon(1e-14));
  CHECK(analytic_nmax_bound(ModelParams(1.0, 1.0, 1.0, 20)) == doctest::Approx(40.40).epsilon(1e-3));
  CHECK(analytic_nmax_bound(ModelParams(1.0, 1.0, 1.0, 10)) == doctest::Approx(24.68).epsilon(1e-3));
  CHECK_THROWS_AS(analytic_nmax_bound(ModelParams(1.0, 1.0, 0.49, 10)), DomainError);
  CHECK_THROWS_AS(analytic_nmax_bound(ModelParams(1.0, 1.0, 0.0, 10)), DomainError);
  CHECK(analytic_nmax_bound(ModelParams(1.0, 0.0, 0.0, 10)) == 0.0);

  SUBCASE("grows with coupling and atom number") {
    double previous = 0.0;
    for (double gamma = 0.55; gamma < 2.0; gamma += 0.05) {
      const double b = analytic_nmax_bound(ModelParams(1.0, 1.0, gamma, 10));
      CHECK(b > previous);
      previous = b;
    }
    CHECK(analytic_nmax_bound(ModelParams(1.0, 1.0, 1.0, 30)) > analytic_nmax_bound(ModelParams(1.0, 1.0, 1.0, 10)));
  }
  SUBCASE("scan guard") {
    CHECK(default_cutoff_limit(ModelParams(1.0, 1.0, 0.3, 10), BasisKind::Fock) == 200);
    CHECK(default_cutoff_limit(ModelParams(1.0, 1.0, 1.0, 10), BasisKind::Coherent) == 200);
    CHECK(default_cutoff_limit(ModelParams(1.0, 1.0, 3.0, 80), BasisKind::Fock) ==
          static_cast<int>(std::ceil(3.0 * analytic_nmax_bound(ModelParams(1.0, 1.0, 3.0, 80)))));
  }
}

TEST_CASE("least-squares fit") {
  const auto fit = fit_log_precision({{1, 1.0}, {2, 3.0}, {3, 5.0}});
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fit.intercept == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fit.predicted_delta(2) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK_THROWS_AS(fit_log_precision({{1, 2.0}}), NothingToFit);
  CHECK_THROWS_AS(fit_log_precision({{3, 2.0}, {3, 4.0}}), NothingToFit);
}

TEST_CASE("precision scan") {
  SUBCASE("exact limit has nothing to fit") {
    CHECK_THROWS_AS(precision_scan(ModelParams(1.0, 1.0, 0.0, 6), BasisKind::Fock, 1, 8), NothingToFit);
  }
  SUBCASE("invalid range") {
    CHECK_THROWS_AS(precision_scan(ModelParams(1.0, 1.0, 0.5, 6), BasisKind::Fock, 0, 8), InvalidParameter);
    CHECK_THROWS_AS(precision_scan(ModelParams(1.0, 1.0, 0.5, 6), BasisKind::Fock, 5, 4), InvalidParameter);
  }
  SUBCASE("Fock samples improve monotonically above the noise floor") {
    const ModelParams p(1.0, 1.0, 0.5, 20);
    const auto fit = precision_scan(p, BasisKind::Fock, 1, 17);
    REQUIRE(fit.samples.size() == 17);
    for (std::size_t i = 0; i + 1 < fit.samples.size(); ++i) CHECK(fit.samples[i + 1].second >= fit.samples[i].second);
    CHECK(fit.slope > 0.0);
    CHECK(fit.r_squared > 0.9);
  }
  SUBCASE("samples are labelled by the larger cutoff") {
    const ModelParams p(1.0, 1.0, 0.5, 4);
    const auto fit = precision_scan(p, BasisKind::Coherent, 2, 5);
    REQUIRE(fit.scanned.size() == 4);
    for (const auto& s : fit.scanned) CHECK(s.delta_e == delta_e(p, BasisKind::Coherent, s.cutoff - 1));
  }
}
