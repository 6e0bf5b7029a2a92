#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "dicke/errors.hpp"
#include "dicke/model.hpp"

using namespace dicke;

TEST_CASE("critical coupling") {
  CHECK(critical_coupling(1.0, 1.0) == 0.5);
  CHECK(critical_coupling(1.0, 0.0) == 0.0);
  CHECK(critical_coupling(1.0, 4.0) == 1.0);
  CHECK_THROWS_AS(critical_coupling(0.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(critical_coupling(1.0, -1.0), InvalidParameter);

  SUBCASE("symmetric and homogeneous") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
      const double w = u(rng), w0 = u(rng), s = u(rng);
      CHECK(critical_coupling(w, w0) == doctest::Approx(critical_coupling(w0, w)).epsilon(1e-15));
      CHECK(critical_coupling(s * w, s * w0) == doctest::Approx(s * critical_coupling(w, w0)).epsilon(1e-14));
    }
  }
}

TEST_CASE("superradiant classification") {
  CHECK(is_superradiant(ModelParams(1.0, 1.0, 1.0, 2)));
  CHECK_FALSE(is_superradiant(ModelParams(1.0, 1.0, 0.4, 2)));
  CHECK_FALSE(is_superradiant(ModelParams(1.0, 1.0, 0.5, 2)));  // boundary is normal
  // gamma = 1: superradiant for every omega0 < 4
  CHECK(is_superradiant(ModelParams(1.0, 3.99, 1.0, 40)));
  CHECK_FALSE(is_superradiant(ModelParams(1.0, 4.0, 1.0, 40)));

  SUBCASE("agrees with gamma > gamma_c") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.05, 3.0);
    for (int trial = 0; trial < 500; ++trial) {
      const ModelParams p(u(rng), u(rng), u(rng), 1 + static_cast<int>(rng() % 80));
      CHECK(is_superradiant(p) == (p.gamma() > critical_coupling(p.omega(), p.omega0())));
    }
  }
}

TEST_CASE("model parameters") {
  const ModelParams p = ModelParams::from_j(1.0, 1.0, 1.0, 10.0);
  CHECK(p.two_j() == 20);
  CHECK(p.atoms() == 20);
  CHECK(p.j() == 10.0);
  CHECK(p.epsilon() == 1e-6);
  CHECK(p.shift_constant() == doctest::Approx(2.0 / std::sqrt(20.0)));
  CHECK(p.critical_coupling() == 0.5);

  CHECK(ModelParams::from_j(1, 1, 1, 2.5).two_j() == 5);
  CHECK_THROWS_AS(ModelParams::from_j(1, 1, 1, 0.3), InvalidParameter);
  CHECK_THROWS_AS(ModelParams::from_j(1, 1, 1, 0.0), InvalidParameter);
  CHECK_THROWS_AS(ModelParams(0.0, 1, 1, 2), InvalidParameter);
  CHECK_THROWS_AS(ModelParams(1.0, -0.1, 1, 2), InvalidParameter);
  CHECK_THROWS_AS(ModelParams(1.0, 1, -1, 2), InvalidParameter);
  CHECK_THROWS_AS(ModelParams(1.0, 1, 1, 2, 0.0), InvalidParameter);
  CHECK_THROWS_AS(ModelParams(1.0, 1, 1, 0), InvalidParameter);
  CHECK_THROWS_AS(ModelParams(std::nan(""), 1, 1, 2), InvalidParameter);
}

TEST_CASE("basis kind names") {
  CHECK(parse_basis_kind("Fock") == BasisKind::Fock);
  CHECK(parse_basis_kind("coherent") == BasisKind::Coherent);
  CHECK(to_string(BasisKind::Coherent) == "coherent");
  CHECK_THROWS_AS(parse_basis_kind("parity"), InvalidParameter);
}

TEST_CASE("flat indexing is a bijection") {
  for (int two_j : {1, 2, 3, 8, 13}) {
    for (int cutoff : {0, 1, 5}) {
      const BasisSpec basis{BasisKind::Fock, cutoff, two_j};
      REQUIRE(basis.dimension() == (cutoff + 1) * (two_j + 1));
      std::int64_t expected = 0;
      for (int n = 0; n <= cutoff; ++n)
        for (int two_m = -two_j; two_m <= two_j; two_m += 2) {
          const BasisIndex s{n, two_m};
          const auto flat = flatten(basis, s);
          CHECK(flat == expected++);
          CHECK(unflatten(basis, flat) == s);
        }
    }
  }
  const BasisSpec basis{BasisKind::Coherent, 2, 3};
  CHECK_THROWS_AS(flatten(basis, {3, 1}), InvalidParameter);
  CHECK_THROWS_AS(flatten(basis, {0, 2}), InvalidParameter);  // parity mismatch with 2j = 3
  CHECK_THROWS_AS(unflatten(basis, basis.dimension()), InvalidParameter);
}

TEST_CASE("dimension overflow is reported") {
  const BasisSpec huge{BasisKind::Fock, 2'000'000'000, 3};
  CHECK_THROWS_AS(huge.dimension(), std::overflow_error);
}

TEST_CASE("angular momentum elements") {
  CHECK(jz_element(3, -1) == -0.5);
  CHECK(jpm_element(1, -1, Ladder::Raise) == 1.0);
  CHECK(jpm_element(2, 2, Ladder::Raise) == 0.0);
  CHECK(jpm_element(2, -2, Ladder::Lower) == 0.0);
  CHECK(jpm_element(20, 0, Ladder::Raise) == doctest::Approx(std::sqrt(110.0)).epsilon(1e-15));
  CHECK(jpm_element(20, 0, Ladder::Raise) == doctest::Approx(10.488088).epsilon(1e-7));
  CHECK_THROWS_AS(jpm_element(2, 4, Ladder::Raise), InvalidParameter);

  SUBCASE("Casimir is j(j+1) on every multiplet") {
    for (int two_j = 1; two_j <= 30; ++two_j) {
      const int dim = two_j + 1;
      Eigen::MatrixXd jz = Eigen::MatrixXd::Zero(dim, dim), jp = jz, jm = jz;
      for (int i = 0; i < dim; ++i) {
        const int two_m = -two_j + 2 * i;
        jz(i, i) = jz_element(two_j, two_m);
        if (i + 1 < dim) jp(i + 1, i) = jpm_element(two_j, two_m, Ladder::Raise);
        if (i > 0) jm(i - 1, i) = jpm_element(two_j, two_m, Ladder::Lower);
      }
      CHECK((jm - jp.transpose()).norm() == 0.0);
      const Eigen::MatrixXd casimir = jz * jz + 0.5 * (jp * jm + jm * jp);
      const double j = 0.5 * two_j;
      CHECK((casimir - j * (j + 1) * Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}
