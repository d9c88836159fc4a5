#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "oracles.hpp"
#include "specest/errors.hpp"
#include "specest/spectral_dual.hpp"
#include "specest/tbt_linalg.hpp"

using namespace specest;

namespace {

SymmetricMultisequence single(const IndexSet& s, LagIndex k, cplx v) {
  std::vector<cplx> vals(s.size(), 0.0);
  vals[s.offset(k)] = v;
  if (!(k == LagIndex{0, 0})) vals[s.offset(-k)] = std::conj(v);
  return SymmetricMultisequence::from_values(s, vals);
}

}  // namespace

TEST_CASE("trigonometric polynomial evaluation") {
  const IndexSet s(1, 1);
  const FrequencyGrid g(6, 5);

  const GridFunction c = eval_trig_poly(single(s, {0, 0}, 2.5), g);
  for (double v : c.values()) CHECK(v == doctest::Approx(2.5));

  const GridFunction cs = eval_trig_poly(single(s, {1, 0}, 0.5), g);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 5; ++b) CHECK(cs(a, b) == doctest::Approx(std::cos(g.theta1(a))));

  std::mt19937_64 rng(1);
  for (const auto& [n1, n2, gn1, gn2] : std::vector<std::array<int, 4>>{{1, 1, 4, 4}, {2, 1, 7, 4}, {2, 3, 3, 2}}) {
    const IndexSet si(n1, n2);
    const FrequencyGrid gi(gn1, gn2);
    const auto q = oracle::random_symmetric(si, rng, 1.0);
    const GridFunction fast = eval_trig_poly(q, gi);
    for (int a = 0; a < gn1; ++a)
      for (int b = 0; b < gn2; ++b) {
        const cplx direct = oracle::trig_poly_at(q, oracle::node1(gi, a), oracle::node2(gi, b));
        CHECK(std::abs(direct.imag()) < 1e-12);
        CHECK(std::abs(fast(a, b) - direct.real()) < 1e-12);
      }
  }
}

TEST_CASE("quadrature is the grid mean") {
  CHECK(quadrature(GridFunction::constant(FrequencyGrid(3, 4), 3.0)) == doctest::Approx(3.0));
  for (int n1 = 2; n1 <= 9; ++n1) {
    const FrequencyGrid g(n1, 3);
    std::vector<double> v(g.size());
    for (int a = 0; a < n1; ++a)
      for (int b = 0; b < 3; ++b) v[g.index(a, b)] = std::cos(g.theta1(a));
    CHECK(std::abs(quadrature(GridFunction(g, v))) < 1e-15);
  }
  std::mt19937_64 rng(2);
  const GridFunction f = oracle::random_positive(FrequencyGrid(5, 7), rng, -1.0, 1.0);
  double acc = 0.0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 7; ++b) acc += f(a, b);
  CHECK(quadrature(f) == doctest::Approx(acc / 35.0).epsilon(1e-14));
}

TEST_CASE("fourier coefficients") {
  const FrequencyGrid g(8, 8);
  const LagArray one = fourier_coefficients(GridFunction::constant(g, 1.0), 2, 2);
  for (int k1 = -2; k1 <= 2; ++k1)
    for (int k2 = -2; k2 <= 2; ++k2)
      CHECK(std::abs(one(k1, k2) - (k1 == 0 && k2 == 0 ? 1.0 : 0.0)) < 1e-15);

  std::vector<double> v(g.size());
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) v[g.index(a, b)] = std::cos(g.theta2(b));
  const LagArray c2 = fourier_coefficients(GridFunction(g, v), 2, 2);
  for (int k1 = -2; k1 <= 2; ++k1)
    for (int k2 = -2; k2 <= 2; ++k2)
      CHECK(std::abs(c2(k1, k2) - (k1 == 0 && std::abs(k2) == 1 ? 0.5 : 0.0)) < 1e-15);

  CHECK_THROWS_AS(fourier_coefficients(GridFunction::constant(g, 1.0), 4, 1), DomainError);
  CHECK_THROWS_AS(fourier_coefficients(GridFunction::constant(g, 1.0), 1, 4), DomainError);
}

TEST_CASE("FFT coefficients match per-lag direct sums on grids up to 16x16") {
  std::mt19937_64 rng(5);
  for (int n1 = 5; n1 <= 16; n1 += 3)
    for (int n2 = 5; n2 <= 16; n2 += 4) {
      const FrequencyGrid g(n1, n2);
      const GridFunction f = oracle::random_positive(g, rng, -2.0, 2.0);
      const int m1 = (n1 - 1) / 2;
      const int m2 = (n2 - 1) / 2;
      const LagArray c = fourier_coefficients(f, m1, m2);
      for (int k1 = -m1; k1 <= m1; ++k1)
        for (int k2 = -m2; k2 <= m2; ++k2) {
          CHECK(std::abs(c(k1, k2) - oracle::fourier_at(f, k1, k2)) < 1e-12);
          CHECK(std::abs(c(k1, k2) - std::conj(c(-k1, -k2))) < 1e-14);
        }
    }
}

TEST_CASE("dual objective") {
  const IndexSet s(1, 1);
  const FrequencyGrid g(8, 8);
  const GridFunction one = GridFunction::constant(g, 1.0);
  const auto e0 = single(s, {0, 0}, 1.0);

  CHECK(std::abs(dual_objective(SymmetricMultisequence(s), e0, one)) < 1e-15);
  CHECK(dual_objective(e0, e0, one) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-14));

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const IndexSet si(1 + trial % 2, 1 + trial % 3);
    const FrequencyGrid gi(13, 15);
    const GridFunction psi_inv = oracle::random_positive(gi, rng, 0.8, 1.5);
    const auto q = oracle::random_feasible(si, rng, 0.5);
    const auto sigma = oracle::random_symmetric(si, rng, 1.0);
    CHECK(dual_objective(q, sigma, psi_inv) ==
          doctest::Approx(oracle::objective(q, sigma, psi_inv)).epsilon(1e-12));
  }

  try {
    dual_objective(single(s, {0, 0}, -2.0), e0, one);
    FAIL("expected a feasibility error");
  } catch (const FeasibilityError& e) {
    CHECK(e.min_value() == doctest::Approx(-1.0));
  }
}

TEST_CASE("dual gradient closed forms") {
  const IndexSet s(1, 1);
  const FrequencyGrid g(8, 8);
  const auto zero = SymmetricMultisequence(s);
  const auto g0 = dual_gradient(zero, single(s, {0, 0}, 1.0), GridFunction::constant(g, 1.0));
  CHECK(norm2(g0) < 1e-15);

  std::mt19937_64 rng(4);
  const double c = 2.75;
  const auto sigma = oracle::random_symmetric(s, rng, 1.0);
  const auto gc = dual_gradient(zero, sigma, GridFunction::constant(g, 1.0 / c));
  for (int k1 = -1; k1 <= 1; ++k1)
    for (int k2 = -1; k2 <= 1; ++k2) {
      const cplx expected = sigma(-k1, -k2) - (k1 == 0 && k2 == 0 ? c : 0.0);
      CHECK(std::abs(gc(k1, k2) - expected) < 1e-14);
    }
}

TEST_CASE("dual gradient matches real-parametrization finite differences") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 1 + trial % 2;
    const IndexSet s(n, n);
    const FrequencyGrid g(16, 16);
    const GridFunction psi_inv = oracle::random_positive(g, rng, 0.7, 1.3);
    const auto q = oracle::random_feasible(s, rng, 0.4);
    const auto sigma = oracle::random_symmetric(s, rng, 0.5);
    const auto grad = dual_gradient(q, sigma, psi_inv);
    CHECK(grad.symmetry_defect() < 1e-12);
    const Eigen::VectorXcd fd = oracle::fd_gradient(q, sigma, psi_inv, 1e-5);
    CHECK(oracle::rel_err(vectorize(grad), fd) < 1e-6);
  }
}

TEST_CASE("Hessian generators closed forms and preconditions") {
  const IndexSet s(1, 1);
  const FrequencyGrid g(8, 8);
  const auto zero = SymmetricMultisequence(s);

  for (double c : {1.0, 3.0}) {
    const TbtGenerators gen = hessian_generators(zero, GridFunction::constant(g, 1.0 / c));
    CHECK(gen.block_count() == 3);
    CHECK(gen.block_size() == 3);
    for (int j = 0; j <= 2; ++j)
      for (int l = -2; l <= 2; ++l)
        CHECK(std::abs(gen.h(j, l) - (j == 0 && l == 0 ? c * c : 0.0)) < 1e-13);
  }
  const Eigen::MatrixXcd id = assemble_dense_hessian(hessian_generators(zero, GridFunction::constant(g, 1.0)));
  CHECK((id - Eigen::MatrixXcd::Identity(9, 9)).norm() < 1e-13);

  // N_j > 4 n_j
  CHECK_THROWS_AS(hessian_generators(zero, GridFunction::constant(FrequencyGrid(4, 8), 1.0)), DomainError);
  CHECK_THROWS_AS(hessian_generators(zero, GridFunction::constant(FrequencyGrid(8, 4), 1.0)), DomainError);
  CHECK_NOTHROW(hessian_generators(zero, GridFunction::constant(FrequencyGrid(5, 5), 1.0)));
  CHECK_THROWS_AS(hessian_generators(single(s, {0, 0}, -1.0), GridFunction::constant(g, 1.0)),
                  FeasibilityError);
}

TEST_CASE("assembled Hessian matches finite differences of the gradient") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 1 + trial % 2;
    const IndexSet s(n, n);
    const FrequencyGrid g(16, 16);
    const GridFunction psi_inv = oracle::random_positive(g, rng, 0.7, 1.3);
    const auto q = oracle::random_feasible(s, rng, 0.4);
    const auto sigma = oracle::random_symmetric(s, rng, 0.5);
    const Eigen::MatrixXcd h = assemble_dense_hessian(hessian_generators(q, psi_inv));
    CHECK(oracle::rel_err(h, oracle::fd_hessian(q, sigma, psi_inv, 1e-5)) < 1e-5);
  }
}

TEST_CASE("dense Hessian structure") {
  TbtGenerators id(3, 3);
  id.h(0, 0) = 1.0;
  CHECK((assemble_dense_hessian(id) - Eigen::MatrixXcd::Identity(9, 9)).norm() == 0.0);

  TbtGenerators one(3, 3);
  one.h(0, 0) = 1.0;
  const cplx x{0.3, -0.7};
  one.h(1, 0) = x;
  const Eigen::MatrixXcd m = assemble_dense_hessian(one);
  for (int r = 0; r < 9; ++r)
    for (int c = 0; c < 9; ++c) {
      cplx expected = r == c ? cplx{1.0} : cplx{0.0};
      if (c == r + 3) expected = x;
      if (r == c + 3) expected = std::conj(x);
      CHECK(m(r, c) == expected);
    }

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TbtGenerators gen = random_pd_generators(2 + static_cast<int>(seed % 3), 1 + static_cast<int>(seed % 4), seed);
    const Eigen::MatrixXcd a = assemble_dense_hessian(gen);
    CHECK((a - oracle::dense_tbt(gen)).norm() == 0.0);
    CHECK((a - a.adjoint()).norm() == 0.0);
    const Eigen::MatrixXcd persym = a.transpose().reverse();
    CHECK((persym - a).norm() == 0.0);
  }
}

TEST_CASE("Hessian is positive definite at feasible points and its quarter is Hermitian") {
  std::mt19937_64 rng(33);
  for (int n = 1; n <= 3; ++n) {
    const IndexSet s(n, n);
    const FrequencyGrid g(4 * n + 3, 4 * n + 5);
    for (int trial = 0; trial < 3; ++trial) {
      const GridFunction psi_inv = oracle::random_positive(g, rng, 0.5, 2.0);
      const auto q = oracle::random_feasible(s, rng, 0.45);
      const Eigen::MatrixXcd h = assemble_dense_hessian(hessian_generators(q, psi_inv));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
      CHECK(eig.eigenvalues().minCoeff() > 0.0);
      const Eigen::Index quarter = n + 1 + n * (2 * n + 1);
      const Eigen::MatrixXcd sub = h.bottomRightCorner(quarter, quarter);
      CHECK((sub - sub.adjoint()).norm() < 1e-14 * h.norm());
      if (n == 1) CHECK(quarter == 5);
    }
  }
}

TEST_CASE("objective is convex along symmetric directions") {
  std::mt19937_64 rng(44);
  const IndexSet s(2, 1);
  const FrequencyGrid g(11, 9);
  for (int trial = 0; trial < 8; ++trial) {
    const GridFunction psi_inv = oracle::random_positive(g, rng, 0.8, 1.2);
    const auto q = oracle::random_feasible(s, rng, 0.3);
    const auto sigma = oracle::random_symmetric(s, rng, 1.0);
    const auto d = oracle::random_feasible(s, rng, 0.1);
    const double h = 0.2;
    for (int i = -2; i <= 2; ++i) {
      const double t = 0.4 * i;
      const double second = dual_objective(q + d * (t + h), sigma, psi_inv) -
                            2.0 * dual_objective(q + d * t, sigma, psi_inv) +
                            dual_objective(q + d * (t - h), sigma, psi_inv);
      CHECK(second >= -1e-8);
    }
  }
}

TEST_CASE("primal recovery and Itakura-Saito divergence") {
  const IndexSet s(1, 1);
  const FrequencyGrid g(6, 6);
  const GridFunction one = GridFunction::constant(g, 1.0);
  const GridFunction at_zero = primal_recover(SymmetricMultisequence(s), one);
  for (double v : at_zero.values()) CHECK(v == 1.0);
  const GridFunction at_one = primal_recover(single(s, {0, 0}, 1.0), one);
  for (double v : at_one.values()) CHECK(v == 0.5);
  CHECK_THROWS_AS(primal_recover(single(s, {0, 0}, -1.0), one), FeasibilityError);

  CHECK(is_divergence(one, one) == 0.0);
  CHECK(is_divergence(GridFunction::constant(g, 2.0), one) == doctest::Approx(std::log(0.5) + 1.0));
  CHECK(is_divergence(GridFunction::constant(g, 2.0), one) == doctest::Approx(0.30685).epsilon(1e-5));

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const GridFunction a = oracle::random_positive(g, rng, 0.1, 5.0);
    const GridFunction b = oracle::random_positive(g, rng, 0.1, 5.0);
    CHECK(is_divergence(a, b) >= 0.0);
  }
  CHECK_THROWS_AS(is_divergence(GridFunction::constant(g, 0.0), one), DomainError);
  CHECK_THROWS_AS(is_divergence(one, GridFunction::constant(g, -1.0)), DomainError);
}
