#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "specest/core_types.hpp"

namespace specest {

/// Regular grid on the 2-torus: nodes (2 pi l1 / N1, 2 pi l2 / N2).
class FrequencyGrid {
 public:
  FrequencyGrid(int n1, int n2);

  int n1() const noexcept { return n1_; }
  int n2() const noexcept { return n2_; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(n1_) * static_cast<std::size_t>(n2_);
  }
  /// Row-major node index l1 * N2 + l2.
  std::size_t index(int l1, int l2) const noexcept {
    return static_cast<std::size_t>(l1) * static_cast<std::size_t>(n2_) +
           static_cast<std::size_t>(l2);
  }
  double theta1(int l1) const noexcept;
  double theta2(int l2) const noexcept;

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

 private:
  int n1_;
  int n2_;
};

/// Real values sampled on a FrequencyGrid (Phi, Psi, Psi^{-1}, Q(theta), ...).
class GridFunction {
 public:
  GridFunction(const FrequencyGrid& g, std::vector<double> values);
  static GridFunction constant(const FrequencyGrid& g, double c);

  const FrequencyGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator()(int l1, int l2) const noexcept { return values_[grid_.index(l1, l2)]; }
  double min() const;
  double max() const;

 private:
  FrequencyGrid grid_;
  std::vector<double> values_;
};

/// Complex values on the rectangle |k1| <= m1, |k2| <= m2 (m_j >= 0), with
/// no symmetry requirement.
class LagArray {
 public:
  LagArray(int m1, int m2);

  int max_lag1() const noexcept { return m1_; }
  int max_lag2() const noexcept { return m2_; }
  cplx& operator()(int k1, int k2);
  cplx operator()(int k1, int k2) const;

  /// Restriction to `s` as a symmetric multisequence (validated to `tol`).
  SymmetricMultisequence restrict_to(const IndexSet& s, double tol = kSymmetryTol) const;

 private:
  std::size_t offset(int k1, int k2) const;

  int m1_;
  int m2_;
  std::vector<cplx> values_;
};

/// First block row of the Hermitian Toeplitz-block-Toeplitz matrix
///
///   H = [ R_0    R_1  ... R_{m-1} ]
///       [ R_1^*  R_0  ...         ]
///       [  ...                    ]
///
/// with Toeplitz blocks R_j(r, c) = h_{j, c - r} of size p x p. Here m is
/// the block count and p the block size; the dual Hessian has m = 2 n1 + 1
/// and p = 2 n2 + 1.
class TbtGenerators {
 public:
  /// Zero generators for `block_count` blocks of size `block_size`.
  TbtGenerators(int block_count, int block_size);

  /// Generators h_{j,l}, j in [0, m), l in (-p, p) for the Hessian of an
  /// (n1, n2) index set.
  static TbtGenerators for_index_set(const IndexSet& s) {
    return {2 * s.n1() + 1, 2 * s.n2() + 1};
  }

  int block_count() const noexcept { return m_; }
  int block_size() const noexcept { return p_; }
  Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(m_) * p_; }

  cplx& h(int j, int l);
  cplx h(int j, int l) const;

  /// Dense p x p Toeplitz block R_j, 0 <= j < m.
  Eigen::MatrixXcd block(int j) const;

 private:
  std::size_t offset(int j, int l) const;

  int m_;
  int p_;
  std::vector<cplx> h_;
};

/// Q(theta) = sum_k q_k exp(-i <k, theta>) at every node. Requires
/// N_j > 2 n_j so that distinct lags stay distinct on the grid.
GridFunction eval_trig_poly(const SymmetricMultisequence& q, const FrequencyGrid& g);

/// Riemann-sum approximation of the integral against the normalized
/// Lebesgue measure: the mean over the grid.
double quadrature(const GridFunction& f);

/// c_k = (1/(N1 N2)) sum_theta exp(i <k, theta>) f(theta) for |k_j| <= maxlag_j,
/// computed with one 2-D FFT. Requires 2 maxlag_j < N_j.
LagArray fourier_coefficients(const GridFunction& f, int maxlag1, int maxlag2);

/// min over the grid of Psi^{-1} + Q and the feasibility verdict (strict).
struct Feasibility {
  bool feasible;
  double min_value;
};
Feasibility check_feasible(const SymmetricMultisequence& q, const GridFunction& psi_inv);

/// Psi^{-1} + Q on the grid; throws FeasibilityError unless strictly positive.
GridFunction feasible_denominator(const SymmetricMultisequence& q, const GridFunction& psi_inv);

/// J(Q) = <Q, Sigma> - int log(Psi^{-1} + Q) dm.
double dual_objective(const SymmetricMultisequence& q, const SymmetricMultisequence& sigma,
                      const GridFunction& psi_inv);

/// Wirtinger gradient dJ/dq_k = sigma_{-k} - int exp(-i <k, theta>) (Psi^{-1} + Q)^{-1} dm.
///
/// For a real perturbation of q_k with its partner q_{-k}, the directional
/// derivative of J is 2 Re g_k (k != 0); for an imaginary one it is
/// -2 Im g_k. At k = 0 it is g_0.
SymmetricMultisequence dual_gradient(const SymmetricMultisequence& q,
                                     const SymmetricMultisequence& sigma,
                                     const GridFunction& psi_inv);

/// h_{j,l} = int exp(i <(j,l), theta>) (Psi^{-1} + Q)^{-2} dm for
/// 0 <= j <= 2 n1, |l| <= 2 n2. Requires N_j > 4 n_j.
TbtGenerators hessian_generators(const SymmetricMultisequence& q, const GridFunction& psi_inv);

/// Dense Hermitian matrix whose (k, l) entry in lexicographic order is h_{l-k}.
Eigen::MatrixXcd assemble_dense_hessian(const TbtGenerators& gen);

/// Phi = 1 / (Psi^{-1} + Q) at every node.
GridFunction primal_recover(const SymmetricMultisequence& q, const GridFunction& psi_inv);

/// Itakura-Saito divergence int [log(Psi / Phi) + (Phi - Psi) / Psi] dm.
double is_divergence(const GridFunction& phi, const GridFunction& psi);

}  // namespace specest
