#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "specest/spectral_dual.hpp"

namespace specest {

/// Exchange operator J_{p,k}: block anti-diagonal of k reversal blocks J_p.
/// As a pk x pk matrix it is the full reversal permutation, so applying it
/// reverses the row order.
class ExchangeOperator {
 public:
  ExchangeOperator(int block_size, int block_count);

  int block_size() const noexcept { return p_; }
  int block_count() const noexcept { return k_; }
  Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(p_) * k_; }

  Eigen::MatrixXcd dense() const;

 private:
  int p_;
  int k_;
};

/// J * m. Throws DomainError when m has the wrong number of rows.
Eigen::MatrixXcd reverse_apply(const ExchangeOperator& j, const Eigen::MatrixXcd& m);

/// Carry of the nested Schur-complement recursion on G_k, the leading
/// (k+1) x (k+1) block submatrix of a Hermitian TBT matrix.
///
///   W_k     = -G_{k-1}^{-1} [R_k; ...; R_1]    (kp x p)
///   W_hat_k = J_{p,k} W_k
///   alpha_k = R_0 + W_k^* [R_k; ...; R_1]      (Schur complement G_k / G_{k-1})
///
/// Only W_hat_k is stored; W_k is one row reversal away.
struct SchurState {
  int k = 0;
  Eigen::MatrixXcd alpha;
  Eigen::LLT<Eigen::MatrixXcd> alpha_factor;
  Eigen::MatrixXcd what;
  /// beta_{k-1} that produced this stage; empty at k = 1.
  std::optional<Eigen::MatrixXcd> beta;

  Eigen::MatrixXcd w() const;
  /// alpha_k^{-1} x
  Eigen::MatrixXcd alpha_solve(const Eigen::MatrixXcd& x) const;
  /// alpha_k^{-T} x, using alpha^{-T} = conj(alpha^{-1}) for Hermitian alpha.
  Eigen::MatrixXcd alpha_transpose_solve(const Eigen::MatrixXcd& x) const;
};

/// Stage-one state from R_0 and R_1. Throws NumericalError when R_0 is not
/// Hermitian positive definite, DomainError when there is no R_1.
SchurState schur_init(const TbtGenerators& gen);

/// Advances stage k to k+1 using
///   beta_k      = W_k^T [J R_1; ...; J R_k] + J R_{k+1}
///   W_hat_{k+1} = [W_hat_k; 0] - [conj(W_k); I] alpha_k^{-T} beta_k
///   alpha_{k+1} = alpha_k - beta_k^* alpha_k^{-T} beta_k
/// Throws NumericalError when alpha_{k+1} loses positive definiteness.
SchurState schur_advance(const SchurState& state, const TbtGenerators& gen);

/// Inverse of a Hermitian positive definite TBT matrix from its first block
/// row, computing roughly a quarter of the blocks and completing the rest by
/// persymmetry and Hermitian symmetry.
Eigen::MatrixXcd tbt_invert(const TbtGenerators& gen);

/// A column of m blocks, each p x q.
using BlockVector = std::vector<Eigen::MatrixXcd>;

/// Solves H X = B for a Hermitian positive definite TBT matrix H without
/// forming H or its inverse. B must have block_count blocks of
/// block_size rows and a common column count q >= 1.
BlockVector tbt_solve(const TbtGenerators& gen, const BlockVector& b);

/// Flattening helpers between BlockVector and a stacked matrix.
Eigen::MatrixXcd stack(const BlockVector& b);
BlockVector unstack(const Eigen::MatrixXcd& m, int block_size);

/// Reference dense inverse via Cholesky; throws NumericalError when the
/// input is not Hermitian positive definite.
Eigen::MatrixXcd dense_oracle_invert(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd dense_oracle_solve(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& b);

/// Random Hermitian positive definite TBT generators: entries with
/// independent standard normal real and imaginary parts (h_{0,-l} =
/// conj(h_{0,l}), h_{0,0} real), then h_{0,0} shifted by sum |h| + 1 so the
/// assembled matrix is strictly diagonally dominant.
TbtGenerators random_pd_generators(int block_count, int block_size, std::uint64_t seed);

}  // namespace specest
