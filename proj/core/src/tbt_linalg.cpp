#include "specest/tbt_linalg.hpp"

#include <random>
#include <sstream>

#include "specest/errors.hpp"

namespace specest {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;

Eigen::LLT<MatrixXcd> factor_or_throw(const MatrixXcd& m, const char* what) {
  Eigen::LLT<MatrixXcd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw NumericalError(std::string(what) + " is not Hermitian positive definite");
  }
  return llt;
}

MatrixXcd hermitian_part(const MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

// [R_k; R_{k-1}; ...; R_1] for k >= 1.
MatrixXcd stacked_generators(const TbtGenerators& gen, int k) {
  const int p = gen.block_size();
  MatrixXcd out(static_cast<Index>(k) * p, p);
  for (int i = 0; i < k; ++i) out.middleRows(static_cast<Index>(i) * p, p) = gen.block(k - i);
  return out;
}

}  // namespace

ExchangeOperator::ExchangeOperator(int block_size, int block_count)
    : p_(block_size), k_(block_count) {
  if (block_size < 1 || block_count < 1) throw DomainError("exchange operator needs p, k >= 1");
}

MatrixXcd ExchangeOperator::dense() const {
  return MatrixXcd::Identity(dim(), dim()).colwise().reverse();
}

MatrixXcd reverse_apply(const ExchangeOperator& j, const MatrixXcd& m) {
  if (m.rows() != j.dim()) {
    std::ostringstream msg;
    msg << "exchange operator of size " << j.dim() << " applied to " << m.rows() << " rows";
    throw DomainError(msg.str());
  }
  return m.colwise().reverse();
}

MatrixXcd SchurState::w() const { return what.colwise().reverse(); }

MatrixXcd SchurState::alpha_solve(const MatrixXcd& x) const { return alpha_factor.solve(x); }

MatrixXcd SchurState::alpha_transpose_solve(const MatrixXcd& x) const {
  return alpha_factor.solve(x.conjugate()).conjugate();
}

SchurState schur_init(const TbtGenerators& gen) {
  if (gen.block_count() < 2) throw DomainError("Schur recursion needs at least two blocks");
  const MatrixXcd r0 = gen.block(0);
  const MatrixXcd r1 = gen.block(1);
  const auto r0_factor = factor_or_throw(r0, "R_0");

  SchurState s;
  s.k = 1;
  const MatrixXcd w1 = -r0_factor.solve(r1);
  s.alpha = hermitian_part(r0 + w1.adjoint() * r1);
  s.alpha_factor = factor_or_throw(s.alpha, "Schur complement alpha_1");
  s.what = w1.colwise().reverse();
  return s;
}

SchurState schur_advance(const SchurState& state, const TbtGenerators& gen) {
  const int k = state.k;
  const int p = gen.block_size();
  if (k + 1 >= gen.block_count()) {
    throw DomainError("Schur recursion already at the last block");
  }
  if (state.what.rows() != static_cast<Index>(k) * p || state.what.cols() != p) {
    throw DomainError("Schur state does not match the generators");
  }

  // W_k^T J_{p,k} [R_k; ...; R_1] = W_hat_k^T [R_k; ...; R_1]
  MatrixXcd beta = state.what.transpose() * stacked_generators(gen, k);
  beta += gen.block(k + 1).colwise().reverse();

  const MatrixXcd gain = state.alpha_transpose_solve(beta);

  SchurState next;
  next.k = k + 1;
  next.what.resize(static_cast<Index>(k + 1) * p, p);
  next.what.topRows(static_cast<Index>(k) * p) =
      state.what - state.what.colwise().reverse().conjugate() * gain;
  next.what.bottomRows(p) = -gain;
  next.alpha = hermitian_part(state.alpha - beta.adjoint() * gain);
  std::ostringstream label;
  label << "Schur complement alpha_" << next.k;
  next.alpha_factor = factor_or_throw(next.alpha, label.str().c_str());
  next.beta = std::move(beta);
  return next;
}

MatrixXcd tbt_invert(const TbtGenerators& gen) {
  const int m = gen.block_count();
  const int p = gen.block_size();
  if (m == 1) return dense_oracle_invert(gen.block(0));

  SchurState s = schur_init(gen);
  while (s.k < m - 1) s = schur_advance(s, gen);

  const Index pi = p;
  const auto blk = [pi](MatrixXcd& g, int a, int b) { return g.block(a * pi, b * pi, pi, pi); };

  const MatrixXcd what = s.what;
  const MatrixXcd w = s.w();
  const MatrixXcd a_hat = s.alpha_transpose_solve(what.transpose());  // alpha^{-T} W_hat^T
  const MatrixXcd a_w = s.alpha_solve(w.adjoint());                   // alpha^{-1} W^*

  MatrixXcd g = MatrixXcd::Zero(gen.dim(), gen.dim());

  // First block row from the persymmetric block inverse.
  blk(g, 0, 0) = s.alpha_transpose_solve(MatrixXcd::Identity(p, p).colwise().reverse())
                     .colwise()
                     .reverse();
  g.block(0, pi, pi, pi * (m - 1)) = a_hat.colwise().reverse();

  // Upper quarter: block (a, b) = block (a-1, b-1) + (conj(W_hat) alpha^{-T} W_hat^T
  // - W alpha^{-1} W^*)_{a-1, b-1}, bounded by the diagonal and anti-diagonal.
  const int half = (m + 1) / 2;
  for (int a = 1; a < half; ++a) {
    const auto what_row = what.middleRows((a - 1) * pi, pi).conjugate();
    const auto w_row = w.middleRows((a - 1) * pi, pi);
    for (int b = a; b <= m - 1 - a; ++b) {
      blk(g, a, b) = blk(g, a - 1, b - 1) + what_row * a_hat.middleCols((b - 1) * pi, pi) -
                     w_row * a_w.middleCols((b - 1) * pi, pi);
    }
  }

  // Diagonal and anti-diagonal blocks are counted twice by the completion
  // below; the center block (odd m) four times.
  for (int a = 0; a < half; ++a) {
    blk(g, a, a) *= 0.5;
    blk(g, a, m - 1 - a) *= 0.5;
  }

  g += g.transpose().reverse().eval();  // persymmetry: (J G J)^T
  g += g.adjoint().eval();              // Hermitian symmetry
  return g;
}

MatrixXcd stack(const BlockVector& b) {
  if (b.empty()) return {};
  Index rows = 0;
  for (const auto& x : b) rows += x.rows();
  MatrixXcd out(rows, b.front().cols());
  Index r = 0;
  for (const auto& x : b) {
    if (x.cols() != out.cols()) throw DomainError("block vector has non-uniform width");
    out.middleRows(r, x.rows()) = x;
    r += x.rows();
  }
  return out;
}

BlockVector unstack(const MatrixXcd& m, int block_size) {
  if (block_size < 1 || m.rows() % block_size != 0) {
    throw DomainError("matrix rows are not a multiple of the block size");
  }
  BlockVector out;
  for (Index r = 0; r < m.rows(); r += block_size) out.emplace_back(m.middleRows(r, block_size));
  return out;
}

BlockVector tbt_solve(const TbtGenerators& gen, const BlockVector& b) {
  const int m = gen.block_count();
  const int p = gen.block_size();
  if (static_cast<int>(b.size()) != m) {
    std::ostringstream msg;
    msg << "right-hand side has " << b.size() << " blocks, expected " << m;
    throw DomainError(msg.str());
  }
  const Index q = b.front().cols();
  if (q < 1) throw DomainError("right-hand side needs at least one column");
  for (const auto& blk : b) {
    if (blk.rows() != p || blk.cols() != q) throw DomainError("right-hand side block shape mismatch");
  }

  const auto r0_factor = factor_or_throw(gen.block(0), "R_0");
  MatrixXcd x = r0_factor.solve(b.front());
  if (m == 1) return {x};

  // Leading k blocks of B, grown alongside X.
  MatrixXcd b_lead = b.front();
  SchurState s = schur_init(gen);
  for (int k = 1; k < m; ++k) {
    const MatrixXcd w = s.w();
    const MatrixXcd delta = w.adjoint() * b_lead + b[static_cast<std::size_t>(k)];
    const MatrixXcd y = s.alpha_solve(delta);

    MatrixXcd next(static_cast<Index>(k + 1) * p, q);
    next.topRows(static_cast<Index>(k) * p) = x + w * y;
    next.bottomRows(p) = y;
    x = std::move(next);

    if (k + 1 < m) {
      MatrixXcd grown(b_lead.rows() + p, q);
      grown << b_lead, b[static_cast<std::size_t>(k)];
      b_lead = std::move(grown);
      s = schur_advance(s, gen);
    }
  }
  return unstack(x, p);
}

TbtGenerators random_pd_generators(int block_count, int block_size, std::uint64_t seed) {
  TbtGenerators gen(block_count, block_size);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const int p = block_size;
  for (int j = 0; j < block_count; ++j)
    for (int l = -(p - 1); l < p; ++l) {
      if (j == 0 && l < 0) continue;
      const double re = normal(rng);
      const double im = normal(rng);
      gen.h(j, l) = {re, j == 0 && l == 0 ? 0.0 : im};
    }
  for (int l = 1; l < p; ++l) gen.h(0, -l) = std::conj(gen.h(0, l));

  // Row sums of |entries| of the assembled matrix are bounded by the total
  // magnitude of all generators (each lag counted once in each direction).
  double total = 0.0;
  for (int j = 0; j < block_count; ++j)
    for (int l = -(p - 1); l < p; ++l) total += std::abs(gen.h(j, l));
  gen.h(0, 0) += 2.0 * total + 1.0;
  return gen;
}

MatrixXcd dense_oracle_invert(const MatrixXcd& m) {
  if (m.rows() != m.cols()) throw DomainError("matrix to invert is not square");
  const auto llt = factor_or_throw(m, "matrix");
  return llt.solve(MatrixXcd::Identity(m.rows(), m.cols()));
}

MatrixXcd dense_oracle_solve(const MatrixXcd& m, const MatrixXcd& b) {
  if (m.rows() != m.cols() || b.rows() != m.rows()) throw DomainError("dense solve shape mismatch");
  return factor_or_throw(m, "matrix").solve(b);
}

}  // namespace specest
