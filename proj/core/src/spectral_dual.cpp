#include "specest/spectral_dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fft2d.hpp"
#include "specest/errors.hpp"

namespace specest {

namespace {

int wrap(int k, int n) { return ((k % n) + n) % n; }

// Symmetry check for quantities produced by FFTs of real data, where the
// residue scales with the magnitude of the data.
SymmetricMultisequence snap_symmetric(const IndexSet& s, std::vector<cplx> values) {
  double scale = 1.0;
  for (const auto& v : values) scale = std::max(scale, std::abs(v));
  return SymmetricMultisequence::from_values(s, std::move(values), 1e-10 * scale);
}

}  // namespace

FrequencyGrid::FrequencyGrid(int n1, int n2) : n1_(n1), n2_(n2) {
  if (n1 < 1 || n2 < 1) throw DomainError("frequency grid dimensions must be positive");
}

double FrequencyGrid::theta1(int l1) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(l1) / static_cast<double>(n1_);
}

double FrequencyGrid::theta2(int l2) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(l2) / static_cast<double>(n2_);
}

GridFunction::GridFunction(const FrequencyGrid& g, std::vector<double> values)
    : grid_(g), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    std::ostringstream msg;
    msg << "grid function has " << values_.size() << " values for a grid of " << grid_.size();
    throw DomainError(msg.str());
  }
}

GridFunction GridFunction::constant(const FrequencyGrid& g, double c) {
  return {g, std::vector<double>(g.size(), c)};
}

double GridFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }
double GridFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

LagArray::LagArray(int m1, int m2) : m1_(m1), m2_(m2) {
  if (m1 < 0 || m2 < 0) throw DomainError("maximum lags must be non-negative");
  values_.assign(static_cast<std::size_t>(2 * m1 + 1) * static_cast<std::size_t>(2 * m2 + 1),
                 cplx{0.0, 0.0});
}

std::size_t LagArray::offset(int k1, int k2) const {
  if (std::abs(k1) > m1_ || std::abs(k2) > m2_) throw DomainError("lag outside lag array");
  return static_cast<std::size_t>((2 * m2_ + 1) * (k1 + m1_) + k2 + m2_);
}

cplx& LagArray::operator()(int k1, int k2) { return values_[offset(k1, k2)]; }
cplx LagArray::operator()(int k1, int k2) const { return values_[offset(k1, k2)]; }

SymmetricMultisequence LagArray::restrict_to(const IndexSet& s, double tol) const {
  std::vector<cplx> v(s.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const LagIndex k = s.lag_at(i);
    v[i] = (*this)(k.k1, k.k2);
  }
  return SymmetricMultisequence::from_values(s, std::move(v), tol);
}

TbtGenerators::TbtGenerators(int block_count, int block_size) : m_(block_count), p_(block_size) {
  if (block_count < 1 || block_size < 1) throw DomainError("TBT dimensions must be positive");
  h_.assign(static_cast<std::size_t>(m_) * static_cast<std::size_t>(2 * p_ - 1), cplx{0.0, 0.0});
}

std::size_t TbtGenerators::offset(int j, int l) const {
  if (j < 0 || j >= m_ || std::abs(l) >= p_) throw DomainError("generator lag out of range");
  return static_cast<std::size_t>(j) * static_cast<std::size_t>(2 * p_ - 1) +
         static_cast<std::size_t>(l + p_ - 1);
}

cplx& TbtGenerators::h(int j, int l) { return h_[offset(j, l)]; }
cplx TbtGenerators::h(int j, int l) const { return h_[offset(j, l)]; }

Eigen::MatrixXcd TbtGenerators::block(int j) const {
  Eigen::MatrixXcd r(p_, p_);
  for (int c = 0; c < p_; ++c)
    for (int rr = 0; rr < p_; ++rr) r(rr, c) = h(j, c - rr);
  return r;
}

GridFunction eval_trig_poly(const SymmetricMultisequence& q, const FrequencyGrid& g) {
  const IndexSet& s = q.index_set();
  std::vector<cplx> buf(g.size(), cplx{0.0, 0.0});
  for (std::size_t i = 0; i < s.size(); ++i) {
    const LagIndex k = s.lag_at(i);
    // Lags that alias onto the same node carry the same exponential there.
    buf[g.index(wrap(k.k1, g.n1()), wrap(k.k2, g.n2()))] += q.values()[i];
  }
  detail::fft2d(buf, g.n1(), g.n2(), detail::FftSign::kForward);

  double max_abs = 0.0;
  double max_imag = 0.0;
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < buf.size(); ++i) {
    max_abs = std::max(max_abs, std::abs(buf[i]));
    max_imag = std::max(max_imag, std::abs(buf[i].imag()));
    out[i] = buf[i].real();
  }
  if (max_imag > 1e-10 * std::max(max_abs, 1e-300)) {
    std::ostringstream msg;
    msg << "trigonometric polynomial has imaginary residue " << max_imag;
    throw InvalidInputError(msg.str());
  }
  return {g, std::move(out)};
}

double quadrature(const GridFunction& f) {
  double acc = 0.0;
  for (double v : f.values()) acc += v;
  return acc / static_cast<double>(f.values().size());
}

LagArray fourier_coefficients(const GridFunction& f, int maxlag1, int maxlag2) {
  const FrequencyGrid& g = f.grid();
  if (2 * maxlag1 >= g.n1() || 2 * maxlag2 >= g.n2()) {
    std::ostringstream msg;
    msg << "lags (" << maxlag1 << "," << maxlag2 << ") alias on a " << g.n1() << "x" << g.n2()
        << " grid; need 2*maxlag < N";
    throw DomainError(msg.str());
  }
  std::vector<cplx> buf(f.values().begin(), f.values().end());
  detail::fft2d(buf, g.n1(), g.n2(), detail::FftSign::kBackward);

  const double scale = 1.0 / static_cast<double>(g.size());
  LagArray out(maxlag1, maxlag2);
  for (int k1 = -maxlag1; k1 <= maxlag1; ++k1)
    for (int k2 = -maxlag2; k2 <= maxlag2; ++k2)
      out(k1, k2) = scale * buf[g.index(wrap(k1, g.n1()), wrap(k2, g.n2()))];
  return out;
}

Feasibility check_feasible(const SymmetricMultisequence& q, const GridFunction& psi_inv) {
  const GridFunction qt = eval_trig_poly(q, psi_inv.grid());
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < qt.values().size(); ++i) {
    lo = std::min(lo, psi_inv.values()[i] + qt.values()[i]);
  }
  return {lo > 0.0, lo};
}

GridFunction feasible_denominator(const SymmetricMultisequence& q, const GridFunction& psi_inv) {
  const GridFunction qt = eval_trig_poly(q, psi_inv.grid());
  std::vector<double> d(qt.values().size());
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = psi_inv.values()[i] + qt.values()[i];
    lo = std::min(lo, d[i]);
  }
  if (!(lo > 0.0)) {
    std::ostringstream msg;
    msg << "dual variable infeasible: min of Psi^-1 + Q on grid is " << lo;
    throw FeasibilityError(msg.str(), lo);
  }
  return {psi_inv.grid(), std::move(d)};
}

double dual_objective(const SymmetricMultisequence& q, const SymmetricMultisequence& sigma,
                      const GridFunction& psi_inv) {
  const GridFunction d = feasible_denominator(q, psi_inv);
  double acc = 0.0;
  for (double v : d.values()) acc += std::log(v);
  return real_inner_product(q, sigma) - acc / static_cast<double>(d.values().size());
}

SymmetricMultisequence dual_gradient(const SymmetricMultisequence& q,
                                     const SymmetricMultisequence& sigma,
                                     const GridFunction& psi_inv) {
  const IndexSet& s = q.index_set();
  if (!(sigma.index_set() == s)) throw DomainError("Sigma and Q live on different index sets");
  const GridFunction phi = primal_recover(q, psi_inv);
  const LagArray c = fourier_coefficients(phi, s.n1(), s.n2());
  std::vector<cplx> g(s.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const LagIndex k = s.lag_at(i);
    g[i] = sigma(-k) - c(-k.k1, -k.k2);
  }
  return snap_symmetric(s, std::move(g));
}

TbtGenerators hessian_generators(const SymmetricMultisequence& q, const GridFunction& psi_inv) {
  const IndexSet& s = q.index_set();
  const FrequencyGrid& g = psi_inv.grid();
  if (g.n1() <= 4 * s.n1() || g.n2() <= 4 * s.n2()) {
    std::ostringstream msg;
    msg << "grid " << g.n1() << "x" << g.n2() << " too small for Hessian lags of orders ("
        << s.n1() << "," << s.n2() << "); need N_j > 4 n_j";
    throw DomainError(msg.str());
  }
  const GridFunction d = feasible_denominator(q, psi_inv);
  std::vector<double> f(d.values().size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = 1.0 / (d.values()[i] * d.values()[i]);
  const LagArray c = fourier_coefficients(GridFunction(g, std::move(f)), 2 * s.n1(), 2 * s.n2());

  TbtGenerators gen = TbtGenerators::for_index_set(s);
  for (int j = 0; j < gen.block_count(); ++j)
    for (int l = -(gen.block_size() - 1); l < gen.block_size(); ++l) gen.h(j, l) = c(j, l);
  gen.h(0, 0) = gen.h(0, 0).real();
  return gen;
}

Eigen::MatrixXcd assemble_dense_hessian(const TbtGenerators& gen) {
  const int m = gen.block_count();
  const int p = gen.block_size();
  Eigen::MatrixXcd out(gen.dim(), gen.dim());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int r = 0; r < p; ++r)
        for (int c = 0; c < p; ++c) {
          const cplx v = b >= a ? gen.h(b - a, c - r) : std::conj(gen.h(a - b, r - c));
          out(static_cast<Eigen::Index>(a) * p + r, static_cast<Eigen::Index>(b) * p + c) = v;
        }
  return out;
}

GridFunction primal_recover(const SymmetricMultisequence& q, const GridFunction& psi_inv) {
  const GridFunction d = feasible_denominator(q, psi_inv);
  std::vector<double> phi(d.values().size());
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = 1.0 / d.values()[i];
  return {psi_inv.grid(), std::move(phi)};
}

double is_divergence(const GridFunction& phi, const GridFunction& psi) {
  if (!(phi.grid() == psi.grid())) throw DomainError("spectra sampled on different grids");
  if (!(phi.min() > 0.0) || !(psi.min() > 0.0)) {
    throw DomainError("Itakura-Saito divergence needs strictly positive spectra");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < phi.values().size(); ++i) {
    const double a = phi.values()[i];
    const double b = psi.values()[i];
    acc += std::log(b / a) + (a - b) / b;
  }
  return acc / static_cast<double>(phi.values().size());
}

}  // namespace specest
