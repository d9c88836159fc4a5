#include "specest/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specest/errors.hpp"

namespace specest {

IndexSet::IndexSet(int n1, int n2) : n1_(n1), n2_(n2) {
  if (n1 < 1 || n2 < 1) {
    std::ostringstream msg;
    msg << "index set orders must be positive, got n1=" << n1 << " n2=" << n2;
    throw DomainError(msg.str());
  }
}

bool IndexSet::contains(LagIndex k) const noexcept {
  return std::abs(k.k1) <= n1_ && std::abs(k.k2) <= n2_;
}

std::size_t IndexSet::offset(LagIndex k) const {
  if (!contains(k)) {
    std::ostringstream msg;
    msg << "lag (" << k.k1 << "," << k.k2 << ") outside index set n1=" << n1_ << " n2=" << n2_;
    throw DomainError(msg.str());
  }
  return static_cast<std::size_t>((2 * n2_ + 1) * (k.k1 + n1_) + k.k2 + n2_);
}

LagIndex IndexSet::lag_at(std::size_t offset) const {
  if (offset >= size()) throw DomainError("vector offset outside index set");
  const int p = 2 * n2_ + 1;
  const int i = static_cast<int>(offset);
  return {i / p - n1_, i % p - n2_};
}

std::size_t vec_position(LagIndex k, const IndexSet& s) { return s.offset(k) + 1; }

SymmetricMultisequence::SymmetricMultisequence(const IndexSet& s)
    : set_(s), values_(s.size(), cplx{0.0, 0.0}) {}

SymmetricMultisequence::SymmetricMultisequence(const IndexSet& s, std::vector<cplx> values)
    : set_(s), values_(std::move(values)) {}

SymmetricMultisequence SymmetricMultisequence::from_values(const IndexSet& s,
                                                           std::vector<cplx> values, double tol) {
  if (values.size() != s.size()) {
    std::ostringstream msg;
    msg << "expected " << s.size() << " coefficients, got " << values.size();
    throw DomainError(msg.str());
  }
  SymmetricMultisequence out(s, std::move(values));
  const double defect = out.symmetry_defect();
  if (!(defect <= tol)) {
    std::ostringstream msg;
    msg << "coefficients violate conjugate symmetry (defect " << defect << " > " << tol << ")";
    throw InvalidInputError(msg.str());
  }
  // Snap to exact symmetry.
  auto& v = out.values_;
  const std::size_t n = v.size();
  for (std::size_t i = n / 2 + 1; i < n; ++i) {
    const cplx avg = 0.5 * (v[i] + std::conj(v[n - 1 - i]));
    v[i] = avg;
    v[n - 1 - i] = std::conj(avg);
  }
  v[n / 2] = v[n / 2].real();
  return out;
}

double SymmetricMultisequence::symmetry_defect() const noexcept {
  // The lexicographic order maps k -> -k onto index reversal.
  const std::size_t n = values_.size();
  double defect = std::abs(values_[n / 2].imag());
  for (std::size_t i = 0; i < n / 2; ++i) {
    defect = std::max(defect, std::abs(values_[i] - std::conj(values_[n - 1 - i])));
  }
  return defect;
}

SymmetricMultisequence SymmetricMultisequence::operator+(const SymmetricMultisequence& rhs) const {
  if (!(set_ == rhs.set_)) throw DomainError("multisequences live on different index sets");
  std::vector<cplx> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += rhs.values_[i];
  return {set_, std::move(v)};
}

SymmetricMultisequence SymmetricMultisequence::operator-(const SymmetricMultisequence& rhs) const {
  return *this + rhs * -1.0;
}

SymmetricMultisequence SymmetricMultisequence::operator*(double s) const {
  std::vector<cplx> v(values_);
  for (auto& x : v) x *= s;
  return {set_, std::move(v)};
}

CoefficientVector vectorize(const SymmetricMultisequence& q) {
  const auto vals = q.values();
  CoefficientVector v(static_cast<Eigen::Index>(vals.size()));
  std::copy(vals.begin(), vals.end(), v.data());
  return v;
}

SymmetricMultisequence devectorize(const CoefficientVector& v, const IndexSet& s, double tol) {
  return SymmetricMultisequence::from_values(s, std::vector<cplx>(v.data(), v.data() + v.size()),
                                             tol);
}

double real_inner_product(const SymmetricMultisequence& q, const SymmetricMultisequence& s) {
  if (!(q.index_set() == s.index_set())) {
    throw DomainError("inner product of multisequences on different index sets");
  }
  const auto a = q.values();
  const auto b = s.values();
  cplx sum{0.0, 0.0};
  double scale = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += a[i] * std::conj(b[i]);
    scale += std::abs(a[i]) * std::abs(b[i]);
  }
  if (std::abs(sum.imag()) >= 1e-12 * scale) {
    std::ostringstream msg;
    msg << "inner product has imaginary residue " << sum.imag();
    throw InvalidInputError(msg.str());
  }
  return sum.real();
}

double norm2(const SymmetricMultisequence& q) {
  double acc = 0.0;
  for (const auto& x : q.values()) acc += std::norm(x);
  return std::sqrt(acc);
}

}  // namespace specest
