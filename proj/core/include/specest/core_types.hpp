#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace specest {

using cplx = std::complex<double>;

/// Default absolute tolerance for conjugate-symmetry checks. Suitable for
/// coefficients of magnitude O(1); pass a larger value for scaled data.
inline constexpr double kSymmetryTol = 1e-12;

/// Multi-index k = (k1, k2) of a covariance lag or polynomial coefficient.
struct LagIndex {
  int k1 = 0;
  int k2 = 0;

  friend constexpr bool operator==(const LagIndex&, const LagIndex&) = default;
  constexpr LagIndex operator-() const { return {-k1, -k2}; }
};

/// Rectangular index set {k : |k1| <= n1, |k2| <= n2}.
class IndexSet {
 public:
  IndexSet(int n1, int n2);

  int n1() const noexcept { return n1_; }
  int n2() const noexcept { return n2_; }
  /// (2 n1 + 1)(2 n2 + 1)
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(2 * n1_ + 1) * static_cast<std::size_t>(2 * n2_ + 1);
  }
  bool contains(LagIndex k) const noexcept;

  /// 0-based lexicographic offset; `vec_position` returns this plus one.
  std::size_t offset(LagIndex k) const;
  LagIndex lag_at(std::size_t offset) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  int n1_;
  int n2_;
};

/// 1-based position of q_{k1,k2} in vec(Q): (2 n2 + 1)(k1 + n1) + k2 + n2 + 1.
/// Throws DomainError for lags outside the index set.
std::size_t vec_position(LagIndex k, const IndexSet& s);

/// Complex coefficients on an IndexSet with q_{-k} = conj(q_k).
///
/// All |Lambda| entries are stored in lexicographic order so that the
/// storage is exactly vec(Q). Instances are immutable once built; the
/// factories validate symmetry.
class SymmetricMultisequence {
 public:
  /// All-zero multisequence.
  explicit SymmetricMultisequence(const IndexSet& s);

  /// Validates symmetry of `values` (lexicographic order) to `tol` and
  /// stores the exactly symmetrized copy.
  static SymmetricMultisequence from_values(const IndexSet& s, std::vector<cplx> values,
                                            double tol = kSymmetryTol);

  /// Builds from the half-plane {k1 > 0} U {k1 = 0, k2 >= 0}; the rest is
  /// filled by conjugation. The imaginary part at k = 0 is discarded.
  template <typename Fn>
  static SymmetricMultisequence from_half_plane(const IndexSet& s, Fn&& value_at) {
    SymmetricMultisequence out(s);
    for (std::size_t i = s.size() / 2; i < s.size(); ++i) {
      const LagIndex k = s.lag_at(i);
      const cplx v = value_at(k);
      out.values_[i] = v;
      out.values_[s.size() - 1 - i] = std::conj(v);
    }
    out.values_[s.size() / 2] = out.values_[s.size() / 2].real();
    return out;
  }

  const IndexSet& index_set() const noexcept { return set_; }
  cplx operator()(LagIndex k) const { return values_[set_.offset(k)]; }
  cplx operator()(int k1, int k2) const { return (*this)(LagIndex{k1, k2}); }
  std::span<const cplx> values() const noexcept { return values_; }

  /// Largest |q_k - conj(q_{-k})| plus |Im q_0|.
  double symmetry_defect() const noexcept;

  SymmetricMultisequence operator+(const SymmetricMultisequence& rhs) const;
  SymmetricMultisequence operator-(const SymmetricMultisequence& rhs) const;
  SymmetricMultisequence operator*(double s) const;

 private:
  SymmetricMultisequence(const IndexSet& s, std::vector<cplx> values);

  IndexSet set_;
  std::vector<cplx> values_;
};

using CoefficientVector = Eigen::VectorXcd;

/// vec(Q) in lexicographic order.
CoefficientVector vectorize(const SymmetricMultisequence& q);

/// Inverse of `vectorize`; throws InvalidInputError when the vector is not
/// conjugate-symmetric to within `tol`.
SymmetricMultisequence devectorize(const CoefficientVector& v, const IndexSet& s,
                                   double tol = kSymmetryTol);

/// <Q, S> = sum_k q_k conj(s_k). Real for symmetric arguments; the
/// imaginary residue is checked against 1e-12 (scaled by the magnitudes
/// involved) and dropped.
double real_inner_product(const SymmetricMultisequence& q, const SymmetricMultisequence& s);

/// Euclidean norm of vec(Q).
double norm2(const SymmetricMultisequence& q);

}  // namespace specest
