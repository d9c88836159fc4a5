#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "specest/core_types.hpp"
#include "specest/spectral_dual.hpp"

namespace specest {

/// Observations y_t of a complex 2-D random field, t_j in [0, T_j).
class FieldSamples {
 public:
  FieldSamples(int t1, int t2);
  FieldSamples(int t1, int t2, std::vector<cplx> values);

  int t1() const noexcept { return t1_; }
  int t2() const noexcept { return t2_; }
  cplx operator()(int a, int b) const { return y_[index(a, b)]; }
  cplx& operator()(int a, int b) { return y_[index(a, b)]; }
  const std::vector<cplx>& values() const noexcept { return y_; }

  friend bool operator==(const FieldSamples&, const FieldSamples&) = default;

 private:
  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(t2_) + static_cast<std::size_t>(b);
  }

  int t1_;
  int t2_;
  std::vector<cplx> y_;
};

/// A single complex exponential in additive circular white Gaussian noise.
struct FieldModel {
  double freq1 = 0.0;  ///< planted frequency, radians
  double freq2 = 0.0;
  double amplitude = 1.0;
  double noise_std = 1.0;
  /// Uniform in [0, 2 pi) from the seed when unset.
  std::optional<double> phase;
  std::uint64_t seed = 0;

  /// Amplitude 1 and noise standard deviation 1 / ratio.
  static FieldModel with_ratio(double freq1, double freq2, double ratio, std::uint64_t seed);
};

/// y_t = a exp(i (<t, theta0> + phase)) + w_t, with w_t having independent
/// real and imaginary parts of variance noise_std^2 / 2.
///
/// Draws come from std::mt19937_64 seeded with `model.seed`: first the
/// phase (if unset), then the noise in row-major t order, real part before
/// imaginary part, through std::normal_distribution. Output is bit-for-bit
/// reproducible within one build.
FieldSamples synth_field(const FieldModel& model, int t1, int t2);

/// Biased covariance estimate
///   sigma_k = (1 / (T1 T2)) sum_{t, t + k in range} y_{t+k} conj(y_t),
/// evaluated on the half-plane and mirrored, so the result is exactly
/// conjugate-symmetric. Requires n_j < T_j.
SymmetricMultisequence biased_covariances(const FieldSamples& samples, const IndexSet& s);

/// Psi = sigma_0 on every node together with Psi^{-1}.
struct ConstantPrior {
  GridFunction psi;
  GridFunction psi_inv;
};
ConstantPrior constant_prior(const SymmetricMultisequence& sigma, const FrequencyGrid& g);

}  // namespace specest
