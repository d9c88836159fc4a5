#include "specest/field_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "specest/errors.hpp"

namespace specest {

FieldSamples::FieldSamples(int t1, int t2)
    : FieldSamples(t1, t2,
                   std::vector<cplx>(static_cast<std::size_t>(std::max(t1, 0)) *
                                     static_cast<std::size_t>(std::max(t2, 0)))) {}

FieldSamples::FieldSamples(int t1, int t2, std::vector<cplx> values)
    : t1_(t1), t2_(t2), y_(std::move(values)) {
  if (t1 < 1 || t2 < 1) throw DomainError("sample dimensions must be positive");
  if (y_.size() != static_cast<std::size_t>(t1) * static_cast<std::size_t>(t2)) {
    throw DomainError("sample count does not match T1 x T2");
  }
}

FieldModel FieldModel::with_ratio(double freq1, double freq2, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0)) throw DomainError("amplitude-to-noise ratio must be positive");
  FieldModel m;
  m.freq1 = freq1;
  m.freq2 = freq2;
  m.amplitude = 1.0;
  m.noise_std = 1.0 / ratio;
  m.seed = seed;
  return m;
}

FieldSamples synth_field(const FieldModel& model, int t1, int t2) {
  if (model.amplitude < 0.0 || model.noise_std < 0.0) {
    throw DomainError("amplitude and noise level must be non-negative");
  }
  std::mt19937_64 rng(model.seed);
  const double phase = model.phase ? *model.phase
                                   : std::uniform_real_distribution<double>(
                                         0.0, 2.0 * std::numbers::pi)(rng);
  std::normal_distribution<double> noise(0.0, model.noise_std / std::sqrt(2.0));

  FieldSamples out(t1, t2);
  for (int a = 0; a < t1; ++a) {
    for (int b = 0; b < t2; ++b) {
      const double arg = model.freq1 * a + model.freq2 * b + phase;
      const double re = noise(rng);
      const double im = noise(rng);
      out(a, b) = model.amplitude * std::polar(1.0, arg) + cplx{re, im};
    }
  }
  return out;
}

SymmetricMultisequence biased_covariances(const FieldSamples& y, const IndexSet& s) {
  if (s.n1() >= y.t1() || s.n2() >= y.t2()) {
    std::ostringstream msg;
    msg << "index set (" << s.n1() << "," << s.n2() << ") too large for " << y.t1() << "x"
        << y.t2() << " samples; need n_j < T_j";
    throw DomainError(msg.str());
  }
  const double norm = 1.0 / (static_cast<double>(y.t1()) * static_cast<double>(y.t2()));
  return SymmetricMultisequence::from_half_plane(s, [&](LagIndex k) {
    cplx acc{0.0, 0.0};
    for (int a = std::max(0, -k.k1); a < std::min(y.t1(), y.t1() - k.k1); ++a)
      for (int b = std::max(0, -k.k2); b < std::min(y.t2(), y.t2() - k.k2); ++b)
        acc += y(a + k.k1, b + k.k2) * std::conj(y(a, b));
    return norm * acc;
  });
}

ConstantPrior constant_prior(const SymmetricMultisequence& sigma, const FrequencyGrid& g) {
  const double s0 = sigma(0, 0).real();
  if (!(s0 > 0.0)) throw DomainError("constant prior needs sigma_0 > 0");
  return {GridFunction::constant(g, s0), GridFunction::constant(g, 1.0 / s0)};
}

}  // namespace specest
