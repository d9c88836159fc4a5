#pragma once

#include <iosfwd>

#include "specest/core_types.hpp"
#include "specest/field_sim.hpp"
#include "specest/newton_solver.hpp"
#include "specest/spectral_dual.hpp"

namespace specest {

// All writers emit doubles with max_digits10 so files round-trip exactly.
// Readers throw InvalidInputError on malformed content.

/// `k1,k2,re,im`, one row per lag in lexicographic order.
void write_coefficients(std::ostream& out, const SymmetricMultisequence& q);
/// Infers (n1, n2) from the largest lags, then checks that every lag of the
/// rectangle appears exactly once and that the values are conjugate-symmetric.
SymmetricMultisequence read_coefficients(std::istream& in, double tol = kSymmetryTol);

/// `# T1=<..> T2=<..>` preamble, then `t1,t2,re,im`, one row per sample.
void write_samples(std::ostream& out, const FieldSamples& y);
FieldSamples read_samples(std::istream& in);

/// `iter,objective,grad_norm,step,dist_to_final`.
void write_trace(std::ostream& out, const IterationTrace& trace);
IterationTrace read_trace(std::istream& in);

/// `theta1,theta2,phi`, one row per grid node in row-major order.
void write_spectrum(std::ostream& out, const GridFunction& phi);

}  // namespace specest
