#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "specest/core_types.hpp"
#include "specest/errors.hpp"
#include "specest/spectral_dual.hpp"

namespace specest {

enum class HessianMethod {
  kFull,     ///< Newton step with the full TBT Hessian (fast TBT solve).
  kQuarter,  ///< Lower-right principal submatrix only (quasi-Newton baseline).
};

HessianMethod parse_hessian_method(std::string_view name);
std::string_view to_string(HessianMethod m);

struct SolverConfig {
  double grad_tol = 1e-10;
  int max_iters = 100;
  double backtrack_shrink = 0.5;
  double armijo_c = 1e-4;
  /// Starting point; all-zero when unset.
  std::optional<SymmetricMultisequence> initial_q;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

struct IterationRecord {
  int iter = 0;
  double objective = 0.0;
  double grad_norm = 0.0;
  /// Step length accepted when leaving this iterate; 0 for the last one.
  double step = 0.0;
  /// ||vec(q^k) - vec(q_final)||_2, filled in once the run ends.
  double dist_to_final = 0.0;
};

using IterationTrace = std::vector<IterationRecord>;

struct SolveResult {
  SymmetricMultisequence q;
  IterationTrace trace;
};

/// Raised when max_iters is exhausted; carries the trace so far.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, IterationTrace trace)
      : Error(what), trace_(std::move(trace)) {}
  const IterationTrace& trace() const noexcept { return trace_; }

 private:
  IterationTrace trace_;
};

/// Raised when the backtracking step falls below 1e-14.
class StagnationError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// Newton direction d: the minimizer of the local quadratic model of J over
/// conjugate-symmetric perturbations. With the Wirtinger gradient g and the
/// Hessian H_{k,l} = h_{l-k} it satisfies H conj(vec d) = -vec g, solved
/// with one TBT solve.
SymmetricMultisequence newton_direction(const SymmetricMultisequence& q,
                                        const SymmetricMultisequence& sigma,
                                        const GridFunction& psi_inv);

/// Same model restricted to the lower-right principal submatrix of size
/// n2 + 1 + n1 (2 n2 + 1), i.e. the coordinates k >= 0 in lexicographic
/// order. The other half follows from d_{-k} = conj(d_k).
SymmetricMultisequence quasi_newton_direction(const SymmetricMultisequence& q,
                                              const SymmetricMultisequence& sigma,
                                              const GridFunction& psi_inv);

/// Damped Newton iteration from cfg.initial_q (zero by default) with
/// feasibility-first backtracking and an Armijo test. Stops once the
/// gradient norm drops below cfg.grad_tol.
SolveResult solve_dual(const SymmetricMultisequence& sigma, const GridFunction& psi_inv,
                       const SolverConfig& cfg = {}, HessianMethod method = HessianMethod::kFull);

/// max_k |sigma_k - c_k(Phi)| over the index set of sigma.
/// Derivative of J at q along d, given g = dual_gradient at q: Re sum_k g_k d_k.
double directional_derivative(const SymmetricMultisequence& g, const SymmetricMultisequence& d);

double moment_residual(const SymmetricMultisequence& sigma, const GridFunction& phi);

/// First iteration whose dist_to_final is below `tol`, or -1.
int iterations_to(const IterationTrace& trace, double tol);

}  // namespace specest
