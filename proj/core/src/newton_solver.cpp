#include "specest/newton_solver.hpp"

#include <algorithm>
#include <cfloat>
#include <limits>
#include <cmath>
#include <iostream>
#include <sstream>

#include "specest/tbt_linalg.hpp"

namespace specest {

namespace {

// Symmetry defect above which a computed direction is reported before it is
// re-symmetrized.
constexpr double kDirectionSymmetryTol = 1e-10;
constexpr double kMinStep = 1e-14;

SymmetricMultisequence symmetrize_direction(const IndexSet& s, std::vector<cplx> d) {
  double scale = 1.0;
  for (const auto& v : d) scale = std::max(scale, std::abs(v));
  const std::size_t n = d.size();
  double defect = std::abs(d[n / 2].imag());
  for (std::size_t i = 0; i < n / 2; ++i) {
    defect = std::max(defect, std::abs(d[i] - std::conj(d[n - 1 - i])));
  }
  if (defect > kDirectionSymmetryTol * scale) {
    std::cerr << "specest: warning: Newton direction symmetry defect " << defect
              << " re-symmetrized\n";
  }
  return SymmetricMultisequence::from_values(s, std::move(d), std::numeric_limits<double>::max());
}

}  // namespace

double directional_derivative(const SymmetricMultisequence& g, const SymmetricMultisequence& d) {
  if (!(g.index_set() == d.index_set())) throw DomainError("gradient and direction index sets differ");
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < g.values().size(); ++i) acc += g.values()[i] * d.values()[i];
  return acc.real();
}

HessianMethod parse_hessian_method(std::string_view name) {
  if (name == "full") return HessianMethod::kFull;
  if (name == "quarter") return HessianMethod::kQuarter;
  throw DomainError("unknown Hessian method '" + std::string(name) + "' (expected full|quarter)");
}

std::string_view to_string(HessianMethod m) {
  return m == HessianMethod::kFull ? "full" : "quarter";
}

void SolverConfig::validate() const {
  if (!(grad_tol > 0.0)) throw DomainError("grad_tol must be positive");
  if (max_iters < 1) throw DomainError("max_iters must be positive");
  if (!(backtrack_shrink > 0.0 && backtrack_shrink < 1.0)) {
    throw DomainError("backtrack_shrink must lie in (0, 1)");
  }
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw DomainError("armijo_c must lie in (0, 1)");
}

SymmetricMultisequence newton_direction(const SymmetricMultisequence& q,
                                        const SymmetricMultisequence& sigma,
                                        const GridFunction& psi_inv) {
  const IndexSet& s = q.index_set();
  const SymmetricMultisequence g = dual_gradient(q, sigma, psi_inv);
  const TbtGenerators gen = hessian_generators(q, psi_inv);

  const Eigen::MatrixXcd rhs = -vectorize(g);
  const Eigen::MatrixXcd x = stack(tbt_solve(gen, unstack(rhs, gen.block_size())));

  std::vector<cplx> d(s.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::conj(x(static_cast<Eigen::Index>(i), 0));
  return symmetrize_direction(s, std::move(d));
}

SymmetricMultisequence quasi_newton_direction(const SymmetricMultisequence& q,
                                              const SymmetricMultisequence& sigma,
                                              const GridFunction& psi_inv) {
  const IndexSet& s = q.index_set();
  const SymmetricMultisequence g = dual_gradient(q, sigma, psi_inv);
  const Eigen::MatrixXcd h = assemble_dense_hessian(hessian_generators(q, psi_inv));

  const auto n = static_cast<Eigen::Index>(s.size());
  const Eigen::Index reduced = n - n / 2;  // n2 + 1 + n1 (2 n2 + 1)
  const Eigen::VectorXcd g_half = vectorize(g).tail(reduced);
  const Eigen::MatrixXcd h_half = h.bottomRightCorner(reduced, reduced);
  const auto expand = [&](const Eigen::MatrixXcd& y) {
    return SymmetricMultisequence::from_half_plane(s, [&](LagIndex k) {
      return std::conj(y(static_cast<Eigen::Index>(s.offset(k)) - n / 2, 0));
    });
  };
  SymmetricMultisequence d = expand(dense_oracle_solve(h_half, -g_half));
  if (directional_derivative(g, d) < 0.0) return d;

  // Fallback: right-hand side proportional to the gradient in independent coordinates.
  Eigen::VectorXcd g_weighted = g_half;
  g_weighted(0) *= 0.5;
  return expand(dense_oracle_solve(h_half, -g_weighted));
}

double moment_residual(const SymmetricMultisequence& sigma, const GridFunction& phi) {
  const IndexSet& s = sigma.index_set();
  const LagArray c = fourier_coefficients(phi, s.n1(), s.n2());
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const LagIndex k = s.lag_at(i);
    worst = std::max(worst, std::abs(sigma.values()[i] - c(k.k1, k.k2)));
  }
  return worst;
}

int iterations_to(const IterationTrace& trace, double tol) {
  for (const auto& r : trace) {
    if (r.dist_to_final < tol) return r.iter;
  }
  return -1;
}

SolveResult solve_dual(const SymmetricMultisequence& sigma, const GridFunction& psi_inv,
                       const SolverConfig& cfg, HessianMethod method) {
  cfg.validate();
  const IndexSet& s = sigma.index_set();
  if (!(sigma(0, 0).real() > 0.0)) throw DomainError("sigma_0 must be positive");
  if (!(psi_inv.min() > 0.0)) throw DomainError("Psi^{-1} must be strictly positive on the grid");

  SymmetricMultisequence q = cfg.initial_q.value_or(SymmetricMultisequence(s));
  if (!(q.index_set() == s)) throw DomainError("initial point lives on a different index set");

  std::vector<SymmetricMultisequence> iterates;
  IterationTrace trace;

  const auto finish = [&]() {
    const CoefficientVector last = vectorize(iterates.back());
    for (std::size_t i = 0; i < trace.size(); ++i) {
      trace[i].dist_to_final = (vectorize(iterates[i]) - last).norm();
    }
  };

  double objective = dual_objective(q, sigma, psi_inv);
  for (int iter = 0;; ++iter) {
    const SymmetricMultisequence g = dual_gradient(q, sigma, psi_inv);
    const double gnorm = norm2(g);
    iterates.push_back(q);
    trace.push_back({iter, objective, gnorm, 0.0, 0.0});
    if (gnorm < cfg.grad_tol) break;
    if (iter >= cfg.max_iters) {
      finish();
      std::ostringstream msg;
      msg << "no convergence after " << cfg.max_iters << " iterations (gradient norm " << gnorm
          << ")";
      throw ConvergenceError(msg.str(), std::move(trace));
    }

    const SymmetricMultisequence d = method == HessianMethod::kFull
                                         ? newton_direction(q, sigma, psi_inv)
                                         : quasi_newton_direction(q, sigma, psi_inv);
    const double slope = directional_derivative(g, d);
    // Predicted decrease below the resolution of the objective.
    const double resolvable = 1e2 * DBL_EPSILON * std::max(1.0, std::abs(objective));

    double t = 1.0;
    for (;;) {
      const SymmetricMultisequence trial = q + d * t;
      if (check_feasible(trial, psi_inv).feasible) {
        const double trial_obj = dual_objective(trial, sigma, psi_inv);
        const bool armijo = trial_obj <= objective + cfg.armijo_c * t * slope;
        if (armijo || (t == 1.0 && -slope < resolvable)) {
          q = trial;
          objective = trial_obj;
          trace.back().step = t;
          break;
        }
      }
      t *= cfg.backtrack_shrink;
      if (t < kMinStep) {
        finish();
        std::ostringstream msg;
        msg << "line search stagnated at iteration " << iter << " (gradient norm " << gnorm
            << ", directional derivative " << slope << ")";
        throw StagnationError(msg.str(), std::move(trace));
      }
    }
  }
  finish();
  return {iterates.back(), std::move(trace)};
}

}  // namespace specest
