#include "commands.hpp"

#include <Eigen/Core>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "manifest.hpp"
#include "specest/csv_io.hpp"
#include "specest/errors.hpp"
#include "specest/field_sim.hpp"
#include "specest/newton_solver.hpp"
#include "specest/tbt_linalg.hpp"

namespace specest::cli {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return s.str();
}

template <class Fn>
void write_file(const std::string& path, Fn&& body) {
  std::ofstream f(path);
  if (!f) throw InvalidInputError("cannot open '" + path + "' for writing");
  body(f);
  f.flush();
  if (!f) throw InvalidInputError("write to '" + path + "' failed");
}

struct SynthArgs {
  int t1 = 30;
  int t2 = 30;
  double freq1 = 2 * std::numbers::pi * 0.3;
  double freq2 = 2 * std::numbers::pi * 0.2;
  double ratio = 1.0 / std::numbers::sqrt2;
  std::uint64_t seed = 1;
  std::string out;
};

struct EstimateArgs {
  std::string samples;
  int n1 = 1;
  int n2 = 1;
  int grid1 = 30;
  int grid2 = 30;
  std::string method = "full";
  double tol = 1e-10;
  std::string out_spectrum;
  std::string out_trace;
};

struct BenchArgs {
  int n_min = 1;
  int n_max = 8;
  int reps = 20;
  std::string out;
};

void emit_manifests(RunManifest m, const std::vector<std::string>& outputs) {
  m.timestamp = utc_timestamp();
  m.outputs = outputs;
  for (const auto& o : outputs) write_manifest(m, manifest_path(o));
}

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  if (a.t1 < 1 || a.t2 < 1) throw InvalidInputError("--t1 and --t2 must be positive");
  if (!(a.ratio > 0.0)) throw InvalidInputError("--ratio must be positive");
  const FieldModel model = FieldModel::with_ratio(a.freq1, a.freq2, a.ratio, a.seed);
  const FieldSamples y = synth_field(model, a.t1, a.t2);
  write_file(a.out, [&](std::ostream& f) { write_samples(f, y); });

  RunManifest m;
  m.command = "synth";
  m.args = {"--t1", std::to_string(a.t1), "--t2", std::to_string(a.t2), "--freq1", fmt(a.freq1),
            "--freq2", fmt(a.freq2), "--ratio", fmt(a.ratio), "--seed", std::to_string(a.seed),
            "--out", a.out};
  m.seed = a.seed;
  emit_manifests(m, {a.out});
  out << "wrote " << a.t1 * a.t2 << " samples to " << a.out << '\n';
  return kOk;
}

void print_row(std::ostream& os, const IterationRecord& r) {
  os << "iter=" << r.iter << " objective=" << fmt(r.objective) << " grad_norm=" << r.grad_norm
     << " step=" << r.step << '\n';
}

int cmd_estimate(const EstimateArgs& a, std::ostream& out, std::ostream& err) {
  const HessianMethod method = parse_hessian_method(a.method);
  if (!(a.tol > 0.0)) throw InvalidInputError("--tol must be positive");
  std::ifstream in(a.samples);
  if (!in) throw InvalidInputError("cannot open samples file '" + a.samples + "'");
  FieldSamples y = [&] {
    try {
      return read_samples(in);
    } catch (const InvalidInputError& e) {
      throw InvalidInputError(a.samples + ": " + e.what());
    }
  }();

  const IndexSet s(a.n1, a.n2);
  const FrequencyGrid grid(a.grid1, a.grid2);
  if (a.grid1 <= 4 * a.n1 || a.grid2 <= 4 * a.n2) {
    throw DomainError("grid must satisfy grid_j > 4 n_j");
  }
  const SymmetricMultisequence sigma = biased_covariances(y, s);
  const ConstantPrior prior = constant_prior(sigma, grid);

  SolverConfig cfg;
  cfg.grad_tol = a.tol;

  RunManifest m;
  m.command = "estimate";
  m.args = {"--samples", a.samples, "--n1", std::to_string(a.n1), "--n2", std::to_string(a.n2),
            "--grid1", std::to_string(a.grid1), "--grid2", std::to_string(a.grid2), "--method",
            std::string(to_string(method)), "--tol", fmt(a.tol)};
  std::vector<std::string> outputs;
  if (!a.out_spectrum.empty()) {
    m.args.insert(m.args.end(), {"--out-spectrum", a.out_spectrum});
    outputs.push_back(a.out_spectrum);
  }
  if (!a.out_trace.empty()) {
    m.args.insert(m.args.end(), {"--out-trace", a.out_trace});
    outputs.push_back(a.out_trace);
  }
  const auto save_trace = [&](const IterationTrace& t) {
    if (!a.out_trace.empty()) write_file(a.out_trace, [&](std::ostream& f) { write_trace(f, t); });
  };

  const SolveResult r = [&] {
    try {
      return solve_dual(sigma, prior.psi_inv, cfg, method);
    } catch (const ConvergenceError& e) {
      save_trace(e.trace());
      if (!e.trace().empty()) {
        err << "last iterate: ";
        print_row(err, e.trace().back());
      }
      throw;
    }
  }();
  const GridFunction phi = primal_recover(r.q, prior.psi_inv);
  if (!a.out_spectrum.empty()) {
    write_file(a.out_spectrum, [&](std::ostream& f) { write_spectrum(f, phi); });
  }
  save_trace(r.trace);
  emit_manifests(m, outputs);

  out << "converged: method=" << to_string(method) << " iterations=" << r.trace.back().iter
      << " grad_norm=" << r.trace.back().grad_norm
      << " moment_residual=" << moment_residual(sigma, phi) << '\n';
  out << "coefficients:\n";
  write_coefficients(out, r.q);
  return kOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.n_min < 1 || a.n_max < a.n_min) throw InvalidInputError("need 1 <= --n-min <= --n-max");
  if (a.reps < 1) throw InvalidInputError("--reps must be positive");
  using clock = std::chrono::steady_clock;
  const auto seconds = [](clock::duration d) { return std::chrono::duration<double>(d).count(); };

  std::ostringstream csv;
  csv << "n,p,fast_mean_s,dense_mean_s\n";
  for (int n = a.n_min; n <= a.n_max; ++n) {
    const int p = 2 * n + 1;
    {
      const TbtGenerators warm = random_pd_generators(p, p, 0);
      (void)tbt_invert(warm);
      (void)dense_oracle_invert(assemble_dense_hessian(warm));
    }
    double fast = 0.0;
    double dense = 0.0;
    for (int rep = 0; rep < a.reps; ++rep) {
      const std::uint64_t seed = 1000ULL * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(rep);
      const TbtGenerators gen = random_pd_generators(p, p, seed);
      const Eigen::MatrixXcd h = assemble_dense_hessian(gen);

      auto t0 = clock::now();
      const Eigen::MatrixXcd fast_inv = tbt_invert(gen);
      fast += seconds(clock::now() - t0);
      t0 = clock::now();
      const Eigen::MatrixXcd dense_inv = dense_oracle_invert(h);
      dense += seconds(clock::now() - t0);

      const double rel = (fast_inv - dense_inv).norm() / dense_inv.norm();
      if (!(rel < 1e-8)) {
        std::ostringstream msg;
        msg << "fast inverse disagrees with dense inverse at n=" << n << " seed=" << seed
            << " (relative error " << rel << ")";
        throw NumericalError(msg.str());
      }
    }
    csv << n << ',' << p << ',' << fmt(fast / a.reps) << ',' << fmt(dense / a.reps) << '\n';
    out << "n=" << n << " fast=" << fast / a.reps << "s dense=" << dense / a.reps << "s\n";
  }
  write_file(a.out, [&](std::ostream& f) { f << csv.str(); });

  RunManifest m;
  m.command = "bench-invert";
  m.args = {"--n-min", std::to_string(a.n_min), "--n-max", std::to_string(a.n_max), "--reps",
            std::to_string(a.reps), "--out", a.out};
  m.notes = "times are means over reps wall-clock runs (steady clock) after one warm-up per n; "
            "generator seed for (n, rep) is 1000*n + rep";
  emit_manifests(m, {a.out});
  return kOk;
}

}  // namespace

int thread_cap() {
  const char* v = std::getenv("SPECEST_THREADS");
  if (v == nullptr || *v == '\0') return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 4096) {
    throw InvalidInputError(std::string("SPECEST_THREADS must be a positive integer, got '") + v + "'");
  }
  return static_cast<int>(n);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-dimensional spectral estimation by Newton's method on the dual problem",
               "specest"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* sc = app.add_subcommand("synth", "Generate a noisy single-tone field and write it as CSV");
  sc->add_option("--t1", synth.t1, "Samples along dimension 1")->capture_default_str();
  sc->add_option("--t2", synth.t2, "Samples along dimension 2")->capture_default_str();
  sc->add_option("--freq1", synth.freq1, "Tone frequency 1 (radians)")->capture_default_str();
  sc->add_option("--freq2", synth.freq2, "Tone frequency 2 (radians)")->capture_default_str();
  sc->add_option("--ratio", synth.ratio, "Amplitude to noise standard deviation ratio")
      ->capture_default_str();
  sc->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
  sc->add_option("--out", synth.out, "Output samples CSV")->required();

  EstimateArgs est;
  auto* ec = app.add_subcommand("estimate", "Estimate the spectrum of a samples CSV");
  ec->add_option("--samples", est.samples, "Input samples CSV")->required();
  ec->add_option("--n1", est.n1, "Largest lag along dimension 1")->capture_default_str();
  ec->add_option("--n2", est.n2, "Largest lag along dimension 2")->capture_default_str();
  ec->add_option("--grid1", est.grid1, "Frequency grid size along dimension 1")->capture_default_str();
  ec->add_option("--grid2", est.grid2, "Frequency grid size along dimension 2")->capture_default_str();
  ec->add_option("--method", est.method, "Hessian used by the solver")
      ->check(CLI::IsMember({"full", "quarter"}))
      ->capture_default_str();
  ec->add_option("--tol", est.tol, "Gradient norm stopping tolerance")->capture_default_str();
  ec->add_option("--out-spectrum", est.out_spectrum, "Output spectrum CSV");
  ec->add_option("--out-trace", est.out_trace, "Output iteration trace CSV");

  BenchArgs bench;
  auto* bc = app.add_subcommand("bench-invert", "Time the fast TBT inverse against dense inversion");
  bc->add_option("--n-min", bench.n_min, "Smallest n")->capture_default_str();
  bc->add_option("--n-max", bench.n_max, "Largest n")->capture_default_str();
  bc->add_option("--reps", bench.reps, "Random matrices per n")->capture_default_str();
  bc->add_option("--out", bench.out, "Output timing CSV")->required();

  std::string manifest;
  auto* rc = app.add_subcommand("replay", "Re-run a command from its manifest");
  rc->add_option("manifest", manifest, "Manifest JSON written next to an output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    Eigen::setNbThreads(thread_cap());
    if (*sc) return cmd_synth(synth, out);
    if (*ec) return cmd_estimate(est, out, err);
    if (*bc) return cmd_bench(bench, out);
    const RunManifest m = read_manifest(manifest);
    if (m.command == "replay") throw InvalidInputError("a manifest cannot replay a replay");
    std::vector<std::string> args{m.command};
    args.insert(args.end(), m.args.begin(), m.args.end());
    return run(args, out, err);
  } catch (const ConvergenceError& e) {
    err << "specest: not converged: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const FeasibilityError& e) {
    err << "specest: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const NumericalError& e) {
    err << "specest: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const InvalidInputError& e) {
    err << "specest: invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const DomainError& e) {
    err << "specest: invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "specest: error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"specest"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace specest::cli
