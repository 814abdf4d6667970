// sumcx: build sum complexes, compute their spectra and bounds, run seeded
// random-subset experiments and the identity suite.
//
// Exit codes: 0 success, 2 usage or parameter error, 3 numerical failure,
// 4 invariant violation.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sumcx/serialize.hpp"
#include "sumcx/sumcx.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3, kInvariant = 4 };

struct SubsetArgs {
  std::optional<std::string> set;
  std::optional<int> random_m;
  std::uint64_t seed = 0;
};

struct SolverArgs {
  std::optional<double> zero_tol;
  std::optional<double> solve_tol;
  std::size_t dense_threshold = 4000;
  std::size_t max_iterations = 200000;
};

void add_group_options(CLI::App* cmd, std::string& group, int& k) {
  cmd->add_option("--group", group, "cyclic factor orders, e.g. 7 or 2,2,3")->required();
  cmd->add_option("--k", k, "top dimension k (1 <= k < n)")->required();
}

void add_subset_options(CLI::App* cmd, SubsetArgs& args) {
  cmd->add_option("--set", args.set, "explicit subset A as comma-separated element indices");
  cmd->add_option("--random-m", args.random_m, "sample a uniform subset of this size instead");
  cmd->add_option("--seed", args.seed, "seed for --random-m");
}

void add_solver_options(CLI::App* cmd, SolverArgs& args) {
  cmd->add_option("--zero-tol", args.zero_tol, "eigenvalue zero tolerance (env ZERO_TOL)");
  cmd->add_option("--solve-tol", args.solve_tol, "power iteration tolerance (env SOLVE_TOL)");
  cmd->add_option("--dense-threshold", args.dense_threshold, "largest dimension for the dense eigensolver");
  cmd->add_option("--max-iterations", args.max_iterations, "power iteration cap");
}

std::optional<double> env_double(const char* name) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return std::nullopt;
  try {
    std::size_t used = 0;
    double v = std::stod(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument(name);
    return v;
  } catch (const std::exception&) {
    throw sumcx::ParameterError(std::string("cannot parse environment variable ") + name);
  }
}

// Flags win over environment variables.
sumcx::ReportOptions report_options(const SolverArgs& args) {
  sumcx::ReportOptions opts;
  opts.zero_tol = args.zero_tol ? args.zero_tol : env_double("ZERO_TOL");
  if (auto tol = args.solve_tol ? args.solve_tol : env_double("SOLVE_TOL")) opts.solver.solve_tol = *tol;
  opts.solver.dense_threshold = args.dense_threshold;
  opts.solver.max_iterations = args.max_iterations;
  return opts;
}

sumcx::SubsetA resolve_subset(const sumcx::GroupSpec& spec, const SubsetArgs& args) {
  if (args.set.has_value() == args.random_m.has_value()) {
    throw sumcx::ParameterError("give exactly one of --set or --random-m");
  }
  if (args.set) return sumcx::SubsetA::parse(spec, *args.set);
  return sumcx::sample_subset(spec, *args.random_m, args.seed);
}

void print_rows(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [key, value] : rows) width = std::max(width, key.size());
  for (const auto& [key, value] : rows) {
    std::cout << std::left << std::setw(int(width) + 2) << key << value << '\n';
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

int cmd_build(const std::string& group, int k, const SubsetArgs& subset, const std::string& out,
              const std::string& dump, bool pretty) {
  const sumcx::GroupSpec spec = sumcx::GroupSpec::parse(group);
  const sumcx::SumComplex X = sumcx::build_sum_complex(spec, resolve_subset(spec, subset), k);
  std::ostream* summary = &std::cout;
  if (out == "-") {
    sumcx::write_complex_text(std::cout, X);
    summary = &std::cerr;
  } else if (!out.empty()) {
    std::ofstream file(out);
    if (!file) throw sumcx::ParameterError("cannot open " + out + " for writing");
    sumcx::write_complex_text(file, X);
  }
  if (!dump.empty()) {
    const std::pair<std::string, sumcx::LinearOperator> ops[] = {
        {"_d" + std::to_string(k - 2) + ".coo", sumcx::coboundary(X, k - 2)},
        {"_d" + std::to_string(k - 1) + ".coo", sumcx::coboundary(X, k - 1)},
        {"_L" + std::to_string(k - 1) + ".coo", sumcx::laplacian_composed(X)}};
    for (const auto& [suffix, op] : ops) {
      std::ofstream file(dump + suffix);
      if (!file) throw sumcx::ParameterError("cannot open " + dump + suffix + " for writing");
      sumcx::write_coordinate(file, op);
    }
  }
  if (pretty) {
    for (int d = -1; d <= k; ++d) {
      *summary << "f_" << d << " = " << sumcx::face_count(X, d) << '\n';
    }
  } else {
    *summary << sumcx::face_counts_json(X).dump(2) << '\n';
  }
  return kOk;
}

int cmd_spectrum(const std::string& group, int k, const SubsetArgs& subset, const SolverArgs& solver,
                 bool spectrum, bool pretty) {
  const sumcx::GroupSpec spec = sumcx::GroupSpec::parse(group);
  sumcx::ReportOptions opts = report_options(solver);
  opts.include_spectrum = spectrum;
  const sumcx::SpectralReport r = sumcx::full_report(spec, resolve_subset(spec, subset), k, opts);
  if (pretty) {
    print_rows({{"mu", fmt(r.mu)},
                {"homology_dim", std::to_string(r.homology_dim)},
                {"fourier_lower_bound", fmt(r.fourier_lower_bound) + (r.vacuous ? " (vacuous)" : "")},
                {"degree_upper_bound", fmt(r.degree_upper_bound)},
                {"solver", sumcx::to_string(r.solver)}});
    if (r.spectrum) {
      std::cout << "spectrum";
      for (double ev : *r.spectrum) std::cout << ' ' << fmt(ev);
      std::cout << '\n';
    }
  } else {
    std::cout << sumcx::to_json(r).dump(2) << '\n';
  }
  return kOk;
}

int cmd_bound(const std::string& group, int k, const SubsetArgs& subset, bool pretty) {
  const sumcx::GroupSpec spec = sumcx::GroupSpec::parse(group);
  if (k < 1 || k >= spec.order()) throw sumcx::ParameterError("k must satisfy 1 <= k < n");
  const sumcx::SubsetA A = resolve_subset(spec, subset);
  const double max_sum = sumcx::max_nontrivial_character_sum(spec, A);
  const double lower = double(A.size()) - k * max_sum;
  sumcx::json j;
  j["group"] = spec.to_string();
  j["k"] = k;
  j["m"] = A.size();
  j["max_char_sum"] = max_sum;
  j["fourier_lower_bound"] = lower;
  j["vacuous"] = lower < 0.0;
  j["upper_bound"] = A.size() + k;
  if (pretty) {
    print_rows({{"m", std::to_string(A.size())},
                {"max_char_sum", fmt(max_sum)},
                {"fourier_lower_bound", fmt(lower) + (lower < 0.0 ? " (vacuous)" : "")},
                {"upper_bound", std::to_string(A.size() + k)}});
  } else {
    std::cout << j.dump(2) << '\n';
  }
  return kOk;
}

struct ExperimentArgs {
  std::string group;
  int k = 1;
  std::string m = "auto";
  double epsilon = 0.5;
  int trials = 100;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string mu = "auto";
  std::string csv;
  bool pretty = false;
};

int cmd_experiment(const ExperimentArgs& args, const SolverArgs& solver) {
  sumcx::ExperimentConfig cfg;
  cfg.spec = sumcx::GroupSpec::parse(args.group);
  cfg.k = args.k;
  if (args.m != "auto") cfg.m = static_cast<int>(sumcx::detail::parse_integer(args.m, "m"));
  cfg.epsilon = args.epsilon;
  cfg.trials = args.trials;
  cfg.seed = args.seed;
  if (args.mu == "on") cfg.compute_mu = true;
  if (args.mu == "off") cfg.compute_mu = false;
  cfg.report = report_options(solver);

  const sumcx::TrialBatch batch = sumcx::run_experiment(cfg, args.threads);
  if (!args.csv.empty()) {
    std::ofstream file(args.csv);
    if (!file) throw sumcx::ParameterError("cannot open " + args.csv + " for writing");
    sumcx::write_trials_csv(file, batch);
  }
  if (args.pretty) {
    std::vector<std::pair<std::string, std::string>> rows = {
        {"group", batch.group},
        {"k, m, epsilon", std::to_string(batch.k) + ", " + std::to_string(batch.m) + ", " + fmt(batch.epsilon)},
        {"trials", std::to_string(batch.trials)},
        {"Pr[max char sum > eps m/k]", fmt(batch.pr_char_sum_exceeds)},
        {"mean / max char sum", fmt(batch.char_sum_mean) + " / " + fmt(batch.char_sum_max)},
        {"theorem regime", batch.theorem_regime ? "yes" : "no"},
        {"6/n", fmt(batch.theorem_probability_bound)}};
    if (batch.pr_mu_below) {
      rows.emplace_back("Pr[mu < (1-eps) m]", fmt(*batch.pr_mu_below));
      rows.emplace_back("mu min / mean / max",
                        fmt(*batch.mu_min) + " / " + fmt(*batch.mu_mean) + " / " + fmt(*batch.mu_max));
    }
    print_rows(rows);
    if (!batch.note.empty()) std::cout << batch.note << '\n';
  } else {
    std::cout << sumcx::to_json(batch).dump(2) << '\n';
  }
  if (batch.sandwich_violations > 0 || batch.homology_mismatches > 0) return kInvariant;
  return kOk;
}

int cmd_verify(int max_n, int max_k, std::uint64_t seed, bool pretty) {
  if (max_n < 2 || max_k < 1) throw sumcx::ParameterError("verify needs --max-n >= 2 and --max-k >= 1");
  sumcx::VerifyOptions opts;
  opts.max_n = max_n;
  opts.max_k = max_k;
  opts.seed = seed;
  const sumcx::VerificationReport report = sumcx::run_verification(opts);
  if (pretty) {
    for (const auto& c : report.checks) {
      std::cout << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(40) << c.name
                << " instances=" << c.instances << " max_error=" << fmt(c.max_error);
      if (!c.detail.empty()) std::cout << "  " << c.detail;
      std::cout << '\n';
    }
  } else {
    std::cout << sumcx::to_json(report).dump(2) << '\n';
  }
  return report.passed() ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum complexes over finite abelian groups: spectra, homology and bounds"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string group;
  int k = 1;
  SubsetArgs subset;
  SolverArgs solver;
  bool pretty = false;

  std::string out, dump;
  auto* build = app.add_subcommand("build", "enumerate the top faces of X_{A,k}");
  add_group_options(build, group, k);
  add_subset_options(build, subset);
  build->add_option("--out", out, "write the complex in text format ('-' for stdout)");
  build->add_option("--dump", dump, "write coordinate-format d and L matrices with this path prefix");
  build->add_flag("--pretty", pretty, "human-readable output");
  build->callback([&] { action = [&] { return cmd_build(group, k, subset, out, dump, pretty); }; });

  bool with_spectrum = false;
  auto* spectrum = app.add_subcommand("spectrum", "spectral report for X_{A,k}");
  add_group_options(spectrum, group, k);
  add_subset_options(spectrum, subset);
  add_solver_options(spectrum, solver);
  spectrum->add_flag("--spectrum", with_spectrum, "include the full eigenvalue list");
  spectrum->add_flag("--pretty", pretty, "human-readable output");
  spectrum->callback([&] {
    action = [&] { return cmd_spectrum(group, k, subset, solver, with_spectrum, pretty); };
  });

  auto* bound = app.add_subcommand("bound", "character-sum lower bound only");
  add_group_options(bound, group, k);
  add_subset_options(bound, subset);
  bound->add_flag("--pretty", pretty, "human-readable output");
  bound->callback([&] { action = [&] { return cmd_bound(group, k, subset, pretty); }; });

  ExperimentArgs exp;
  auto* experiment = app.add_subcommand("experiment", "seeded trials over random m-subsets");
  experiment->add_option("--group", exp.group, "cyclic factor orders")->required();
  experiment->add_option("--k", exp.k, "top dimension k")->required();
  experiment->add_option("--m", exp.m, "subset size, or 'auto' for ceil(4k^2 ln n / eps^2)");
  experiment->add_option("--epsilon", exp.epsilon, "epsilon in (0,1)");
  experiment->add_option("--trials", exp.trials, "number of trials");
  experiment->add_option("--seed", exp.seed, "master seed");
  experiment->add_option("--threads", exp.threads, "worker threads (0: all cores)");
  experiment->add_option("--mu", exp.mu, "compute mu per trial: auto, on or off")
      ->check(CLI::IsMember({"auto", "on", "off"}));
  experiment->add_option("--csv", exp.csv, "write per-trial CSV to this path");
  experiment->add_flag("--pretty", exp.pretty, "human-readable output");
  add_solver_options(experiment, solver);
  experiment->callback([&] { action = [&] { return cmd_experiment(exp, solver); }; });

  int max_n = 7, max_k = 2;
  std::uint64_t verify_seed = 1;
  auto* verify = app.add_subcommand("verify", "run the identity suite on all small groups");
  verify->add_option("--max-n", max_n, "largest group order");
  verify->add_option("--max-k", max_k, "largest k");
  verify->add_option("--seed", verify_seed, "seed for random subsets and cochains");
  verify->add_flag("--pretty", pretty, "human-readable output");
  verify->callback([&] { action = [&] { return cmd_verify(max_n, max_k, verify_seed, pretty); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return action();
  } catch (const sumcx::RegimeError& e) {
    std::cerr << "error: " << e.what() << " (m=" << e.m() << " > n=" << e.n() << ")\n";
    return kUsage;
  } catch (const sumcx::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const sumcx::SolverError& e) {
    std::cerr << "error: " << e.what() << " (best estimate " << e.best_estimate() << ", residual "
              << e.residual() << ")\n";
    return kNumerical;
  } catch (const sumcx::InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kInvariant;
  }
}
