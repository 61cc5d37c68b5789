#include "hosb/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "hosb/bench.hpp"
#include "hosb/gadget.hpp"
#include "hosb/gf2.hpp"
#include "hosb/polynomial_io.hpp"
#include "hosb/sa.hpp"
#include "hosb/xorsat.hpp"

namespace hosb::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

enum class FileKind { xorsat, pubo };

FileKind sniff(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string p, kind;
    if (!(fields >> p) || p[0] == '#') continue;
    fields >> kind;
    if (p == "p" && kind == "xorsat3") return FileKind::xorsat;
    if (p == "p" && kind == "pubo") return FileKind::pubo;
    throw ParseError(line_no, "expected 'p xorsat3 <N>' or 'p pubo <N> <T>' header");
  }
  throw ParseError(line_no + 1, "empty input");
}

PreparedInstance load(const fs::path& path, std::optional<double> target) {
  const std::string id = path.stem().string();
  if (sniff(path) == FileKind::xorsat) {
    PreparedInstance inst = prepare(id, read_xorsat(path));
    if (target) inst.known_optimum = target;
    return inst;
  }
  return prepare(id, read_pubo(path), target);
}

// Options shared by solve and bench.
struct SolverFlags {
  std::string algo = "3bsb";
  std::vector<double> dt;
  std::vector<double> c1;
  std::vector<double> beta1;
  std::vector<long> steps;
  double a0 = 1.0;
  double eps = kDefaultEpsilon;
  std::string normalization = "per-step";
  std::uint64_t seed = 1;
};

void add_solver_flags(CLI::App& cmd, SolverFlags& f, bool lists) {
  auto env = [](const char* name) { return std::string(kEnvPrefix) + name; };
  cmd.add_option("--algo", f.algo, "3bsb, 3dsb, 3sa, 2bsb or 2dsb")->envname(env("ALGO"));
  auto* dt = cmd.add_option("--dt", f.dt, "time step")->envname(env("DT"));
  auto* c1 = cmd.add_option("--c1", f.c1, "force normalization prefactor")->envname(env("C1"));
  auto* b1 = cmd.add_option("--beta1", f.beta1, "final inverse temperature (3sa)")
                 ->envname(env("BETA1"));
  auto* st = cmd.add_option("--steps", f.steps, "steps per run")->envname(env("STEPS"));
  for (auto* opt : {dt, c1, b1, st}) {
    if (lists) {
      opt->delimiter(',');
    } else {
      opt->expected(1);
    }
  }
  cmd.add_option("--a0", f.a0, "detuning constant")->envname(env("A0"));
  cmd.add_option("--eps", f.eps, "regularizer of the ballistic gradient")->envname(env("EPS"));
  cmd.add_option("--normalization", f.normalization, "per-step or initial")
      ->check(CLI::IsMember({"per-step", "initial"}))
      ->envname(env("NORMALIZATION"));
  cmd.add_option("--seed", f.seed, "base seed")->envname(env("SEED"));
}

SolverParams base_params(Algorithm algo, const SolverFlags& f) {
  SolverParams p = default_params(algo);
  p.a0 = f.a0;
  p.eps = f.eps;
  p.normalization = f.normalization == "initial" ? Normalization::initial : Normalization::per_step;
  return p;
}

json params_json(Algorithm algo, const SolverParams& p) {
  if (is_annealing(algo)) return {{"beta1", p.beta1}, {"n_steps", p.n_steps}};
  return {{"dt", p.dt},
          {"c1", p.c1},
          {"a0", p.a0},
          {"eps", p.eps},
          {"n_steps", p.n_steps},
          {"normalization", p.normalization == Normalization::initial ? "initial" : "per-step"}};
}

std::string json_number(double v) { return format_double(v); }

void open_output(const std::string& path, std::ofstream& file, std::ostream*& sink, bool append) {
  if (path.empty() || path == "-") return;
  file.open(path, append ? std::ios::app : std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write " + path);
  sink = &file;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Higher-order simulated bifurcation and annealing toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write planted 3R3X instances");
  long gen_n = 0;
  long gen_count = 1;
  std::uint64_t gen_seed = 1;
  std::string gen_out = ".";
  gen->add_option("--n", gen_n, "number of variables (>= 4)")->required();
  gen->add_option("--count", gen_count, "number of instances")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "base seed")->envname(std::string(kEnvPrefix) + "SEED");
  gen->add_option("--out", gen_out, "output directory")->envname(std::string(kEnvPrefix) + "OUT");

  // reduce
  auto* red = app.add_subcommand("reduce", "gadgetize a cubic instance to a pubo file");
  std::string red_in;
  std::string red_out;
  red->add_option("input", red_in, "xorsat3 or pubo file")->required();
  red->add_option("--out", red_out, "output pubo file (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "run one solver and print a JSON result");
  std::string solve_in;
  SolverFlags solve_flags;
  std::optional<double> solve_target;
  solve->add_option("input", solve_in, "xorsat3 or pubo file")->required();
  add_solver_flags(*solve, solve_flags, false);
  solve->add_option("--target", solve_target, "known optimum energy for success reporting");

  // bench
  auto* bench = app.add_subcommand("bench", "estimate success probability and step-to-solution");
  std::vector<std::string> bench_in;
  SolverFlags bench_flags;
  long bench_runs = 100;
  unsigned bench_workers = 1;
  std::string bench_out;
  bench->add_option("inputs", bench_in, "instance files")->required();
  add_solver_flags(*bench, bench_flags, true);
  bench->add_option("--runs", bench_runs, "runs per instance and grid point")
      ->check(CLI::PositiveNumber)
      ->envname(std::string(kEnvPrefix) + "RUNS");
  bench->add_option("--workers", bench_workers, "worker threads (0 = hardware)")
      ->envname(std::string(kEnvPrefix) + "WORKERS");
  bench->add_option("--out", bench_out, "CSV file to append to (default stdout)")
      ->envname(std::string(kEnvPrefix) + "OUT");

  // fit
  auto* fit = app.add_subcommand("fit", "fit log10 of median step-to-solution against N");
  std::string fit_in;
  std::string fit_algo;
  std::optional<double> fit_min;
  std::optional<double> fit_max;
  std::string fit_out;
  fit->add_option("input", fit_in, "bench CSV")->required();
  fit->add_option("--algo", fit_algo, "algorithm rows to use");
  fit->add_option("--fit-min", fit_min, "smallest N in the fit")
      ->envname(std::string(kEnvPrefix) + "FIT_MIN");
  fit->add_option("--fit-max", fit_max, "largest N in the fit")
      ->envname(std::string(kEnvPrefix) + "FIT_MAX");
  fit->add_option("--out", fit_out, "JSON output file (default stdout)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact optimum via GF(2) elimination");
  std::string oracle_in;
  bool oracle_exhaustive = false;
  std::string oracle_out;
  oracle->add_option("input", oracle_in, "xorsat3 file")->required();
  oracle->add_flag("--exhaustive", oracle_exhaustive, "also enumerate all states (N <= 24)");
  oracle->add_option("--out", oracle_out, "JSON output file (default stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*gen) {
      if (gen_n < static_cast<long>(kMinXorsatSize)) {
        err << "generate: --n must be >= " << kMinXorsatSize << '\n';
        return kExitError;
      }
      fs::create_directories(gen_out);
      for (long k = 0; k < gen_count; ++k) {
        Rng rng(derive_seed(gen_seed, static_cast<std::uint64_t>(gen_n), static_cast<std::uint64_t>(k)));
        const auto inst = generate_3r3x(static_cast<std::size_t>(gen_n), rng);
        std::ostringstream name;
        name << "3r3x_n" << gen_n << '_' << std::setw(4) << std::setfill('0') << k << ".txt";
        const fs::path path = fs::path(gen_out) / name.str();
        write_xorsat(path, inst);
        const auto sol = gf2_solve(incidence_matrix(inst), inst.parity);
        out << path.string() << " nullity=" << sol.nullity << '\n';
      }
      return kExitOk;
    }

    if (*red) {
      const auto kind = sniff(red_in);
      const PolyProblem cubic =
          kind == FileKind::xorsat ? to_polynomial(read_xorsat(red_in)) : read_pubo(red_in);
      const PolyProblem quadratic = gadgetize(cubic);
      if (red_out.empty() || red_out == "-") {
        write_pubo(out, quadratic);
      } else {
        write_pubo(red_out, quadratic);
      }
      err << "reduced " << cubic.num_vars() << " -> " << quadratic.num_vars() << " variables\n";
      return kExitOk;
    }

    if (*solve) {
      const Algorithm algo = parse_algorithm(solve_flags.algo);
      SolverParams params = base_params(algo, solve_flags);
      if (!solve_flags.dt.empty()) params.dt = solve_flags.dt.front();
      if (!solve_flags.c1.empty()) params.c1 = solve_flags.c1.front();
      if (!solve_flags.beta1.empty()) params.beta1 = solve_flags.beta1.front();
      if (!solve_flags.steps.empty()) params.n_steps = solve_flags.steps.front();

      const PreparedInstance inst = load(solve_in, solve_target);
      const RunResult r = solve_once(inst, algo, params, solve_flags.seed);

      json j;
      j["instance"] = inst.id;
      j["algorithm"] = algorithm_tag(algo);
      j["n"] = inst.problem.num_vars();
      j["solver_variables"] =
          uses_gadget(algo) ? inst.gadget->num_vars() : inst.problem.num_vars();
      j["seed"] = solve_flags.seed;
      j["params"] = params_json(algo, params);
      j["energy"] = r.energy;
      j["known_optimum"] = inst.known_optimum ? json(*inst.known_optimum) : json(nullptr);
      j["success"] = r.success;
      j["steps"] = r.steps_used;
      j["spins"] = r.spins;
      out << j.dump() << '\n';
      return r.success ? kExitOk : kExitNotSolved;
    }

    if (*bench) {
      const Algorithm algo = parse_algorithm(bench_flags.algo);
      const SolverParams base = base_params(algo, bench_flags);
      auto or_default = [](std::vector<double> v, double d) {
        return v.empty() ? std::vector<double>{d} : v;
      };
      const auto dts = or_default(bench_flags.dt, base.dt);
      const auto c1s = or_default(bench_flags.c1, base.c1);
      const auto betas = or_default(bench_flags.beta1, base.beta1);
      const auto steps = bench_flags.steps.empty() ? std::vector<long>{base.n_steps} : bench_flags.steps;
      const auto grid = make_grid(algo, dts, c1s, betas, steps, base);
      for (const auto& p : grid) {
        if (is_annealing(algo)) {
          validate(SaParams{p.beta1, p.n_steps});
        } else {
          validate(to_sb_params(p, sb_variant(algo)));
        }
      }
      unsigned workers = bench_workers == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                            : bench_workers;

      std::vector<PreparedInstance> instances;
      for (const auto& path : bench_in) instances.push_back(load(path, std::nullopt));
      for (const auto& inst : instances) {
        if (!inst.known_optimum) {
          throw std::runtime_error("instance '" + inst.id + "' has no known optimum");
        }
      }

      err << "# bench algo=" << algorithm_tag(algo) << " runs=" << bench_runs
          << " seed=" << bench_flags.seed << " workers=" << workers
          << " a0=" << format_double(base.a0) << " eps=" << format_double(base.eps)
          << " normalization=" << bench_flags.normalization << " grid_points=" << grid.size()
          << '\n';

      std::ofstream file;
      std::ostream* sink = &out;
      bool need_header = true;
      if (!bench_out.empty() && bench_out != "-") {
        need_header = !fs::exists(bench_out) || fs::file_size(bench_out) == 0;
      }
      open_output(bench_out, file, sink, true);
      if (need_header) *sink << kBenchCsvHeader << '\n' << std::flush;

      std::uint64_t point = 0;
      const auto result = grid_search(grid, [&](const SolverParams& p) {
        std::vector<BenchRecord> records;
        for (const auto& inst : instances) {
          records.push_back(estimate_p(inst, algo, p, bench_runs, bench_flags.seed, workers));
          write_csv_row(*sink, records.back());
          sink->flush();
        }
        const auto m = median_s(records, kDefaultBootstrapSamples,
                                derive_seed(bench_flags.seed, 0, point++));
        err << "# point";
        if (is_annealing(algo)) {
          err << " beta1=" << p.beta1;
        } else {
          err << " dt=" << p.dt << " c1=" << p.c1;
        }
        err << " n_steps=" << p.n_steps << " median_s=" << format_double(m.median) << " band=["
            << format_double(m.lower) << ',' << format_double(m.upper) << "]\n";
        return m;
      });
      err << "# best";
      if (is_annealing(algo)) {
        err << " beta1=" << result.best.beta1;
      } else {
        err << " dt=" << result.best.dt << " c1=" << result.best.c1;
      }
      err << " n_steps=" << result.best.n_steps
          << " median_s=" << format_double(result.best_median.median) << '\n';
      return kExitOk;
    }

    if (*fit) {
      std::ifstream in(fit_in);
      if (!in) throw std::runtime_error("cannot open " + fit_in);
      auto records = read_bench_csv(in);
      if (records.empty()) {
        err << "fit: no records in " << fit_in << '\n';
        return kExitError;
      }
      std::string algo_tag;
      if (!fit_algo.empty()) {
        const Algorithm algo = parse_algorithm(fit_algo);
        std::erase_if(records, [&](const BenchRecord& r) { return r.algorithm != algo; });
        algo_tag = algorithm_tag(algo);
        if (records.empty()) {
          err << "fit: no rows for algorithm " << algo_tag << '\n';
          return kExitError;
        }
      } else {
        for (const auto& r : records) {
          if (r.algorithm != records.front().algorithm) {
            err << "fit: CSV mixes algorithms; select one with --algo\n";
            return kExitError;
          }
        }
        algo_tag = algorithm_tag(records.front().algorithm);
      }
      FitWindow window;
      window.n_min = fit_min;
      window.n_max = fit_max;
      const auto fit_result = fit_scaling(median_points(records), window);
      std::ofstream file;
      std::ostream* sink = &out;
      open_output(fit_out, file, sink, false);
      *sink << scaling_fit_json(fit_result, algo_tag) << '\n';
      err << "alpha = " << format_with_sd(fit_result.alpha, fit_result.alpha_sd)
          << ", intercept = " << format_with_sd(fit_result.intercept, fit_result.intercept_sd)
          << '\n';
      return kExitOk;
    }

    if (*oracle) {
      const auto inst = read_xorsat(oracle_in);
      const auto sol = gf2_solve(incidence_matrix(inst), inst.parity);
      const bool consistent = sol.solution.has_value();
      json j;
      j["instance"] = fs::path(oracle_in).stem().string();
      j["n"] = inst.n;
      j["rank"] = sol.rank;
      j["nullity"] = sol.nullity;
      j["consistent"] = consistent;
      j["optimum"] = consistent ? json(-static_cast<double>(inst.n)) : json(nullptr);
      if (consistent) {
        j["solution_count"] = sol.nullity < 64 ? json(std::uint64_t{1} << sol.nullity)
                                               : json(std::pow(2.0, static_cast<double>(sol.nullity)));
        j["solution"] = *sol.solution;
      } else {
        j["solution_count"] = 0;
      }
      bool agree = true;
      if (oracle_exhaustive) {
        if (inst.n > 24) {
          err << "oracle: --exhaustive needs N <= 24\n";
          return kExitError;
        }
        const auto ex = exhaustive_minimize(to_polynomial(inst));
        j["exhaustive"] = {{"min_energy", ex.min_energy}, {"minimizers", ex.num_minimizers}};
        if (consistent) {
          agree = ex.min_energy == -static_cast<double>(inst.n) &&
                  sol.nullity < 64 && ex.num_minimizers == (std::uint64_t{1} << sol.nullity);
        } else {
          agree = ex.min_energy > -static_cast<double>(inst.n);
        }
        j["agree"] = agree;
      }
      std::ofstream file;
      std::ostream* sink = &out;
      open_output(oracle_out, file, sink, false);
      *sink << j.dump() << '\n';
      if (!agree) return kExitOracleMismatch;
      return consistent ? kExitOk : kExitNotSolved;
    }
  } catch (const OptimizationFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace hosb::cli
