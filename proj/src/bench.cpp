#include "hosb/bench.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "hosb/gadget.hpp"
#include "hosb/gf2.hpp"
#include "hosb/rng.hpp"
#include "hosb/sa.hpp"

namespace hosb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::string_view algorithm_tag(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::sb3_ballistic: return "3bsb";
    case Algorithm::sb3_discrete: return "3dsb";
    case Algorithm::sa3: return "3sa";
    case Algorithm::sb2_ballistic: return "2bsb";
    case Algorithm::sb2_discrete: return "2dsb";
  }
  throw std::invalid_argument("unknown algorithm");
}

Algorithm parse_algorithm(std::string_view tag) {
  std::string lower(tag);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Algorithm a : kAllAlgorithms) {
    if (algorithm_tag(a) == lower) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(tag) +
                              "' (expected 3bsb, 3dsb, 3sa, 2bsb or 2dsb)");
}

SolverParams default_params(Algorithm algorithm) {
  SolverParams p;
  switch (algorithm) {
    case Algorithm::sb3_ballistic:
      p.dt = 1.1;
      p.c1 = 0.7;
      p.n_steps = 1000;
      break;
    case Algorithm::sb3_discrete:
      p.dt = 0.7;
      p.c1 = 1.1;
      p.n_steps = 1000;
      break;
    case Algorithm::sa3:
      p.beta1 = 2.0;
      p.n_steps = 1000;
      break;
    case Algorithm::sb2_ballistic:
      p.dt = 0.8;
      p.c1 = 0.9;
      p.n_steps = 1000;
      break;
    case Algorithm::sb2_discrete:
      p.dt = 0.7;
      p.c1 = 1.6;
      p.n_steps = 1000;
      break;
  }
  return p;
}

SbParams to_sb_params(const SolverParams& params, SbVariant variant) {
  SbParams sb;
  sb.a0 = params.a0;
  sb.dt = params.dt;
  sb.c1 = params.c1;
  sb.n_steps = params.n_steps;
  sb.variant = variant;
  sb.eps = params.eps;
  sb.normalization = params.normalization;
  return sb;
}

PreparedInstance prepare(std::string id, PolyProblem problem, std::optional<double> known_optimum) {
  PreparedInstance out{std::move(id), std::move(problem), std::nullopt, known_optimum};
  try {
    out.gadget = gadgetize(out.problem);
  } catch (const UnsupportedReduction&) {
    // Only the 3* algorithms can run on this problem.
  }
  return out;
}

PreparedInstance prepare(std::string id, const Xorsat3Instance& inst) {
  std::optional<double> optimum;
  const bool satisfiable =
      inst.planted.has_value() || gf2_solve(incidence_matrix(inst), inst.parity).solution.has_value();
  if (satisfiable) optimum = -static_cast<double>(inst.n);
  return prepare(std::move(id), to_polynomial(inst), optimum);
}

RunResult solve_once(const PreparedInstance& instance, Algorithm algorithm,
                     const SolverParams& params, std::uint64_t seed) {
  Rng rng(seed);
  if (is_annealing(algorithm)) {
    return run_sa(instance.problem, SaParams{params.beta1, params.n_steps}, rng,
                  instance.known_optimum);
  }
  const SbParams sb = to_sb_params(params, sb_variant(algorithm));
  if (!uses_gadget(algorithm)) return run_sb(instance.problem, sb, rng, instance.known_optimum);

  if (!instance.gadget) {
    throw UnsupportedReduction("instance '" + instance.id + "' has no second-order form");
  }
  RunResult r = run_sb(*instance.gadget, sb, rng);
  r.spins = project_solution(r.spins, instance.problem.num_vars());
  r.energy = evaluate(instance.problem, r.spins);
  r.success = reaches_optimum(r.energy, instance.known_optimum);
  return r;
}

double step_to_solution(long n_steps, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("step_to_solution: p outside [0, 1]");
  if (n_steps < 1) throw std::invalid_argument("step_to_solution: n_steps must be >= 1");
  if (p == 0.0) return kInf;
  const double steps = static_cast<double>(n_steps);
  if (p == 1.0) return steps;
  const double repetitions = std::log(0.01) / std::log(1.0 - p);
  return steps * std::max(1.0, repetitions);
}

BenchRecord make_record(std::string instance_id, Algorithm algorithm, std::size_t n,
                        const SolverParams& params, long runs, long successes) {
  if (runs < 1 || successes < 0 || successes > runs) {
    throw std::invalid_argument("make_record: need 0 <= successes <= runs and runs >= 1");
  }
  BenchRecord r;
  r.instance_id = std::move(instance_id);
  r.algorithm = algorithm;
  r.n = n;
  r.params = params;
  r.runs = runs;
  r.successes = successes;
  r.p = static_cast<double>(successes) / static_cast<double>(runs);
  r.s = step_to_solution(params.n_steps, r.p);
  r.nr_p_warning = static_cast<double>(successes) < kReliableSuccessCount;
  return r;
}

long count_successes(const RunFunction& run, long n_runs, std::uint64_t base_seed,
                     std::string_view instance_id, unsigned workers) {
  if (n_runs < 1) throw std::invalid_argument("count_successes: n_runs must be >= 1");
  const std::uint64_t stream = hash_id(instance_id);
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(n_runs)));

  auto body = [&](unsigned worker) {
    long local = 0;
    for (long r = worker; r < n_runs; r += workers) {
      if (run(derive_seed(base_seed, stream, static_cast<std::uint64_t>(r)))) ++local;
    }
    return local;
  };
  if (workers == 1) return body(0);

  std::vector<long> counts(workers, 0);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        counts[w] = body(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  long total = 0;
  for (long c : counts) total += c;
  return total;
}

BenchRecord estimate_p(const PreparedInstance& instance, Algorithm algorithm,
                       const SolverParams& params, long n_runs, std::uint64_t base_seed,
                       unsigned workers) {
  const RunFunction run = [&](std::uint64_t seed) {
    return solve_once(instance, algorithm, params, seed).success;
  };
  const long successes = count_successes(run, n_runs, base_seed, instance.id, workers);
  return make_record(instance.id, algorithm, instance.problem.num_vars(), params, n_runs,
                     successes);
}

double median_of(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median_of: no values");
  // +inf compares greater than every finite double, so plain sort orders it last.
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  const double lo = values[n / 2 - 1];
  const double hi = values[n / 2];
  if (std::isinf(hi)) return kInf;
  return 0.5 * (lo + hi);
}

MedianEstimate median_s(std::span<const BenchRecord> records, std::size_t bootstrap_samples,
                        std::uint64_t seed) {
  if (records.empty()) throw std::invalid_argument("median_s: no records");
  std::vector<double> s;
  s.reserve(records.size());
  for (const auto& r : records) s.push_back(r.s);

  MedianEstimate out;
  out.median = median_of(s);
  out.infinite = std::isinf(out.median);
  out.lower = out.upper = out.median;
  if (bootstrap_samples == 0) return out;

  Rng rng(seed);
  std::vector<double> medians;
  medians.reserve(bootstrap_samples);
  for (std::size_t b = 0; b < bootstrap_samples; ++b) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      std::binomial_distribution<long> draw(r.runs, r.p);
      const long k = draw(rng.engine());
      s[i] = step_to_solution(r.params.n_steps, static_cast<double>(k) / static_cast<double>(r.runs));
    }
    medians.push_back(median_of(s));
  }
  std::sort(medians.begin(), medians.end());
  const double last = static_cast<double>(medians.size() - 1);
  out.lower = medians[static_cast<std::size_t>(std::floor(0.16 * last))];
  out.upper = medians[static_cast<std::size_t>(std::ceil(0.84 * last))];
  return out;
}

std::vector<SolverParams> make_grid(Algorithm algorithm, std::span<const double> dts,
                                    std::span<const double> c1s, std::span<const double> beta1s,
                                    std::span<const long> steps, const SolverParams& base) {
  std::vector<SolverParams> grid;
  if (is_annealing(algorithm)) {
    for (long ns : steps) {
      for (double b : beta1s) {
        SolverParams p = base;
        p.beta1 = b;
        p.n_steps = ns;
        grid.push_back(p);
      }
    }
  } else {
    for (long ns : steps) {
      for (double dt : dts) {
        for (double c1 : c1s) {
          SolverParams p = base;
          p.dt = dt;
          p.c1 = c1;
          p.n_steps = ns;
          grid.push_back(p);
        }
      }
    }
  }
  return grid;
}

GridResult grid_search(std::span<const SolverParams> grid,
                       const std::function<MedianEstimate(const SolverParams&)>& median_at) {
  if (grid.empty()) throw std::invalid_argument("grid_search: empty grid");
  GridResult result;
  std::optional<std::size_t> best;
  auto better = [](const GridRow& a, const GridRow& b) {
    if (a.median.median != b.median.median) return a.median.median < b.median.median;
    if (a.params.n_steps != b.params.n_steps) return a.params.n_steps < b.params.n_steps;
    return a.params.dt < b.params.dt;
  };
  for (const auto& params : grid) {
    result.table.push_back({params, median_at(params)});
    const auto& row = result.table.back();
    if (row.median.infinite) continue;
    if (!best || better(row, result.table[*best])) best = result.table.size() - 1;
  }
  if (!best) throw OptimizationFailure(std::move(result.table));
  result.best = result.table[*best].params;
  result.best_median = result.table[*best].median;
  return result;
}

GridResult grid_search(std::span<const PreparedInstance> instances, Algorithm algorithm,
                       std::span<const SolverParams> grid, long n_runs, std::uint64_t base_seed,
                       unsigned workers, std::vector<BenchRecord>* records) {
  if (instances.empty()) throw std::invalid_argument("grid_search: no instances");
  std::uint64_t point = 0;
  return grid_search(grid, [&](const SolverParams& params) {
    std::vector<BenchRecord> recs;
    recs.reserve(instances.size());
    for (const auto& inst : instances) {
      recs.push_back(estimate_p(inst, algorithm, params, n_runs, base_seed, workers));
    }
    if (records) records->insert(records->end(), recs.begin(), recs.end());
    return median_s(recs, kDefaultBootstrapSamples, derive_seed(base_seed, 0, point++));
  });
}

FitWindow FitWindow::all() { return {-kInf, kInf}; }

ScalingFit fit_scaling(std::span<const std::pair<double, double>> points, const FitWindow& window) {
  std::vector<std::pair<double, double>> usable;
  for (const auto& [n, s] : points) {
    if (std::isfinite(n) && std::isfinite(s) && s > 0.0) usable.emplace_back(n, s);
  }

  double lo = window.n_min.value_or(-kInf);
  double hi = window.n_max.value_or(kInf);
  if (!window.n_min && !window.n_max && !usable.empty()) {
    // Default window: everything strictly between the smallest and largest N.
    const auto [mn, mx] = std::minmax_element(
        usable.begin(), usable.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const double n_lo = mn->first;
    const double n_hi = mx->first;
    lo = std::nextafter(n_lo, kInf);
    hi = std::nextafter(n_hi, -kInf);
  }
  std::erase_if(usable, [&](const auto& p) { return p.first < lo || p.first > hi; });
  if (usable.size() < 3) {
    throw InsufficientData("fit_scaling: need at least 3 finite points in the fit window, have " +
                           std::to_string(usable.size()));
  }

  const double count = static_cast<double>(usable.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [n, s] : usable) {
    mean_x += n;
    mean_y += std::log10(s);
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [n, s] : usable) {
    sxx += (n - mean_x) * (n - mean_x);
    sxy += (n - mean_x) * (std::log10(s) - mean_y);
  }
  if (sxx == 0.0) throw InsufficientData("fit_scaling: all points share the same N");

  ScalingFit fit;
  fit.alpha = sxy / sxx;
  fit.intercept = mean_y - fit.alpha * mean_x;
  double ssr = 0.0;
  for (const auto& [n, s] : usable) {
    const double r = std::log10(s) - (fit.alpha * n + fit.intercept);
    ssr += r * r;
  }
  const double sigma2 = ssr / (count - 2.0);
  fit.alpha_sd = std::sqrt(sigma2 / sxx);
  fit.intercept_sd = std::sqrt(sigma2 * (1.0 / count + mean_x * mean_x / sxx));
  fit.points_used = usable.size();
  fit.n_min = std::min_element(usable.begin(), usable.end())->first;
  fit.n_max = std::max_element(usable.begin(), usable.end())->first;
  return fit;
}

std::string format_with_sd(double value, double sd) {
  char buf[64];
  if (!(sd > 0.0) || !std::isfinite(sd)) {
    std::snprintf(buf, sizeof buf, "%.10g(0)", value);
    return buf;
  }
  int decimals = -static_cast<int>(std::floor(std::log10(sd)));
  long digit = std::lround(sd * std::pow(10.0, decimals));
  if (digit >= 10) {
    --decimals;
    digit = std::lround(sd * std::pow(10.0, decimals));
  }
  if (decimals > 0) {
    std::snprintf(buf, sizeof buf, "%.*f(%ld)", decimals, value, digit);
  } else {
    // sd >= 1: show the sd itself, rounded to one significant digit.
    const double rounded_sd = static_cast<double>(digit) * std::pow(10.0, -decimals);
    std::snprintf(buf, sizeof buf, "%.0f(%.0f)", value, rounded_sd);
  }
  return buf;
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv_row(std::ostream& out, const BenchRecord& r) {
  if (r.instance_id.find_first_of(",\n\r") != std::string::npos) {
    throw std::invalid_argument("instance id must not contain commas or newlines");
  }
  const bool sa = is_annealing(r.algorithm);
  out << r.instance_id << ',' << algorithm_tag(r.algorithm) << ',' << r.n << ','
      << (sa ? "" : format_double(r.params.dt)) << ',' << (sa ? "" : format_double(r.params.c1))
      << ',' << (sa ? format_double(r.params.beta1) : "") << ',' << r.params.n_steps << ','
      << r.runs << ',' << r.successes << ',' << format_double(r.p) << ',' << format_double(r.s)
      << ',' << (r.nr_p_warning ? 1 : 0) << '\n';
}

std::vector<BenchRecord> read_bench_csv(std::istream& in) {
  std::vector<BenchRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == kBenchCsvHeader) continue;

    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 12) {
      throw ParseError(line_no, "expected 12 CSV fields, found " + std::to_string(f.size()));
    }
    auto num = [&](const std::string& s, const char* name) {
      if (s.empty()) return 0.0;
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (end == s.c_str() || *end != '\0') {
        throw ParseError(line_no, std::string("bad number in column ") + name);
      }
      return v;
    };
    auto integer = [&](const std::string& s, const char* name) {
      const double v = num(s, name);
      if (v != std::floor(v)) throw ParseError(line_no, std::string("non-integer ") + name);
      return static_cast<long>(v);
    };

    BenchRecord r;
    r.instance_id = f[0];
    try {
      r.algorithm = parse_algorithm(f[1]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    r.n = static_cast<std::size_t>(integer(f[2], "N"));
    r.params = default_params(r.algorithm);
    if (!f[3].empty()) r.params.dt = num(f[3], "dt");
    if (!f[4].empty()) r.params.c1 = num(f[4], "c1");
    if (!f[5].empty()) r.params.beta1 = num(f[5], "beta1");
    r.params.n_steps = integer(f[6], "n_steps");
    r.runs = integer(f[7], "runs");
    r.successes = integer(f[8], "successes");
    r.p = num(f[9], "p");
    r.s = num(f[10], "s");
    r.nr_p_warning = integer(f[11], "nr_p_warning") != 0;
    if (r.runs < 1 || r.successes < 0 || r.successes > r.runs) {
      throw ParseError(line_no, "inconsistent runs/successes");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string scaling_fit_json(const ScalingFit& fit, std::string_view algorithm) {
  std::ostringstream out;
  out << "{";
  if (!algorithm.empty()) out << "\"algorithm\":\"" << algorithm << "\",";
  out << "\"alpha\":" << format_double(fit.alpha) << ",\"alpha_sd\":" << format_double(fit.alpha_sd)
      << ",\"intercept\":" << format_double(fit.intercept)
      << ",\"intercept_sd\":" << format_double(fit.intercept_sd) << ",\"fit_range\":["
      << format_double(fit.n_min) << "," << format_double(fit.n_max)
      << "],\"points_used\":" << fit.points_used << ",\"report\":{\"alpha\":\""
      << format_with_sd(fit.alpha, fit.alpha_sd) << "\",\"intercept\":\""
      << format_with_sd(fit.intercept, fit.intercept_sd) << "\"}}";
  return out.str();
}

std::vector<std::pair<double, double>> median_points(std::span<const BenchRecord> records) {
  using Key = std::tuple<std::size_t, double, double, double, long>;
  std::map<Key, std::vector<double>> groups;
  for (const auto& r : records) {
    groups[{r.n, r.params.dt, r.params.c1, r.params.beta1, r.params.n_steps}].push_back(r.s);
  }
  std::map<std::size_t, double> best;
  for (auto& [key, s] : groups) {
    const double m = median_of(s);
    auto [it, inserted] = best.try_emplace(std::get<0>(key), m);
    if (!inserted) it->second = std::min(it->second, m);
  }
  std::vector<std::pair<double, double>> out;
  for (const auto& [n, m] : best) out.emplace_back(static_cast<double>(n), m);
  return out;
}

}  // namespace hosb
