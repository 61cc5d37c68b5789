#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hosb/error.hpp"
#include "hosb/model.hpp"
#include "hosb/result.hpp"
#include "hosb/sb.hpp"
#include "hosb/xorsat.hpp"

namespace hosb {

/// 3* algorithms work on the cubic cost directly, 2* on its gadgetized form.
enum class Algorithm { sb3_ballistic, sb3_discrete, sa3, sb2_ballistic, sb2_discrete };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::sb3_ballistic, Algorithm::sb3_discrete,
                                               Algorithm::sa3, Algorithm::sb2_ballistic,
                                               Algorithm::sb2_discrete};

/// Lower-case tag: 3bsb, 3dsb, 3sa, 2bsb, 2dsb.
std::string_view algorithm_tag(Algorithm algorithm);
/// Case-insensitive inverse of algorithm_tag; throws std::invalid_argument.
Algorithm parse_algorithm(std::string_view tag);

constexpr bool uses_gadget(Algorithm a) {
  return a == Algorithm::sb2_ballistic || a == Algorithm::sb2_discrete;
}
constexpr bool is_annealing(Algorithm a) { return a == Algorithm::sa3; }
constexpr SbVariant sb_variant(Algorithm a) {
  return (a == Algorithm::sb3_discrete || a == Algorithm::sb2_discrete) ? SbVariant::discrete
                                                                         : SbVariant::ballistic;
}

/// Union of SB and SA knobs; fields not used by an algorithm are ignored.
struct SolverParams {
  double dt = 1.0;
  double c1 = 1.0;
  double beta1 = 2.0;
  long n_steps = 1000;
  double a0 = 1.0;
  double eps = kDefaultEpsilon;
  Normalization normalization = Normalization::per_step;

  friend bool operator==(const SolverParams&, const SolverParams&) = default;
};

/// Tuned values reported for N = 100 instances: (dt, c1) = (1.1, 0.7) 3bSB,
/// (0.7, 1.1) 3dSB, (0.8, 0.9) 2bSB, (0.7, 1.6) 2dSB; beta1 = 2 for 3SA.
/// Step counts are local defaults.
SolverParams default_params(Algorithm algorithm);

SbParams to_sb_params(const SolverParams& params, SbVariant variant);

/// A problem with everything needed to run any algorithm on it.
struct PreparedInstance {
  std::string id;
  PolyProblem problem;
  std::optional<PolyProblem> gadget;
  std::optional<double> known_optimum;
};

PreparedInstance prepare(std::string id, const Xorsat3Instance& inst);
PreparedInstance prepare(std::string id, PolyProblem problem, std::optional<double> known_optimum);

/// One run. Gadgetized algorithms solve on 2N spins and report the projected
/// N-spin configuration evaluated on the original cost.
RunResult solve_once(const PreparedInstance& instance, Algorithm algorithm,
                     const SolverParams& params, std::uint64_t seed);

/// Steps needed to hit the optimum with 99% probability:
///   S = n_steps * max(1, log 0.01 / log(1 - p)),  p = 0 -> +inf.
double step_to_solution(long n_steps, double p);

/// N_r * P below this sets BenchRecord::nr_p_warning.
inline constexpr double kReliableSuccessCount = 10.0;

struct BenchRecord {
  std::string instance_id;
  Algorithm algorithm = Algorithm::sb3_ballistic;
  std::size_t n = 0;
  SolverParams params;
  long runs = 0;
  long successes = 0;
  double p = 0.0;
  double s = 0.0;
  bool nr_p_warning = false;
};

/// Builds a record from raw counts, filling p, s and the warning flag.
BenchRecord make_record(std::string instance_id, Algorithm algorithm, std::size_t n,
                        const SolverParams& params, long runs, long successes);

/// Returns the success flag of one run with the given seed.
using RunFunction = std::function<bool(std::uint64_t seed)>;

/// Runs n_runs independent runs, run r seeded by
/// derive_seed(base_seed, hash_id(instance_id), r). The outcome does not
/// depend on the worker count.
long count_successes(const RunFunction& run, long n_runs, std::uint64_t base_seed,
                     std::string_view instance_id, unsigned workers = 1);

BenchRecord estimate_p(const PreparedInstance& instance, Algorithm algorithm,
                       const SolverParams& params, long n_runs, std::uint64_t base_seed,
                       unsigned workers = 1);

struct MedianEstimate {
  double median = 0.0;
  double lower = 0.0;  // 16th percentile of bootstrap medians
  double upper = 0.0;  // 84th percentile
  bool infinite = false;
};

/// Median with +inf sorted above every finite value; even counts average the
/// two middle entries.
double median_of(std::vector<double> values);

inline constexpr std::size_t kDefaultBootstrapSamples = 1000;

/// Median S over instances with a 16-84 percentile band from resampling each
/// instance's successes ~ Binomial(runs, p).
MedianEstimate median_s(std::span<const BenchRecord> records,
                        std::size_t bootstrap_samples = kDefaultBootstrapSamples,
                        std::uint64_t seed = 0);

struct GridRow {
  SolverParams params;
  MedianEstimate median;
};

struct GridResult {
  SolverParams best;
  MedianEstimate best_median;
  std::vector<GridRow> table;
};

class OptimizationFailure : public Error {
 public:
  explicit OptimizationFailure(std::vector<GridRow> table)
      : Error("every grid point has infinite median step-to-solution"), table_(std::move(table)) {}
  const std::vector<GridRow>& table() const noexcept { return table_; }

 private:
  std::vector<GridRow> table_;
};

/// Cartesian product of the given axes. SA grids ignore dt/c1, SB grids ignore beta1.
std::vector<SolverParams> make_grid(Algorithm algorithm, std::span<const double> dts,
                                    std::span<const double> c1s, std::span<const double> beta1s,
                                    std::span<const long> steps, const SolverParams& base);

/// Argmin of the median over the grid; ties go to smaller n_steps, then smaller dt.
GridResult grid_search(std::span<const SolverParams> grid,
                       const std::function<MedianEstimate(const SolverParams&)>& median_at);

GridResult grid_search(std::span<const PreparedInstance> instances, Algorithm algorithm,
                       std::span<const SolverParams> grid, long n_runs, std::uint64_t base_seed,
                       unsigned workers = 1, std::vector<BenchRecord>* records = nullptr);

/// Fit window on N. With neither bound set the smallest and largest N are dropped.
struct FitWindow {
  std::optional<double> n_min;
  std::optional<double> n_max;

  static FitWindow all();
};

struct ScalingFit {
  double alpha = 0.0;
  double intercept = 0.0;
  double alpha_sd = 0.0;
  double intercept_sd = 0.0;
  double n_min = 0.0;
  double n_max = 0.0;
  std::size_t points_used = 0;
};

/// Least squares of log10(S) on N: S ~ 10^(alpha N + intercept). Standard
/// deviations from the residual variance. Needs three finite points in the window.
ScalingFit fit_scaling(std::span<const std::pair<double, double>> points,
                       const FitWindow& window = {});

/// "value(d)" with d the standard deviation in units of the last shown
/// digit, rounded to one significant digit: (0.03551, 0.00021) -> "0.0355(2)".
std::string format_with_sd(double value, double sd);

// Bench CSV columns:
//   instance_id,algorithm,N,dt,c1,beta1,n_steps,runs,successes,p,s,nr_p_warning
// Unused parameter columns are empty. Floats use 17 significant digits.
inline constexpr std::string_view kBenchCsvHeader =
    "instance_id,algorithm,N,dt,c1,beta1,n_steps,runs,successes,p,s,nr_p_warning";

std::string format_double(double value);
void write_csv_row(std::ostream& out, const BenchRecord& record);
std::vector<BenchRecord> read_bench_csv(std::istream& in);

std::string scaling_fit_json(const ScalingFit& fit, std::string_view algorithm = {});

/// Median S per N over the rows of one algorithm; when several parameter
/// tuples exist for an N the smallest median is used.
std::vector<std::pair<double, double>> median_points(std::span<const BenchRecord> records);

}  // namespace hosb
