#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hosb {

using VarIndex = std::uint32_t;

/// One monomial of the cost function. The energy contribution is
/// -coefficient * prod(s_i for i in indices).
struct Term {
  double coefficient = 0.0;
  std::vector<VarIndex> indices;
};

/// Non-owning view of a stored term.
struct TermView {
  double coefficient;
  std::span<const VarIndex> indices;
};

/// Spin configuration; every entry is -1 or +1.
using SpinConfig = std::vector<std::int8_t>;

bool is_spin_config(std::span<const std::int8_t> s);

/// Sparse multilinear spin cost function
///
///   E(s) = - sum_m coefficient_m * prod_{i in indices_m} s_i
///
/// Terms are stored in canonical form: indices sorted ascending, no repeated
/// index inside a term, and at most one term per index set. Construction folds
/// terms with the same index set into one by summing coefficients, so any
/// symmetric (J_ij = J_ji) input convention must be halved by the caller if a
/// single J_ij * s_i * s_j contribution is intended.
///
/// The problem is immutable after construction and safe to share across threads.
class PolyProblem {
 public:
  PolyProblem() = default;

  /// Throws std::invalid_argument on empty index lists, out-of-range or
  /// repeated indices inside a term.
  PolyProblem(std::size_t num_vars, std::span<const Term> terms);
  PolyProblem(std::size_t num_vars, const std::vector<Term>& terms)
      : PolyProblem(num_vars, std::span<const Term>(terms)) {}

  std::size_t num_vars() const noexcept { return num_vars_; }
  std::size_t num_terms() const noexcept { return coefficients_.size(); }
  std::size_t max_degree() const noexcept { return max_degree_; }

  TermView term(std::size_t m) const {
    return {coefficients_[m], std::span<const VarIndex>(term_vars_).subspan(
                                  term_offsets_[m], term_offsets_[m + 1] - term_offsets_[m])};
  }

  double coefficient(std::size_t m) const { return coefficients_[m]; }

  std::span<const VarIndex> term_indices(std::size_t m) const {
    return std::span<const VarIndex>(term_vars_).subspan(term_offsets_[m],
                                                         term_offsets_[m + 1] - term_offsets_[m]);
  }

  /// Terms containing variable i, ascending.
  std::span<const std::uint32_t> adjacency(std::size_t i) const {
    return std::span<const std::uint32_t>(var_terms_).subspan(var_offsets_[i],
                                                              var_offsets_[i + 1] - var_offsets_[i]);
  }

  std::vector<Term> terms() const;

  // Raw CSR storage, used by the hot loops in the gradient kernels.
  std::span<const std::size_t> term_offsets() const noexcept { return term_offsets_; }
  std::span<const VarIndex> term_vars() const noexcept { return term_vars_; }
  std::span<const double> coefficients() const noexcept { return coefficients_; }

 private:
  std::size_t num_vars_ = 0;
  std::size_t max_degree_ = 0;
  std::vector<double> coefficients_;
  std::vector<std::size_t> term_offsets_{0};
  std::vector<VarIndex> term_vars_;
  std::vector<std::size_t> var_offsets_{0};
  std::vector<std::uint32_t> var_terms_;
};

/// Recomputes the variable-to-term map from the stored terms.
std::vector<std::vector<std::uint32_t>> rebuild_adjacency(const PolyProblem& problem);

double evaluate(const PolyProblem& problem, std::span<const std::int8_t> s);

/// Multilinear extension of the energy to real arguments.
double evaluate_continuous(const PolyProblem& problem, std::span<const double> x);

/// G_i(x) = -dE/dx_i, computed per term as the product of the other members.
/// Reference implementation for the fast kernel.
std::vector<double> gradient_direct(const PolyProblem& problem, std::span<const double> x);

inline constexpr double kDefaultEpsilon = 1e-14;

/// Division-trick gradient: each term's full product is accumulated once
/// into all of its member slots, then slot i is divided by (x_i + eps).
void gradient_fast(const PolyProblem& problem, std::span<const double> x, double eps,
                   std::span<double> out);
std::vector<double> gradient_fast(const PolyProblem& problem, std::span<const double> x,
                                  double eps = kDefaultEpsilon);

/// Exact gradient at a spin configuration: G_i(s) = s_i * sum_{m ∋ i} K_m prod_{n} s_{v_mn}.
void gradient_discrete(const PolyProblem& problem, std::span<const std::int8_t> s,
                       std::span<double> out);
std::vector<double> gradient_discrete(const PolyProblem& problem, std::span<const std::int8_t> s);

/// E(s with s_i flipped) - E(s); cost proportional to the degree of i.
double delta_energy(const PolyProblem& problem, std::span<const std::int8_t> s, std::size_t i);

/// Same as delta_energy without bounds or spin validation, for inner loops.
inline double delta_energy_unchecked(const PolyProblem& problem, std::span<const std::int8_t> s,
                                     std::size_t i) {
  double sum = 0.0;
  for (std::uint32_t m : problem.adjacency(i)) {
    double prod = problem.coefficient(m);
    for (VarIndex v : problem.term_indices(m)) prod *= s[v];
    sum += prod;
  }
  return 2.0 * sum;
}

/// Spin read-out with sign(0) = +1.
SpinConfig signs(std::span<const double> x);

/// True when no single flip lowers the energy by more than tol.
bool is_local_minimum(const PolyProblem& problem, std::span<const std::int8_t> s, double tol = 1e-9);

struct ExhaustiveResult {
  double min_energy = 0.0;
  std::uint64_t num_minimizers = 0;
  /// Minimizers in Gray-code visiting order, capped at the requested limit.
  std::vector<SpinConfig> minimizers;
};

/// Brute force over all 2^N configurations (N <= 30) using single-flip Gray
/// code updates. Energies within tol of the minimum count as minimizers.
ExhaustiveResult exhaustive_minimize(const PolyProblem& problem, std::size_t keep_limit = 0,
                                     double tol = 1e-9);

}  // namespace hosb
