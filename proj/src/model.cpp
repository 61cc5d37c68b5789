#include "hosb/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace hosb {

namespace {

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": expected length " + std::to_string(want) +
                                ", got " + std::to_string(got));
  }
}

void require_spins(std::span<const std::int8_t> s, std::size_t n, const char* what) {
  require_size(s.size(), n, what);
  if (!is_spin_config(s)) throw std::invalid_argument(std::string(what) + ": entries must be +-1");
}

// out[i] += product of the whole term, for every member i of every term.
template <typename T>
void scatter_term_products(const PolyProblem& problem, std::span<const T> values,
                           std::span<double> out) {
  const auto offsets = problem.term_offsets();
  const auto vars = problem.term_vars();
  const auto coeffs = problem.coefficients();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    const std::size_t begin = offsets[m];
    const std::size_t end = offsets[m + 1];
    double prod = coeffs[m];
    for (std::size_t k = begin; k < end; ++k) prod *= values[vars[k]];
    for (std::size_t k = begin; k < end; ++k) out[vars[k]] += prod;
  }
}

}  // namespace

bool is_spin_config(std::span<const std::int8_t> s) {
  return std::all_of(s.begin(), s.end(), [](std::int8_t v) { return v == 1 || v == -1; });
}

PolyProblem::PolyProblem(std::size_t num_vars, std::span<const Term> terms) : num_vars_(num_vars) {
  if (num_vars > std::numeric_limits<VarIndex>::max()) {
    throw std::invalid_argument("PolyProblem: too many variables");
  }
  // Fold duplicate index sets, keeping first-appearance order.
  std::map<std::vector<VarIndex>, std::size_t> seen;
  std::vector<std::vector<VarIndex>> canonical;
  for (const Term& t : terms) {
    if (t.indices.empty()) throw std::invalid_argument("PolyProblem: term with no indices");
    std::vector<VarIndex> idx = t.indices;
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) {
      throw std::invalid_argument("PolyProblem: repeated index within a term");
    }
    if (idx.back() >= num_vars) {
      throw std::invalid_argument("PolyProblem: index " + std::to_string(idx.back()) +
                                  " out of range for N=" + std::to_string(num_vars));
    }
    auto [it, inserted] = seen.try_emplace(idx, canonical.size());
    if (inserted) {
      canonical.push_back(std::move(idx));
      coefficients_.push_back(t.coefficient);
    } else {
      coefficients_[it->second] += t.coefficient;
    }
  }

  std::vector<std::size_t> degree(num_vars, 0);
  for (const auto& idx : canonical) {
    max_degree_ = std::max(max_degree_, idx.size());
    term_vars_.insert(term_vars_.end(), idx.begin(), idx.end());
    term_offsets_.push_back(term_vars_.size());
    for (VarIndex v : idx) ++degree[v];
  }

  var_offsets_.resize(num_vars + 1, 0);
  for (std::size_t i = 0; i < num_vars; ++i) var_offsets_[i + 1] = var_offsets_[i] + degree[i];
  var_terms_.resize(var_offsets_.back());
  std::vector<std::size_t> cursor(var_offsets_.begin(), var_offsets_.end() - 1);
  for (std::size_t m = 0; m < canonical.size(); ++m) {
    for (VarIndex v : canonical[m]) var_terms_[cursor[v]++] = static_cast<std::uint32_t>(m);
  }
}

std::vector<Term> PolyProblem::terms() const {
  std::vector<Term> out;
  out.reserve(num_terms());
  for (std::size_t m = 0; m < num_terms(); ++m) {
    auto idx = term_indices(m);
    out.push_back({coefficients_[m], {idx.begin(), idx.end()}});
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> rebuild_adjacency(const PolyProblem& problem) {
  std::vector<std::vector<std::uint32_t>> adj(problem.num_vars());
  for (std::size_t m = 0; m < problem.num_terms(); ++m) {
    for (VarIndex v : problem.term_indices(m)) adj[v].push_back(static_cast<std::uint32_t>(m));
  }
  return adj;
}

double evaluate(const PolyProblem& problem, std::span<const std::int8_t> s) {
  require_spins(s, problem.num_vars(), "evaluate");
  double energy = 0.0;
  for (std::size_t m = 0; m < problem.num_terms(); ++m) {
    double prod = problem.coefficient(m);
    for (VarIndex v : problem.term_indices(m)) prod *= s[v];
    energy -= prod;
  }
  return energy;
}

double evaluate_continuous(const PolyProblem& problem, std::span<const double> x) {
  require_size(x.size(), problem.num_vars(), "evaluate_continuous");
  double energy = 0.0;
  for (std::size_t m = 0; m < problem.num_terms(); ++m) {
    double prod = problem.coefficient(m);
    for (VarIndex v : problem.term_indices(m)) prod *= x[v];
    energy -= prod;
  }
  return energy;
}

std::vector<double> gradient_direct(const PolyProblem& problem, std::span<const double> x) {
  require_size(x.size(), problem.num_vars(), "gradient_direct");
  std::vector<double> g(problem.num_vars(), 0.0);
  for (std::size_t i = 0; i < problem.num_vars(); ++i) {
    double sum = 0.0;
    for (std::uint32_t m : problem.adjacency(i)) {
      double prod = problem.coefficient(m);
      for (VarIndex v : problem.term_indices(m)) {
        if (v != i) prod *= x[v];
      }
      sum += prod;
    }
    g[i] = sum;
  }
  return g;
}

void gradient_fast(const PolyProblem& problem, std::span<const double> x, double eps,
                   std::span<double> out) {
  require_size(x.size(), problem.num_vars(), "gradient_fast");
  require_size(out.size(), problem.num_vars(), "gradient_fast output");
  scatter_term_products(problem, x, out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] /= (x[i] + eps);
}

std::vector<double> gradient_fast(const PolyProblem& problem, std::span<const double> x,
                                  double eps) {
  std::vector<double> g(problem.num_vars());
  gradient_fast(problem, x, eps, g);
  return g;
}

void gradient_discrete(const PolyProblem& problem, std::span<const std::int8_t> s,
                       std::span<double> out) {
  require_spins(s, problem.num_vars(), "gradient_discrete");
  require_size(out.size(), problem.num_vars(), "gradient_discrete output");
  scatter_term_products(problem, s, out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= s[i];
}

std::vector<double> gradient_discrete(const PolyProblem& problem, std::span<const std::int8_t> s) {
  std::vector<double> g(problem.num_vars());
  gradient_discrete(problem, s, g);
  return g;
}

double delta_energy(const PolyProblem& problem, std::span<const std::int8_t> s, std::size_t i) {
  require_spins(s, problem.num_vars(), "delta_energy");
  if (i >= problem.num_vars()) {
    throw std::out_of_range("delta_energy: index " + std::to_string(i) + " out of range");
  }
  return delta_energy_unchecked(problem, s, i);
}

SpinConfig signs(std::span<const double> x) {
  SpinConfig s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] < 0.0 ? -1 : 1;
  return s;
}

bool is_local_minimum(const PolyProblem& problem, std::span<const std::int8_t> s, double tol) {
  require_spins(s, problem.num_vars(), "is_local_minimum");
  for (std::size_t i = 0; i < problem.num_vars(); ++i) {
    if (delta_energy_unchecked(problem, s, i) < -tol) return false;
  }
  return true;
}

ExhaustiveResult exhaustive_minimize(const PolyProblem& problem, std::size_t keep_limit,
                                     double tol) {
  const std::size_t n = problem.num_vars();
  if (n > 30) throw std::invalid_argument("exhaustive_minimize: N must be <= 30");
  SpinConfig s(n, 1);
  double energy = evaluate(problem, s);
  ExhaustiveResult result;
  result.min_energy = std::numeric_limits<double>::infinity();

  auto visit = [&] {
    if (energy < result.min_energy - tol) {
      result.min_energy = energy;
      result.num_minimizers = 0;
      result.minimizers.clear();
    }
    if (energy <= result.min_energy + tol) {
      ++result.num_minimizers;
      if (result.minimizers.size() < keep_limit) result.minimizers.push_back(s);
    }
  };

  visit();
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    // Gray code: step k flips the bit at the position of k's lowest set bit.
    const auto i = static_cast<std::size_t>(std::countr_zero(k));
    energy += delta_energy_unchecked(problem, s, i);
    s[i] = static_cast<std::int8_t>(-s[i]);
    visit();
  }
  return result;
}

}  // namespace hosb
