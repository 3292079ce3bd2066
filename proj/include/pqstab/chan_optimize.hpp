#pragma once

// Randomized reduction from optimization to decision: evaluate f(P) given a
// splitter with f(P) = max f(P_i), a decider for "f(P') > t", and an exact
// solver for small inputs. Values are std::optional<Value>; std::nullopt is
// the bottom element and compares below every value.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pqstab/error.hpp"

namespace pqstab {

struct OptimizerConfig {
  std::size_t r = 3;             // subproblems per split
  std::size_t alpha_num = 2;     // shrink factor alpha = alpha_num / alpha_den < 1
  std::size_t alpha_den = 3;
  std::size_t base_size = 9;     // solve directly at or below this size
  std::uint64_t seed = 0;
};

struct OptimizerTrace {
  std::size_t decide_calls = 0;
  std::size_t base_calls = 0;
  std::size_t max_depth = 0;
  std::vector<std::vector<std::size_t>> sizes_per_level;  // sizes of the subproblems solved at each depth
};

struct OracleStats {
  std::size_t decide_calls = 0;
  std::size_t recursion_depth = 0;
  std::vector<std::vector<std::size_t>> sizes_per_level;
};

inline OracleStats count_oracle_calls(const OptimizerTrace& trace) {
  return OracleStats{trace.decide_calls, trace.max_depth, trace.sizes_per_level};
}

inline void validate(const OptimizerConfig& cfg) {
  if (cfg.r < 2) throw PreconditionError("optimizer: r must be >= 2");
  if (cfg.alpha_num == 0 || cfg.alpha_num >= cfg.alpha_den) throw PreconditionError("optimizer: alpha must lie in (0, 1)");
  if (cfg.base_size < 1) throw PreconditionError("optimizer: base_size must be >= 1");
}

namespace detail {

template <class Value>
bool below(const std::optional<Value>& a, const std::optional<Value>& b) {
  if (!b) return false;
  if (!a) return true;
  return *a < *b;
}

template <class Problem, class Value, class SizeFn, class SplitFn, class DecideFn, class BaseFn>
class ChanOptimizer {
 public:
  ChanOptimizer(SizeFn& size, SplitFn& split, DecideFn& decide, BaseFn& solve_base, const OptimizerConfig& cfg,
                OptimizerTrace* trace)
      : size_(size), split_(split), decide_(decide), solve_base_(solve_base), cfg_(cfg), trace_(trace), rng_(cfg.seed) {}

  std::optional<Value> solve(const Problem& problem, std::size_t depth) {
    const std::size_t n = size_(problem);
    record(depth, n);
    if (n <= cfg_.base_size) {
      if (trace_) ++trace_->base_calls;
      return solve_base_(problem);
    }

    std::vector<Problem> parts = split_(problem);
    const std::size_t limit = (cfg_.alpha_num * n + cfg_.alpha_den - 1) / cfg_.alpha_den;
    for (const Problem& part : parts) {
      const std::size_t m = size_(part);
      if (m >= n) throw PreconditionError("optimizer: split did not shrink a subproblem of size " + std::to_string(n));
      if (m > limit) {
        throw PreconditionError("optimizer: split produced size " + std::to_string(m) + " > ceil(alpha * " +
                                std::to_string(n) + ")");
      }
    }
    shuffle(parts);

    std::optional<Value> incumbent;
    for (const Problem& part : parts) {
      if (trace_) ++trace_->decide_calls;
      if (decide_(part, incumbent)) {
        std::optional<Value> value = solve(part, depth + 1);
        if (below<Value>(incumbent, value)) incumbent = std::move(value);
      }
    }
    return incumbent;
  }

 private:
  void record(std::size_t depth, std::size_t n) {
    if (!trace_) return;
    if (depth > trace_->max_depth) trace_->max_depth = depth;
    if (trace_->sizes_per_level.size() <= depth) trace_->sizes_per_level.resize(depth + 1);
    trace_->sizes_per_level[depth].push_back(n);
  }

  // Fisher–Yates driven directly by the engine so the permutation depends
  // only on the seed, not on the standard library's distributions.
  void shuffle(std::vector<Problem>& parts) {
    for (std::size_t i = parts.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng_() % i);
      std::swap(parts[i - 1], parts[j]);
    }
  }

  SizeFn& size_;
  SplitFn& split_;
  DecideFn& decide_;
  BaseFn& solve_base_;
  const OptimizerConfig& cfg_;
  OptimizerTrace* trace_;
  std::mt19937_64 rng_;
};

}  // namespace detail

// size(P) -> std::size_t
// split(P) -> std::vector<Problem>, each part of size <= ceil(alpha * size(P)),
//             with f(P) equal to the maximum over the parts
// decide(P', t) -> bool, true iff f(P') > t (t may be bottom)
// solve_base(P) -> std::optional<Value>, exact on size(P) <= base_size
template <class Value, class Problem, class SizeFn, class SplitFn, class DecideFn, class BaseFn>
std::optional<Value> optimize(const Problem& problem, SizeFn size, SplitFn split, DecideFn decide, BaseFn solve_base,
                              const OptimizerConfig& cfg, OptimizerTrace* trace = nullptr) {
  validate(cfg);
  detail::ChanOptimizer<Problem, Value, SizeFn, SplitFn, DecideFn, BaseFn> opt(size, split, decide, solve_base, cfg,
                                                                               trace);
  return opt.solve(problem, 0);
}

}  // namespace pqstab
