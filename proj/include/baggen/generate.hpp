#pragma once

// Shift-reduce bag generation. The plain engine backtracks over shift and
// reduce choices; the constraint-propagating variant additionally commits the
// functor/argument link of every candidate reduction on a candidate-link
// graph, skipping reductions whose link has been filtered out.

#include "baggen/grammar.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace baggen {

struct SearchStats {
  std::uint64_t reductions = 0;       // successful reduce steps executed
  std::uint64_t shifts = 0;           // shift steps executed
  std::uint64_t reduce_attempts = 0;  // unification attempts in reduce
  std::uint64_t links_deleted = 0;    // graph deletions (cp mode)
  std::uint64_t propagation_calls = 0;
  double wall_millis = 0.0;
  bool graph_fallback = false;  // cp requested, graph unsupported, ran plain
  bool timed_out = false;
};

struct GenYield {
  std::vector<std::string> phrase;
  SearchStats stats;  // snapshot at the moment of the yield
};

// Return false to stop the search.
using YieldSink = std::function<bool(const GenYield&)>;

struct GenerateOptions {
  std::optional<std::chrono::steady_clock::duration> time_limit;
  // Test/debug hook, called with every successfully reduced sign.
  std::function<void(const Sign&)> on_reduce;
};

// Depth-first with a fixed policy: reduce before shift; reduce pairs the
// stack top against deeper elements scanning from the bottom of the stack,
// trying deeper-as-functor then top-as-functor, then the ruleset productions
// in either match order. Each distinct phrase is yielded once.
SearchStats generate_whitelock(const Bag& bag, const CatPtr& target, const RuleSet& rules,
                               const YieldSink& sink, const GenerateOptions& opts = {});

// Same search with constraint propagation after every reduction. Falls back
// to the plain engine (and says so in the stats) when the graph does not
// support the input.
SearchStats generate_cp(const Bag& bag, const CatPtr& target, const RuleSet& rules,
                        const YieldSink& sink, const GenerateOptions& opts = {});

// One reduction step: f as the functor over a, then the ruleset productions
// against (f,a) in either order; first alternative that unifies wins. On
// success the bindings stay on the store; on failure it is restored.
std::optional<Sign> combine(const Sign& f, const Sign& a, const RuleSet& rules,
                            BindStore& store);

}  // namespace baggen
