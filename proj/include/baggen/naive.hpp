#pragma once

// Generate-and-test baseline: enumerate permutations of the bag and parse
// each ordering bottom-up. Deliberately simple; this is the correctness
// oracle the other generators are checked against.

#include "baggen/grammar.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace baggen {

struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct NaiveOptions {
  std::size_t cap = 8;  // permutation count is factorial in the bag size
};

// CKY-style parse of the bag items laid out in `order`. Chart items carry
// independent binding snapshots (copy-on-combine), so alternatives never
// pollute each other.
bool ordered_parse(const Bag& bag, const std::vector<std::size_t>& order,
                   const CatPtr& target, const RuleSet& rules);

// Every complete derivation's functor/argument node pairs (the final
// root-to-dummy pair included as (root, 0)). Application links only; rule
// reductions contribute no pairs.
std::vector<std::vector<std::pair<int, int>>> ordered_parse_derivations(
    const Bag& bag, const std::vector<std::size_t>& order, const CatPtr& target,
    const RuleSet& rules);

// True when some assignment of bag items to the given words parses.
bool parse_words(const Bag& bag, const std::vector<std::string>& words,
                 const CatPtr& target, const RuleSet& rules);

// Distinct accepted word orderings in lexicographic order.
std::vector<std::vector<std::string>> generate_naive(const Bag& bag, const CatPtr& target,
                                                     const RuleSet& rules,
                                                     const NaiveOptions& opts = {});

}  // namespace baggen
