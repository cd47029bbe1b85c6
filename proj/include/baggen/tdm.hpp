#pragma once

// Three-dimensional matching instances, their encoding as bag-generation
// problems, and a brute-force solver used as the oracle.

#include "baggen/grammar.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace baggen {

struct TdmInstance {
  int n = 0;                                // |A| = |B| = |C|
  std::vector<std::array<int, 3>> triples;  // 1-based indices into A, B, C
};

// Deterministic for a fixed seed; m distinct uniform triples, m <= n^3.
TdmInstance tdm_random_instance(int n, int m, std::uint64_t seed);

// Exact answer by depth-first selection of disjoint triples; n <= 8.
bool tdm_solve_brute(const TdmInstance& inst);

struct TdmEncoding {
  Lexicon lexicon;  // words a1..an, b1..bn, c1..cn and the binarized rules
  Bag bag;          // all 3n words once
  CatPtr target;    // x, parsed against bag.store
};

// Per triple t: rules x -> a_i p_t and p_t -> b_j c_k with a fresh symbol
// p_t, plus the closing rule x -> x x. A bag parse exists iff the instance
// has a perfect matching.
TdmEncoding tdm_encode(const TdmInstance& inst);

// Instance file: first line n; one `i j k` triple per following line.
std::string tdm_format(const TdmInstance& inst);
TdmInstance tdm_parse(const std::string& text);

}  // namespace baggen
