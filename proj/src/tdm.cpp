#include "baggen/tdm.hpp"

#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace baggen {

TdmInstance tdm_random_instance(int n, int m, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("tdm: n must be positive");
  long total = static_cast<long>(n) * n * n;
  if (m < 0 || m > total)
    throw std::invalid_argument("tdm: m out of range (0 <= m <= n^3)");

  // Fisher-Yates over the full triple space, take the first m.
  std::vector<int> codes(total);
  for (long i = 0; i < total; ++i) codes[i] = static_cast<int>(i);
  std::mt19937_64 rng(seed);
  for (long i = 0; i < m; ++i) {
    long j = i + static_cast<long>(rng() % static_cast<std::uint64_t>(total - i));
    std::swap(codes[i], codes[j]);
  }

  TdmInstance inst;
  inst.n = n;
  inst.triples.reserve(m);
  for (long i = 0; i < m; ++i) {
    int code = codes[i];
    inst.triples.push_back({code / (n * n) + 1, code / n % n + 1, code % n + 1});
  }
  return inst;
}

namespace {

void check_instance(const TdmInstance& inst) {
  for (const auto& t : inst.triples)
    for (int v : t)
      if (v < 1 || v > inst.n) throw std::invalid_argument("tdm: index out of range");
}

}  // namespace

bool tdm_solve_brute(const TdmInstance& inst) {
  if (inst.n > 8) throw std::invalid_argument("tdm: brute-force solver capped at n = 8");
  check_instance(inst);

  // Triples grouped by their A element; cover a1..an in order.
  std::vector<std::vector<std::array<int, 3>>> by_a(inst.n + 1);
  for (const auto& t : inst.triples) by_a[t[0]].push_back(t);

  std::vector<bool> used_b(inst.n + 1, false), used_c(inst.n + 1, false);
  std::function<bool(int)> cover = [&](int a) {
    if (a > inst.n) return true;
    for (const auto& t : by_a[a]) {
      if (used_b[t[1]] || used_c[t[2]]) continue;
      used_b[t[1]] = used_c[t[2]] = true;
      if (cover(a + 1)) return true;
      used_b[t[1]] = used_c[t[2]] = false;
    }
    return false;
  };
  return cover(1);
}

TdmEncoding tdm_encode(const TdmInstance& inst) {
  check_instance(inst);
  std::ostringstream lex;
  std::vector<std::string> words;
  for (char set : {'a', 'b', 'c'}) {
    for (int i = 1; i <= inst.n; ++i) {
      std::string w = std::string(1, set) + std::to_string(i);
      lex << "word " << w << " : " << w << ".\n";
      words.push_back(w);
    }
  }
  for (std::size_t t = 0; t < inst.triples.size(); ++t) {
    const auto& [i, j, k] = inst.triples[t];
    std::string p = "p" + std::to_string(t + 1);
    lex << "rule x -> a" << i << " " << p << ".\n";
    lex << "rule " << p << " -> b" << j << " c" << k << ".\n";
  }
  lex << "rule x -> x x.\n";

  TdmEncoding enc;
  enc.lexicon = load_lexicon(lex.str(), "<tdm>");
  enc.bag = make_bag(enc.lexicon, words);
  VarScope scope(enc.bag.store);
  enc.target = parse_category("x", enc.bag.store, scope);
  return enc;
}

std::string tdm_format(const TdmInstance& inst) {
  std::ostringstream os;
  os << inst.n << '\n';
  for (const auto& [i, j, k] : inst.triples) os << i << ' ' << j << ' ' << k << '\n';
  return os.str();
}

TdmInstance tdm_parse(const std::string& text) {
  std::istringstream in(text);
  TdmInstance inst;
  if (!(in >> inst.n) || inst.n < 1)
    throw std::invalid_argument("tdm: bad instance header");
  int i, j, k;
  while (in >> i >> j >> k) inst.triples.push_back({i, j, k});
  if (!in.eof() && in.fail()) {
    in.clear();
    std::string rest;
    in >> rest;
    if (!rest.empty()) throw std::invalid_argument("tdm: bad triple line");
  }
  check_instance(inst);
  return inst;
}

}  // namespace baggen
