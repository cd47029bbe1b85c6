#include "baggen/naive.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace baggen {

namespace {

struct ChartItem {
  CatPtr cat;
  BindStore store;
  int root_node = -1;
  std::vector<int> open_slots;
  std::vector<std::pair<int, int>> links;  // realized (root, slot) pairs
};

// Variables bound in `evolved` that the base snapshot did not bind.
std::vector<int> bound_vars(const BindStore& base, const BindStore& evolved) {
  std::vector<int> out;
  for (std::size_t v = 0; v < evolved.var_count(); ++v) {
    int id = static_cast<int>(v);
    bool was = v < base.var_count() && base.is_bound(id);
    if (!was && evolved.is_bound(id)) out.push_back(id);
  }
  return out;
}

// Joins two snapshots that both grew from the same base store: replay the
// right item's bindings into a copy of the left's. Unification rejects
// incompatible combinations.
bool merge_stores(const BindStore& base, const BindStore& left, const BindStore& right,
                  BindStore& out) {
  out = left;
  out.ensure_vars(right.var_count());
  for (int v : bound_vars(base, right)) {
    TermPtr value = right.resolve(Term::make_variable(v));
    if (!out.unify(Term::make_variable(v), value)) return false;
  }
  return true;
}

class Chart {
 public:
  Chart(const Bag& bag, const RuleSet& rules) : bag_(bag), rules_(rules),
                                                allocator_(bag.store) {}

  // Items covering the whole span, one per derivation.
  std::vector<ChartItem> parse(const std::vector<std::size_t>& order) {
    const std::size_t n = order.size();
    if (n == 0) return {};
    std::vector<std::vector<std::vector<ChartItem>>> cells(
        n, std::vector<std::vector<ChartItem>>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (const Sign& alt : bag_.items[order[i]].alts)
        cells[0][i].push_back({alt.cat, bag_.store, alt.root_node, alt.open_slots, {}});
    }
    for (std::size_t len = 2; len <= n; ++len) {
      for (std::size_t start = 0; start + len <= n; ++start) {
        auto& cell = cells[len - 1][start];
        for (std::size_t split = 1; split < len; ++split) {
          for (const ChartItem& a : cells[split - 1][start])
            for (const ChartItem& b : cells[len - split - 1][start + split])
              combine(a, b, cell);
        }
      }
    }
    return cells[n - 1][0];
  }

 private:
  void combine(const ChartItem& a, const ChartItem& b, std::vector<ChartItem>& out) {
    // forward application: functor on the left
    if (!a.cat->basic && a.cat->dir == Slash::right) {
      BindStore merged;
      if (merge_stores(bag_.store, a.store, b.store, merged) &&
          unify_categories(a.cat->arg, b.cat, merged)) {
        ChartItem item{a.cat->result, std::move(merged), a.root_node,
                       {a.open_slots.begin() + 1, a.open_slots.end()}, a.links};
        item.links.insert(item.links.end(), b.links.begin(), b.links.end());
        if (b.root_node >= 0) item.links.emplace_back(b.root_node, a.open_slots.front());
        out.push_back(std::move(item));
      }
    }
    // backward application: functor on the right
    if (!b.cat->basic && b.cat->dir == Slash::left) {
      BindStore merged;
      if (merge_stores(bag_.store, a.store, b.store, merged) &&
          unify_categories(b.cat->arg, a.cat, merged)) {
        ChartItem item{b.cat->result, std::move(merged), b.root_node,
                       {b.open_slots.begin() + 1, b.open_slots.end()}, a.links};
        item.links.insert(item.links.end(), b.links.begin(), b.links.end());
        if (a.root_node >= 0) item.links.emplace_back(a.root_node, b.open_slots.front());
        out.push_back(std::move(item));
      }
    }
    // unordered binary productions, both child orders
    for (const Rule& r : rules_) {
      for (int pass = 0; pass < 2; ++pass) {
        const ChartItem& first = pass == 0 ? a : b;
        const ChartItem& second = pass == 0 ? b : a;
        BindStore merged;
        if (!merge_stores(bag_.store, a.store, b.store, merged)) continue;
        // Fresh rule-instance variables come from a shared allocator so ids
        // stay unique across the whole chart.
        VarRenamer renamer(allocator_);
        CatPtr left = rename_category(r.left, renamer);
        CatPtr right = rename_category(r.right, renamer);
        CatPtr parent = rename_category(r.parent, renamer);
        merged.ensure_vars(allocator_.var_count());
        if (unify_categories(left, first.cat, merged) &&
            unify_categories(right, second.cat, merged)) {
          ChartItem item{parent, std::move(merged), -1, {}, a.links};
          item.links.insert(item.links.end(), b.links.begin(), b.links.end());
          out.push_back(std::move(item));
        }
      }
    }
  }

  const Bag& bag_;
  const RuleSet& rules_;
  BindStore allocator_;
};

}  // namespace

bool ordered_parse(const Bag& bag, const std::vector<std::size_t>& order,
                   const CatPtr& target, const RuleSet& rules) {
  Chart chart(bag, rules);
  for (const ChartItem& item : chart.parse(order)) {
    BindStore probe = item.store;
    if (unify_categories(item.cat, target, probe)) return true;
  }
  return false;
}

std::vector<std::vector<std::pair<int, int>>> ordered_parse_derivations(
    const Bag& bag, const std::vector<std::size_t>& order, const CatPtr& target,
    const RuleSet& rules) {
  std::vector<std::vector<std::pair<int, int>>> out;
  Chart chart(bag, rules);
  for (const ChartItem& item : chart.parse(order)) {
    BindStore probe = item.store;
    if (!unify_categories(item.cat, target, probe)) continue;
    auto links = item.links;
    if (item.root_node >= 0) links.emplace_back(item.root_node, 0);
    out.push_back(std::move(links));
  }
  return out;
}

bool parse_words(const Bag& bag, const std::vector<std::string>& words,
                 const CatPtr& target, const RuleSet& rules) {
  if (words.size() != bag.items.size()) return false;
  std::vector<std::size_t> order;
  std::vector<bool> used(bag.items.size(), false);
  std::function<bool(std::size_t)> assign = [&](std::size_t pos) {
    if (pos == words.size()) return ordered_parse(bag, order, target, rules);
    for (std::size_t i = 0; i < bag.items.size(); ++i) {
      if (used[i] || bag.items[i].word != words[pos]) continue;
      used[i] = true;
      order.push_back(i);
      if (assign(pos + 1)) return true;
      order.pop_back();
      used[i] = false;
    }
    return false;
  };
  return assign(0);
}

std::vector<std::vector<std::string>> generate_naive(const Bag& bag, const CatPtr& target,
                                                     const RuleSet& rules,
                                                     const NaiveOptions& opts) {
  if (bag.items.size() > opts.cap) {
    std::ostringstream os;
    os << "bag of " << bag.items.size()
       << " items exceeds the generate-and-test cap of " << opts.cap;
    throw CapExceeded(os.str());
  }
  std::vector<std::size_t> order(bag.items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto word_less = [&](std::size_t x, std::size_t y) {
    const std::string& wx = bag.items[x].word;
    const std::string& wy = bag.items[y].word;
    return wx != wy ? wx < wy : x < y;
  };
  std::sort(order.begin(), order.end(), word_less);

  std::vector<std::vector<std::string>> yields;
  std::set<std::vector<std::string>> seen;
  do {
    std::vector<std::string> words;
    words.reserve(order.size());
    for (std::size_t i : order) words.push_back(bag.items[i].word);
    if (seen.count(words)) continue;
    if (ordered_parse(bag, order, target, rules)) {
      seen.insert(words);
      yields.push_back(std::move(words));
    }
  } while (std::next_permutation(order.begin(), order.end(), word_less));
  return yields;
}

}  // namespace baggen
