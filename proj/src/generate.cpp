#include "baggen/generate.hpp"

#include "baggen/congraph.hpp"

#include <algorithm>
#include <set>

namespace baggen {

namespace {

using Clock = std::chrono::steady_clock;

Sign apply_functor(const Sign& f, const Sign& a) {
  Sign out;
  out.cat = f.cat->result;
  if (f.cat->dir == Slash::right) {
    out.phrase = f.phrase;
    out.phrase.insert(out.phrase.end(), a.phrase.begin(), a.phrase.end());
  } else {
    out.phrase = a.phrase;
    out.phrase.insert(out.phrase.end(), f.phrase.begin(), f.phrase.end());
  }
  out.root_node = f.root_node;
  out.open_slots.assign(f.open_slots.begin() + 1, f.open_slots.end());
  return out;
}

class Engine {
 public:
  Engine(const Bag& bag, CatPtr target, const RuleSet& rules, bool use_graph,
         const GenerateOptions& opts, const YieldSink& sink)
      : bag_(bag),
        target_(std::move(target)),
        rules_(rules),
        use_graph_(use_graph),
        opts_(opts),
        sink_(sink),
        store_(bag.store) {}

  SearchStats run() {
    start_ = Clock::now();
    if (opts_.time_limit) deadline_ = start_ + *opts_.time_limit;

    if (use_graph_) {
      auto built = ConGraph::build(bag_, target_, rules_, store_);
      switch (built.status) {
        case GraphBuildStatus::unsupported:
          stats_.graph_fallback = true;
          break;
        case GraphBuildStatus::unsolvable:
          return finish();
        case GraphBuildStatus::ok:
          graph_.emplace(std::move(*built.graph));
          if (!graph_->propagate()) {
            sync_graph_stats();
            return finish();
          }
          sync_graph_stats();
          break;
      }
    }

    std::vector<Sign> stack;
    stack.reserve(bag_.items.size());
    dfs(stack, 0);
    return finish();
  }

 private:
  bool graph_active() const { return graph_.has_value(); }

  void sync_graph_stats() {
    if (!graph_) return;
    stats_.links_deleted = graph_->links_deleted();
    stats_.propagation_calls = graph_->propagate_calls();
  }

  SearchStats finish() {
    sync_graph_stats();
    stats_.wall_millis =
        std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    return stats_;
  }

  bool past_deadline() {
    if (!deadline_) return false;
    if ((++tick_ & 255) != 0) return false;
    if (Clock::now() < *deadline_) return false;
    stats_.timed_out = true;
    return true;
  }

  void try_yield(const Sign& s) {
    bool ok;
    if (graph_active()) {
      // the arity count check guarantees the last sign is saturated
      if (!s.cat->basic) return;
      GraphMark gm = graph_->mark();
      ok = graph_->commit_link(s.root_node, 0);
      sync_graph_stats();
      if (ok) record_yield(s);
      graph_->undo_to(gm);
    } else {
      Mark m = store_.mark();
      ok = unify_categories(s.cat, target_, store_);
      if (ok) record_yield(s);
      store_.undo_to(m);
    }
  }

  void record_yield(const Sign& s) {
    if (!seen_.insert(s.phrase).second) return;
    SearchStats snap = stats_;
    snap.wall_millis =
        std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    if (!sink_({s.phrase, snap})) stop_ = true;
  }

  void recurse_reduced(const std::vector<Sign>& stack, std::size_t deep,
                       std::size_t top, Sign reduced, std::size_t next) {
    ++stats_.reductions;
    if (opts_.on_reduce) opts_.on_reduce(reduced);
    std::vector<Sign> rest;
    rest.reserve(stack.size() - 1);
    for (std::size_t i = 0; i < stack.size(); ++i)
      if (i != deep && i != top) rest.push_back(stack[i]);
    rest.push_back(std::move(reduced));
    dfs(rest, next);
  }

  void try_apply(std::vector<Sign>& stack, std::size_t fi, std::size_t ai,
                 std::size_t next) {
    const Sign& f = stack[fi];
    const Sign& a = stack[ai];
    if (f.cat->basic) return;
    ++stats_.reduce_attempts;
    if (graph_active()) {
      // The argument must be saturated: in a pure application grammar every
      // slot is basic, so an unsaturated sign can never be consumed.
      if (!a.cat->basic) return;
      GraphMark gm = graph_->mark();
      bool ok = graph_->commit_link(a.root_node, f.open_slots.front());
      sync_graph_stats();
      if (ok)
        recurse_reduced(stack, std::min(fi, ai), std::max(fi, ai),
                        apply_functor(f, a), next);
      graph_->undo_to(gm);
    } else {
      Mark m = store_.mark();
      if (unify_categories(f.cat->arg, a.cat, store_))
        recurse_reduced(stack, std::min(fi, ai), std::max(fi, ai),
                        apply_functor(f, a), next);
      store_.undo_to(m);
    }
  }

  void try_rules(std::vector<Sign>& stack, std::size_t deep, std::size_t top,
                 std::size_t next) {
    if (rules_.empty()) return;
    for (const Rule& r : rules_) {
      for (int pass = 0; pass < 2 && !stop_; ++pass) {
        const Sign& first = pass == 0 ? stack[deep] : stack[top];
        const Sign& second = pass == 0 ? stack[top] : stack[deep];
        ++stats_.reduce_attempts;
        Mark m = store_.mark();
        VarRenamer renamer(store_);
        CatPtr left = rename_category(r.left, renamer);
        CatPtr right = rename_category(r.right, renamer);
        if (unify_categories(left, first.cat, store_) &&
            unify_categories(right, second.cat, store_)) {
          Sign reduced;
          reduced.cat = rename_category(r.parent, renamer);
          reduced.phrase = first.phrase;
          reduced.phrase.insert(reduced.phrase.end(), second.phrase.begin(),
                                second.phrase.end());
          recurse_reduced(stack, deep, top, std::move(reduced), next);
        }
        store_.undo_to(m);
      }
    }
  }

  void dfs(std::vector<Sign>& stack, std::size_t next) {
    if (stop_ || past_deadline()) {
      stop_ = true;
      return;
    }
    if (stack.size() == 1 && next == bag_.items.size()) try_yield(stack.front());
    if (stop_) return;

    if (stack.size() >= 2) {
      const std::size_t top = stack.size() - 1;
      for (std::size_t deep = 0; deep < top && !stop_; ++deep) {
        try_apply(stack, deep, top, next);
        if (stop_) return;
        try_apply(stack, top, deep, next);
        if (stop_) return;
        try_rules(stack, deep, top, next);
      }
    }
    if (stop_) return;

    if (next < bag_.items.size()) {
      for (const Sign& alt : bag_.items[next].alts) {
        ++stats_.shifts;
        stack.push_back(alt);
        dfs(stack, next + 1);
        stack.pop_back();
        if (stop_) return;
      }
    }
  }

  const Bag& bag_;
  CatPtr target_;
  const RuleSet& rules_;
  bool use_graph_;
  const GenerateOptions& opts_;
  const YieldSink& sink_;

  BindStore store_;
  std::optional<ConGraph> graph_;
  SearchStats stats_;
  std::set<std::vector<std::string>> seen_;
  Clock::time_point start_;
  std::optional<Clock::time_point> deadline_;
  std::uint32_t tick_ = 0;
  bool stop_ = false;
};

}  // namespace

SearchStats generate_whitelock(const Bag& bag, const CatPtr& target, const RuleSet& rules,
                               const YieldSink& sink, const GenerateOptions& opts) {
  return Engine(bag, target, rules, /*use_graph=*/false, opts, sink).run();
}

SearchStats generate_cp(const Bag& bag, const CatPtr& target, const RuleSet& rules,
                        const YieldSink& sink, const GenerateOptions& opts) {
  return Engine(bag, target, rules, /*use_graph=*/true, opts, sink).run();
}

std::optional<Sign> combine(const Sign& f, const Sign& a, const RuleSet& rules,
                            BindStore& store) {
  if (!f.cat->basic) {
    Mark m = store.mark();
    if (unify_categories(f.cat->arg, a.cat, store)) return apply_functor(f, a);
    store.undo_to(m);
  }
  for (const Rule& r : rules) {
    for (int pass = 0; pass < 2; ++pass) {
      const Sign& first = pass == 0 ? f : a;
      const Sign& second = pass == 0 ? a : f;
      Mark m = store.mark();
      VarRenamer renamer(store);
      CatPtr left = rename_category(r.left, renamer);
      CatPtr right = rename_category(r.right, renamer);
      if (unify_categories(left, first.cat, store) &&
          unify_categories(right, second.cat, store)) {
        Sign reduced;
        reduced.cat = rename_category(r.parent, renamer);
        reduced.phrase = first.phrase;
        reduced.phrase.insert(reduced.phrase.end(), second.phrase.begin(),
                              second.phrase.end());
        return reduced;
      }
      store.undo_to(m);
    }
  }
  return std::nullopt;
}

}  // namespace baggen
