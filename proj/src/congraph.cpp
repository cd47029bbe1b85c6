#include "baggen/congraph.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace baggen {

ConGraph::ConGraph(const Bag& bag, BindStore& store) : store_(&store) {
  nodes_.reserve(bag.nodes.size() + 1);
  nodes_.push_back(BasicNode{0, nullptr, -1, 1, Polarity::slot, "<dummy>"});
  for (const auto& n : bag.nodes) nodes_.push_back(n);
}

GraphBuild ConGraph::build(const Bag& bag, const CatPtr& target,
                           const RuleSet& rules, BindStore& store) {
  GraphBuild out;
  if (!rules.empty()) {
    out.reason = "ruleset productions present";
    return out;
  }
  if (!target || !target->basic) {
    out.reason = "non-basic target category";
    return out;
  }
  if (bag.ambiguous()) {
    out.reason = "lexically ambiguous item";
    return out;
  }
  for (const auto& n : bag.nodes) {
    if (n.level > 1) {
      out.reason = "higher-order category on '" + n.word + "'";
      return out;
    }
  }
  if (bag.root_count() != bag.slot_count() + 1) {
    out.status = GraphBuildStatus::unsolvable;
    out.reason = "arity count check failed";
    return out;
  }

  ConGraph g(bag, store);
  g.nodes_[0].category = target;
  for (const auto& r : g.nodes_) {
    if (r.polarity != Polarity::root) continue;
    for (const auto& s : g.nodes_) {
      if (s.polarity != Polarity::slot) continue;
      if (r.item == s.item) continue;
      if (s.level - r.level != 1) continue;
      if (!g.probe(Link{r.id, s.id})) continue;
      g.links_.push_back(Link{r.id, s.id});
    }
  }
  g.by_node_.assign(g.nodes_.size(), {});
  g.surviving_.assign(g.nodes_.size(), 0);
  for (std::size_t i = 0; i < g.links_.size(); ++i) {
    g.by_node_[g.links_[i].root].push_back(static_cast<int>(i));
    g.by_node_[g.links_[i].slot].push_back(static_cast<int>(i));
    ++g.surviving_[g.links_[i].root];
    ++g.surviving_[g.links_[i].slot];
  }
  out.status = GraphBuildStatus::ok;
  out.graph.emplace(std::move(g));
  return out;
}

bool ConGraph::probe(const Link& l) {
  Mark m = store_->mark();
  bool ok = unify_categories(nodes_[l.root].category, nodes_[l.slot].category, *store_);
  store_->undo_to(m);
  return ok;
}

int ConGraph::find_link(int root_id, int slot_id) const {
  if (root_id < 0 || root_id >= static_cast<int>(by_node_.size())) return -1;
  for (int li : by_node_[root_id])
    if (links_[li].root == root_id && links_[li].slot == slot_id) return li;
  return -1;
}

void ConGraph::set_state(int link, LinkState next) {
  Link& l = links_[link];
  trail_.push_back(Event{link, l.state, l.cause});
  if (l.state != LinkState::deleted && next == LinkState::deleted) {
    --surviving_[l.root];
    --surviving_[l.slot];
    ++links_deleted_;
  }
  l.state = next;
}

bool ConGraph::process_commit(int link) {
  set_state(link, LinkState::committed);
  const Link& c = links_[link];
  if (!unify_categories(nodes_[c.root].category, nodes_[c.slot].category, *store_))
    return false;

  // Exclusivity: each node participates in exactly one relationship.
  for (int endpoint : {c.root, c.slot}) {
    for (int li : by_node_[endpoint]) {
      if (li == link || links_[li].state != LinkState::alive) continue;
      set_state(li, LinkState::deleted);
      links_[li].cause = link;
    }
  }

  // The new bindings may have ruled out other candidates anywhere.
  for (std::size_t li = 0; li < links_.size(); ++li) {
    if (links_[li].state != LinkState::alive) continue;
    if (probe(links_[li])) continue;
    set_state(static_cast<int>(li), LinkState::deleted);
    links_[li].cause = link;
  }

  for (std::size_t id = 0; id < nodes_.size(); ++id)
    if (surviving_[id] == 0) return false;
  return true;
}

bool ConGraph::propagate() {
  ++propagate_calls_;
  std::vector<int> work;
  for (;;) {
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
      if (surviving_[id] == 0) return false;
      if (surviving_[id] != 1) continue;
      for (int li : by_node_[id]) {
        if (links_[li].state == LinkState::alive) work.push_back(li);
      }
    }
    if (work.empty()) return true;
    while (!work.empty()) {
      int li = work.back();
      work.pop_back();
      if (links_[li].state != LinkState::alive) continue;
      if (!process_commit(li)) return false;
    }
  }
}

bool ConGraph::commit_link(int root_id, int slot_id) {
  int li = find_link(root_id, slot_id);
  if (li < 0) return false;
  switch (links_[li].state) {
    case LinkState::deleted: return false;
    case LinkState::committed: return true;
    case LinkState::alive: break;
  }
  if (!process_commit(li)) return false;
  return propagate();
}

GraphMark ConGraph::mark() const { return GraphMark{trail_.size(), store_->mark()}; }

void ConGraph::undo_to(const GraphMark& m) {
  if (m.trail_pos > trail_.size()) {
    std::fprintf(stderr, "baggen: undo to a stale graph mark (mark %zu, trail %zu)\n",
                 m.trail_pos, trail_.size());
    std::abort();
  }
  while (trail_.size() > m.trail_pos) {
    const Event& e = trail_.back();
    Link& l = links_[e.link];
    if (l.state == LinkState::deleted && e.prev != LinkState::deleted) {
      ++surviving_[l.root];
      ++surviving_[l.slot];
    }
    l.state = e.prev;
    l.cause = e.prev_cause;
    trail_.pop_back();
  }
  store_->undo_to(m.store_mark);
}

std::vector<std::pair<int, int>> ConGraph::surviving_links() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& l : links_)
    if (l.state != LinkState::deleted) out.emplace_back(l.root, l.slot);
  return out;
}

std::vector<std::pair<int, int>> ConGraph::committed_links() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& l : links_)
    if (l.state == LinkState::committed) out.emplace_back(l.root, l.slot);
  return out;
}

std::vector<std::pair<int, int>> ConGraph::deleted_links() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& l : links_)
    if (l.state == LinkState::deleted) out.emplace_back(l.root, l.slot);
  return out;
}

std::vector<std::pair<int, int>> ConGraph::deletions_caused_by(int root_id,
                                                               int slot_id) const {
  std::vector<std::pair<int, int>> out;
  int cause = find_link(root_id, slot_id);
  if (cause < 0) return out;
  for (const auto& l : links_)
    if (l.state == LinkState::deleted && l.cause == cause)
      out.emplace_back(l.root, l.slot);
  return out;
}

bool ConGraph::link_surviving(int root_id, int slot_id) const {
  int li = find_link(root_id, slot_id);
  return li >= 0 && links_[li].state != LinkState::deleted;
}

bool ConGraph::link_committed(int root_id, int slot_id) const {
  int li = find_link(root_id, slot_id);
  return li >= 0 && links_[li].state == LinkState::committed;
}

void ConGraph::dump(std::ostream& os) const {
  os << "# nodes\n";
  for (const auto& n : nodes_) {
    os << n.id << '\t' << category_to_string(n.category, *store_, true) << '\t'
       << (n.item < 0 ? "<dummy>" : n.word) << '\t' << n.level << '\n';
  }
  os << "# links\n";
  for (const auto& l : links_) {
    if (l.state == LinkState::deleted) continue;
    os << l.root << '\t' << l.slot << '\n';
  }
}

}  // namespace baggen
