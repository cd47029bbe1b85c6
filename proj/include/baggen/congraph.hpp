#pragma once

// Candidate-link graph over the basic signs of a bag, plus Waltz-style
// filtering: forced links are committed (their categories unified), links
// excluded by a commitment or by a failed re-probe are deleted, and every
// change is logged so a search can roll the graph back at choice points.

#include "baggen/grammar.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace baggen {

struct GraphMark {
  std::size_t trail_pos = 0;
  Mark store_mark;
};

enum class GraphBuildStatus {
  ok,
  unsolvable,   // arity count check failed; no ordering can exist
  unsupported,  // outside the pure-application restriction; fall back
};

struct GraphBuild;

class ConGraph {
 public:
  // Nodes are the bag's basic signs plus dummy slot node 0 carrying the
  // target category at level 1. A link (root, slot) survives the build when
  // the nodes come from different items, levels differ by one, and the two
  // categories unify (probed and undone). Requires a basic target, an empty
  // ruleset, unambiguous items, and basic arguments throughout.
  static GraphBuild build(const Bag& bag, const CatPtr& target, const RuleSet& rules,
                          BindStore& store);

  // Runs the filtering rules to fixpoint: a node with no surviving link is a
  // contradiction; a node with exactly one surviving link commits it (the two
  // categories are unified on the store and all other links at either
  // endpoint are deleted); after new bindings every surviving link is
  // re-probed. Returns false on contradiction, leaving the partial work on
  // the trail for the caller's undo.
  bool propagate();

  // Commits one link (no-op if already committed) and propagates. False if
  // the link is deleted/unknown, its unification fails, or propagation fails.
  bool commit_link(int root_id, int slot_id);

  GraphMark mark() const;
  void undo_to(const GraphMark& m);

  // Monotone counters; undo does not roll these back.
  std::uint64_t links_deleted() const { return links_deleted_; }
  std::uint64_t propagate_calls() const { return propagate_calls_; }

  const std::vector<BasicNode>& nodes() const { return nodes_; }
  std::vector<std::pair<int, int>> surviving_links() const;
  std::vector<std::pair<int, int>> committed_links() const;
  std::vector<std::pair<int, int>> deleted_links() const;
  // Links deleted while the given committed link was being processed.
  std::vector<std::pair<int, int>> deletions_caused_by(int root_id, int slot_id) const;
  bool link_surviving(int root_id, int slot_id) const;
  bool link_committed(int root_id, int slot_id) const;

  // Node table (id, category, item word, level), then the surviving links,
  // tab-separated.
  void dump(std::ostream& os) const;

 private:
  enum class LinkState : std::uint8_t { alive, committed, deleted };

  struct Link {
    int root = 0, slot = 0;
    LinkState state = LinkState::alive;
    int cause = -1;  // index of the commit that deleted this link
  };

  struct Event {
    int link = 0;
    LinkState prev = LinkState::alive;
    int prev_cause = -1;
  };

  ConGraph(const Bag& bag, BindStore& store);

  int find_link(int root_id, int slot_id) const;
  void set_state(int link, LinkState next);
  bool process_commit(int link);  // unify + exclusivity sweep + re-probe
  bool probe(const Link& l);

  BindStore* store_ = nullptr;
  std::vector<BasicNode> nodes_;            // indexed by node id
  std::vector<Link> links_;
  std::vector<std::vector<int>> by_node_;   // node id -> link indices
  std::vector<int> surviving_;              // node id -> surviving link count
  std::vector<Event> trail_;
  std::uint64_t links_deleted_ = 0;
  std::uint64_t propagate_calls_ = 0;
};

struct GraphBuild {
  GraphBuildStatus status = GraphBuildStatus::unsupported;
  std::string reason;
  std::optional<ConGraph> graph;
};

}  // namespace baggen
