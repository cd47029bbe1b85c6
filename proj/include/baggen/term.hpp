#pragma once

// First-order terms and a binding store with a trail-based undo mechanism.
// Category features are terms; all feature matching anywhere in the engine
// goes through BindStore::unify against one store per generation run.
//
// A store and the terms created against it belong to one thread at a time;
// there is no global state, so independent runs just copy the store.

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace baggen {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { variable, atom, number, nil, cons, compound };

  Kind kind;
  int var = -1;               // variable: id, unique per store
  std::string name;           // atom name / compound functor
  long number = 0;            // integer atom (nonnegative in the file syntax)
  TermPtr head, tail;         // cons cell
  std::vector<TermPtr> args;  // compound arguments

  static TermPtr make_variable(int id);
  static TermPtr make_atom(std::string name);
  static TermPtr make_number(long value);
  static TermPtr make_nil();
  static TermPtr make_cons(TermPtr head, TermPtr tail);
  static TermPtr make_compound(std::string functor, std::vector<TermPtr> args);
  // Right-nested cons chain; null tail means a proper list ending in nil.
  static TermPtr make_list(const std::vector<TermPtr>& items, TermPtr tail = nullptr);
};

// Structural identity: variables compare by id, no binding lookup.
bool term_equal(const TermPtr& a, const TermPtr& b);

struct Mark {
  std::size_t trail_pos = 0;
};

class BindStore {
 public:
  explicit BindStore(bool occurs_check = true) : occurs_check_(occurs_check) {}

  TermPtr fresh_var();

  // On success all new bindings are on the trail; on failure the store is
  // left exactly as it was on entry.
  bool unify(const TermPtr& a, const TermPtr& b);

  // Follow bindings at the top of the term only.
  TermPtr walk(const TermPtr& t) const;
  // Substitute bindings throughout; unbound variables stay.
  TermPtr resolve(const TermPtr& t) const;

  Mark mark() const { return Mark{trail_.size()}; }
  void undo_to(const Mark& m);

  std::size_t trail_size() const { return trail_.size(); }
  std::size_t var_count() const { return bindings_.size(); }
  bool occurs_check_enabled() const { return occurs_check_; }
  void set_occurs_check(bool on) { occurs_check_ = on; }
  bool is_bound(int var) const {
    return var >= 0 && var < static_cast<int>(bindings_.size()) && bindings_[var] != nullptr;
  }
  // Grow the binding table so ids minted elsewhere (a shared allocator) are
  // addressable here.
  void ensure_vars(std::size_t count) {
    if (bindings_.size() < count) bindings_.resize(count);
  }

 private:
  bool unify_rec(const TermPtr& a, const TermPtr& b);
  bool bind(int var, const TermPtr& t);
  bool occurs(int var, const TermPtr& t) const;

  std::vector<TermPtr> bindings_;
  std::vector<int> trail_;
  bool occurs_check_;
};

// Clones a term with every variable replaced by a fresh one from the target
// store; one renamer instance keeps the mapping, so sharing inside an entry
// (as in f(X,X)) survives renaming.
class VarRenamer {
 public:
  explicit VarRenamer(BindStore& store) : store_(&store) {}
  TermPtr rename(const TermPtr& t);

 private:
  BindStore* store_;
  std::map<int, TermPtr> mapping_;
};

// Diagnostic printing; unbound variables render as _G<id>, or as a bare _
// when anonymize is set. Never parsed back.
std::string term_to_string(const TermPtr& t, const BindStore& s, bool anonymize = false);

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what), pos(pos) {}
  std::size_t pos;
};

// Scope for named variables while parsing one unit (a lexicon entry, a bag
// file, ...). In constants mode named variables denote shared index
// constants rather than unification variables; a lone `_` is always a fresh
// anonymous variable.
class VarScope {
 public:
  enum class NamedAs { variables, constants };

  explicit VarScope(BindStore& store, NamedAs mode = NamedAs::variables)
      : store_(&store), mode_(mode) {}

  TermPtr named(const std::string& name);
  TermPtr anonymous() { return store_->fresh_var(); }

 private:
  BindStore* store_;
  NamedAs mode_;
  std::map<std::string, TermPtr> by_name_;
};

// Concrete syntax: variables start with an uppercase letter or `_`; atoms are
// lowercase identifiers or nonnegative integers; compounds `f(t1,...,tn)`;
// lists `[t1,...,tn]`, `[t1,...,tn|Tail]`, `[]`.
TermPtr parse_term(std::string_view text, BindStore& store, VarScope& scope);
TermPtr parse_term_at(std::string_view text, std::size_t& pos, BindStore& store, VarScope& scope);

}  // namespace baggen
