#include "baggen/term.hpp"

#include <cassert>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace baggen {

TermPtr Term::make_variable(int id) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::variable;
  t->var = id;
  return t;
}

TermPtr Term::make_atom(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::atom;
  t->name = std::move(name);
  return t;
}

TermPtr Term::make_number(long value) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::number;
  t->number = value;
  return t;
}

TermPtr Term::make_nil() {
  auto t = std::make_shared<Term>();
  t->kind = Kind::nil;
  return t;
}

TermPtr Term::make_cons(TermPtr head, TermPtr tail) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::cons;
  t->head = std::move(head);
  t->tail = std::move(tail);
  return t;
}

TermPtr Term::make_compound(std::string functor, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::compound;
  t->name = std::move(functor);
  t->args = std::move(args);
  return t;
}

TermPtr Term::make_list(const std::vector<TermPtr>& items, TermPtr tail) {
  TermPtr t = tail ? std::move(tail) : make_nil();
  for (auto it = items.rbegin(); it != items.rend(); ++it) t = make_cons(*it, t);
  return t;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::variable: return a->var == b->var;
    case Term::Kind::atom: return a->name == b->name;
    case Term::Kind::number: return a->number == b->number;
    case Term::Kind::nil: return true;
    case Term::Kind::cons:
      return term_equal(a->head, b->head) && term_equal(a->tail, b->tail);
    case Term::Kind::compound:
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!term_equal(a->args[i], b->args[i])) return false;
      return true;
  }
  return false;
}

TermPtr BindStore::fresh_var() {
  int id = static_cast<int>(bindings_.size());
  bindings_.push_back(nullptr);
  return Term::make_variable(id);
}

TermPtr BindStore::walk(const TermPtr& t) const {
  TermPtr cur = t;
  while (cur && cur->kind == Term::Kind::variable) {
    if (cur->var < 0 || cur->var >= static_cast<int>(bindings_.size())) break;
    const TermPtr& b = bindings_[cur->var];
    if (!b) break;
    cur = b;
  }
  return cur;
}

TermPtr BindStore::resolve(const TermPtr& t) const {
  TermPtr w = walk(t);
  switch (w->kind) {
    case Term::Kind::variable:
    case Term::Kind::atom:
    case Term::Kind::number:
    case Term::Kind::nil:
      return w;
    case Term::Kind::cons:
      return Term::make_cons(resolve(w->head), resolve(w->tail));
    case Term::Kind::compound: {
      std::vector<TermPtr> args;
      args.reserve(w->args.size());
      for (const auto& a : w->args) args.push_back(resolve(a));
      return Term::make_compound(w->name, std::move(args));
    }
  }
  return w;
}

bool BindStore::occurs(int var, const TermPtr& t) const {
  TermPtr w = walk(t);
  switch (w->kind) {
    case Term::Kind::variable: return w->var == var;
    case Term::Kind::cons:
      return occurs(var, w->head) || occurs(var, w->tail);
    case Term::Kind::compound:
      for (const auto& a : w->args)
        if (occurs(var, a)) return true;
      return false;
    default:
      return false;
  }
}

bool BindStore::bind(int var, const TermPtr& t) {
  if (occurs_check_ && occurs(var, t)) return false;
  assert(var >= 0 && var < static_cast<int>(bindings_.size()) && !bindings_[var]);
  bindings_[var] = t;
  trail_.push_back(var);
  return true;
}

bool BindStore::unify(const TermPtr& a, const TermPtr& b) {
  Mark m = mark();
  if (unify_rec(a, b)) return true;
  undo_to(m);
  return false;
}

bool BindStore::unify_rec(const TermPtr& a, const TermPtr& b) {
  TermPtr x = walk(a);
  TermPtr y = walk(b);
  if (x->kind == Term::Kind::variable && y->kind == Term::Kind::variable &&
      x->var == y->var)
    return true;
  if (x->kind == Term::Kind::variable) return bind(x->var, y);
  if (y->kind == Term::Kind::variable) return bind(y->var, x);
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Term::Kind::atom: return x->name == y->name;
    case Term::Kind::number: return x->number == y->number;
    case Term::Kind::nil: return true;
    case Term::Kind::cons:
      return unify_rec(x->head, y->head) && unify_rec(x->tail, y->tail);
    case Term::Kind::compound:
      if (x->name != y->name || x->args.size() != y->args.size()) return false;
      for (std::size_t i = 0; i < x->args.size(); ++i)
        if (!unify_rec(x->args[i], y->args[i])) return false;
      return true;
    default:
      return false;
  }
}

void BindStore::undo_to(const Mark& m) {
  if (m.trail_pos > trail_.size()) {
    std::fprintf(stderr, "baggen: undo to a stale mark (mark %zu, trail %zu)\n",
                 m.trail_pos, trail_.size());
    std::abort();
  }
  while (trail_.size() > m.trail_pos) {
    bindings_[trail_.back()] = nullptr;
    trail_.pop_back();
  }
}

TermPtr VarRenamer::rename(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::variable: {
      auto it = mapping_.find(t->var);
      if (it != mapping_.end()) return it->second;
      TermPtr fresh = store_->fresh_var();
      mapping_.emplace(t->var, fresh);
      return fresh;
    }
    case Term::Kind::atom:
    case Term::Kind::number:
    case Term::Kind::nil:
      return t;
    case Term::Kind::cons:
      return Term::make_cons(rename(t->head), rename(t->tail));
    case Term::Kind::compound: {
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      for (const auto& a : t->args) args.push_back(rename(a));
      return Term::make_compound(t->name, std::move(args));
    }
  }
  return t;
}

namespace {

void print_term(std::ostream& os, const TermPtr& t, const BindStore& s, bool anonymize) {
  TermPtr w = s.walk(t);
  switch (w->kind) {
    case Term::Kind::variable:
      if (anonymize)
        os << '_';
      else
        os << "_G" << w->var;
      return;
    case Term::Kind::atom: os << w->name; return;
    case Term::Kind::number: os << w->number; return;
    case Term::Kind::nil: os << "[]"; return;
    case Term::Kind::cons: {
      os << '[';
      print_term(os, w->head, s, anonymize);
      TermPtr tail = s.walk(w->tail);
      while (tail->kind == Term::Kind::cons) {
        os << ',';
        print_term(os, tail->head, s, anonymize);
        tail = s.walk(tail->tail);
      }
      if (tail->kind != Term::Kind::nil) {
        os << '|';
        print_term(os, tail, s, anonymize);
      }
      os << ']';
      return;
    }
    case Term::Kind::compound: {
      os << w->name << '(';
      for (std::size_t i = 0; i < w->args.size(); ++i) {
        if (i) os << ',';
        print_term(os, w->args[i], s, anonymize);
      }
      os << ')';
      return;
    }
  }
}

}  // namespace

std::string term_to_string(const TermPtr& t, const BindStore& s, bool anonymize) {
  std::ostringstream os;
  print_term(os, t, s, anonymize);
  return os.str();
}

TermPtr VarScope::named(const std::string& name) {
  auto it = by_name_.find(name);
  if (it != by_name_.end()) return it->second;
  TermPtr t;
  if (mode_ == NamedAs::variables) {
    t = store_->fresh_var();
  } else {
    // Index constant: ground, shared by name across the scope. The leading
    // '#' keeps it outside the atom syntax, so it can never capture an atom
    // written in a source file.
    t = Term::make_atom("#" + name);
  }
  by_name_.emplace(name, t);
  return t;
}

// ---------------------------------------------------------------------------
// Term reader

namespace {

void skip_ws(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string read_ident(std::string_view s, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < s.size() && ident_char(s[pos])) ++pos;
  return std::string(s.substr(start, pos - start));
}

}  // namespace

TermPtr parse_term_at(std::string_view text, std::size_t& pos, BindStore& store,
                      VarScope& scope) {
  skip_ws(text, pos);
  if (pos >= text.size()) throw ParseError("term expected", pos);
  char c = text[pos];

  if (std::isdigit(static_cast<unsigned char>(c))) {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return Term::make_number(std::stol(std::string(text.substr(start, pos - start))));
  }

  if (c == '[') {
    ++pos;
    skip_ws(text, pos);
    if (pos < text.size() && text[pos] == ']') {
      ++pos;
      return Term::make_nil();
    }
    std::vector<TermPtr> items;
    items.push_back(parse_term_at(text, pos, store, scope));
    skip_ws(text, pos);
    while (pos < text.size() && text[pos] == ',') {
      ++pos;
      items.push_back(parse_term_at(text, pos, store, scope));
      skip_ws(text, pos);
    }
    TermPtr tail;
    if (pos < text.size() && text[pos] == '|') {
      ++pos;
      tail = parse_term_at(text, pos, store, scope);
      skip_ws(text, pos);
    }
    if (pos >= text.size() || text[pos] != ']') throw ParseError("']' expected", pos);
    ++pos;
    return Term::make_list(items, tail);
  }

  if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
    std::string name = read_ident(text, pos);
    if (name == "_") return scope.anonymous();
    return scope.named(name);
  }

  if (std::islower(static_cast<unsigned char>(c))) {
    std::string name = read_ident(text, pos);
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      std::vector<TermPtr> args;
      args.push_back(parse_term_at(text, pos, store, scope));
      skip_ws(text, pos);
      while (pos < text.size() && text[pos] == ',') {
        ++pos;
        args.push_back(parse_term_at(text, pos, store, scope));
        skip_ws(text, pos);
      }
      if (pos >= text.size() || text[pos] != ')') throw ParseError("')' expected", pos);
      ++pos;
      return Term::make_compound(std::move(name), std::move(args));
    }
    return Term::make_atom(std::move(name));
  }

  throw ParseError(std::string("unexpected character '") + c + "' in term", pos);
}

TermPtr parse_term(std::string_view text, BindStore& store, VarScope& scope) {
  std::size_t pos = 0;
  TermPtr t = parse_term_at(text, pos, store, scope);
  skip_ws(text, pos);
  if (pos != text.size()) throw ParseError("trailing input after term", pos);
  return t;
}

}  // namespace baggen
