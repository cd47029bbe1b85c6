#include "baggen/grammar.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace baggen {

CatPtr Category::make_basic(std::string name, std::vector<TermPtr> features) {
  auto c = std::make_shared<Category>();
  c->basic = true;
  c->name = std::move(name);
  c->features = std::move(features);
  return c;
}

CatPtr Category::make_functor(CatPtr result, CatPtr arg, Slash dir) {
  auto c = std::make_shared<Category>();
  c->basic = false;
  c->result = std::move(result);
  c->arg = std::move(arg);
  c->dir = dir;
  return c;
}

// ---------------------------------------------------------------------------
// Category reader / printer

namespace {

void skip_ws(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

CatPtr parse_catom(std::string_view text, std::size_t& pos, BindStore& store,
                   VarScope& scope) {
  skip_ws(text, pos);
  if (pos >= text.size()) throw ParseError("category expected", pos);
  char c = text[pos];
  if (c == '(') {
    ++pos;
    CatPtr inner = parse_category_at(text, pos, store, scope);
    skip_ws(text, pos);
    if (pos >= text.size() || text[pos] != ')') throw ParseError("')' expected", pos);
    ++pos;
    return inner;
  }
  if (!std::islower(static_cast<unsigned char>(c)))
    throw ParseError("basic category name expected", pos);
  std::size_t start = pos;
  while (pos < text.size() &&
         (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
    ++pos;
  std::string name(text.substr(start, pos - start));
  std::vector<TermPtr> features;
  if (pos < text.size() && text[pos] == '(') {
    ++pos;
    features.push_back(parse_term_at(text, pos, store, scope));
    skip_ws(text, pos);
    while (pos < text.size() && text[pos] == ',') {
      ++pos;
      features.push_back(parse_term_at(text, pos, store, scope));
      skip_ws(text, pos);
    }
    if (pos >= text.size() || text[pos] != ')') throw ParseError("')' expected", pos);
    ++pos;
  }
  return Category::make_basic(std::move(name), std::move(features));
}

}  // namespace

CatPtr parse_category_at(std::string_view text, std::size_t& pos, BindStore& store,
                         VarScope& scope) {
  CatPtr left = parse_catom(text, pos, store, scope);
  for (;;) {
    skip_ws(text, pos);
    if (pos >= text.size() || (text[pos] != '/' && text[pos] != '\\')) return left;
    Slash dir = text[pos] == '/' ? Slash::right : Slash::left;
    ++pos;
    CatPtr right = parse_catom(text, pos, store, scope);
    left = Category::make_functor(std::move(left), std::move(right), dir);
  }
}

CatPtr parse_category(std::string_view text, BindStore& store, VarScope& scope) {
  std::size_t pos = 0;
  CatPtr c = parse_category_at(text, pos, store, scope);
  skip_ws(text, pos);
  if (pos != text.size()) throw ParseError("trailing input after category", pos);
  return c;
}

namespace {

void print_category(std::ostream& os, const CatPtr& c, const BindStore& s,
                    bool anonymize) {
  if (c->basic) {
    os << c->name;
    if (!c->features.empty()) {
      os << '(';
      for (std::size_t i = 0; i < c->features.size(); ++i) {
        if (i) os << ',';
        os << term_to_string(c->features[i], s, anonymize);
      }
      os << ')';
    }
    return;
  }
  print_category(os, c->result, s, anonymize);
  os << (c->dir == Slash::right ? '/' : '\\');
  if (!c->arg->basic) {
    os << '(';
    print_category(os, c->arg, s, anonymize);
    os << ')';
  } else {
    print_category(os, c->arg, s, anonymize);
  }
}

}  // namespace

std::string category_to_string(const CatPtr& c, const BindStore& s, bool anonymize) {
  std::ostringstream os;
  print_category(os, c, s, anonymize);
  return os.str();
}

CatPtr rename_category(const CatPtr& c, VarRenamer& renamer) {
  if (c->basic) {
    std::vector<TermPtr> features;
    features.reserve(c->features.size());
    for (const auto& f : c->features) features.push_back(renamer.rename(f));
    return Category::make_basic(c->name, std::move(features));
  }
  CatPtr result = rename_category(c->result, renamer);
  CatPtr arg = rename_category(c->arg, renamer);
  return Category::make_functor(std::move(result), std::move(arg), c->dir);
}

namespace {

bool unify_categories_rec(const CatPtr& a, const CatPtr& b, BindStore& s) {
  if (a->basic != b->basic) return false;
  if (a->basic) {
    if (a->name != b->name || a->features.size() != b->features.size()) return false;
    for (std::size_t i = 0; i < a->features.size(); ++i)
      if (!s.unify(a->features[i], b->features[i])) return false;
    return true;
  }
  if (a->dir != b->dir) return false;
  return unify_categories_rec(a->result, b->result, s) &&
         unify_categories_rec(a->arg, b->arg, s);
}

}  // namespace

bool unify_categories(const CatPtr& a, const CatPtr& b, BindStore& s) {
  Mark m = s.mark();
  if (unify_categories_rec(a, b, s)) return true;
  s.undo_to(m);
  return false;
}

// ---------------------------------------------------------------------------
// Decomposition

namespace {

void decompose_rec(const CatPtr& c, int level, Polarity pol,
                   std::vector<Decomposed>& out) {
  // Peel the result spine; arguments come off outermost-first, which is also
  // the order they are consumed in.
  std::vector<CatPtr> args;
  CatPtr cur = c;
  while (!cur->basic) {
    args.push_back(cur->arg);
    cur = cur->result;
  }
  out.push_back({cur, level, pol});
  for (const auto& a : args) decompose_rec(a, level + 1, Polarity::slot, out);
}

}  // namespace

std::vector<Decomposed> decompose(const CatPtr& c) {
  std::vector<Decomposed> out;
  decompose_rec(c, 0, Polarity::root, out);
  return out;
}

// ---------------------------------------------------------------------------
// Bag assembly

std::size_t Bag::root_count() const {
  std::size_t n = 0;
  for (const auto& node : nodes)
    if (node.polarity == Polarity::root) ++n;
  return n;
}

std::size_t Bag::slot_count() const {
  std::size_t n = 0;
  for (const auto& node : nodes)
    if (node.polarity == Polarity::slot) ++n;
  return n;
}

std::vector<std::string> Bag::words() const {
  std::vector<std::string> ws;
  ws.reserve(items.size());
  for (const auto& it : items) ws.push_back(it.word);
  return ws;
}

bool Bag::ambiguous() const {
  for (const auto& it : items)
    if (it.alts.size() != 1) return true;
  return false;
}

namespace {

// Allocates nodes for one category instance; returns the id of the spine's
// basic node. Direct-argument slot ids of the top call land in open_slots.
int add_nodes(Bag& bag, const CatPtr& c, int item, int level, Polarity pol,
              const std::string& word, std::vector<int>* open_slots) {
  std::vector<CatPtr> args;
  CatPtr cur = c;
  while (!cur->basic) {
    args.push_back(cur->arg);
    cur = cur->result;
  }
  int id = static_cast<int>(bag.nodes.size()) + 1;
  bag.nodes.push_back({id, cur, item, level, pol, word});
  for (const auto& a : args) {
    int slot_id = add_nodes(bag, a, item, level + 1, Polarity::slot, word, nullptr);
    if (open_slots) open_slots->push_back(slot_id);
  }
  return id;
}

void append_item(Bag& bag, const std::string& word, const std::vector<CatPtr>& cats) {
  BagEntry entry;
  entry.word = word;
  int item = static_cast<int>(bag.items.size());
  for (const auto& cat : cats) {
    Sign sign;
    sign.cat = cat;
    sign.phrase = {word};
    sign.root_node = add_nodes(bag, cat, item, 0, Polarity::root, word, &sign.open_slots);
    entry.alts.push_back(std::move(sign));
  }
  bag.items.push_back(std::move(entry));
}

}  // namespace

Bag make_bag(const Lexicon& lex, const std::vector<std::string>& words) {
  Bag bag;
  for (const auto& w : words) {
    auto it = lex.words.find(w);
    if (it == lex.words.end() || it->second.empty())
      throw LoadError("unknown word '" + w + "'");
    std::vector<CatPtr> cats;
    for (const auto& tmpl : it->second) {
      VarRenamer renamer(bag.store);
      cats.push_back(rename_category(tmpl, renamer));
    }
    append_item(bag, w, cats);
  }
  return bag;
}

// ---------------------------------------------------------------------------
// File loading

void Lexicon::merge(const Lexicon& other) {
  for (const auto& [word, cats] : other.words) {
    auto& mine = words[word];
    for (const auto& tmpl : cats) {
      VarRenamer renamer(*proto);
      mine.push_back(rename_category(tmpl, renamer));
    }
  }
  for (const auto& rule : other.rules) {
    VarRenamer renamer(*proto);
    rules.push_back({rename_category(rule.parent, renamer),
                     rename_category(rule.left, renamer),
                     rename_category(rule.right, renamer)});
  }
}

namespace {

// Strips a % comment and surrounding whitespace; empty result = skip line.
std::string clean_line(const std::string& raw) {
  std::string line = raw;
  auto cut = line.find('%');
  if (cut != std::string::npos) line.erase(cut);
  std::size_t b = line.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = line.find_last_not_of(" \t\r\n");
  return line.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& source, int lineno, const std::string& msg) {
  std::ostringstream os;
  os << source << ":" << lineno << ": " << msg;
  throw LoadError(os.str());
}

std::string expect_period(const std::string& source, int lineno, const std::string& line) {
  if (line.empty() || line.back() != '.')
    fail(source, lineno, "directive must end with '.'");
  return line.substr(0, line.size() - 1);
}

// First whitespace-delimited token after `from`.
std::string next_token(const std::string& s, std::size_t& from) {
  while (from < s.size() && std::isspace(static_cast<unsigned char>(s[from]))) ++from;
  std::size_t start = from;
  while (from < s.size() && !std::isspace(static_cast<unsigned char>(s[from]))) ++from;
  return s.substr(start, from - start);
}

}  // namespace

Lexicon load_lexicon(const std::string& text, const std::string& source_name) {
  Lexicon lex;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = clean_line(raw);
    if (line.empty()) continue;
    std::string body = expect_period(source_name, lineno, line);
    std::size_t pos = 0;
    std::string kw = next_token(body, pos);
    try {
      if (kw == "word") {
        std::string w = next_token(body, pos);
        if (w.empty()) fail(source_name, lineno, "word expected");
        std::size_t colon = body.find(':', pos);
        if (colon == std::string::npos) fail(source_name, lineno, "':' expected");
        VarScope scope(*lex.proto, VarScope::NamedAs::variables);
        CatPtr cat = parse_category(std::string_view(body).substr(colon + 1),
                                    *lex.proto, scope);
        lex.words[w].push_back(cat);
      } else if (kw == "rule") {
        std::size_t arrow = body.find("->", pos);
        if (arrow == std::string::npos) fail(source_name, lineno, "'->' expected");
        VarScope scope(*lex.proto, VarScope::NamedAs::variables);
        std::string head = body.substr(pos, arrow - pos);
        CatPtr parent = parse_category(head, *lex.proto, scope);
        std::string_view rhs = std::string_view(body).substr(arrow + 2);
        std::size_t rpos = 0;
        CatPtr left = parse_catom(rhs, rpos, *lex.proto, scope);
        CatPtr right = parse_catom(rhs, rpos, *lex.proto, scope);
        skip_ws(rhs, rpos);
        if (rpos != rhs.size()) fail(source_name, lineno, "trailing input after rule");
        if (!parent->basic || !left->basic || !right->basic)
          fail(source_name, lineno, "rule categories must be basic");
        lex.rules.push_back({parent, left, right});
      } else {
        fail(source_name, lineno, "unknown directive '" + kw + "'");
      }
    } catch (const ParseError& e) {
      fail(source_name, lineno, std::string(e.what()));
    }
  }
  return lex;
}

Lexicon load_lexicon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open lexicon file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_lexicon(ss.str(), path);
}

BagFile load_bag_with_lexicon(const std::string& text, const Lexicon& ambient,
                              const std::string& base_dir,
                              const std::string& source_name) {
  BagFile out;
  out.effective_lexicon.merge(ambient);
  LoadedBag& loaded = out.loaded;
  Bag& bag = loaded.bag;

  // Named variables in item lines are shared index constants, file-wide.
  VarScope item_scope(bag.store, VarScope::NamedAs::constants);

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = clean_line(raw);
    if (line.empty()) continue;
    std::string body = expect_period(source_name, lineno, line);
    std::size_t pos = 0;
    std::string kw = next_token(body, pos);
    try {
      if (kw == "use") {
        std::string rel = next_token(body, pos);
        if (rel.empty()) fail(source_name, lineno, "path expected");
        std::filesystem::path p(rel);
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        out.effective_lexicon.merge(load_lexicon_file(p.string()));
      } else if (kw == "item") {
        std::string w = next_token(body, pos);
        if (w.empty()) fail(source_name, lineno, "word expected");
        std::size_t colon = body.find(':', pos);
        if (colon == std::string::npos) fail(source_name, lineno, "':' expected");
        CatPtr cat = parse_category(std::string_view(body).substr(colon + 1),
                                    bag.store, item_scope);
        append_item(bag, w, {cat});
      } else if (kw == "word") {
        std::string w = next_token(body, pos);
        if (w.empty()) fail(source_name, lineno, "word expected");
        auto it = out.effective_lexicon.words.find(w);
        if (it == out.effective_lexicon.words.end() || it->second.empty())
          fail(source_name, lineno, "unknown word '" + w + "'");
        std::vector<CatPtr> cats;
        for (const auto& tmpl : it->second) {
          VarRenamer renamer(bag.store);
          cats.push_back(rename_category(tmpl, renamer));
        }
        append_item(bag, w, cats);
      } else if (kw == "target") {
        VarScope scope(bag.store, VarScope::NamedAs::variables);
        loaded.target = parse_category(std::string_view(body).substr(pos),
                                       bag.store, scope);
      } else {
        fail(source_name, lineno, "unknown directive '" + kw + "'");
      }
    } catch (const ParseError& e) {
      fail(source_name, lineno, std::string(e.what()));
    }
  }
  return out;
}

LoadedBag load_bag(const std::string& text, const Lexicon& ambient,
                   const std::string& base_dir, const std::string& source_name) {
  return load_bag_with_lexicon(text, ambient, base_dir, source_name).loaded;
}

BagFile load_bag_file_with_lexicon(const std::string& path, const Lexicon& ambient) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open bag file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string dir = std::filesystem::path(path).parent_path().string();
  if (dir.empty()) dir = ".";
  return load_bag_with_lexicon(ss.str(), ambient, dir, path);
}

LoadedBag load_bag_file(const std::string& path, const Lexicon& ambient) {
  return load_bag_file_with_lexicon(path, ambient).loaded;
}

}  // namespace baggen
