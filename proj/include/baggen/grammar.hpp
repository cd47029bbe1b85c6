#pragma once

// Directional categorial categories, lexical signs, grammar and bag files,
// and the decomposition of a category into levelled basic-sign nodes.

#include "baggen/term.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace baggen {

// X/Y consumes a Y realized to the right of the functor's phrase;
// X\Y consumes it to the left. Both associate to the left with equal
// precedence, so a/(b/c)/d reads ((a/(b/c))/d).
enum class Slash { right, left };

struct Category;
using CatPtr = std::shared_ptr<const Category>;

struct Category {
  bool basic = true;

  // basic category
  std::string name;
  std::vector<TermPtr> features;

  // functor category
  CatPtr result, arg;
  Slash dir = Slash::right;

  static CatPtr make_basic(std::string name, std::vector<TermPtr> features = {});
  static CatPtr make_functor(CatPtr result, CatPtr arg, Slash dir);
};

CatPtr parse_category(std::string_view text, BindStore& store, VarScope& scope);
CatPtr parse_category_at(std::string_view text, std::size_t& pos, BindStore& store,
                         VarScope& scope);
std::string category_to_string(const CatPtr& c, const BindStore& s, bool anonymize = false);
CatPtr rename_category(const CatPtr& c, VarRenamer& renamer);

// Two basic categories match when the names and arities agree and the
// features unify pairwise; functors must also agree on direction. Restores
// the store on failure.
bool unify_categories(const CatPtr& a, const CatPtr& b, BindStore& s);

enum class Polarity { root, slot };

struct Decomposed {
  CatPtr category;  // always basic
  int level = 0;    // 0 for the result spine, +1 per argument nesting
  Polarity polarity = Polarity::root;
};

// Basic-category occurrences of c: the level-0 root first, then the argument
// slots in consumption order (outermost argument first), recursing into
// complex arguments in place.
std::vector<Decomposed> decompose(const CatPtr& c);

struct BasicNode {
  int id = 0;
  CatPtr category;       // basic
  int item = -1;         // bag item index; -1 for the dummy target node
  int level = 0;
  Polarity polarity = Polarity::root;
  std::string word;      // diagnostic only
};

// Unordered binary production parent <- left, right over basic categories.
struct Rule {
  CatPtr parent, left, right;
};
using RuleSet = std::vector<Rule>;

struct Lexicon {
  std::map<std::string, std::vector<CatPtr>> words;
  RuleSet rules;
  // Variables of the stored category templates live here and are renamed
  // apart into a bag's store on every use.
  std::shared_ptr<BindStore> proto = std::make_shared<BindStore>();

  void merge(const Lexicon& other);
};

struct Sign {
  CatPtr cat;
  std::vector<std::string> phrase;
  int root_node = -1;           // id of the level-0 node; -1 for rule results
  std::vector<int> open_slots;  // direct-argument node ids, next-consumed first
};

struct BagEntry {
  std::string word;
  std::vector<Sign> alts;  // lexical ambiguity branches at shift time
};

struct Bag {
  std::vector<BagEntry> items;
  std::vector<BasicNode> nodes;  // ids 1..n, root first per sign, bag order
  BindStore store;

  std::size_t root_count() const;
  std::size_t slot_count() const;
  std::vector<std::string> words() const;
  bool ambiguous() const;
};

struct LoadError : std::runtime_error {
  explicit LoadError(const std::string& what) : std::runtime_error(what) {}
};

Lexicon load_lexicon(const std::string& text, const std::string& source_name = "<lexicon>");
Lexicon load_lexicon_file(const std::string& path);

// Lexicon pull for every word, in order, each entry renamed apart.
Bag make_bag(const Lexicon& lex, const std::vector<std::string>& words);

struct LoadedBag {
  Bag bag;
  CatPtr target;  // null when the file declares none
};

// Bag file directives: `use <path>.` imports a lexicon (relative to base_dir),
// `item <w> : <category>.` gives an inline category (named variables are
// shared index constants within the file), `word <w>.` pulls the word's
// lexicon entries with fresh variables, `target <category>.` sets the goal.
LoadedBag load_bag(const std::string& text, const Lexicon& ambient,
                   const std::string& base_dir = ".",
                   const std::string& source_name = "<bag>");
LoadedBag load_bag_file(const std::string& path, const Lexicon& ambient);

// The rules a bag was loaded against (ambient plus `use` imports) are needed
// by the generators; load_bag returns them through this accessor pair.
struct BagFile {
  LoadedBag loaded;
  Lexicon effective_lexicon;
};
BagFile load_bag_with_lexicon(const std::string& text, const Lexicon& ambient,
                              const std::string& base_dir = ".",
                              const std::string& source_name = "<bag>");
BagFile load_bag_file_with_lexicon(const std::string& path, const Lexicon& ambient);

}  // namespace baggen
