#include "baggen/naive.hpp"

#include "oracle.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace baggen;
using testutil::figures_lexicon;
using testutil::parse_target;

namespace {

std::vector<std::size_t> identity_order(const Bag& bag) {
  std::vector<std::size_t> order(bag.items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  return order;
}

}  // namespace

TEST_CASE("ordered_parse: the fierce cat is an np") {
  Bag bag = make_bag(figures_lexicon(), {"the", "fierce", "cat"});
  CatPtr np = parse_target(bag, "np");
  CHECK(ordered_parse(bag, identity_order(bag), np, {}));
}

TEST_CASE("ordered_parse: the brown fierce cat is rejected") {
  // fierce yields n([]); brown's slot n([1,1,1|_]) cannot take it — checked
  // against the functional oracle as well.
  Bag bag = make_bag(figures_lexicon(), {"the", "brown", "fierce", "cat"});
  CatPtr np = parse_target(bag, "np");
  CHECK_FALSE(ordered_parse(bag, identity_order(bag), np, {}));

  BindStore s;
  VarScope scope(s);
  TermPtr brown_slot = parse_term("[1,1,1|_]", s, scope);
  CHECK_FALSE(oracle::unify(brown_slot, Term::make_nil(), oracle::Subst{}));
}

TEST_CASE("ordered_parse: unit span against a variable-feature target") {
  Bag bag = make_bag(figures_lexicon(), {"cat"});
  CatPtr n_any = parse_target(bag, "n(_)");
  CHECK(ordered_parse(bag, identity_order(bag), n_any, {}));
}

TEST_CASE("ordered_parse: empty sequence never parses") {
  Bag bag;
  BindStore s;
  VarScope scope(s);
  CatPtr np = Category::make_basic("np");
  CHECK_FALSE(ordered_parse(bag, {}, np, {}));
}

TEST_CASE("generate_naive: a fox") {
  Bag bag = make_bag(figures_lexicon(), {"a", "fox"});
  CatPtr np = parse_target(bag, "np");
  auto yields = generate_naive(bag, np, {});
  REQUIRE(yields.size() == 1);
  CHECK(yields[0] == std::vector<std::string>{"a", "fox"});
}

TEST_CASE("generate_naive: exactly one order for the five-word bag") {
  Bag bag = make_bag(figures_lexicon(), {"the", "fierce", "little", "brown", "cat"});
  CatPtr np = parse_target(bag, "np");
  auto yields = generate_naive(bag, np, {});
  REQUIRE(yields.size() == 1);
  CHECK(yields[0] ==
        std::vector<std::string>{"the", "fierce", "little", "brown", "cat"});
}

TEST_CASE("generate_naive: shared indices pin subject and object") {
  Lexicon empty;
  LoadedBag loaded = load_bag_file(testutil::fixture("mary.bag"), empty);
  auto yields = generate_naive(loaded.bag, loaded.target, {});
  REQUIRE(yields.size() == 1);
  CHECK(yields[0] == std::vector<std::string>{"mary", "likes", "frances"});
}

TEST_CASE("generate_naive: yields in lexicographic order, all permutations of the bag") {
  // two solutions: either determiner can own either noun
  Bag bag = make_bag(figures_lexicon(), {"the", "cat", "likes", "a", "fox"});
  CatPtr s_cat = parse_target(bag, "s");
  auto yields = generate_naive(bag, s_cat, {});
  REQUIRE(yields.size() >= 2);
  auto sorted = yields;
  std::sort(sorted.begin(), sorted.end());
  CHECK(yields == sorted);
  const std::vector<std::string> bag_word_list = bag.words();
  std::multiset<std::string> bag_words(bag_word_list.begin(), bag_word_list.end());
  for (const auto& y : yields)
    CHECK(std::multiset<std::string>(y.begin(), y.end()) == bag_words);
}

TEST_CASE("generate_naive: cap refusal names the cap") {
  Bag bag = make_bag(figures_lexicon(),
                     {"the", "a", "cat", "fox", "likes", "fierce", "little",
                      "brown", "tame"});
  CatPtr s_cat = parse_target(bag, "s");
  CHECK_THROWS_WITH_AS(generate_naive(bag, s_cat, {}),
                       "bag of 9 items exceeds the generate-and-test cap of 8",
                       CapExceeded);
}

TEST_CASE("parse_words: respects item identity for duplicate words") {
  Lexicon lex = load_lexicon(
      "word spin : n([]).\n");
  LoadedBag loaded = load_bag(
      "item spin : n([]).\n"
      "item spin : n([1])/n([]).\n",
      lex);
  CatPtr target = parse_target(loaded.bag, "n([1])");
  CHECK(parse_words(loaded.bag, {"spin", "spin"}, target, {}));
  CHECK_FALSE(parse_words(loaded.bag, {"spin"}, target, {}));
}
