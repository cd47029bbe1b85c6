#include "baggen/generate.hpp"

#include "baggen/naive.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace baggen;
using testutil::Algo;
using testutil::all_phrases;
using testutil::figures_lexicon;
using testutil::first_phrase;
using testutil::parse_target;

namespace {

Sign lexical_sign(const Bag& bag, std::size_t item) { return bag.items[item].alts[0]; }

std::string join(const std::vector<std::string>& ws) {
  std::string out;
  for (const auto& w : ws) out += (out.empty() ? "" : " ") + w;
  return out;
}

}  // namespace

TEST_CASE("combine: fierce takes cat, phrase order follows the slash") {
  Bag bag = make_bag(figures_lexicon(), {"fierce", "cat"});
  auto reduced = combine(lexical_sign(bag, 0), lexical_sign(bag, 1), {}, bag.store);
  REQUIRE(reduced);
  CHECK(category_to_string(reduced->cat, bag.store, true) == "n([])");
  CHECK(join(reduced->phrase) == "fierce cat");
}

TEST_CASE("combine: little accepts a brown-result n([1,1])") {
  Bag bag = make_bag(figures_lexicon(), {"little", "brown", "cat"});
  auto brown_cat =
      combine(lexical_sign(bag, 1), lexical_sign(bag, 2), {}, bag.store);
  REQUIRE(brown_cat);
  CHECK(category_to_string(brown_cat->cat, bag.store, true) == "n([1,1])");
  auto little_brown_cat = combine(lexical_sign(bag, 0), *brown_cat, {}, bag.store);
  REQUIRE(little_brown_cat);
  CHECK(category_to_string(little_brown_cat->cat, bag.store, true) == "n([1])");
  CHECK(join(little_brown_cat->phrase) == "little brown cat");
}

TEST_CASE("combine: brown rejects a fierce-result n([])") {
  Bag bag = make_bag(figures_lexicon(), {"brown", "fierce", "cat"});
  auto fierce_cat =
      combine(lexical_sign(bag, 1), lexical_sign(bag, 2), {}, bag.store);
  REQUIRE(fierce_cat);
  std::size_t trail_before = bag.store.trail_size();
  CHECK_FALSE(combine(lexical_sign(bag, 0), *fierce_cat, {}, bag.store));
  CHECK(bag.store.trail_size() == trail_before);
}

TEST_CASE("combine: backward application puts the functor's phrase last") {
  Bag bag = make_bag(figures_lexicon(), {"the", "cat", "likes", "a", "fox"});
  auto likes_obj = combine(lexical_sign(bag, 2), lexical_sign(bag, 4), {}, bag.store);
  // the object np is still missing; likes consumes "fox"? no — fox is n(_),
  // the object slot wants np, so this must fail
  CHECK_FALSE(likes_obj);
  auto a_fox = combine(lexical_sign(bag, 3), lexical_sign(bag, 4), {}, bag.store);
  REQUIRE(a_fox);
  auto likes_a_fox = combine(lexical_sign(bag, 2), *a_fox, {}, bag.store);
  REQUIRE(likes_a_fox);
  CHECK(join(likes_a_fox->phrase) == "likes a fox");
  auto the_cat = combine(lexical_sign(bag, 0), lexical_sign(bag, 1), {}, bag.store);
  REQUIRE(the_cat);
  auto sentence = combine(*likes_a_fox, *the_cat, {}, bag.store);
  REQUIRE(sentence);
  CHECK(join(sentence->phrase) == "the cat likes a fox");
  CHECK(category_to_string(sentence->cat, bag.store, true) == "s");
}

TEST_CASE("whitelock: a fox solves with a single reduction") {
  Bag bag = make_bag(figures_lexicon(), {"a", "fox"});
  CatPtr np = parse_target(bag, "np");
  auto first = first_phrase(Algo::whitelock, bag, np, {});
  REQUIRE(first.found);
  CHECK(join(first.phrase) == "a fox");
  CHECK(first.stats.reductions == 1);
}

TEST_CASE("whitelock: five-word bag yields the one good order; dead ends visited") {
  Bag bag = make_bag(figures_lexicon(), {"the", "fierce", "little", "brown", "cat"});
  CatPtr np = parse_target(bag, "np");

  std::vector<std::string> reduced_phrases;
  GenerateOptions opts;
  opts.on_reduce = [&](const Sign& s) { reduced_phrases.push_back(join(s.phrase)); };
  std::set<std::string> yields;
  generate_whitelock(bag, np, {}, [&](const GenYield& y) {
    yields.insert(join(y.phrase));
    return true;
  }, opts);

  CHECK(yields == std::set<std::string>{"the fierce little brown cat"});
  auto saw = [&](const std::string& p) {
    return std::count(reduced_phrases.begin(), reduced_phrases.end(), p) > 0;
  };
  // intermediate phrases that lead nowhere are still built along the way
  CHECK(saw("the fierce cat"));
  CHECK(saw("the brown cat"));
  CHECK(saw("the little cat"));
  CHECK(saw("the cat"));
}

TEST_CASE("whitelock: shared indices admit exactly one ordering") {
  Lexicon empty;
  LoadedBag loaded = load_bag_file(testutil::fixture("mary.bag"), empty);
  auto yields = all_phrases(Algo::whitelock, loaded.bag, loaded.target, {});
  CHECK(yields == testutil::PhraseSet{{"mary", "likes", "frances"}});
}

TEST_CASE("whitelock: exponential signature on adjective chains") {
  const std::vector<std::vector<std::string>> chains = {
      {"a", "fox"},
      {"a", "yellow", "fox"},
      {"a", "tame", "yellow", "fox"},
      {"a", "big", "tame", "yellow", "fox"},
  };
  std::vector<std::uint64_t> counts;
  for (const auto& words : chains) {
    Bag bag = make_bag(figures_lexicon(), words);
    CatPtr np = parse_target(bag, "np");
    auto first = first_phrase(Algo::whitelock, bag, np, {});
    REQUIRE(first.found);
    counts.push_back(first.stats.reductions);
  }
  CHECK(counts == std::vector<std::uint64_t>{1, 3, 7, 15});
  for (std::size_t k = 1; k < counts.size(); ++k)
    CHECK(counts[k] > 2 * counts[k - 1]);
}

TEST_CASE("whitelock: stack and bag words stay a permutation of the input") {
  Bag bag = make_bag(figures_lexicon(), {"the", "cat", "likes", "a", "fox"});
  CatPtr s_cat = parse_target(bag, "s");
  const std::vector<std::string> bag_word_list = bag.words();
  std::multiset<std::string> bag_words(bag_word_list.begin(), bag_word_list.end());
  GenerateOptions opts;
  // every reduced sign's phrase must stay inside the bag multiset
  opts.on_reduce = [&](const Sign& s) {
    std::multiset<std::string> phrase_words(s.phrase.begin(), s.phrase.end());
    CHECK(std::includes(bag_words.begin(), bag_words.end(), phrase_words.begin(),
                        phrase_words.end()));
  };
  generate_whitelock(bag, s_cat, {}, [&](const GenYield& y) {
    CHECK(std::multiset<std::string>(y.phrase.begin(), y.phrase.end()) == bag_words);
    return true;
  }, opts);
}

TEST_CASE("whitelock: lexically ambiguous items branch at shift time") {
  Lexicon lex = load_lexicon(
      "word saw : n([]).\n"
      "word saw : (s\\np)/np.\n"
      "word the : np/n(_).\n"
      "word a : np/n(_).\n"
      "word cat : n(_).\n");
  Bag bag = make_bag(lex, {"the", "cat", "saw", "a", "saw"});
  CatPtr s_cat = parse_target(bag, "s");
  auto yields = all_phrases(Algo::whitelock, bag, s_cat, lex.rules);
  CHECK(yields.count({"the", "cat", "saw", "a", "saw"}) == 1);
  CHECK(yields == all_phrases(Algo::naive, bag, s_cat, lex.rules));
}

TEST_CASE("cp: adjective chains are linear, initial propagation does the work") {
  const std::vector<std::vector<std::string>> chains = {
      {"a", "fox"},
      {"a", "yellow", "fox"},
      {"a", "tame", "yellow", "fox"},
      {"a", "big", "tame", "yellow", "fox"},
  };
  for (std::size_t k = 0; k < chains.size(); ++k) {
    Bag bag = make_bag(figures_lexicon(), chains[k]);
    CatPtr np = parse_target(bag, "np");
    auto first = first_phrase(Algo::cp, bag, np, {});
    REQUIRE(first.found);
    CHECK(first.stats.reductions == k + 1);
    CHECK_FALSE(first.stats.graph_fallback);
  }
}

TEST_CASE("cp: five-word bag, every executed reduction is on the solution path") {
  Bag bag = make_bag(figures_lexicon(), {"the", "fierce", "little", "brown", "cat"});
  CatPtr np = parse_target(bag, "np");
  auto first = first_phrase(Algo::cp, bag, np, {});
  REQUIRE(first.found);
  CHECK(join(first.phrase) == "the fierce little brown cat");
  CHECK(first.stats.reductions == 4);  // zero failed reduce branches explored
  CHECK(first.stats.links_deleted > 0);
  CHECK(first.stats.propagation_calls > 0);
}

TEST_CASE("cp: tame yellow fox needs 3 reductions where whitelock needs 7") {
  Bag bag = make_bag(figures_lexicon(), {"a", "tame", "yellow", "fox"});
  CatPtr np = parse_target(bag, "np");
  CHECK(first_phrase(Algo::cp, bag, np, {}).stats.reductions == 3);
  CHECK(first_phrase(Algo::whitelock, bag, np, {}).stats.reductions == 7);
}

TEST_CASE("cp: falls back to plain search outside the pure application fragment") {
  // ruleset productions
  Lexicon lex = load_lexicon(
      "word u : u.\nword v : v.\nrule w -> u v.\n");
  Bag bag = make_bag(lex, {"u", "v"});
  CatPtr w = parse_target(bag, "w");
  auto first = first_phrase(Algo::cp, bag, w, lex.rules);
  CHECK(first.found);
  CHECK(first.stats.graph_fallback);

  // higher-order argument
  Lexicon ho = load_lexicon(
      "word f : a/(b/c).\nword g : b/c.\n");
  Bag bag2 = make_bag(ho, {"f", "g"});
  CatPtr a = parse_target(bag2, "a");
  auto first2 = first_phrase(Algo::cp, bag2, a, ho.rules);
  CHECK(first2.found);
  CHECK(first2.stats.graph_fallback);
  CHECK(join(first2.phrase) == "f g");
}

TEST_CASE("cp and whitelock yield identical sets on fixture bags") {
  std::mt19937 rng(0xcafe);
  int nontrivial = 0;
  for (int round = 0; round < 60; ++round) {
    auto words = testutil::random_fixture_bag(rng, 6);
    Bag bag = make_bag(figures_lexicon(), words);
    for (const char* target_text : {"np", "s"}) {
      CatPtr target = parse_target(bag, target_text);
      auto w = all_phrases(Algo::whitelock, bag, target, {});
      auto c = all_phrases(Algo::cp, bag, target, {});
      CHECK(w == c);
      if (!w.empty()) ++nontrivial;
    }
  }
  CHECK(nontrivial > 5);
}

TEST_CASE("generate: empty bag yields nothing") {
  Bag bag;
  CatPtr np = Category::make_basic("np");
  CHECK(all_phrases(Algo::whitelock, bag, np, {}).empty());
  CHECK(all_phrases(Algo::cp, bag, np, {}).empty());
}

TEST_CASE("generate: first yield re-parses under the ordered parser") {
  std::mt19937 rng(0xd00d);
  for (int round = 0; round < 40; ++round) {
    auto words = testutil::random_fixture_bag(rng, 5);
    Bag bag = make_bag(figures_lexicon(), words);
    CatPtr target = parse_target(bag, rng() % 2 ? "np" : "s");
    for (Algo algo : {Algo::whitelock, Algo::cp}) {
      auto first = first_phrase(algo, bag, target, {});
      if (first.found) CHECK(parse_words(bag, first.phrase, target, {}));
    }
  }
}
