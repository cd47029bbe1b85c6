// Command-line front end: bag generation, the benchmark harness, and the
// three-dimensional-matching instance tools.

#include "baggen/congraph.hpp"
#include "baggen/generate.hpp"
#include "baggen/naive.hpp"
#include "baggen/tdm.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <filesystem>
#include <sstream>

using namespace baggen;

namespace {

constexpr int kExitFound = 0;
constexpr int kExitNoSolution = 1;
constexpr int kExitError = 2;

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

std::vector<std::string> split_words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

struct GenConfig {
  std::string lexicon_path;
  std::string words_text;
  std::string bag_path;
  std::string target_text;
  std::string algo = "whitelock";
  bool all = false;
  bool stats = false;
  bool dump_graph = false;
  bool no_occurs_check = false;
  std::size_t naive_cap = 8;
};

int run_gen(const GenConfig& cfg) {
  Lexicon lex;
  if (!cfg.lexicon_path.empty()) lex = load_lexicon_file(cfg.lexicon_path);

  Bag bag;
  CatPtr target;
  RuleSet rules;
  if (!cfg.bag_path.empty()) {
    BagFile bf = load_bag_file_with_lexicon(cfg.bag_path, lex);
    bag = std::move(bf.loaded.bag);
    target = bf.loaded.target;
    rules = bf.effective_lexicon.rules;
  } else {
    bag = make_bag(lex, split_words(cfg.words_text));
    rules = lex.rules;
  }
  bag.store.set_occurs_check(!cfg.no_occurs_check);
  if (!target) {
    if (cfg.target_text.empty()) {
      std::cerr << "baggen: no target category (use --target or a `target` line)\n";
      return kExitError;
    }
    VarScope scope(bag.store);
    target = parse_category(cfg.target_text, bag.store, scope);
  }

  if (cfg.dump_graph) {
    BindStore probe = bag.store;
    GraphBuild built = ConGraph::build(bag, target, rules, probe);
    if (built.status == GraphBuildStatus::ok) {
      built.graph->dump(std::cerr);
    } else {
      std::cerr << "baggen: no constraint graph (" << built.reason << ")\n";
    }
  }

  bool found = false;
  SearchStats last_stats;
  auto t0 = std::chrono::steady_clock::now();

  if (cfg.algo == "naive") {
    auto yields = generate_naive(bag, target, rules, NaiveOptions{cfg.naive_cap});
    for (const auto& phrase : yields) {
      std::cout << join(phrase) << "\n";
      found = true;
      if (!cfg.all) break;
    }
    last_stats.wall_millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
  } else if (cfg.algo == "whitelock" || cfg.algo == "cp") {
    YieldSink sink = [&](const GenYield& y) {
      std::cout << join(y.phrase) << "\n";
      found = true;
      last_stats = y.stats;
      return cfg.all;
    };
    SearchStats final_stats = cfg.algo == "cp"
                                  ? generate_cp(bag, target, rules, sink)
                                  : generate_whitelock(bag, target, rules, sink);
    if (final_stats.graph_fallback)
      std::cerr << "baggen: constraint graph unsupported for this input; "
                   "ran plain shift-reduce\n";
    if (!found || cfg.all) last_stats = final_stats;
  } else {
    std::cerr << "baggen: unknown algorithm '" << cfg.algo << "'\n";
    return kExitError;
  }

  if (cfg.stats) {
    std::cerr << "reductions=" << last_stats.reductions << " shifts=" << last_stats.shifts
              << " links_deleted=" << last_stats.links_deleted
              << " millis=" << std::llround(last_stats.wall_millis) << "\n";
  }
  return found ? kExitFound : kExitNoSolution;
}

struct BenchRow {
  std::string id;
  std::string target;
  std::vector<std::string> words;
};

int run_bench(const std::string& suite_path, const std::string& lexicon_path,
              double timeout_secs) {
  Lexicon lex = load_lexicon_file(lexicon_path);
  std::ifstream in(suite_path);
  if (!in) {
    std::cerr << "baggen: cannot open suite '" << suite_path << "'\n";
    return kExitError;
  }
  std::vector<BenchRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    BenchRow row;
    std::string words_text;
    if (!std::getline(ls, row.id, '\t') || !std::getline(ls, row.target, '\t') ||
        !std::getline(ls, words_text)) {
      std::cerr << "baggen: " << suite_path << ":" << lineno
                << ": expected `id<TAB>target<TAB>words`\n";
      return kExitError;
    }
    row.words = split_words(words_text);
    rows.push_back(std::move(row));
  }

  std::cout << "id\tlength\talgo\treductions\tshifts\tlinks_deleted\tmillis\t"
               "first_solution\n";
  for (const BenchRow& row : rows) {
    std::uint64_t reductions[2] = {0, 0};
    bool solved[2] = {false, false};
    for (int algo = 0; algo < 2; ++algo) {
      Bag bag = make_bag(lex, row.words);
      VarScope scope(bag.store);
      CatPtr target = parse_category(row.target, bag.store, scope);
      GenerateOptions opts;
      opts.time_limit = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(timeout_secs));
      std::vector<std::string> first;
      SearchStats at_first;
      YieldSink sink = [&](const GenYield& y) {
        first = y.phrase;
        at_first = y.stats;
        return false;
      };
      SearchStats final_stats = algo == 0
                                    ? generate_whitelock(bag, target, lex.rules, sink, opts)
                                    : generate_cp(bag, target, lex.rules, sink, opts);
      const SearchStats& st = first.empty() ? final_stats : at_first;
      solved[algo] = !first.empty();
      reductions[algo] = st.reductions;
      std::cout << row.id << '\t' << row.words.size() << '\t'
                << (algo == 0 ? "whitelock" : "cp") << '\t' << st.reductions << '\t'
                << st.shifts << '\t' << st.links_deleted << '\t'
                << std::llround(st.wall_millis) << '\t'
                << (final_stats.timed_out ? "timeout"
                                          : (first.empty() ? "-" : join(first)))
                << "\n";
    }
    std::cout << row.id << '\t' << row.words.size() << '\t' << "ratio\t";
    if (solved[0] && solved[1] && reductions[1] > 0) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2f",
                    double(reductions[0]) / double(reductions[1]));
      std::cout << buf;
    } else {
      std::cout << '-';
    }
    std::cout << "\t-\t-\t-\t-\n";
  }
  return kExitFound;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw LoadError("cannot write '" + path + "'");
  out << content;
}

int run_tdm_encode(const std::string& inst_path, std::string lex_out,
                   std::string bag_out) {
  TdmInstance inst = tdm_parse(read_file(inst_path));
  if (lex_out.empty()) lex_out = inst_path + ".lex";
  if (bag_out.empty()) bag_out = inst_path + ".bag";

  std::ostringstream lex;
  for (char set : {'a', 'b', 'c'})
    for (int i = 1; i <= inst.n; ++i) {
      std::string w = std::string(1, set) + std::to_string(i);
      lex << "word " << w << " : " << w << ".\n";
    }
  for (std::size_t t = 0; t < inst.triples.size(); ++t) {
    const auto& [i, j, k] = inst.triples[t];
    lex << "rule x -> a" << i << " p" << t + 1 << ".\n";
    lex << "rule p" << t + 1 << " -> b" << j << " c" << k << ".\n";
  }
  lex << "rule x -> x x.\n";
  write_file(lex_out, lex.str());

  std::ostringstream bagf;
  bagf << "use " << std::filesystem::path(lex_out).filename().string() << ".\n";
  for (char set : {'a', 'b', 'c'})
    for (int i = 1; i <= inst.n; ++i) bagf << "word " << set << i << ".\n";
  bagf << "target x.\n";
  write_file(bag_out, bagf.str());
  std::cerr << "wrote " << lex_out << " and " << bag_out << "\n";
  return kExitFound;
}

int run_tdm_check(const std::string& inst_path) {
  TdmInstance inst = tdm_parse(read_file(inst_path));
  bool brute = tdm_solve_brute(inst);
  TdmEncoding enc = tdm_encode(inst);
  bool engine = false;
  generate_whitelock(enc.bag, enc.target, enc.lexicon.rules, [&](const GenYield&) {
    engine = true;
    return false;
  });
  std::cout << "engine=" << (engine ? "yes" : "no") << " brute=" << (brute ? "yes" : "no")
            << " agree=" << (engine == brute ? "true" : "false") << "\n";
  return engine == brute ? kExitFound : kExitNoSolution;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bag generation: find grammatical orderings of an unordered bag "
               "of categorial lexical signs"};
  app.require_subcommand(1);

  GenConfig gen_cfg;
  CLI::App* gen = app.add_subcommand("gen", "generate orderings for one bag");
  gen->add_option("--lexicon", gen_cfg.lexicon_path, "grammar file");
  auto* words_opt = gen->add_option("--words", gen_cfg.words_text,
                                    "space-separated bag words (lexicon lookup)");
  auto* bag_opt = gen->add_option("--bag", gen_cfg.bag_path, "bag file");
  gen->add_option("--target", gen_cfg.target_text, "target category");
  gen->add_option("--algo", gen_cfg.algo, "naive | whitelock | cp")
      ->check(CLI::IsMember({"naive", "whitelock", "cp"}));
  gen->add_flag("--all", gen_cfg.all, "emit every distinct ordering");
  gen->add_flag("--stats", gen_cfg.stats, "print search counters to stderr");
  gen->add_flag("--dump-graph", gen_cfg.dump_graph,
                "dump the constraint graph (nodes and surviving links) to stderr");
  gen->add_flag("--no-occurs-check", gen_cfg.no_occurs_check,
                "disable the unifier's occurs check");
  gen->add_option("--naive-cap", gen_cfg.naive_cap,
                  "bag size cap for --algo naive (default 8)");
  words_opt->excludes(bag_opt);

  std::string suite_path, bench_lexicon;
  double timeout_secs = 60.0;
  CLI::App* bench = app.add_subcommand("bench", "run a suite under whitelock and cp");
  bench->add_option("suite", suite_path, "suite file: id<TAB>target<TAB>words")
      ->required();
  bench->add_option("--lexicon", bench_lexicon, "grammar file")->required();
  bench->add_option("--timeout", timeout_secs, "per-row timeout in seconds");

  CLI::App* tdm = app.add_subcommand("tdm", "three-dimensional matching tools");
  tdm->require_subcommand(1);
  int tdm_n = 3, tdm_m = 5;
  std::uint64_t tdm_seed = 1;
  std::string tdm_out;
  CLI::App* tdm_gen = tdm->add_subcommand("gen", "write a random instance");
  tdm_gen->add_option("--n", tdm_n, "set size")->required();
  tdm_gen->add_option("--m", tdm_m, "triple count")->required();
  tdm_gen->add_option("--seed", tdm_seed, "rng seed");
  tdm_gen->add_option("-o,--out", tdm_out, "output file (default stdout)");

  std::string inst_path, lex_out, bag_out;
  CLI::App* tdm_encode_cmd = tdm->add_subcommand("encode", "encode an instance as a bag problem");
  tdm_encode_cmd->add_option("instance", inst_path, "instance file")->required();
  tdm_encode_cmd->add_option("--lex-out", lex_out, "grammar output path");
  tdm_encode_cmd->add_option("--bag-out", bag_out, "bag output path");

  std::string check_path;
  CLI::App* tdm_check = tdm->add_subcommand("check", "compare engine and brute-force answers");
  tdm_check->add_option("instance", check_path, "instance file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (gen_cfg.words_text.empty() && gen_cfg.bag_path.empty()) {
        std::cerr << "baggen: gen needs --words or --bag\n";
        return kExitError;
      }
      return run_gen(gen_cfg);
    }
    if (bench->parsed()) return run_bench(suite_path, bench_lexicon, timeout_secs);
    if (tdm_gen->parsed()) {
      TdmInstance inst = tdm_random_instance(tdm_n, tdm_m, tdm_seed);
      if (tdm_out.empty())
        std::cout << tdm_format(inst);
      else
        write_file(tdm_out, tdm_format(inst));
      return kExitFound;
    }
    if (tdm_encode_cmd->parsed()) return run_tdm_encode(inst_path, lex_out, bag_out);
    if (tdm_check->parsed()) return run_tdm_check(check_path);
  } catch (const CapExceeded& e) {
    std::cerr << "baggen: " << e.what() << "\n";
    return kExitError;
  } catch (const LoadError& e) {
    std::cerr << "baggen: " << e.what() << "\n";
    return kExitError;
  } catch (const ParseError& e) {
    std::cerr << "baggen: parse error at offset " << e.pos << ": " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "baggen: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
