// stylo: authorship classification from constituency parse-tree features.
//
//   stylo extract  --manifest m.json --feature all-subtrees --depth 3 --out counts/
//   stylo classify --manifest m.json --feature rooted --level 2,3 --top-n 5,10
//                  --dims 2,3,4,5 --alias HandM=Madison --out report
//   stylo pcfg score  --grammar g.pcfg --trees t.mrg
//   stylo pcfg best   --grammar g.pcfg --trees candidates.mrg
//   stylo pcfg sample --grammar g.pcfg --count 100 --seed 7 --out s.mrg
//   stylo synth --grammar A=a.pcfg --grammar B=b.pcfg --docs 10 --sentences 200 --out corpus/
//
// Exit codes: 0 success, 1 input error, 2 numerical failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stylo/classifier.hpp"
#include "stylo/corpus.hpp"
#include "stylo/error.hpp"
#include "stylo/features.hpp"
#include "stylo/pcfg.hpp"
#include "stylo/pipeline.hpp"

namespace fs = std::filesystem;
using namespace stylo;

namespace {

std::string format_prob(double p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", p);
  return buf;
}

std::string safe_file_name(std::string id) {
  for (auto& c : id) {
    if (c == '/' || c == '\\' || c == '#') c = '_';
  }
  return id;
}

Grammar read_grammar(const fs::path& path) {
  try {
    return load_grammar(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::vector<ParseTree> read_trees(const fs::path& path) {
  try {
    return parse_trees(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

struct FeatureArgs {
  std::string feature = "all-subtrees";
  std::vector<int> depths;
  std::vector<int> levels;

  FeatureKind kind() const { return parse_feature_kind(feature); }
  std::vector<int> params() const {
    auto k = kind();
    if (k == FeatureKind::AllSubtrees) return depths.empty() ? levels : depths;
    if (k == FeatureKind::RootedSubtrees) return levels.empty() ? depths : levels;
    return {};
  }
};

void add_feature_options(CLI::App* cmd, FeatureArgs& args) {
  cmd->add_option("--feature", args.feature, "all-subtrees | rooted | pos | pos-by-level")
      ->check(CLI::IsMember({"all-subtrees", "rooted", "pos", "pos-by-level"}));
  cmd->add_option("--depth", args.depths, "subtree depth(s) for all-subtrees")->delimiter(',');
  cmd->add_option("--level", args.levels, "level(s) for rooted subtrees")->delimiter(',');
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

int run_extract(const std::string& manifest_path, const FeatureArgs& fa,
                const std::string& out_dir) {
  Manifest manifest = load_manifest(manifest_path);
  Corpus corpus = load_corpus(manifest);
  auto params = fa.params();
  FeatureSpec spec;
  switch (fa.kind()) {
    case FeatureKind::AllSubtrees:
    case FeatureKind::RootedSubtrees:
      if (params.size() != 1) throw InputError("extract takes exactly one --depth/--level");
      spec = fa.kind() == FeatureKind::AllSubtrees ? FeatureSpec::all_subtrees(params[0])
                                                   : FeatureSpec::rooted_subtrees(params[0]);
      break;
    case FeatureKind::PosCounts: spec = FeatureSpec::pos_counts(); break;
    case FeatureKind::PosByLevel: spec = FeatureSpec::pos_by_level(); break;
  }
  auto doc_counts = document_counts(corpus, spec);
  fs::path out(out_dir);
  for (std::size_t j = 0; j < corpus.size(); ++j) {
    const auto& doc = corpus.documents()[j];
    write_file(out / (safe_file_name(doc.doc_id) + ".counts.json"),
               counts_artifact(doc, spec, doc_counts[j]).dump(1) + "\n");
  }
  std::string summary = "author,documents,sentences,words,distinct_features,total_features\n";
  for (const auto& s : summarize_authors(corpus, doc_counts)) {
    summary += s.author + "," + std::to_string(s.documents) + "," +
               std::to_string(s.sentences) + "," + std::to_string(s.words) + "," +
               std::to_string(s.distinct_features) + "," + std::to_string(s.total_features) +
               "\n";
  }
  write_file(out / "summary.csv", summary);
  AuthorTotals totals = author_totals(corpus, doc_counts);
  auto ui = union_intersection_report(totals);
  std::cout << summary << "union," << ui.union_size << "\nintersection,"
            << ui.intersection_size << "\n";
  return 0;
}

int run_classify(const std::string& manifest_path, const FeatureArgs& fa,
                 const std::vector<std::size_t>& top_ns, const std::vector<int>& dims,
                 const std::string& mode, const std::vector<std::string>& aliases,
                 double rank_tol, const std::string& out_prefix) {
  ClassifyOptions opt;
  opt.kind = fa.kind();
  opt.params = fa.params();
  opt.top_ns = top_ns;
  opt.dims.clear();
  for (int l : dims) {
    if (l < 1) throw InputError("--dims values must be >= 1");
    opt.dims.insert(l);
  }
  opt.mode = parse_projection_mode(mode);
  const std::set<Eigen::Index> columns = opt.dims;
  if (opt.mode == ProjectionMode::None) {
    // Full-dimension errors only; projected columns print as NA.
    opt.dims.clear();
    opt.mode = ProjectionMode::Paper;
  }
  for (const auto& a : aliases) opt.aliases.add_spec(a);
  opt.rank_tol = rank_tol;

  Manifest manifest = load_manifest(manifest_path);
  Corpus corpus = load_corpus(manifest);
  auto rows = classify_report(corpus, opt);

  std::string csv = report_csv(rows, columns);
  std::string js = report_json(rows).dump(2) + "\n";
  if (!out_prefix.empty()) {
    write_file(out_prefix + ".csv", csv);
    write_file(out_prefix + ".json", js);
  }
  std::cout << csv;
  for (const auto& r : rows) print_warnings(r.warnings);
  return 0;
}

int run_pcfg_score(const std::string& grammar_path, const std::string& trees_path) {
  Grammar g = read_grammar(grammar_path);
  print_warnings(g.warnings());
  auto trees = read_trees(trees_path);
  for (std::size_t i = 0; i < trees.size(); ++i) {
    ScoredTree s = score_tree(g, trees[i]);
    std::cout << i + 1 << '\t' << format_prob(s.probability()) << '\t'
              << format_prob(s.log_prob) << '\t' << to_bracketed(trees[i]) << '\n';
  }
  return 0;
}

int run_pcfg_best(const std::string& grammar_path, const std::string& trees_path) {
  Grammar g = read_grammar(grammar_path);
  print_warnings(g.warnings());
  auto trees = read_trees(trees_path);
  ScoredTree best = best_parse(g, trees);
  std::size_t index = 0;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (trees[i] == best.tree) {
      index = i;
      break;
    }
  }
  std::cout << index + 1 << '\t' << format_prob(best.probability()) << '\t'
            << to_bracketed(best.tree) << '\n';
  return 0;
}

int run_pcfg_sample(const std::string& grammar_path, std::size_t count, std::uint64_t seed,
                    std::size_t max_depth, const std::string& out_path) {
  Grammar g = read_grammar(grammar_path);
  print_warnings(g.warnings());
  SampleOptions opt;
  opt.max_depth = max_depth;
  std::string text;
  for (const auto& t : sample_trees(g, seed, count, opt)) text += to_bracketed(t) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
  return 0;
}

int run_synth(const std::vector<std::string>& grammar_specs, std::size_t docs,
              std::size_t sentences, std::uint64_t seed, std::size_t max_depth,
              const std::string& out_dir) {
  std::vector<SyntheticAuthor> authors;
  for (const auto& spec : grammar_specs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InputError("--grammar expects AUTHOR=PATH, got '" + spec + "'");
    }
    authors.push_back({spec.substr(0, eq), read_grammar(spec.substr(eq + 1))});
  }
  SyntheticOptions opt;
  opt.documents_per_author = docs;
  opt.sentences_per_document = sentences;
  opt.seed = seed;
  opt.sampling.max_depth = max_depth;
  Manifest m = synthesize_corpus(authors, opt, out_dir);
  std::cout << "wrote " << m.entries.size() << " documents and "
            << (fs::path(out_dir) / "manifest.json").string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Authorship classification from parse-tree structure"};
  app.require_subcommand(1);

  // extract
  auto* extract = app.add_subcommand("extract", "Per-document feature counts");
  std::string manifest_path;
  FeatureArgs extract_features;
  std::string extract_out = "counts";
  extract->add_option("--manifest", manifest_path, "corpus manifest (JSON)")->required();
  add_feature_options(extract, extract_features);
  extract->add_option("--out", extract_out, "output directory");

  // classify
  auto* classify = app.add_subcommand("classify", "Leave-one-out classification report");
  FeatureArgs classify_features;
  std::vector<std::size_t> top_ns;
  std::vector<int> dims = {2, 3, 4, 5};
  std::string loo_mode = "paper";
  std::vector<std::string> aliases;
  double rank_tol = kDefaultRankTol;
  std::string report_prefix;
  classify->add_option("--manifest", manifest_path, "corpus manifest (JSON)")->required();
  add_feature_options(classify, classify_features);
  classify->add_option("--top-n", top_ns, "top-N features per author")
      ->delimiter(',')
      ->required();
  classify->add_option("--dims", dims, "projection dimensions")->delimiter(',');
  classify->add_option("--loo-mode", loo_mode, "paper | strict | none")
      ->check(CLI::IsMember({"paper", "strict", "none"}));
  classify->add_option("--alias", aliases, "FROM=TO label credited as correct");
  classify->add_option("--rank-tol", rank_tol, "relative rank tolerance")
      ->check(CLI::PositiveNumber);
  classify->add_option("--out", report_prefix, "write PREFIX.csv and PREFIX.json");

  // pcfg
  auto* pcfg = app.add_subcommand("pcfg", "Probabilistic grammar tools");
  pcfg->require_subcommand(1);
  std::string grammar_path;
  std::string trees_path;
  auto* score = pcfg->add_subcommand("score", "Probability of each tree");
  score->add_option("--grammar", grammar_path)->required();
  score->add_option("--trees", trees_path)->required();
  auto* best = pcfg->add_subcommand("best", "Most probable candidate tree");
  best->add_option("--grammar", grammar_path)->required();
  best->add_option("--trees", trees_path)->required();
  auto* sample = pcfg->add_subcommand("sample", "Sample trees from the grammar");
  std::size_t count = 10;
  std::uint64_t seed = 1;
  std::size_t max_depth = SampleOptions{}.max_depth;
  std::string sample_out;
  sample->add_option("--grammar", grammar_path)->required();
  sample->add_option("--count", count);
  sample->add_option("--seed", seed);
  sample->add_option("--max-depth", max_depth)->check(CLI::PositiveNumber);
  sample->add_option("--out", sample_out, "tree file (stdout when omitted)");

  // synth
  auto* synth = app.add_subcommand("synth", "Synthetic multi-author corpus from grammars");
  std::vector<std::string> grammar_specs;
  std::size_t docs = 10;
  std::size_t sentences = 200;
  std::string synth_out = "synthetic";
  synth->add_option("--grammar", grammar_specs, "AUTHOR=PATH")->required();
  synth->add_option("--docs", docs, "documents per author")->check(CLI::PositiveNumber);
  synth->add_option("--sentences", sentences, "sentences per document")
      ->check(CLI::PositiveNumber);
  synth->add_option("--seed", seed);
  synth->add_option("--max-depth", max_depth)->check(CLI::PositiveNumber);
  synth->add_option("--out", synth_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*extract) return run_extract(manifest_path, extract_features, extract_out);
    if (*classify) {
      return run_classify(manifest_path, classify_features, top_ns, dims, loo_mode, aliases,
                          rank_tol, report_prefix);
    }
    if (*score) return run_pcfg_score(grammar_path, trees_path);
    if (*best) return run_pcfg_best(grammar_path, trees_path);
    if (*sample) return run_pcfg_sample(grammar_path, count, seed, max_depth, sample_out);
    if (*synth) return run_synth(grammar_specs, docs, sentences, seed, max_depth, synth_out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
