#pragma once

// Manifest-driven orchestration shared by the command-line tool: loading a
// corpus from tree files, per-document feature artifacts, author summaries,
// classification report rows, and synthetic corpus generation.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "stylo/classifier.hpp"
#include "stylo/corpus.hpp"
#include "stylo/features.hpp"
#include "stylo/pcfg.hpp"
#include "stylo/treebank.hpp"

namespace stylo {

struct ManifestEntry {
  std::string author;
  std::string doc_id;
  std::filesystem::path path;
  std::optional<std::size_t> segments;
};

// JSON form:
//   {"entries": [{"author": "Hamilton", "doc_id": "fed01",
//                 "path": "trees/fed01.mrg", "segments": 2}, ...],
//    "options": {"drop_root": true, "strip_words": true,
//                "punctuation_labels": [",", "."]}}
// Relative paths resolve against the manifest's directory.
struct Manifest {
  std::vector<ManifestEntry> entries;
  NormalizationConfig normalization;
};

Manifest parse_manifest(const nlohmann::json& doc,
                        const std::filesystem::path& base_dir = {});
Manifest load_manifest(const std::filesystem::path& path);
nlohmann::json manifest_to_json(const Manifest& manifest);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

// Reads, segments and normalizes every entry. Segment s (1-based) of
// document d gets id "d#s". Parse errors carry the file path.
Corpus load_corpus(const Manifest& manifest);

struct AuthorSummary {
  std::string author;
  std::size_t documents = 0;
  std::size_t sentences = 0;
  std::size_t words = 0;
  std::size_t distinct_features = 0;
  std::uint64_t total_features = 0;
};

std::vector<AuthorSummary> summarize_authors(const Corpus& corpus,
                                             const std::vector<FeatureCounts>& doc_counts);

nlohmann::json counts_artifact(const Document& doc, const FeatureSpec& spec,
                               const FeatureCounts& counts);

struct ReportRow {
  std::size_t top_n = 0;
  FeatureSpec spec;
  std::size_t vocab_size = 0;
  std::size_t err_full = 0;
  std::map<Eigen::Index, std::optional<std::size_t>> err_dims;
  std::size_t adj_err_full = 0;
  std::map<Eigen::Index, std::optional<std::size_t>> adj_err_dims;
  std::vector<std::string> warnings;
};

struct ClassifyOptions {
  FeatureKind kind = FeatureKind::AllSubtrees;
  std::vector<int> params;  // depths or levels; ignored for pos kinds
  std::vector<std::size_t> top_ns;
  std::set<Eigen::Index> dims = {2, 3, 4, 5};
  ProjectionMode mode = ProjectionMode::Paper;
  AliasMap aliases;
  double rank_tol = kDefaultRankTol;
};

// One row per (param, top_n), params outermost.
std::vector<ReportRow> classify_report(const Corpus& corpus, const ClassifyOptions& options);

std::string report_csv(const std::vector<ReportRow>& rows, const std::set<Eigen::Index>& dims);
nlohmann::json report_json(const std::vector<ReportRow>& rows);

struct SyntheticAuthor {
  std::string author;
  Grammar grammar;
};

struct SyntheticOptions {
  std::size_t documents_per_author = 10;
  std::size_t sentences_per_document = 200;
  std::uint64_t seed = 1;
  SampleOptions sampling;
};

// Writes one tree file per document under out_dir plus out_dir/manifest.json
// and returns the manifest.
Manifest synthesize_corpus(const std::vector<SyntheticAuthor>& authors,
                           const SyntheticOptions& options,
                           const std::filesystem::path& out_dir);

// Seed for document `doc` of author `author`, derived from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t author, std::uint64_t doc);

}  // namespace stylo
