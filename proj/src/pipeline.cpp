#include "stylo/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "stylo/error.hpp"

namespace stylo {

namespace fs = std::filesystem;
using nlohmann::json;

Manifest parse_manifest(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw InputError("manifest must be an object with an 'entries' array");
  }
  Manifest m;
  try {
    for (const auto& e : doc["entries"]) {
      ManifestEntry entry;
      entry.author = e.at("author").get<std::string>();
      entry.doc_id = e.at("doc_id").get<std::string>();
      fs::path p = e.at("path").get<std::string>();
      entry.path = p.is_absolute() || base_dir.empty() ? p : base_dir / p;
      if (e.contains("segments") && !e["segments"].is_null()) {
        auto s = e["segments"].get<long long>();
        if (s < 1) throw InputError("segments must be >= 1 for '" + entry.doc_id + "'");
        entry.segments = static_cast<std::size_t>(s);
      }
      if (entry.author.empty() || entry.doc_id.empty()) {
        throw InputError("manifest entry with empty author or doc_id");
      }
      m.entries.push_back(std::move(entry));
    }
    if (doc.contains("options")) {
      const auto& o = doc["options"];
      if (o.contains("drop_root")) m.normalization.drop_root = o["drop_root"].get<bool>();
      if (o.contains("strip_words")) m.normalization.strip_words = o["strip_words"].get<bool>();
      if (o.contains("punctuation_labels")) {
        m.normalization.punctuation_labels =
            o["punctuation_labels"].get<std::set<std::string>>();
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed manifest: ") + e.what());
  }
  if (m.entries.empty()) throw InputError("manifest has no entries");
  return m;
}

Manifest load_manifest(const fs::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return parse_manifest(doc, path.parent_path());
}

json manifest_to_json(const Manifest& manifest) {
  json entries = json::array();
  for (const auto& e : manifest.entries) {
    json j = {{"author", e.author}, {"doc_id", e.doc_id}, {"path", e.path.generic_string()}};
    if (e.segments) j["segments"] = *e.segments;
    entries.push_back(std::move(j));
  }
  return {{"entries", entries},
          {"options",
           {{"drop_root", manifest.normalization.drop_root},
            {"strip_words", manifest.normalization.strip_words},
            {"punctuation_labels", manifest.normalization.punctuation_labels}}}};
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("write failed for " + path.string());
}

Corpus load_corpus(const Manifest& manifest) {
  std::vector<Document> docs;
  for (const auto& entry : manifest.entries) {
    std::vector<ParseTree> raw;
    try {
      raw = parse_trees(read_file(entry.path));
    } catch (const InputError& e) {
      throw InputError(entry.path.string() + ": " + e.what());
    }
    std::vector<std::vector<ParseTree>> pieces;
    if (entry.segments) {
      pieces = segment(raw, *entry.segments);
    } else {
      pieces.push_back(std::move(raw));
    }
    for (std::size_t s = 0; s < pieces.size(); ++s) {
      Document doc;
      doc.author = entry.author;
      doc.doc_id = entry.segments ? entry.doc_id + "#" + std::to_string(s + 1) : entry.doc_id;
      doc.stats = stats(pieces[s], manifest.normalization.punctuation_labels);
      doc.trees.reserve(pieces[s].size());
      for (std::size_t i = 0; i < pieces[s].size(); ++i) {
        try {
          doc.trees.push_back(normalize(pieces[s][i], manifest.normalization));
        } catch (const InputError& e) {
          throw InputError(entry.path.string() + ": sentence " + std::to_string(i + 1) +
                           ": " + e.what());
        }
      }
      docs.push_back(std::move(doc));
    }
  }
  return Corpus(std::move(docs));
}

std::vector<AuthorSummary> summarize_authors(const Corpus& corpus,
                                             const std::vector<FeatureCounts>& doc_counts) {
  AuthorTotals totals = author_totals(corpus, doc_counts);
  std::vector<AuthorSummary> out;
  for (std::size_t c = 0; c < corpus.class_count(); ++c) {
    AuthorSummary s;
    s.author = corpus.classes()[c];
    for (std::size_t j : corpus.members(static_cast<int>(c))) {
      const auto& doc = corpus.documents()[j];
      ++s.documents;
      s.sentences += doc.stats.sentence_count;
      s.words += doc.stats.word_count;
    }
    const auto& t = totals.at(s.author);
    s.distinct_features = t.distinct();
    s.total_features = t.total();
    out.push_back(s);
  }
  return out;
}

json counts_artifact(const Document& doc, const FeatureSpec& spec,
                     const FeatureCounts& counts) {
  json c = json::object();
  for (const auto& [key, n] : counts) c[key] = n;
  return {{"doc_id", doc.doc_id},
          {"author", doc.author},
          {"feature", feature_kind_name(spec.kind)},
          {"param", spec.param},
          {"sentences", doc.stats.sentence_count},
          {"words", doc.stats.word_count},
          {"counts", c}};
}

namespace {

FeatureSpec make_spec(FeatureKind kind, int param) {
  switch (kind) {
    case FeatureKind::AllSubtrees: return FeatureSpec::all_subtrees(param);
    case FeatureKind::RootedSubtrees: return FeatureSpec::rooted_subtrees(param);
    case FeatureKind::PosCounts: return FeatureSpec::pos_counts();
    case FeatureKind::PosByLevel: return FeatureSpec::pos_by_level();
  }
  return {};
}

}  // namespace

std::vector<ReportRow> classify_report(const Corpus& corpus, const ClassifyOptions& options) {
  if (options.top_ns.empty()) throw InputError("at least one top-N value is required");
  std::vector<int> params = options.params;
  if (!feature_kind_has_param(options.kind)) {
    params = {0};
  } else if (params.empty()) {
    throw InputError("feature '" + feature_kind_name(options.kind) +
                     "' needs at least one depth/level");
  }

  std::vector<ReportRow> rows;
  for (int param : params) {
    FeatureSpec spec = make_spec(options.kind, param);
    auto doc_counts = document_counts(corpus, spec);
    AuthorTotals totals = author_totals(corpus, doc_counts);
    for (std::size_t top_n : options.top_ns) {
      Vocabulary vocab = top_n_union(totals, top_n, spec);
      TermDocMatrix matrix = build_matrix(corpus, doc_counts, vocab, true);
      SweepResult s = sweep(matrix, options.dims, options.mode, options.rank_tol);

      ReportRow row;
      row.top_n = top_n;
      row.spec = spec;
      row.vocab_size = vocab.size();
      row.err_full = s.full.error_count;
      row.adj_err_full = adjusted_errors(s.full, options.aliases);
      auto note = [&row](const std::string& w) {
        if (std::find(row.warnings.begin(), row.warnings.end(), w) == row.warnings.end()) {
          row.warnings.push_back(w);
        }
      };
      for (const auto& w : s.full.warnings) note(w);
      if (!matrix.zero_columns.empty()) {
        note(std::to_string(matrix.zero_columns.size()) +
             " document(s) have no features in the vocabulary");
      }
      for (Eigen::Index l : options.dims) {
        if (auto it = s.per_dims.find(l); it != s.per_dims.end()) {
          row.err_dims[l] = it->second.error_count;
          row.adj_err_dims[l] = adjusted_errors(it->second, options.aliases);
          for (const auto& w : it->second.warnings) note("l=" + std::to_string(l) + ": " + w);
        } else {
          row.err_dims[l] = std::nullopt;
          row.adj_err_dims[l] = std::nullopt;
          note("l=" + std::to_string(l) + ": " + s.skipped.at(l));
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace {

std::string cell(const std::map<Eigen::Index, std::optional<std::size_t>>& values,
                 Eigen::Index l) {
  auto it = values.find(l);
  return it != values.end() && it->second ? std::to_string(*it->second) : "NA";
}

std::string param_cell(const FeatureSpec& spec) {
  return feature_kind_has_param(spec.kind) ? std::to_string(spec.param) : "";
}

}  // namespace

std::string report_csv(const std::vector<ReportRow>& rows, const std::set<Eigen::Index>& dims) {
  std::ostringstream out;
  out << "top_n,feature,param,vocab_size,err_full";
  for (auto l : dims) out << ",err_" << l;
  out << ",adj_err_full";
  for (auto l : dims) out << ",adj_err_" << l;
  out << '\n';
  for (const auto& r : rows) {
    out << r.top_n << ',' << feature_kind_name(r.spec.kind) << ',' << param_cell(r.spec) << ','
        << r.vocab_size << ',' << r.err_full;
    for (auto l : dims) out << ',' << cell(r.err_dims, l);
    out << ',' << r.adj_err_full;
    for (auto l : dims) out << ',' << cell(r.adj_err_dims, l);
    out << '\n';
  }
  return out.str();
}

json report_json(const std::vector<ReportRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json err = json::object();
    json adj = json::object();
    for (const auto& [l, v] : r.err_dims) err[std::to_string(l)] = v ? json(*v) : json();
    for (const auto& [l, v] : r.adj_err_dims) adj[std::to_string(l)] = v ? json(*v) : json();
    json row = {{"top_n", r.top_n},
                {"feature", feature_kind_name(r.spec.kind)},
                {"vocab_size", r.vocab_size},
                {"err_full", r.err_full},
                {"err", err},
                {"adj_err_full", r.adj_err_full},
                {"adj_err", adj},
                {"warnings", r.warnings}};
    row["param"] = feature_kind_has_param(r.spec.kind) ? json(r.spec.param) : json();
    out.push_back(std::move(row));
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t author, std::uint64_t doc) {
  // splitmix64 finalizer over a mixed key
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (author * 1000003ULL + doc + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Manifest synthesize_corpus(const std::vector<SyntheticAuthor>& authors,
                           const SyntheticOptions& options, const fs::path& out_dir) {
  if (authors.empty()) throw InputError("no synthetic authors given");
  fs::create_directories(out_dir);
  Manifest manifest;
  for (std::size_t a = 0; a < authors.size(); ++a) {
    for (std::size_t d = 0; d < options.documents_per_author; ++d) {
      std::string doc_id = authors[a].author + "_" + std::to_string(d + 1);
      auto trees = sample_trees(authors[a].grammar, derive_seed(options.seed, a, d),
                                options.sentences_per_document, options.sampling);
      std::string text;
      for (const auto& t : trees) {
        text += to_bracketed(t);
        text += '\n';
      }
      fs::path file = doc_id + ".mrg";
      write_file(out_dir / file, text);
      manifest.entries.push_back({authors[a].author, doc_id, file, std::nullopt});
    }
  }
  write_file(out_dir / "manifest.json", manifest_to_json(manifest).dump(2) + "\n");
  for (auto& e : manifest.entries) e.path = out_dir / e.path;
  return manifest;
}

}  // namespace stylo
