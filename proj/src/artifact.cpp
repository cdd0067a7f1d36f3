#include "atlas/artifact.hpp"

#include <unistd.h>

#include "atlas/hash.hpp"
#include "atlas/ideation.hpp"
#include "json.hpp"

namespace atlas {
namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr Level kLevels[] = {Level::Class, Level::Subclass};

std::string suffix(Level level) { return "_" + std::to_string(to_int(level)); }

std::string corpus_text(const CorpusIndex& index) {
  std::string out;
  for (const auto& record : index.records()) {
    out += serialize_record(record);
    out += '\n';
  }
  return out;
}

}  // namespace

std::string Manifest::compute_hash() const {
  ordered_json doc;
  doc["format_version"] = format_version;
  doc["corpus_sha256"] = corpus_sha256;
  doc["stopwords_sha256"] = stopwords_sha256;
  doc["layout_seed"] = layout_seed;
  doc["backbone_k"] = backbone_k;
  doc["layout_iterations"] = layout_iterations;
  doc["files"] = files;
  return sha256_hex(doc.dump());
}

std::string Manifest::to_text() const {
  ordered_json doc;
  doc["format_version"] = format_version;
  doc["manifest_hash"] = manifest_hash;
  doc["corpus_sha256"] = corpus_sha256;
  doc["stopwords_sha256"] = stopwords_sha256;
  doc["layout_seed"] = layout_seed;
  doc["backbone_k"] = backbone_k;
  doc["layout_iterations"] = layout_iterations;
  doc["build_timestamp"] = build_timestamp;
  doc["files"] = files;
  return doc.dump(2) + "\n";
}

Manifest Manifest::parse(std::string_view text) {
  try {
    const auto doc = ordered_json::parse(text);
    Manifest m;
    m.format_version = doc.at("format_version").get<int>();
    m.manifest_hash = doc.at("manifest_hash").get<std::string>();
    m.corpus_sha256 = doc.at("corpus_sha256").get<std::string>();
    m.stopwords_sha256 = doc.at("stopwords_sha256").get<std::string>();
    m.layout_seed = doc.at("layout_seed").get<std::uint64_t>();
    m.backbone_k = doc.at("backbone_k").get<std::size_t>();
    m.layout_iterations = doc.at("layout_iterations").get<int>();
    m.build_timestamp = doc.at("build_timestamp").get<std::string>();
    m.files = doc.at("files").get<std::map<std::string, std::string>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ArtifactError(std::string("malformed manifest: ") + e.what());
  }
}

std::string export_terms(Level level,
                         const std::map<std::string, TermCounts, std::less<>>& fields) {
  ordered_json doc;
  doc["level"] = to_int(level);
  ordered_json body = ordered_json::object();
  for (const auto& [field, counts] : fields) {
    ordered_json terms = ordered_json::object();
    for (const auto& [term, count] : counts) terms[term] = count;
    body[field] = std::move(terms);
  }
  doc["fields"] = std::move(body);
  return doc.dump();
}

std::map<std::string, TermCounts, std::less<>> parse_terms(std::string_view text) {
  const auto doc = ordered_json::parse(text);
  std::map<std::string, TermCounts, std::less<>> out;
  for (const auto& [field, terms] : doc.at("fields").items()) {
    TermCounts& counts = out[field];
    for (const auto& [term, count] : terms.items()) counts.emplace(term, count.get<std::uint64_t>());
  }
  return out;
}

IndexArtifact IndexArtifact::build(std::vector<PatentRecord> records, StopwordList stopwords,
                                   FieldNames names, const BuildConfig& config,
                                   std::string timestamp) {
  IndexArtifact artifact;
  artifact.index_ = CorpusIndex::build(std::move(records));
  artifact.stopwords_ = std::move(stopwords);
  artifact.names_ = std::move(names);

  for (Level level : kLevels) {
    LevelProducts& products = artifact.products_[level == Level::Class ? 0 : 1];
    const ProximityMatrix exact = build_proximity_matrix(citation_profile(artifact.index_, level));
    products.matrix = ProximityMatrix::parse_text(exact.export_text());
    products.graph = build_graph(artifact.index_, products.matrix, config.backbone_k);
    products.layout = compute_layout(products.graph, config.seed, config.layout_iterations);
    products.field_terms = field_term_profiles(artifact.index_, level, artifact.stopwords_);
    products.registry = DocFreqRegistry::from_profiles(level, products.field_terms);
  }

  Manifest& m = artifact.manifest_;
  m.layout_seed = config.seed;
  m.backbone_k = config.backbone_k;
  m.layout_iterations = config.layout_iterations;
  m.build_timestamp = timestamp.empty() ? utc_timestamp() : std::move(timestamp);
  m.stopwords_sha256 = artifact.stopwords_.sha256();
  for (const auto& [name, bytes] : artifact.content_files()) m.files[name] = sha256_hex(bytes);
  m.corpus_sha256 = m.files.at("corpus.jsonl");
  m.manifest_hash = m.compute_hash();
  return artifact;
}

std::string IndexArtifact::map_text(Level level) const {
  const LevelProducts& products = this->level(level);
  return export_map(products.graph, products.layout);
}

std::map<std::string, std::string> IndexArtifact::content_files() const {
  std::map<std::string, std::string> files;
  files["corpus.jsonl"] = corpus_text(index_);
  files["stopwords.txt"] = stopwords_.text();
  files["field_names.tsv"] = names_.text();
  for (Level level : kLevels) {
    const LevelProducts& products = this->level(level);
    files["matrix" + suffix(level) + ".tsv"] = products.matrix.export_text();
    files["map" + suffix(level) + ".json"] = map_text(level);
    files["terms" + suffix(level) + ".json"] = export_terms(level, products.field_terms);
  }
  return files;
}

void IndexArtifact::write(const fs::path& dir) const {
  const fs::path target = fs::absolute(dir).lexically_normal();
  if (fs::exists(target) &&
      !(fs::is_directory(target) && (fs::is_empty(target) || fs::exists(target / "manifest.json")))) {
    throw ArtifactError(target.string() +
                        " exists and is not an artifact directory; refusing to replace it");
  }
  const fs::path staging =
      target.parent_path() / (target.filename().string() + ".tmp-" + std::to_string(::getpid()));
  try {
    fs::remove_all(staging);
    fs::create_directories(staging);
    for (const auto& [name, bytes] : content_files()) write_file(staging / name, bytes);
    write_file(staging / "manifest.json", manifest_.to_text());
    fs::remove_all(target);
    fs::rename(staging, target);
  } catch (...) {
    std::error_code ignored;
    fs::remove_all(staging, ignored);
    throw;
  }
}

IndexArtifact IndexArtifact::load(const fs::path& dir) {
  const fs::path manifest_path = dir / "manifest.json";
  if (!fs::exists(manifest_path)) {
    throw ArtifactError("no manifest.json in " + dir.string() + "; not an artifact directory");
  }
  Manifest manifest = Manifest::parse(read_file(manifest_path));
  if (manifest.format_version != kArtifactFormatVersion) {
    throw ArtifactError("artifact format version " + std::to_string(manifest.format_version) +
                        " is not supported (expected " + std::to_string(kArtifactFormatVersion) +
                        "); rebuild the artifact");
  }
  if (manifest.compute_hash() != manifest.manifest_hash) {
    throw ArtifactError("manifest hash mismatch: manifest.json was edited or is corrupt");
  }

  std::map<std::string, std::string> files;
  for (const auto& [name, digest] : manifest.files) {
    const fs::path path = dir / name;
    if (!fs::exists(path)) throw ArtifactError("artifact file missing: " + name);
    std::string bytes = read_file(path);
    if (sha256_hex(bytes) != digest) {
      throw ArtifactError("artifact file " + name + " does not match its manifest hash");
    }
    files.emplace(name, std::move(bytes));
  }
  auto file = [&](const std::string& name) -> const std::string& {
    auto it = files.find(name);
    if (it == files.end()) throw ArtifactError("manifest does not list " + name);
    return it->second;
  };

  IndexArtifact artifact;
  try {
    artifact.index_ = CorpusIndex::build(parse_corpus(file("corpus.jsonl")));
    artifact.stopwords_ = StopwordList::from_text(file("stopwords.txt"));
    artifact.names_ = FieldNames::from_text(file("field_names.tsv"));
    for (Level level : kLevels) {
      LevelProducts& products = artifact.products_[level == Level::Class ? 0 : 1];
      products.matrix = ProximityMatrix::parse_text(file("matrix" + suffix(level) + ".tsv"));
      parse_map(file("map" + suffix(level) + ".json"), products.graph, products.layout);
      products.field_terms = parse_terms(file("terms" + suffix(level) + ".json"));
      products.registry = DocFreqRegistry::from_profiles(level, products.field_terms);
      if (products.matrix.level() != level || products.graph.level != level) {
        throw ArtifactError("level mismatch in " + std::to_string(to_int(level)) + "-digit files");
      }
    }
  } catch (const ArtifactError&) {
    throw;
  } catch (const std::exception& e) {
    throw ArtifactError(std::string("cannot parse artifact: ") + e.what());
  }
  artifact.manifest_ = std::move(manifest);
  if (artifact.stopwords_.sha256() != artifact.manifest_.stopwords_sha256) {
    throw ArtifactError("stopword list does not match manifest");
  }
  if (artifact.content_files() != files) {
    throw ArtifactError("artifact content does not re-serialize to the stored bytes");
  }
  return artifact;
}

Manifest build_artifact(const fs::path& corpus, const fs::path& out, const BuildConfig& config) {
  auto records = read_corpus(corpus);
  auto stopwords = StopwordList::from_file(config.stopwords);
  auto names = config.field_names.empty() || !fs::exists(config.field_names)
                   ? FieldNames{}
                   : FieldNames::from_text(read_file(config.field_names));
  const IndexArtifact artifact =
      IndexArtifact::build(std::move(records), std::move(stopwords), std::move(names), config);
  artifact.write(out);
  return artifact.manifest();
}

}  // namespace atlas
