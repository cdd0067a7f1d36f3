#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "atlas/corpus.hpp"
#include "atlas/explorer.hpp"
#include "atlas/proximity.hpp"
#include "atlas/tech_space.hpp"
#include "atlas/terms.hpp"

namespace atlas {

inline constexpr int kArtifactFormatVersion = 1;

class ArtifactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BuildConfig {
  std::uint64_t seed = 42;
  std::size_t backbone_k = 3;
  int layout_iterations = 300;
  std::filesystem::path stopwords = default_stopwords_path();
  std::filesystem::path field_names = default_field_names_path();
};

/// Identity of an artifact. `manifest_hash` covers every persisted file and
/// every build setting; the build timestamp is informational and excluded, so
/// rebuilding the same inputs reproduces the hash.
struct Manifest {
  int format_version = kArtifactFormatVersion;
  std::string corpus_sha256;
  std::string stopwords_sha256;
  std::uint64_t layout_seed = 0;
  std::size_t backbone_k = 0;
  int layout_iterations = 0;
  std::string build_timestamp;
  std::map<std::string, std::string> files;  // name -> sha256
  std::string manifest_hash;

  std::string compute_hash() const;
  std::string to_text() const;
  static Manifest parse(std::string_view text);
};

struct LevelProducts {
  ProximityMatrix matrix;
  TechSpaceGraph graph;
  LayoutCoordinates layout;
  std::map<std::string, TermCounts, std::less<>> field_terms;
  DocFreqRegistry registry;
};

/// Everything the query side needs, built once from a corpus.
///
/// The corpus is persisted as its canonical record set and the index rebuilt
/// from it on load. Proximity values are held at the precision of the
/// canonical matrix export, so a freshly built artifact and a loaded one
/// answer every query identically.
class IndexArtifact {
 public:
  static IndexArtifact build(std::vector<PatentRecord> records, StopwordList stopwords,
                             FieldNames names, const BuildConfig& config,
                             std::string timestamp = {});

  // Verifies the format version, every file hash and the manifest hash, and
  // that the parsed content re-serializes to the same bytes.
  static IndexArtifact load(const std::filesystem::path& dir);

  // Persisted files other than the manifest, by name.
  std::map<std::string, std::string> content_files() const;

  // Writes into a sibling temporary directory, then renames it into place.
  void write(const std::filesystem::path& dir) const;

  const Manifest& manifest() const { return manifest_; }
  const CorpusIndex& index() const { return index_; }
  const StopwordList& stopwords() const { return stopwords_; }
  const FieldNames& field_names() const { return names_; }
  const LevelProducts& level(Level level) const {
    return products_[level == Level::Class ? 0 : 1];
  }
  std::string map_text(Level level) const;

 private:
  Manifest manifest_;
  CorpusIndex index_;
  StopwordList stopwords_;
  FieldNames names_;
  LevelProducts products_[2];
};

std::string export_terms(Level level, const std::map<std::string, TermCounts, std::less<>>& fields);
std::map<std::string, TermCounts, std::less<>> parse_terms(std::string_view text);

// Parses the corpus file, builds every product and writes the artifact
// directory. A corpus error aborts before anything is written; a failure while
// writing leaves no partial directory behind.
Manifest build_artifact(const std::filesystem::path& corpus, const std::filesystem::path& out,
                        const BuildConfig& config);

}  // namespace atlas
