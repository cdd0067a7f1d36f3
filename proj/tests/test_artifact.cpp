#include <filesystem>
#include <random>

#include "atlas/artifact.hpp"
#include "atlas/hash.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support/builders.hpp"
#include "support/synthetic.hpp"

using namespace atlas;
namespace fs = std::filesystem;

namespace {

// Manifest hash of the fixture corpus built with the default settings
// (seed 42, k 3, 300 iterations, shipped stopwords and field names).
constexpr const char* kFixtureGoldenHash = "1b062658227b64ab71da2b8edcd5debd0937658519a51637b720d33f8d8b5426";

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("atlas-artifact-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const fs::path fixture = atlas::testing::fixture_path("corpus200.jsonl");

}  // namespace

TEST_CASE("fixture build matches the pinned manifest hash") {
  TempDir dir;
  const auto manifest = build_artifact(fixture, dir.path / "a", {});
  CHECK(manifest.manifest_hash == kFixtureGoldenHash);
  CHECK(manifest.layout_seed == 42);
  CHECK(manifest.backbone_k == 3);
  CHECK(manifest.format_version == kArtifactFormatVersion);
  for (const char* name : {"manifest.json", "corpus.jsonl", "stopwords.txt", "field_names.tsv", "matrix_3.tsv",
                           "matrix_4.tsv", "map_3.json", "map_4.json", "terms_3.json", "terms_4.json"}) {
    CHECK_MESSAGE(fs::exists(dir.path / "a" / name), name);
  }
}

TEST_CASE("rebuilding reproduces every file except the timestamp") {
  TempDir dir;
  const auto first = build_artifact(fixture, dir.path / "one", {});
  const auto second = build_artifact(fixture, dir.path / "two", {});
  CHECK(first.manifest_hash == second.manifest_hash);
  CHECK(first.files == second.files);
  for (const auto& [name, sha] : first.files) {
    CHECK(read_file(dir.path / "one" / name) == read_file(dir.path / "two" / name));
  }
}

TEST_CASE("the manifest hash tracks content and settings") {
  const auto records = read_corpus(fixture);
  const auto stop = StopwordList::from_file(default_stopwords_path());
  const auto names = FieldNames::from_text(read_file(default_field_names_path()));
  const auto base = IndexArtifact::build(records, stop, names, {}, "t1");
  CHECK(IndexArtifact::build(records, stop, names, {}, "t2").manifest().manifest_hash ==
        base.manifest().manifest_hash);

  BuildConfig reseeded;
  reseeded.seed = 7;
  CHECK(IndexArtifact::build(records, stop, names, reseeded).manifest().manifest_hash !=
        base.manifest().manifest_hash);
  BuildConfig denser;
  denser.backbone_k = 4;
  CHECK(IndexArtifact::build(records, stop, names, denser).manifest().manifest_hash !=
        base.manifest().manifest_hash);

  auto edited = records;
  edited[17].title += " revised";
  CHECK(IndexArtifact::build(edited, stop, names, {}).manifest().manifest_hash != base.manifest().manifest_hash);
  CHECK(IndexArtifact::build(records, StopwordList::from_text(stop.text() + "toy\n"), names, {})
            .manifest()
            .manifest_hash != base.manifest().manifest_hash);

  auto shuffled = records;
  std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(1));
  CHECK(IndexArtifact::build(shuffled, stop, names, {}).manifest().manifest_hash == base.manifest().manifest_hash);
}

TEST_CASE("a bad corpus leaves nothing behind") {
  TempDir dir;
  const auto bad = dir.path / "bad.jsonl";
  std::string text = read_file(fixture);
  text.insert(text.find('\n', text.size() / 2) + 1, "{\"id\": \"broken\", \"title\": \n");
  write_file(bad, text);
  CHECK_THROWS_AS(build_artifact(bad, dir.path / "out", {}), CorpusError);
  CHECK_FALSE(fs::exists(dir.path / "out"));
  for (const auto& entry : fs::directory_iterator(dir.path)) CHECK(entry.path().filename() == "bad.jsonl");

  fs::create_directories(dir.path / "taken");
  write_file(dir.path / "taken" / "notes.txt", "keep me");
  CHECK_THROWS_AS(build_artifact(fixture, dir.path / "taken", {}), ArtifactError);
  CHECK(read_file(dir.path / "taken" / "notes.txt") == "keep me");

  fs::create_directories(dir.path / "empty");
  build_artifact(fixture, dir.path / "empty", {});
  CHECK(fs::exists(dir.path / "empty" / "manifest.json"));
  CHECK_NOTHROW(build_artifact(fixture, dir.path / "empty", {}));
}

TEST_CASE("loading round-trips the build") {
  TempDir dir;
  const auto records = read_corpus(fixture);
  const auto built = IndexArtifact::build(records, StopwordList::from_file(default_stopwords_path()),
                                          FieldNames::from_text(read_file(default_field_names_path())), {},
                                          "2026-01-01T00:00:00.000Z");
  built.write(dir.path / "a");
  const auto loaded = IndexArtifact::load(dir.path / "a");
  CHECK(loaded.manifest().manifest_hash == built.manifest().manifest_hash);
  CHECK(loaded.manifest().build_timestamp == "2026-01-01T00:00:00.000Z");
  CHECK(loaded.content_files() == built.content_files());
  CHECK(loaded.index().canonical_serialization() == built.index().canonical_serialization());
  for (Level level : {Level::Class, Level::Subclass}) {
    const auto& a = built.level(level);
    const auto& b = loaded.level(level);
    CHECK(a.matrix.export_text() == b.matrix.export_text());
    CHECK(a.graph == b.graph);
    CHECK(a.layout == b.layout);
    CHECK(a.field_terms == b.field_terms);
    CHECK(a.registry.entries() == b.registry.entries());
    CHECK(built.map_text(level) == loaded.map_text(level));
  }
  const auto probe = position_domain(loaded.index(), "rolling toy", Level::Class);
  CHECK(rank_nearby(probe, loaded.level(Level::Class).matrix, 10) ==
        rank_nearby(position_domain(built.index(), "rolling toy", Level::Class), built.level(Level::Class).matrix, 10));
}

TEST_CASE("tampered artifacts are refused") {
  TempDir dir;
  build_artifact(fixture, dir.path / "a", {});
  const auto copy = [&](const char* name) {
    fs::copy(dir.path / "a", dir.path / name, fs::copy_options::recursive);
    return dir.path / name;
  };

  SUBCASE("format version") {
    const auto d = copy("version");
    auto doc = nlohmann::json::parse(read_file(d / "manifest.json"));
    doc["format_version"] = kArtifactFormatVersion + 1;
    write_file(d / "manifest.json", doc.dump(2));
    CHECK_THROWS_WITH_AS(IndexArtifact::load(d), doctest::Contains("version"), ArtifactError);
  }
  SUBCASE("edited content file") {
    const auto d = copy("content");
    write_file(d / "matrix_3.tsv", read_file(d / "matrix_3.tsv") + "\n");
    CHECK_THROWS_AS(IndexArtifact::load(d), ArtifactError);
  }
  SUBCASE("edited manifest setting") {
    const auto d = copy("setting");
    auto doc = nlohmann::json::parse(read_file(d / "manifest.json"));
    doc["layout_seed"] = 43;
    write_file(d / "manifest.json", doc.dump(2));
    CHECK_THROWS_AS(IndexArtifact::load(d), ArtifactError);
  }
  SUBCASE("missing file") {
    const auto d = copy("missing");
    fs::remove(d / "terms_4.json");
    CHECK_THROWS_AS(IndexArtifact::load(d), ArtifactError);
  }
  CHECK_THROWS_AS(IndexArtifact::load(dir.path / "nowhere"), ArtifactError);
}

TEST_CASE("terms export round-trips") {
  std::map<std::string, TermCounts, std::less<>> fields{{"A63", {{"toy", 3}, {"rolling toy", 2}}}, {"B60", {}}};
  CHECK(parse_terms(export_terms(Level::Class, fields)) == fields);
}
