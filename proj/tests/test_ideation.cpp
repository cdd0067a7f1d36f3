#include <filesystem>
#include <random>

#include "atlas/hash.hpp"
#include "atlas/ideation.hpp"
#include "doctest.h"
#include "support/inspiration.hpp"

using namespace atlas;

namespace {

ProximityMatrix explorer_example() {
  return ProximityMatrix(Level::Class, {"A01", "F01", "F02", "F03"}, {1, 0.4, 1, 0.1, 0.0, 1, 0.4, 0.0, 0.0, 1});
}

DomainPosition explorer_position() {
  DomainPosition pos;
  pos.query = "rolling toy";
  pos.matched_ids = {"p1"};
  pos.x = {{"A01", 3}};
  pos.red_fields = {"A01"};
  pos.white_fields = {"F01", "F02", "F03"};
  return pos;
}

IdeaDraft draft(std::string field, std::string stimulus = "data collection") {
  IdeaDraft d;
  d.heuristic = Heuristic::Combination;
  d.stimulus_text = std::move(stimulus);
  d.stimulus_kind = StimulusKind::Term;
  d.source_field = std::move(field);
  d.target_query = "rolling toy";
  d.idea_text = "Combine " + d.stimulus_text + " with rolling toy";
  return d;
}

// Counter clock: 2020-01-01T00:00:00.000Z, then one second per call.
IdeaLedger::Clock ticking() {
  auto n = std::make_shared<int>(0);
  return [n] {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "2020-01-01T00:%02d:%02d.000Z", *n / 60, *n % 60);
    ++*n;
    return std::string(buf);
  };
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("atlas-ideation-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("recorded ideas freeze their proximity") {
  IdeaLedger ledger({}, "abc", ticking());
  const auto m = explorer_example();
  const auto pos = explorer_position();
  auto first = ledger.record(draft("F01"), pos, m);
  CHECK(first.omega == doctest::Approx(0.4));
  CHECK(first.idea_id == "idea-000001");
  CHECK(first.created_at == "2020-01-01T00:00:00.000Z");
  CHECK(first.artifact_hash == "abc");
  auto second = ledger.record(draft("F02"), pos, m);
  CHECK(second.omega == doctest::Approx(0.1));
  const auto all = ledger.snapshot();
  REQUIRE(all.size() == 2);
  CHECK(all[0] == first);
  CHECK(all[1] == second);
}

TEST_CASE("red-space sources exclude themselves") {
  // Target spans A01 (2) and F01 (1); the idea comes from F01 itself.
  ProximityMatrix m(Level::Class, {"A01", "F01", "F02"}, {1, 0.3, 1, 0.2, 0.5, 1});
  DomainPosition pos = explorer_position();
  pos.x = {{"A01", 2}, {"F01", 1}};
  pos.red_fields = {"A01", "F01"};
  pos.white_fields = {"F02"};
  IdeaLedger ledger;
  CHECK(ledger.record(draft("F01"), pos, m).omega == doctest::Approx(0.3));
  CHECK(ledger.record(draft("F02"), pos, m).omega == doctest::Approx((2 * 0.2 + 1 * 0.5) / 3));
}

TEST_CASE("invalid drafts are refused") {
  IdeaLedger ledger;
  const auto m = explorer_example();
  const auto pos = explorer_position();
  CHECK_THROWS_AS(ledger.record(draft("Z99"), pos, m), IdeationError);
  CHECK_THROWS_AS(ledger.record(draft("F01", ""), pos, m), IdeationError);
  auto wrong_target = draft("F01");
  wrong_target.target_query = "water seepage";
  CHECK_THROWS_AS(ledger.record(wrong_target, pos, m), IdeationError);
  DomainPosition unpositioned = pos;
  unpositioned.x.clear();
  unpositioned.red_fields.clear();
  CHECK_THROWS_AS(ledger.record(draft("F01"), unpositioned, m), IdeationError);
  DomainPosition only_source = pos;
  only_source.x = {{"F01", 1}};
  only_source.red_fields = {"F01"};
  CHECK_THROWS_AS(ledger.record(draft("F01"), only_source, m), IdeationError);
  CHECK(ledger.size() == 0);
}

TEST_CASE("the ledger file only ever grows") {
  TempDir dir;
  const auto file = dir.path / "ideas.jsonl";
  const auto m = explorer_example();
  const auto pos = explorer_position();
  std::string previous;
  {
    IdeaLedger ledger(file, "h", ticking());
    for (const char* f : {"F01", "F02", "F03", "F01"}) {
      ledger.record(draft(f), pos, m);
      const std::string now = read_file(file);
      CHECK(now.size() > previous.size());
      CHECK(now.compare(0, previous.size(), previous) == 0);
      previous = now;
    }
  }
  IdeaLedger reopened(file, "h", ticking());
  CHECK(reopened.size() == 4);
  auto next = reopened.record(draft("F02"), pos, m);
  CHECK(next.idea_id == "idea-000005");
  CHECK(read_file(file).compare(0, previous.size(), previous) == 0);
  CHECK(parse_idea(serialize_idea(next)) == next);
  CHECK(serialize_idea(next).rfind("{\"idea_id\":\"idea-000005\",\"created_at\":", 0) == 0);
}

TEST_CASE("ranking follows the reference inspiration-field order") {
  const auto m = atlas::testing::inspiration_matrix();
  const auto pos = atlas::testing::rolling_toy_position(m);
  auto rows = atlas::testing::inspiration_rows();
  std::shuffle(rows.begin(), rows.end(), std::mt19937_64(4));
  IdeaLedger ledger({}, {}, ticking());
  for (const auto& row : rows) {
    IdeaDraft d = draft(row.field, row.name);
    d.stimulus_kind = StimulusKind::Field;
    d.idea_text = row.idea;
    ledger.record(d, pos, m);
  }
  const auto ideas = ledger.snapshot();
  const auto desc = rank_ideas(ideas, IdeaOrder::ProximityDesc);
  const auto& reference = atlas::testing::inspiration_rows();
  REQUIRE(desc.size() == reference.size());
  for (std::size_t i = 0; i < desc.size(); ++i) {
    CHECK(desc[i].source_field == reference[i].field);
    CHECK(desc[i].omega == doctest::Approx(reference[i].omega).epsilon(1e-12));
  }
  auto asc = rank_ideas(ideas, IdeaOrder::ProximityAsc);
  std::reverse(asc.begin(), asc.end());
  CHECK(asc == desc);
  CHECK(rank_ideas({}, IdeaOrder::ProximityDesc).empty());
}

TEST_CASE("equal proximities keep creation order") {
  IdeaRecord a, b, c;
  a.idea_id = "idea-000002";
  a.created_at = "2020-01-01T00:00:02.000Z";
  b.idea_id = "idea-000001";
  b.created_at = "2020-01-01T00:00:01.000Z";
  c.idea_id = "idea-000003";
  c.created_at = "2020-01-01T00:00:01.000Z";
  a.omega = b.omega = c.omega = 0.25;
  const std::vector<IdeaRecord> ideas{a, b, c};
  auto ranked = rank_ideas(ideas, IdeaOrder::ProximityDesc);
  CHECK(ranked[0].idea_id == "idea-000001");
  CHECK(ranked[1].idea_id == "idea-000003");
  CHECK(ranked[2].idea_id == "idea-000002");
  CHECK(idea_order_from_string("proximity_asc") == IdeaOrder::ProximityAsc);
  CHECK_THROWS_AS(idea_order_from_string("newest"), IdeationError);
}

TEST_CASE("template rendering") {
  CHECK(render_idea(Heuristic::Combination, "data collection", "rolling toy") ==
        "Combine data collection with rolling toy");
  CHECK(render_idea(Heuristic::Analogy, "composite concrete layer", "water seepage in subway tunnels") ==
        "Adopt composite concrete layer to solve water seepage in subway tunnels");
  CHECK(render_idea(Heuristic::Analogy, "a composite concrete layer", "water seepage in subway tunnels") ==
        "Adopt a composite concrete layer to solve water seepage in subway tunnels");
  CHECK(render_idea(Heuristic::Combination, "x", "y") == "Combine x with y");
  CHECK_THROWS_AS(render_idea(Heuristic::Combination, "", "y"), IdeationError);
  CHECK_THROWS_AS(render_idea(Heuristic::Analogy, "x", ""), IdeationError);

  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    std::string s(1 + rng() % 12, 'a'), t(1 + rng() % 12, 'a');
    for (auto& ch : s) ch = static_cast<char>('a' + rng() % 26);
    for (auto& ch : t) ch = static_cast<char>(' ' + rng() % 90);
    for (Heuristic h : {Heuristic::Combination, Heuristic::Analogy}) {
      const auto out = render_idea(h, s, t);
      CHECK(out.find(s) != std::string::npos);
      CHECK(out.find(t) != std::string::npos);
    }
  }
}
