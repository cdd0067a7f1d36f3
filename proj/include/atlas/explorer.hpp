#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atlas/corpus.hpp"
#include "atlas/proximity.hpp"
#include "atlas/terms.hpp"

namespace atlas {

class ExplorerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Splits a query into token phrases. Double-quoted segments are phrases; any
// text between them is a phrase of its own. Without quotes the whole query is
// one phrase. A patent matches a query when it matches every phrase.
std::vector<std::vector<std::string>> parse_query(std::string_view query);

/// Where a target domain sits in the technology space.
///
/// `x` holds only fields with at least one matching patent; every other field
/// at the level is white space with an implicit count of zero.
struct DomainPosition {
  std::string query;
  Level level = Level::Class;
  std::vector<std::string> matched_ids;  // sorted
  FieldCounts x;
  std::vector<std::string> red_fields;    // sorted, x_f > 0
  std::vector<std::string> white_fields;  // sorted, the rest

  bool positioned() const { return !red_fields.empty(); }
  bool is_red(std::string_view field) const { return x.contains(field); }
};

// Throws ExplorerError for a query without tokens. A query that matches nothing
// yields an unpositioned domain, with every field white.
DomainPosition position_domain(const CorpusIndex& index, std::string_view query, Level level);

struct NearbyEntry {
  std::string field;
  double omega = 0.0;
  friend bool operator==(const NearbyEntry&, const NearbyEntry&) = default;
};

// The k white-space fields closest to the target, by descending domain
// proximity then field code. Throws ExplorerError for an unpositioned domain.
std::vector<NearbyEntry> rank_nearby(const DomainPosition& position, const ProximityMatrix& matrix,
                                     std::size_t k);

enum class PatentSort { Citations, Recency };
enum class ActorKind { Inventor, Assignee };

struct RankedPatent {
  std::string id;
  std::string title;
  std::string grant_date;
  std::size_t citations = 0;
  friend bool operator==(const RankedPatent&, const RankedPatent&) = default;
};

// Citations: most in-corpus citations first. Recency: latest grant date first
// (undated patents last). Ties by id.
std::vector<RankedPatent> top_patents(const CorpusIndex& index, std::span<const std::string> scope,
                                      PatentSort sort, std::size_t k);

struct ActorCount {
  std::string name;
  std::size_t count = 0;
  friend bool operator==(const ActorCount&, const ActorCount&) = default;
};

// Number of scoped patents naming each inventor or assignee, descending, ties
// by name.
std::vector<ActorCount> top_actors(const CorpusIndex& index, std::span<const std::string> scope,
                                   ActorKind kind, std::size_t k);

enum class PanelScope { AllFieldPatents, QueryFiltered };

std::string_view to_string(PanelScope scope);

struct FieldPanel {
  std::string field;
  Level level = Level::Class;
  PanelScope scope = PanelScope::AllFieldPatents;
  std::vector<std::string> scope_ids;
  std::vector<ScoredTerm> top_terms;
  std::vector<RankedPatent> patents_by_citations;
  std::vector<RankedPatent> patents_by_recency;
  std::vector<ActorCount> top_inventors;
  std::vector<ActorCount> top_assignees;
};

struct PanelOptions {
  std::size_t k_terms = 10;
  std::size_t k_patents = 10;
  RankMode mode = RankMode::Frequency;
  const DocFreqRegistry* registry = nullptr;
};

/// Information panel for one field.
///
/// When `position` is given and the field is red under it, the panel only
/// covers the field's patents that match the query; otherwise it covers all of
/// the field's patents. A syntactically valid field without patents gives an
/// empty panel; a malformed code is an error.
FieldPanel field_panel(const CorpusIndex& index, const StopwordList& stopwords,
                       const DomainPosition* position, Level level, std::string_view field,
                       const PanelOptions& options = {});

// Display names for field codes, from a tab-separated "code<TAB>name" file.
class FieldNames {
 public:
  FieldNames() = default;
  static FieldNames from_text(std::string_view text);
  std::optional<std::string> lookup(std::string_view code) const;
  const std::string& text() const { return text_; }

 private:
  std::map<std::string, std::string, std::less<>> names_;
  std::string text_;
};

std::string default_field_names_path();

}  // namespace atlas
