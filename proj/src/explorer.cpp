#include "atlas/explorer.hpp"

#include <algorithm>
#include <iterator>

#include "atlas/text.hpp"

namespace atlas {

std::vector<std::vector<std::string>> parse_query(std::string_view query) {
  std::vector<std::vector<std::string>> phrases;
  auto flush = [&](std::string_view segment) {
    auto tokens = tokenize(segment);
    if (!tokens.empty()) phrases.push_back(std::move(tokens));
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i < query.size(); ++i) {
    if (query[i] != '"') continue;
    flush(query.substr(start, i - start));
    start = i + 1;
  }
  flush(query.substr(start));
  return phrases;
}

DomainPosition position_domain(const CorpusIndex& index, std::string_view query, Level level) {
  const auto phrases = parse_query(query);
  if (phrases.empty()) throw ExplorerError("query has no searchable tokens");

  DomainPosition position;
  position.query = std::string(query);
  position.level = level;
  position.matched_ids = index.match_phrase(phrases.front());
  for (std::size_t p = 1; p < phrases.size() && !position.matched_ids.empty(); ++p) {
    const auto next = index.match_phrase(phrases[p]);
    std::vector<std::string> both;
    std::set_intersection(position.matched_ids.begin(), position.matched_ids.end(), next.begin(),
                          next.end(), std::back_inserter(both));
    position.matched_ids = std::move(both);
  }

  for (const auto& id : position.matched_ids) {
    for (const auto& field : index.at(id).fields(level)) ++position.x[field];
  }
  for (const auto& field : index.fields(level)) {
    (position.x.contains(field) ? position.red_fields : position.white_fields).push_back(field);
  }
  return position;
}

std::vector<NearbyEntry> rank_nearby(const DomainPosition& position, const ProximityMatrix& matrix,
                                     std::size_t k) {
  if (!position.positioned()) {
    throw ExplorerError("target domain '" + position.query + "' is unpositioned (no matches)");
  }
  if (matrix.level() != position.level) {
    throw ExplorerError("proximity matrix and position are at different levels");
  }
  std::vector<NearbyEntry> entries;
  entries.reserve(position.white_fields.size());
  for (const auto& field : position.white_fields) {
    entries.push_back({field, domain_proximity(matrix, position.x, field)});
  }
  const std::size_t take = std::min(k, entries.size());
  std::partial_sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(take),
                    entries.end(), [](const NearbyEntry& a, const NearbyEntry& b) {
                      if (a.omega != b.omega) return a.omega > b.omega;
                      return a.field < b.field;
                    });
  entries.resize(take);
  return entries;
}

std::vector<RankedPatent> top_patents(const CorpusIndex& index, std::span<const std::string> scope,
                                      PatentSort sort, std::size_t k) {
  std::vector<RankedPatent> ranked;
  ranked.reserve(scope.size());
  for (const auto& id : scope) {
    const PatentRecord& record = index.at(id);
    ranked.push_back({record.id, record.title, record.grant_date, index.citation_count(id)});
  }
  auto before = [sort](const RankedPatent& a, const RankedPatent& b) {
    if (sort == PatentSort::Citations) {
      if (a.citations != b.citations) return a.citations > b.citations;
    } else if (a.grant_date != b.grant_date) {
      // Dates are ISO prefixes, so lexicographic order is chronological;
      // an empty date sorts after every real one.
      return a.grant_date > b.grant_date;
    }
    return a.id < b.id;
  };
  const std::size_t take = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take),
                    ranked.end(), before);
  ranked.resize(take);
  return ranked;
}

std::vector<ActorCount> top_actors(const CorpusIndex& index, std::span<const std::string> scope,
                                   ActorKind kind, std::size_t k) {
  std::map<std::string, std::size_t> tally;
  for (const auto& id : scope) {
    const PatentRecord& record = index.at(id);
    auto names = kind == ActorKind::Inventor ? record.inventors : record.assignees;
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    for (auto& name : names) ++tally[std::move(name)];
  }
  std::vector<ActorCount> ranked;
  for (auto& [name, count] : tally) ranked.push_back({name, count});
  const std::size_t take = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take),
                    ranked.end(), [](const ActorCount& a, const ActorCount& b) {
                      if (a.count != b.count) return a.count > b.count;
                      return a.name < b.name;
                    });
  ranked.resize(take);
  return ranked;
}

std::string_view to_string(PanelScope scope) {
  return scope == PanelScope::AllFieldPatents ? "all-field-patents" : "query-filtered";
}

FieldPanel field_panel(const CorpusIndex& index, const StopwordList& stopwords,
                       const DomainPosition* position, Level level, std::string_view field,
                       const PanelOptions& options) {
  if (!is_field_code(field, level)) {
    throw ExplorerError("unknown field '" + std::string(field) + "' at level " +
                        std::to_string(to_int(level)));
  }
  if (position && position->level != level) {
    throw ExplorerError("position and panel are at different levels");
  }

  FieldPanel panel;
  panel.field = std::string(field);
  panel.level = level;
  const auto members = index.members(level, field);
  if (position && position->is_red(field)) {
    panel.scope = PanelScope::QueryFiltered;
    std::set_intersection(members.begin(), members.end(), position->matched_ids.begin(),
                          position->matched_ids.end(), std::back_inserter(panel.scope_ids));
  } else {
    panel.scope_ids.assign(members.begin(), members.end());
  }

  TermProfile profile = term_frequencies(panel.scope_ids, index, stopwords);
  profile.scope = panel.field;
  panel.top_terms = rank_terms(profile, options.mode, options.k_terms, options.registry);
  panel.patents_by_citations =
      top_patents(index, panel.scope_ids, PatentSort::Citations, options.k_patents);
  panel.patents_by_recency =
      top_patents(index, panel.scope_ids, PatentSort::Recency, options.k_patents);
  panel.top_inventors = top_actors(index, panel.scope_ids, ActorKind::Inventor, options.k_patents);
  panel.top_assignees = top_actors(index, panel.scope_ids, ActorKind::Assignee, options.k_patents);
  return panel;
}

FieldNames FieldNames::from_text(std::string_view text) {
  FieldNames names;
  names.text_ = std::string(text);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) continue;
    names.names_.emplace(trim(line.substr(0, tab)), trim(line.substr(tab + 1)));
  }
  return names;
}

std::optional<std::string> FieldNames::lookup(std::string_view code) const {
  auto it = names_.find(code);
  if (it == names_.end()) return std::nullopt;
  return it->second;
}

std::string default_field_names_path() { return std::string(ATLAS_DATA_DIR) + "/ipc_names.tsv"; }

}  // namespace atlas
