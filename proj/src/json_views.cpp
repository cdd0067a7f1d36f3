#include "atlas/json_views.hpp"

namespace atlas {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json name_or_null(const FieldNames& names, std::string_view code) {
  auto name = names.lookup(code);
  return name ? ordered_json(*name) : ordered_json(nullptr);
}

}  // namespace

ordered_json to_json(const PatentRecord& record) {
  return ordered_json::parse(serialize_record(record));
}

ordered_json to_json(const DomainPosition& position) {
  ordered_json x = ordered_json::object();
  for (const auto& [field, count] : position.x) x[field] = count;
  ordered_json doc;
  doc["query"] = position.query;
  doc["level"] = to_int(position.level);
  doc["positioned"] = position.positioned();
  doc["match_count"] = position.matched_ids.size();
  doc["matched_ids"] = position.matched_ids;
  doc["x"] = std::move(x);
  doc["red_fields"] = position.red_fields;
  doc["white_fields"] = position.white_fields;
  return doc;
}

ordered_json to_json(const DomainPosition& position, std::span<const NearbyEntry> entries,
                     const FieldNames& names) {
  ordered_json list = ordered_json::array();
  for (const auto& entry : entries) {
    ordered_json row;
    row["field"] = entry.field;
    row["name"] = name_or_null(names, entry.field);
    row["omega"] = entry.omega;
    list.push_back(std::move(row));
  }
  ordered_json doc;
  doc["query"] = position.query;
  doc["level"] = to_int(position.level);
  doc["entries"] = std::move(list);
  return doc;
}

ordered_json to_json(const FieldPanel& panel, const FieldNames& names,
                     const DomainPosition* position) {
  auto patents = [](const std::vector<RankedPatent>& list, bool with_citations) {
    ordered_json out = ordered_json::array();
    for (const auto& p : list) {
      ordered_json row;
      row["id"] = p.id;
      row["title"] = p.title;
      if (with_citations) {
        row["citations"] = p.citations;
      } else {
        row["grant_date"] = p.grant_date;
      }
      out.push_back(std::move(row));
    }
    return out;
  };
  auto actors = [](const std::vector<ActorCount>& list) {
    ordered_json out = ordered_json::array();
    for (const auto& a : list) out.push_back(ordered_json{{"name", a.name}, {"count", a.count}});
    return out;
  };
  ordered_json terms = ordered_json::array();
  for (const auto& t : panel.top_terms) terms.push_back(ordered_json{{"term", t.term}, {"score", t.score}});

  ordered_json doc;
  doc["field"] = panel.field;
  doc["name"] = name_or_null(names, panel.field);
  doc["level"] = to_int(panel.level);
  doc["scope"] = to_string(panel.scope);
  doc["query"] = position ? ordered_json(position->query) : ordered_json(nullptr);
  doc["scope_size"] = panel.scope_ids.size();
  doc["top_terms"] = std::move(terms);
  doc["patents_by_citations"] = patents(panel.patents_by_citations, true);
  doc["patents_by_recency"] = patents(panel.patents_by_recency, false);
  doc["top_inventors"] = actors(panel.top_inventors);
  doc["top_assignees"] = actors(panel.top_assignees);
  return doc;
}

ordered_json to_json(const IdeaRecord& record) {
  return ordered_json::parse(serialize_idea(record));
}

ordered_json to_json(std::span<const IdeaRecord> ideas, IdeaOrder order) {
  ordered_json list = ordered_json::array();
  for (const auto& idea : ideas) list.push_back(to_json(idea));
  ordered_json doc;
  doc["order"] = order == IdeaOrder::ProximityDesc ? "proximity_desc" : "proximity_asc";
  doc["ideas"] = std::move(list);
  return doc;
}

}  // namespace atlas
