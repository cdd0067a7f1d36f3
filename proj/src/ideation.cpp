#include "atlas/ideation.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "atlas/hash.hpp"
#include "json.hpp"

namespace atlas {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(Heuristic heuristic) {
  return heuristic == Heuristic::Combination ? "combination" : "analogy";
}

std::string_view to_string(StimulusKind kind) {
  switch (kind) {
    case StimulusKind::Term: return "term";
    case StimulusKind::Document: return "document";
    case StimulusKind::Field: return "field";
  }
  return "term";
}

Heuristic heuristic_from_string(std::string_view text) {
  if (text == "combination") return Heuristic::Combination;
  if (text == "analogy") return Heuristic::Analogy;
  throw IdeationError("heuristic must be 'combination' or 'analogy', got '" + std::string(text) +
                      "'");
}

StimulusKind stimulus_kind_from_string(std::string_view text) {
  if (text == "term") return StimulusKind::Term;
  if (text == "document") return StimulusKind::Document;
  if (text == "field") return StimulusKind::Field;
  throw IdeationError("stimulus kind must be term, document or field, got '" +
                      std::string(text) + "'");
}

std::string serialize_idea(const IdeaRecord& record) {
  ordered_json doc;
  doc["idea_id"] = record.idea_id;
  doc["created_at"] = record.created_at;
  doc["heuristic"] = to_string(record.heuristic);
  doc["stimulus_text"] = record.stimulus_text;
  doc["stimulus_kind"] = to_string(record.stimulus_kind);
  doc["source_field"] = record.source_field;
  doc["target_query"] = record.target_query;
  doc["omega"] = record.omega;
  doc["idea_text"] = record.idea_text;
  doc["artifact_hash"] = record.artifact_hash;
  return doc.dump();
}

IdeaRecord parse_idea(std::string_view line) {
  try {
    const auto doc = ordered_json::parse(line);
    IdeaRecord record;
    record.idea_id = doc.at("idea_id").get<std::string>();
    record.created_at = doc.at("created_at").get<std::string>();
    record.heuristic = heuristic_from_string(doc.at("heuristic").get<std::string>());
    record.stimulus_text = doc.at("stimulus_text").get<std::string>();
    record.stimulus_kind = stimulus_kind_from_string(doc.at("stimulus_kind").get<std::string>());
    record.source_field = doc.at("source_field").get<std::string>();
    record.target_query = doc.at("target_query").get<std::string>();
    record.omega = doc.at("omega").get<double>();
    record.idea_text = doc.at("idea_text").get<std::string>();
    record.artifact_hash = doc.value("artifact_hash", "");
    return record;
  } catch (const nlohmann::json::exception& e) {
    throw IdeationError(std::string("malformed idea record: ") + e.what());
  }
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const auto millis =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  const std::time_t seconds = std::chrono::system_clock::to_time_t(now);
  std::tm utc{};
  gmtime_r(&seconds, &utc);
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", utc.tm_year + 1900,
                utc.tm_mon + 1, utc.tm_mday, utc.tm_hour, utc.tm_min, utc.tm_sec,
                static_cast<int>(millis));
  return buffer;
}

IdeaLedger::IdeaLedger(std::filesystem::path file, std::string artifact_hash, Clock clock)
    : file_(std::move(file)), artifact_hash_(std::move(artifact_hash)), clock_(std::move(clock)) {
  if (file_.empty() || !std::filesystem::exists(file_)) return;
  const std::string text = read_file(file_);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    if (!line.empty()) records_.push_back(parse_idea(line));
    pos = end + 1;
  }
}

IdeaRecord IdeaLedger::record(const IdeaDraft& draft, const DomainPosition& position,
                              const ProximityMatrix& matrix) {
  if (draft.stimulus_text.empty()) throw IdeationError("stimulus text is empty");
  if (draft.idea_text.empty()) throw IdeationError("idea text is empty");
  if (draft.target_query != position.query) {
    throw IdeationError("position was computed for '" + position.query + "', not '" +
                        draft.target_query + "'");
  }
  if (!position.positioned()) {
    throw IdeationError("target '" + draft.target_query + "' is unpositioned (no matches)");
  }
  if (!matrix.index_of(draft.source_field) || matrix.level() != position.level) {
    throw IdeationError("unknown source field '" + draft.source_field + "' at level " +
                        std::to_string(to_int(position.level)));
  }

  IdeaRecord record;
  record.heuristic = draft.heuristic;
  record.stimulus_text = draft.stimulus_text;
  record.stimulus_kind = draft.stimulus_kind;
  record.source_field = draft.source_field;
  record.target_query = draft.target_query;
  record.idea_text = draft.idea_text;
  record.artifact_hash = artifact_hash_;
  try {
    record.omega = domain_proximity(matrix, position.x, draft.source_field);
  } catch (const ProximityError& e) {
    throw IdeationError(e.what());
  }

  std::unique_lock lock(mutex_);
  char id[32];
  std::snprintf(id, sizeof(id), "idea-%06zu", records_.size() + 1);
  record.idea_id = id;
  record.created_at = clock_();
  if (!file_.empty()) {
    std::ofstream out(file_, std::ios::binary | std::ios::app);
    out << serialize_idea(record) << '\n';
    out.flush();
    if (!out) throw IdeationError("cannot append to ledger " + file_.string());
  }
  records_.push_back(record);
  return record;
}

std::vector<IdeaRecord> IdeaLedger::snapshot() const {
  std::shared_lock lock(mutex_);
  return records_;
}

std::size_t IdeaLedger::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

IdeaOrder idea_order_from_string(std::string_view text) {
  if (text == "proximity_desc") return IdeaOrder::ProximityDesc;
  if (text == "proximity_asc") return IdeaOrder::ProximityAsc;
  throw IdeationError("order must be proximity_desc or proximity_asc, got '" + std::string(text) +
                      "'");
}

std::vector<IdeaRecord> rank_ideas(std::span<const IdeaRecord> ideas, IdeaOrder order) {
  std::vector<IdeaRecord> ranked(ideas.begin(), ideas.end());
  std::sort(ranked.begin(), ranked.end(), [order](const IdeaRecord& a, const IdeaRecord& b) {
    if (a.omega != b.omega) {
      return order == IdeaOrder::ProximityDesc ? a.omega > b.omega : a.omega < b.omega;
    }
    if (a.created_at != b.created_at) return a.created_at < b.created_at;
    return a.idea_id < b.idea_id;
  });
  return ranked;
}

std::string render_idea(Heuristic heuristic, std::string_view stimulus_text,
                        std::string_view target_text) {
  if (stimulus_text.empty()) throw IdeationError("stimulus text is empty");
  if (target_text.empty()) throw IdeationError("target text is empty");
  std::string out = heuristic == Heuristic::Combination ? "Combine " : "Adopt ";
  out += stimulus_text;
  out += heuristic == Heuristic::Combination ? " with " : " to solve ";
  out += target_text;
  return out;
}

}  // namespace atlas
