#pragma once

#include <filesystem>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atlas/explorer.hpp"
#include "atlas/proximity.hpp"

namespace atlas {

class IdeationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Heuristic { Combination, Analogy };
enum class StimulusKind { Term, Document, Field };

std::string_view to_string(Heuristic heuristic);
std::string_view to_string(StimulusKind kind);
Heuristic heuristic_from_string(std::string_view text);
StimulusKind stimulus_kind_from_string(std::string_view text);

struct IdeaDraft {
  Heuristic heuristic = Heuristic::Combination;
  std::string stimulus_text;
  StimulusKind stimulus_kind = StimulusKind::Term;
  std::string source_field;
  std::string target_query;
  std::string idea_text;
};

struct IdeaRecord {
  std::string idea_id;
  std::string created_at;  // ISO-8601 UTC
  Heuristic heuristic = Heuristic::Combination;
  std::string stimulus_text;
  StimulusKind stimulus_kind = StimulusKind::Term;
  std::string source_field;
  std::string target_query;
  double omega = 0.0;  // frozen at creation
  std::string idea_text;
  std::string artifact_hash;  // manifest hash of the index the omega came from

  friend bool operator==(const IdeaRecord&, const IdeaRecord&) = default;
};

// One JSON object per line with keys in a fixed order.
std::string serialize_idea(const IdeaRecord& record);
IdeaRecord parse_idea(std::string_view line);

std::string utc_timestamp();

/// Append-only store of captured ideas, optionally backed by a JSON-lines file.
///
/// Appends are serialized; readers take a snapshot of a consistent prefix.
/// Records already in the file are loaded on construction and never rewritten.
class IdeaLedger {
 public:
  using Clock = std::function<std::string()>;

  // An empty path keeps the ledger in memory only.
  explicit IdeaLedger(std::filesystem::path file = {}, std::string artifact_hash = {},
                      Clock clock = utc_timestamp);

  // Computes omega of the draft's source field relative to `position` and
  // appends the record. The position must be the target query's position at
  // the source field's level.
  IdeaRecord record(const IdeaDraft& draft, const DomainPosition& position,
                    const ProximityMatrix& matrix);

  std::vector<IdeaRecord> snapshot() const;
  std::size_t size() const;
  const std::filesystem::path& path() const { return file_; }

 private:
  std::filesystem::path file_;
  std::string artifact_hash_;
  Clock clock_;
  mutable std::shared_mutex mutex_;
  std::vector<IdeaRecord> records_;
};

enum class IdeaOrder { ProximityDesc, ProximityAsc };

IdeaOrder idea_order_from_string(std::string_view text);

// Sorted by omega in the requested direction; ties by created_at, then idea_id.
std::vector<IdeaRecord> rank_ideas(std::span<const IdeaRecord> ideas, IdeaOrder order);

// "Combine {stimulus} with {target}" or "Adopt {stimulus} to solve {target}",
// interpolated verbatim.
std::string render_idea(Heuristic heuristic, std::string_view stimulus_text,
                        std::string_view target_text);

}  // namespace atlas
