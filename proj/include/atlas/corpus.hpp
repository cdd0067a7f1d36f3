#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace atlas {

// Granularity of a technology field: 3-character IPC classes (B60) or
// 4-character subclasses (B60K).
enum class Level : int { Class = 3, Subclass = 4 };

Level level_from_int(int value);
inline int to_int(Level level) { return static_cast<int>(level); }

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One IPC classification symbol such as "B60K 7/00".
///
/// Grammar: section letter A-H, two digits, one subclass letter, then an
/// optional group suffix ("7/00") that is kept verbatim but never used for
/// field assignment. Input is case-insensitive and stored uppercased.
struct IpcCode {
  char section = 'A';
  std::string class3;
  std::string subclass4;
  std::string remainder;

  static IpcCode parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const IpcCode&, const IpcCode&) = default;
};

std::string field_of(const IpcCode& code, Level level);

// True if `code` is syntactically a field code at `level` ("B60" / "B60K").
bool is_field_code(std::string_view code, Level level);

struct PatentRecord {
  std::string id;
  std::string title;
  std::string abstract_text;
  std::string grant_date;  // YYYY, YYYY-MM or YYYY-MM-DD; empty when unknown
  std::vector<IpcCode> ipc_codes;
  std::vector<std::string> cited_ids;
  std::vector<std::string> inventors;
  std::vector<std::string> assignees;

  // Distinct fields at `level`, sorted.
  std::vector<std::string> fields(Level level) const;

  friend bool operator==(const PatentRecord&, const PatentRecord&) = default;
};

// Parses one JSON-lines corpus record and applies normalization (trimmed
// text and ids, duplicate and self citations dropped). `line_number` only
// decorates error messages.
PatentRecord parse_record(std::string_view line, std::size_t line_number = 0);

// Canonical single-line form of a record; parse_record(serialize_record(r)) == r.
std::string serialize_record(const PatentRecord& record);

// Reads a whole corpus file. Every bad line is collected and reported in one
// CorpusError; blank lines are skipped.
std::vector<PatentRecord> read_corpus(const std::filesystem::path& path);
std::vector<PatentRecord> parse_corpus(std::string_view text);

/// Immutable index over a patent corpus.
///
/// Records are held in id order regardless of the order they were supplied,
/// so two builds over permutations of the same records are identical. A
/// patent with k distinct fields at a level is a member of k fields.
/// Citation counts only consider citing records inside the corpus; ids cited
/// but absent from the corpus are simply never looked up here.
class CorpusIndex {
 public:
  CorpusIndex() = default;

  // Throws CorpusError on duplicate ids, naming both occurrences.
  static CorpusIndex build(std::vector<PatentRecord> records);

  std::span<const PatentRecord> records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  const PatentRecord* find(std::string_view id) const;
  const PatentRecord& at(std::string_view id) const;  // throws CorpusError

  // Sorted field codes present at the level.
  const std::vector<std::string>& fields(Level level) const;
  bool has_field(Level level, std::string_view field) const;

  // Sorted ids of the patents classified in `field`; empty for unknown fields.
  std::span<const std::string> members(Level level, std::string_view field) const;

  // In-corpus citations received by `id`.
  std::size_t citation_count(std::string_view id) const;
  const std::map<std::string, std::size_t, std::less<>>& citation_counts() const {
    return citation_counts_;
  }

  // Ids (sorted) of records whose title or abstract contains `phrase` as a
  // contiguous run of tokens. Phrases never span the title/abstract boundary.
  std::vector<std::string> match_phrase(std::span<const std::string> phrase) const;

  // Deterministic dump of every index structure; byte-equal for equal indexes.
  std::string canonical_serialization() const;

 private:
  struct Posting {
    std::uint32_t doc;
    std::uint32_t position;
    friend auto operator<=>(const Posting&, const Posting&) = default;
  };

  std::size_t level_slot(Level level) const { return level == Level::Class ? 0 : 1; }

  std::vector<PatentRecord> records_;
  std::map<std::string, std::uint32_t, std::less<>> ordinal_;
  std::vector<std::string> fields_[2];
  std::map<std::string, std::vector<std::string>, std::less<>> members_[2];
  std::map<std::string, std::size_t, std::less<>> citation_counts_;
  std::map<std::string, std::vector<Posting>, std::less<>> text_index_;
};

}  // namespace atlas
