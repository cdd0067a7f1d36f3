#include "atlas/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "atlas/hash.hpp"
#include "atlas/text.hpp"
#include "json.hpp"

namespace atlas {
namespace {

using nlohmann::json;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

char upper(char c) { return static_cast<char>(std::toupper(static_cast<unsigned char>(c))); }

std::string line_prefix(std::size_t line_number) {
  return line_number ? "line " + std::to_string(line_number) + ": " : std::string{};
}

bool valid_date(std::string_view date) {
  if (date.empty()) return true;
  auto digits = [&](std::size_t pos, std::size_t n) {
    for (std::size_t i = pos; i < pos + n; ++i) {
      if (i >= date.size() || !is_digit(date[i])) return false;
    }
    return true;
  };
  auto number = [&](std::size_t pos) { return (date[pos] - '0') * 10 + (date[pos + 1] - '0'); };
  if (date.size() != 4 && date.size() != 7 && date.size() != 10) return false;
  if (!digits(0, 4)) return false;
  if (date.size() >= 7) {
    if (date[4] != '-' || !digits(5, 2)) return false;
    int month = number(5);
    if (month < 1 || month > 12) return false;
  }
  if (date.size() == 10) {
    if (date[7] != '-' || !digits(8, 2)) return false;
    int day = number(8);
    if (day < 1 || day > 31) return false;
  }
  return true;
}

std::vector<std::string> string_list(const json& doc, const char* key, std::size_t line_number) {
  std::vector<std::string> out;
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return out;
  if (!it->is_array()) {
    throw CorpusError(line_prefix(line_number) + "'" + key + "' must be an array of strings");
  }
  for (const auto& item : *it) {
    if (!item.is_string()) {
      throw CorpusError(line_prefix(line_number) + "'" + key + "' must be an array of strings");
    }
    std::string value = trim(item.get<std::string>());
    if (!value.empty()) out.push_back(std::move(value));
  }
  return out;
}

std::string string_field(const json& doc, const char* key, std::size_t line_number) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return {};
  if (!it->is_string()) {
    throw CorpusError(line_prefix(line_number) + "'" + key + "' must be a string");
  }
  return trim(it->get<std::string>());
}

void dedupe_in_order(std::vector<std::string>& values) {
  std::set<std::string> seen;
  std::vector<std::string> kept;
  kept.reserve(values.size());
  for (auto& value : values) {
    if (seen.insert(value).second) kept.push_back(std::move(value));
  }
  values = std::move(kept);
}

}  // namespace

Level level_from_int(int value) {
  if (value == 3) return Level::Class;
  if (value == 4) return Level::Subclass;
  throw std::invalid_argument("level must be 3 or 4, got " + std::to_string(value));
}

IpcCode IpcCode::parse(std::string_view text) {
  const std::string code = trim(text);
  auto fail = [&](const std::string& why) {
    throw CorpusError("invalid IPC code '" + code + "': " + why);
  };
  if (code.empty()) fail("empty");
  const char section = upper(code[0]);
  if (section < 'A' || section > 'H') fail(std::string("invalid section '") + code[0] + "'");
  if (code.size() < 3 || !is_digit(code[1]) || !is_digit(code[2])) {
    fail("class must be two digits after the section");
  }
  if (code.size() < 4 || !std::isalpha(static_cast<unsigned char>(code[3]))) {
    fail("missing subclass letter");
  }
  IpcCode out;
  out.section = section;
  out.class3 = {section, code[1], code[2]};
  out.subclass4 = out.class3 + upper(code[3]);
  out.remainder = trim(std::string_view(code).substr(4));
  if (!out.remainder.empty() && std::isalnum(static_cast<unsigned char>(code[4])) &&
      !is_digit(code[4])) {
    fail("unexpected character after subclass");
  }
  return out;
}

std::string IpcCode::to_string() const {
  return remainder.empty() ? subclass4 : subclass4 + " " + remainder;
}

std::string field_of(const IpcCode& code, Level level) {
  return level == Level::Class ? code.class3 : code.subclass4;
}

bool is_field_code(std::string_view code, Level level) {
  const std::size_t expected = level == Level::Class ? 3 : 4;
  if (code.size() != expected) return false;
  if (code[0] < 'A' || code[0] > 'H' || !is_digit(code[1]) || !is_digit(code[2])) return false;
  return level == Level::Class || (code[3] >= 'A' && code[3] <= 'Z');
}

std::vector<std::string> PatentRecord::fields(Level level) const {
  std::vector<std::string> out;
  out.reserve(ipc_codes.size());
  for (const auto& code : ipc_codes) out.push_back(field_of(code, level));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PatentRecord parse_record(std::string_view line, std::size_t line_number) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error& e) {
    throw CorpusError(line_prefix(line_number) + "malformed record: " + e.what());
  }
  if (!doc.is_object()) throw CorpusError(line_prefix(line_number) + "record must be an object");

  PatentRecord record;
  record.id = string_field(doc, "id", line_number);
  if (record.id.empty()) throw CorpusError(line_prefix(line_number) + "missing id");
  record.title = string_field(doc, "title", line_number);
  if (record.title.empty()) {
    throw CorpusError(line_prefix(line_number) + "missing title for '" + record.id + "'");
  }
  record.abstract_text = string_field(doc, "abstract", line_number);
  record.grant_date = string_field(doc, "grant_date", line_number);
  if (!valid_date(record.grant_date)) {
    throw CorpusError(line_prefix(line_number) + "invalid grant_date '" + record.grant_date + "'");
  }

  const auto codes = string_list(doc, "ipc", line_number);
  if (codes.empty()) {
    throw CorpusError(line_prefix(line_number) + "missing ipc codes for '" + record.id + "'");
  }
  for (const auto& text : codes) {
    try {
      record.ipc_codes.push_back(IpcCode::parse(text));
    } catch (const CorpusError& e) {
      throw CorpusError(line_prefix(line_number) + e.what());
    }
  }

  record.cited_ids = string_list(doc, "cited", line_number);
  std::erase(record.cited_ids, record.id);
  dedupe_in_order(record.cited_ids);
  record.inventors = string_list(doc, "inventors", line_number);
  record.assignees = string_list(doc, "assignees", line_number);
  return record;
}

std::string serialize_record(const PatentRecord& record) {
  json codes = json::array();
  for (const auto& code : record.ipc_codes) codes.push_back(code.to_string());
  json doc = {{"id", record.id},
              {"title", record.title},
              {"abstract", record.abstract_text},
              {"grant_date", record.grant_date},
              {"ipc", std::move(codes)},
              {"cited", record.cited_ids},
              {"inventors", record.inventors},
              {"assignees", record.assignees}};
  return doc.dump();
}

std::vector<PatentRecord> parse_corpus(std::string_view text) {
  std::vector<PatentRecord> records;
  std::vector<std::string> errors;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_number;
    std::string_view line = text.substr(pos, end - pos);
    if (!trim(line).empty()) {
      try {
        records.push_back(parse_record(line, line_number));
      } catch (const CorpusError& e) {
        errors.emplace_back(e.what());
      }
    }
    pos = end + 1;
  }
  if (!errors.empty()) {
    std::string report = std::to_string(errors.size()) + " invalid corpus line(s):";
    for (const auto& error : errors) report += "\n  " + error;
    throw CorpusError(report);
  }
  return records;
}

std::vector<PatentRecord> read_corpus(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::runtime_error& e) {
    throw CorpusError(e.what());
  }
  return parse_corpus(text);
}

CorpusIndex CorpusIndex::build(std::vector<PatentRecord> records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const PatentRecord& a, const PatentRecord& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].id == records[i - 1].id) {
      throw CorpusError("duplicate patent id '" + records[i].id + "': \"" + records[i - 1].title +
                        "\" and \"" + records[i].title + "\"");
    }
  }

  CorpusIndex index;
  index.records_ = std::move(records);
  for (std::uint32_t doc = 0; doc < index.records_.size(); ++doc) {
    index.ordinal_.emplace(index.records_[doc].id, doc);
    index.citation_counts_.emplace(index.records_[doc].id, 0);
  }

  for (std::uint32_t doc = 0; doc < index.records_.size(); ++doc) {
    const PatentRecord& record = index.records_[doc];
    for (Level level : {Level::Class, Level::Subclass}) {
      auto& members = index.members_[index.level_slot(level)];
      // Records arrive in id order, so each member list is already sorted.
      for (auto& field : record.fields(level)) members[field].push_back(record.id);
    }
    for (const auto& cited : record.cited_ids) {
      auto it = index.citation_counts_.find(cited);
      if (it != index.citation_counts_.end()) ++it->second;
    }

    std::uint32_t position = 0;
    for (const std::string* text : {&record.title, &record.abstract_text}) {
      for (auto& token : tokenize(*text)) {
        index.text_index_[token].push_back({doc, position++});
      }
      ++position;  // gap keeps phrases from spanning title and abstract
    }
  }

  for (Level level : {Level::Class, Level::Subclass}) {
    const std::size_t slot = index.level_slot(level);
    for (const auto& [field, ids] : index.members_[slot]) index.fields_[slot].push_back(field);
  }
  return index;
}

const PatentRecord* CorpusIndex::find(std::string_view id) const {
  auto it = ordinal_.find(id);
  return it == ordinal_.end() ? nullptr : &records_[it->second];
}

const PatentRecord& CorpusIndex::at(std::string_view id) const {
  const PatentRecord* record = find(id);
  if (!record) throw CorpusError("unknown patent id '" + std::string(id) + "'");
  return *record;
}

const std::vector<std::string>& CorpusIndex::fields(Level level) const {
  return fields_[level_slot(level)];
}

bool CorpusIndex::has_field(Level level, std::string_view field) const {
  return members_[level_slot(level)].contains(field);
}

std::span<const std::string> CorpusIndex::members(Level level, std::string_view field) const {
  const auto& members = members_[level_slot(level)];
  auto it = members.find(field);
  if (it == members.end()) return {};
  return it->second;
}

std::size_t CorpusIndex::citation_count(std::string_view id) const {
  auto it = citation_counts_.find(id);
  return it == citation_counts_.end() ? 0 : it->second;
}

std::vector<std::string> CorpusIndex::match_phrase(std::span<const std::string> phrase) const {
  std::vector<std::string> out;
  if (phrase.empty()) return out;
  std::vector<const std::vector<Posting>*> lists;
  for (const auto& token : phrase) {
    auto it = text_index_.find(token);
    if (it == text_index_.end()) return out;
    lists.push_back(&it->second);
  }
  std::uint32_t last_doc = UINT32_MAX;
  for (const Posting& start : *lists[0]) {
    if (start.doc == last_doc) continue;
    bool matched = true;
    for (std::size_t k = 1; k < lists.size() && matched; ++k) {
      const Posting want{start.doc, start.position + static_cast<std::uint32_t>(k)};
      matched = std::binary_search(lists[k]->begin(), lists[k]->end(), want);
    }
    if (matched) {
      out.push_back(records_[start.doc].id);
      last_doc = start.doc;
    }
  }
  return out;
}

std::string CorpusIndex::canonical_serialization() const {
  json doc;
  json records = json::array();
  for (const auto& record : records_) records.push_back(json::parse(serialize_record(record)));
  doc["records"] = std::move(records);
  for (Level level : {Level::Class, Level::Subclass}) {
    const std::string key = std::to_string(to_int(level));
    doc["fields"][key] = fields_[level_slot(level)];
    doc["members"][key] = members_[level_slot(level)];
  }
  doc["citation_counts"] = citation_counts_;
  json text = json::object();
  for (const auto& [token, postings] : text_index_) {
    json list = json::array();
    for (const auto& p : postings) list.push_back({records_[p.doc].id, p.position});
    text[token] = std::move(list);
  }
  doc["text_index"] = std::move(text);
  return doc.dump();
}

}  // namespace atlas
