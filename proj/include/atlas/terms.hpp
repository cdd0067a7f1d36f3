#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atlas/corpus.hpp"

namespace atlas {

class TermError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One lowercase token per line. Blank lines and lines starting with '#' are
// ignored. The hash covers the raw file bytes.
class StopwordList {
 public:
  StopwordList() = default;
  static StopwordList from_text(std::string_view text);
  static StopwordList from_file(const std::filesystem::path& path);

  bool contains(std::string_view token) const { return words_.contains(token); }
  std::size_t size() const { return words_.size(); }
  const std::string& text() const { return text_; }
  const std::string& sha256() const { return sha256_; }

 private:
  std::set<std::string, std::less<>> words_;
  std::string text_;
  std::string sha256_;
};

// Path of the stopword list shipped with the sources.
std::filesystem::path default_stopwords_path();

/// Candidate technical terms of a text, as a multiset in emission order.
///
/// Stopwords split the token stream into runs. A run of 2 to 6 tokens yields
/// the whole run as a phrase; a longer run yields every 6-token window; every
/// token of a run is also emitted as a unigram. A single-token run is emitted
/// once.
std::vector<std::string> extract_terms(std::string_view text, const StopwordList& stopwords);

using TermCounts = std::map<std::string, std::uint64_t, std::less<>>;

struct TermProfile {
  std::string scope;  // field code, or a description of an explicit id set
  TermCounts counts;
};

// Occurrence counts of extract_terms over the titles and abstracts of `ids`.
// Throws TermError naming the first unknown id.
TermProfile term_frequencies(std::span<const std::string> ids, const CorpusIndex& index,
                             const StopwordList& stopwords);

/// Number of fields (at one level) whose patents mention each term.
class DocFreqRegistry {
 public:
  DocFreqRegistry() = default;
  DocFreqRegistry(Level level, std::size_t field_count, TermCounts df)
      : level_(level), field_count_(field_count), df_(std::move(df)) {}

  // One registry entry per term over the per-field profiles.
  static DocFreqRegistry from_profiles(Level level,
                                       const std::map<std::string, TermCounts, std::less<>>& fields);

  Level level() const { return level_; }
  std::size_t field_count() const { return field_count_; }
  std::uint64_t df(std::string_view term) const;
  const TermCounts& entries() const { return df_; }

 private:
  Level level_ = Level::Class;
  std::size_t field_count_ = 0;
  TermCounts df_;
};

// Per-field profiles for every field at `level`.
std::map<std::string, TermCounts, std::less<>> field_term_profiles(const CorpusIndex& index,
                                                                   Level level,
                                                                   const StopwordList& stopwords);

enum class RankMode { Frequency, Tfidf };

std::string_view to_string(RankMode mode);
RankMode rank_mode_from_string(std::string_view text);

struct ScoredTerm {
  std::string term;
  double score = 0.0;
  friend bool operator==(const ScoredTerm&, const ScoredTerm&) = default;
};

// Frequency: score = count. Tfidf: score = count * ln(N / df), where a term the
// registry has never seen is treated as df = 1. Descending score, then term.
std::vector<ScoredTerm> rank_terms(const TermProfile& profile, RankMode mode, std::size_t k,
                                   const DocFreqRegistry* registry = nullptr);

}  // namespace atlas
