#include "atlas/terms.hpp"

#include <algorithm>
#include <cmath>

#include "atlas/hash.hpp"
#include "atlas/text.hpp"
#include "parallel.hpp"

namespace atlas {
namespace {

constexpr std::size_t kMaxPhraseTokens = 6;

void emit_run(const std::vector<std::string>& tokens, std::size_t begin, std::size_t end,
              std::vector<std::string>& out) {
  const std::size_t length = end - begin;
  if (length == 0) return;
  if (length >= 2) {
    const std::size_t window = std::min(length, kMaxPhraseTokens);
    for (std::size_t start = begin; start + window <= end; ++start) {
      out.push_back(join_tokens(tokens, start, window));
    }
  }
  for (std::size_t i = begin; i < end; ++i) out.push_back(tokens[i]);
}

void add_terms(std::string_view text, const StopwordList& stopwords, TermCounts& counts) {
  for (auto& term : extract_terms(text, stopwords)) ++counts[std::move(term)];
}

}  // namespace

StopwordList StopwordList::from_text(std::string_view text) {
  StopwordList list;
  list.text_ = std::string(text);
  list.sha256_ = sha256_hex(text);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string word = trim(text.substr(pos, end - pos));
    if (!word.empty() && word[0] != '#') list.words_.insert(to_lower_ascii(word));
    pos = end + 1;
  }
  return list;
}

StopwordList StopwordList::from_file(const std::filesystem::path& path) {
  return from_text(read_file(path));
}

std::filesystem::path default_stopwords_path() {
  return std::filesystem::path(ATLAS_DATA_DIR) / "stopwords.txt";
}

std::vector<std::string> extract_terms(std::string_view text, const StopwordList& stopwords) {
  const std::vector<std::string> tokens = tokenize(text);
  std::vector<std::string> out;
  std::size_t run_start = 0;
  for (std::size_t i = 0; i <= tokens.size(); ++i) {
    if (i == tokens.size() || stopwords.contains(tokens[i])) {
      emit_run(tokens, run_start, i, out);
      run_start = i + 1;
    }
  }
  return out;
}

TermProfile term_frequencies(std::span<const std::string> ids, const CorpusIndex& index,
                             const StopwordList& stopwords) {
  TermProfile profile;
  for (const auto& id : ids) {
    const PatentRecord* record = index.find(id);
    if (!record) throw TermError("unknown patent id '" + id + "'");
    add_terms(record->title, stopwords, profile.counts);
    add_terms(record->abstract_text, stopwords, profile.counts);
  }
  return profile;
}

DocFreqRegistry DocFreqRegistry::from_profiles(
    Level level, const std::map<std::string, TermCounts, std::less<>>& fields) {
  TermCounts df;
  for (const auto& [field, counts] : fields) {
    for (const auto& [term, count] : counts) {
      if (count > 0) ++df[term];
    }
  }
  return DocFreqRegistry(level, fields.size(), std::move(df));
}

std::uint64_t DocFreqRegistry::df(std::string_view term) const {
  auto it = df_.find(term);
  return it == df_.end() ? 0 : it->second;
}

std::map<std::string, TermCounts, std::less<>> field_term_profiles(const CorpusIndex& index,
                                                                   Level level,
                                                                   const StopwordList& stopwords) {
  // Extract once per patent, then fold each field's members in id order.
  const auto records = index.records();
  std::vector<TermCounts> per_patent(records.size());
  detail::parallel_for(records.size(), [&](std::size_t i) {
    add_terms(records[i].title, stopwords, per_patent[i]);
    add_terms(records[i].abstract_text, stopwords, per_patent[i]);
  }, 64);
  std::map<std::string_view, std::size_t> ordinal;
  for (std::size_t i = 0; i < records.size(); ++i) ordinal.emplace(records[i].id, i);

  std::map<std::string, TermCounts, std::less<>> out;
  for (const auto& field : index.fields(level)) {
    TermCounts& counts = out[field];
    for (const auto& id : index.members(level, field)) {
      for (const auto& [term, count] : per_patent[ordinal.at(id)]) counts[term] += count;
    }
  }
  return out;
}

std::string_view to_string(RankMode mode) {
  return mode == RankMode::Frequency ? "frequency" : "tfidf";
}

RankMode rank_mode_from_string(std::string_view text) {
  if (text == "frequency") return RankMode::Frequency;
  if (text == "tfidf") return RankMode::Tfidf;
  throw TermError("unknown ranking mode '" + std::string(text) + "'");
}

std::vector<ScoredTerm> rank_terms(const TermProfile& profile, RankMode mode, std::size_t k,
                                   const DocFreqRegistry* registry) {
  if (mode == RankMode::Tfidf && registry == nullptr) {
    throw TermError("tfidf ranking requires a document-frequency registry");
  }
  std::vector<ScoredTerm> scored;
  scored.reserve(profile.counts.size());
  for (const auto& [term, count] : profile.counts) {
    double score = static_cast<double>(count);
    if (mode == RankMode::Tfidf) {
      const double df = static_cast<double>(std::max<std::uint64_t>(1, registry->df(term)));
      score *= std::log(static_cast<double>(registry->field_count()) / df);
    }
    scored.push_back({term, score});
  }
  const std::size_t take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take),
                    scored.end(), [](const ScoredTerm& a, const ScoredTerm& b) {
                      if (a.score != b.score) return a.score > b.score;
                      return a.term < b.term;
                    });
  scored.resize(take);
  return scored;
}

}  // namespace atlas
