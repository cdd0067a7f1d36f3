#pragma once

// Random corpora for property and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "atlas/corpus.hpp"

namespace atlas::testing {

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

inline bool chance(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

// `count` distinct 4-character subclass codes spread over at most
// `classes` distinct 3-character classes.
inline std::vector<std::string> random_subclasses(std::mt19937_64& rng, std::size_t classes,
                                                  std::size_t count) {
  std::set<std::string> class_codes;
  while (class_codes.size() < classes) {
    std::string code(1, static_cast<char>('A' + uniform(rng, 0, 7)));
    const auto number = uniform(rng, 1, 99);
    code += static_cast<char>('0' + number / 10);
    code += static_cast<char>('0' + number % 10);
    class_codes.insert(code);
  }
  std::vector<std::string> base(class_codes.begin(), class_codes.end());
  std::set<std::string> out;
  for (const auto& c : base) out.insert(c + static_cast<char>('A' + uniform(rng, 0, 25)));
  while (out.size() < count) {
    out.insert(base[uniform(rng, 0, base.size() - 1)] + static_cast<char>('A' + uniform(rng, 0, 25)));
  }
  return {out.begin(), out.end()};
}

struct CorpusShape {
  std::size_t patents = 200;
  std::size_t classes = 10;        // distinct 3-character fields
  std::size_t subclasses = 14;     // distinct 4-character fields
  std::size_t cited_pool = 300;    // dangling prior-art ids
  std::size_t max_codes = 3;
  std::size_t max_cited = 6;
  std::size_t title_words = 6;
  std::size_t abstract_words = 18;
  double empty_citation_rate = 0.1;
  double plant_rate = 0.1;  // chance of planting each phrase below
};

inline const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> words = {
      "rolling", "toy", "mill", "water", "seepage", "tunnel", "layer", "panel", "drive",
      "sensor",  "led", "lamp", "dual-mode", "controller", "the", "for", "with", "of"};
  return words;
}

inline std::string random_text(std::mt19937_64& rng, std::size_t words) {
  static const char* separators[] = {" ", " ", " ", ", ", "; ", " (", ") ", ". "};
  std::string out;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) out += separators[uniform(rng, 0, 7)];
    std::string word = vocabulary()[uniform(rng, 0, vocabulary().size() - 1)];
    if (chance(rng, 0.15)) word[0] = static_cast<char>(word[0] - 'a' + 'A');
    out += word;
  }
  return out;
}

inline void plant(std::mt19937_64& rng, std::string& text, const std::string& phrase) {
  std::size_t pos = uniform(rng, 0, text.size());
  while (pos < text.size() && text[pos] != ' ') ++pos;
  if (text.empty()) {
    text = phrase;
  } else if (pos == 0) {
    text.insert(0, phrase + " ");
  } else if (pos == text.size()) {
    text += " " + phrase;
  } else {
    text.insert(pos, " " + phrase + " ");
  }
}

inline std::vector<PatentRecord> random_corpus(std::uint64_t seed, const CorpusShape& shape) {
  std::mt19937_64 rng(seed);
  const auto subclasses = random_subclasses(rng, shape.classes, shape.subclasses);
  std::vector<PatentRecord> records;
  records.reserve(shape.patents);
  for (std::size_t n = 0; n < shape.patents; ++n) {
    PatentRecord r;
    r.id = "P" + std::to_string(100000 + n);
    r.title = random_text(rng, uniform(rng, 1, shape.title_words));
    r.abstract_text = random_text(rng, uniform(rng, 0, shape.abstract_words));
    for (const char* phrase : {"rolling toy", "water seepage", "Rolling Mill toy"}) {
      if (chance(rng, shape.plant_rate)) plant(rng, chance(rng, 0.5) ? r.title : r.abstract_text, phrase);
    }
    r.grant_date = std::to_string(1976 + uniform(rng, 0, 42)) + "-0" + std::to_string(uniform(rng, 1, 9));
    const std::size_t codes = uniform(rng, 1, shape.max_codes);
    for (std::size_t c = 0; c < codes; ++c) {
      r.ipc_codes.push_back(IpcCode::parse(subclasses[uniform(rng, 0, subclasses.size() - 1)] + " 1/00"));
    }
    if (!chance(rng, shape.empty_citation_rate)) {
      std::set<std::string> cited;
      const std::size_t k = uniform(rng, 1, shape.max_cited);
      for (std::size_t c = 0; c < k; ++c) {
        if (n > 0 && chance(rng, 0.3)) {
          cited.insert("P" + std::to_string(100000 + uniform(rng, 0, n - 1)));
        } else {
          cited.insert("X" + std::to_string(uniform(rng, 0, shape.cited_pool - 1)));
        }
      }
      r.cited_ids.assign(cited.begin(), cited.end());
    }
    if (chance(rng, 0.7)) r.inventors.push_back("inventor" + std::to_string(uniform(rng, 0, 9)));
    if (chance(rng, 0.5)) r.assignees.push_back("assignee" + std::to_string(uniform(rng, 0, 4)));
    records.push_back(std::move(r));
  }
  return records;
}

// A 122-class corpus in the spirit of the full technology space, with longer
// texts; used for the build-time budget.
inline std::vector<PatentRecord> large_corpus(std::uint64_t seed, std::size_t patents) {
  CorpusShape shape;
  shape.patents = patents;
  shape.classes = 122;
  shape.subclasses = 600;
  shape.cited_pool = 60000;
  shape.max_cited = 12;
  shape.title_words = 10;
  shape.abstract_words = 40;
  shape.plant_rate = 0.02;
  return random_corpus(seed, shape);
}

}  // namespace atlas::testing
