#include "atlas/proximity.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <numeric>
#include <unordered_map>

#include "parallel.hpp"

namespace atlas {
namespace {

template <typename T>
std::size_t intersection_size(std::span<const T> a, std::span<const T> b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

template <typename T>
double jaccard(std::span<const T> a, std::span<const T> b) {
  if (a.empty() && b.empty()) return 0.0;
  const std::size_t shared = intersection_size(a, b);
  return static_cast<double>(shared) / static_cast<double>(a.size() + b.size() - shared);
}

std::string format_value(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.15g", value);
  return buffer;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    out.push_back(line.substr(pos, tab == std::string_view::npos ? tab : tab - pos));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return out;
}

}  // namespace

ClassCitationProfile citation_profile(const CorpusIndex& index, Level level) {
  ClassCitationProfile profile;
  profile.level = level;
  for (const auto& field : index.fields(level)) {
    std::vector<std::string> cited;
    for (const auto& id : index.members(level, field)) {
      const auto& ids = index.at(id).cited_ids;
      cited.insert(cited.end(), ids.begin(), ids.end());
    }
    std::sort(cited.begin(), cited.end());
    cited.erase(std::unique(cited.begin(), cited.end()), cited.end());
    profile.profiles.emplace(field, std::move(cited));
  }
  return profile;
}

double knowledge_proximity(std::span<const std::string> a, std::span<const std::string> b) {
  return jaccard(a, b);
}

double knowledge_proximity(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  return jaccard(a, b);
}

ProximityMatrix::ProximityMatrix(Level level, std::vector<std::string> fields,
                                 std::vector<double> lower)
    : level_(level), fields_(std::move(fields)), lower_(std::move(lower)) {
  const std::size_t n = fields_.size();
  if (lower_.size() != n * (n + 1) / 2) {
    throw ProximityError("proximity matrix: expected " + std::to_string(n * (n + 1) / 2) +
                         " cells, got " + std::to_string(lower_.size()));
  }
  if (!std::is_sorted(fields_.begin(), fields_.end()) ||
      std::adjacent_find(fields_.begin(), fields_.end()) != fields_.end()) {
    throw ProximityError("proximity matrix: field codes must be sorted and unique");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (phi(i, i) == 0.0) empty_fields_.insert(fields_[i]);
  }
}

std::optional<std::size_t> ProximityMatrix::index_of(std::string_view field) const {
  auto it = std::lower_bound(fields_.begin(), fields_.end(), field);
  if (it == fields_.end() || *it != field) return std::nullopt;
  return static_cast<std::size_t>(it - fields_.begin());
}

double ProximityMatrix::phi(std::string_view a, std::string_view b) const {
  auto i = index_of(a);
  auto j = index_of(b);
  if (!i) throw ProximityError("unknown field '" + std::string(a) + "'");
  if (!j) throw ProximityError("unknown field '" + std::string(b) + "'");
  return phi(*i, *j);
}

std::string ProximityMatrix::export_text() const {
  std::string out = "level\t" + std::to_string(to_int(level_)) + "\nfields";
  for (const auto& field : fields_) out += "\t" + field;
  out += '\n';
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    out += fields_[i];
    for (std::size_t j = 0; j <= i; ++j) out += "\t" + format_value(phi(i, j));
    out += '\n';
  }
  return out;
}

ProximityMatrix ProximityMatrix::parse_text(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  if (lines.size() < 2) throw ProximityError("proximity matrix: truncated header");
  auto head = split_tabs(lines[0]);
  if (head.size() != 2 || head[0] != "level") throw ProximityError("proximity matrix: bad level");
  const Level level = level_from_int(head[1] == "3" ? 3 : head[1] == "4" ? 4 : 0);
  auto names = split_tabs(lines[1]);
  if (names.empty() || names[0] != "fields") throw ProximityError("proximity matrix: bad header");
  std::vector<std::string> fields(names.begin() + 1, names.end());
  if (lines.size() != fields.size() + 2) throw ProximityError("proximity matrix: row count");

  std::vector<double> lower;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    auto cells = split_tabs(lines[i + 2]);
    if (cells.size() != i + 2 || cells[0] != fields[i]) {
      throw ProximityError("proximity matrix: malformed row for " + fields[i]);
    }
    for (std::size_t j = 1; j < cells.size(); ++j) {
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(cells[j].data(), cells[j].data() + cells[j].size(), value);
      if (ec != std::errc{} || ptr != cells[j].data() + cells[j].size()) {
        throw ProximityError("proximity matrix: bad value in row " + fields[i]);
      }
      lower.push_back(value);
    }
  }
  return ProximityMatrix(level, std::move(fields), std::move(lower));
}

ProximityMatrix build_proximity_matrix(const ClassCitationProfile& profile) {
  // Intern cited ids so each pairwise intersection is a merge over sorted
  // integers. Interned ids are assigned in string order, so sortedness carries
  // over from the string profiles.
  std::vector<std::string_view> vocabulary;
  for (const auto& [field, cited] : profile.profiles) {
    vocabulary.insert(vocabulary.end(), cited.begin(), cited.end());
  }
  std::sort(vocabulary.begin(), vocabulary.end());
  vocabulary.erase(std::unique(vocabulary.begin(), vocabulary.end()), vocabulary.end());
  std::unordered_map<std::string_view, std::uint32_t> ids;
  ids.reserve(vocabulary.size());
  for (std::uint32_t i = 0; i < vocabulary.size(); ++i) ids.emplace(vocabulary[i], i);

  std::vector<std::string> fields;
  std::vector<std::vector<std::uint32_t>> sets;
  for (const auto& [field, cited] : profile.profiles) {
    fields.push_back(field);
    auto& set = sets.emplace_back();
    set.reserve(cited.size());
    for (const auto& id : cited) set.push_back(ids.at(id));
  }

  const std::size_t n = fields.size();
  std::vector<double> lower(n * (n + 1) / 2, 0.0);
  detail::parallel_for(n, [&](std::size_t i) {
    double* row = lower.data() + i * (i + 1) / 2;
    for (std::size_t j = 0; j < i; ++j) row[j] = knowledge_proximity(sets[i], sets[j]);
    row[i] = sets[i].empty() ? 0.0 : 1.0;
  }, 4);
  return ProximityMatrix(profile.level, std::move(fields), std::move(lower));
}

double domain_proximity(const ProximityMatrix& matrix, const FieldCounts& x, std::string_view j) {
  const auto target = matrix.index_of(j);
  if (!target) throw ProximityError("unknown field '" + std::string(j) + "'");
  std::vector<std::pair<std::size_t, std::uint64_t>> weights;
  std::uint64_t divisor = 0;
  for (const auto& [field, count] : x) {
    const auto i = matrix.index_of(field);
    if (!i) throw ProximityError("unknown field '" + field + "' in target domain");
    if (*i == *target || count == 0) continue;
    weights.emplace_back(*i, count);
    divisor = std::gcd(divisor, count);
  }
  if (weights.empty()) {
    throw ProximityError("target domain empty relative to " + std::string(j));
  }
  // Reducing by the gcd makes the result bit-identical for any rescaled footprint.
  double weighted = 0.0;
  std::uint64_t total = 0;
  for (const auto& [i, count] : weights) {
    const std::uint64_t reduced = count / divisor;
    weighted += matrix.phi(i, *target) * static_cast<double>(reduced);
    total += reduced;
  }
  return weighted / static_cast<double>(total);
}

}  // namespace atlas
