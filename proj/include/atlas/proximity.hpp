#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atlas/corpus.hpp"

namespace atlas {

class ProximityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Knowledge base of each field: the union of ids cited by its member patents.
/// Cited ids need not resolve to a record in the corpus.
struct ClassCitationProfile {
  Level level = Level::Class;
  // Sorted, duplicate-free cited ids per field.
  std::map<std::string, std::vector<std::string>, std::less<>> profiles;
};

ClassCitationProfile citation_profile(const CorpusIndex& index, Level level);

// Jaccard overlap |a ∩ b| / |a ∪ b| of two sorted duplicate-free sets; 0 when
// both are empty.
double knowledge_proximity(std::span<const std::string> a, std::span<const std::string> b);
double knowledge_proximity(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// Symmetric field-by-field proximity matrix, stored as a lower triangle.
/// The diagonal is 1 for fields with a non-empty knowledge base and 0 otherwise.
class ProximityMatrix {
 public:
  ProximityMatrix() = default;
  // `lower` holds rows i = 0..n-1 with entries j = 0..i.
  ProximityMatrix(Level level, std::vector<std::string> fields, std::vector<double> lower);

  Level level() const { return level_; }
  const std::vector<std::string>& fields() const { return fields_; }
  std::size_t size() const { return fields_.size(); }
  std::optional<std::size_t> index_of(std::string_view field) const;

  double phi(std::size_t i, std::size_t j) const {
    return i >= j ? lower_[i * (i + 1) / 2 + j] : lower_[j * (j + 1) / 2 + i];
  }
  double phi(std::string_view a, std::string_view b) const;

  // Fields whose knowledge base is empty.
  const std::set<std::string>& empty_fields() const { return empty_fields_; }

  // Canonical text: a "level" line, a "fields" header, then one row per field
  // with the lower-triangular values at 15 significant digits, tab-separated.
  std::string export_text() const;
  static ProximityMatrix parse_text(std::string_view text);

 private:
  Level level_ = Level::Class;
  std::vector<std::string> fields_;
  std::vector<double> lower_;
  std::set<std::string> empty_fields_;
};

ProximityMatrix build_proximity_matrix(const ClassCitationProfile& profile);

// Footprint of a target domain: field -> number of matching patents.
using FieldCounts = std::map<std::string, std::uint64_t, std::less<>>;

/// Proximity of field `j` to a target domain with footprint `x`: the
/// x-weighted mean of phi(i, j) over fields i != j. Field j never contributes
/// to either sum, even when it is itself part of the target. Throws
/// ProximityError when the fields other than j carry no weight, or when a
/// field is not in the matrix.
double domain_proximity(const ProximityMatrix& matrix, const FieldCounts& x, std::string_view j);

}  // namespace atlas
