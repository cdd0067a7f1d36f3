#pragma once

#include <span>

#include "atlas/corpus.hpp"
#include "atlas/explorer.hpp"
#include "atlas/ideation.hpp"
#include "json.hpp"

// JSON bodies shared by the HTTP service and anything that needs to compare
// against it.
namespace atlas {

nlohmann::ordered_json to_json(const PatentRecord& record);
nlohmann::ordered_json to_json(const DomainPosition& position);
nlohmann::ordered_json to_json(const DomainPosition& position, std::span<const NearbyEntry> entries,
                               const FieldNames& names);
nlohmann::ordered_json to_json(const FieldPanel& panel, const FieldNames& names,
                               const DomainPosition* position);
nlohmann::ordered_json to_json(const IdeaRecord& record);
nlohmann::ordered_json to_json(std::span<const IdeaRecord> ideas, IdeaOrder order);

}  // namespace atlas
