#pragma once

// JSON <-> model conversions shared by the file parsers and the HTTP client.

#include <json.hpp>

#include "eyeball/model.hpp"

namespace eyeball::detail {

/// Throws IngestError(MissingField/RowParse). Accepts the flat file schema
/// and the nested remote inventory shape (status object, GeoJSON geometry).
Probe probe_from_json(const nlohmann::json& obj, std::size_t line);
nlohmann::json probe_to_json(const Probe& probe);

/// Throws IngestError(MissingField/RowParse/HopOrder).
Traceroute traceroute_from_json(const nlohmann::json& obj, std::size_t line);
nlohmann::json traceroute_to_json(const Traceroute& tr);

}  // namespace eyeball::detail
