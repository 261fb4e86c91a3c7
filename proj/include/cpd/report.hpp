#pragma once

// JSON documents emitted by the command-line tool. Every document carries a
// "schema" field.

#include <string>

#include <json.hpp>

#include "cpd/basin.hpp"
#include "cpd/systems.hpp"

namespace cpd::report {

nlohmann::json params_json(SystemId id, const SystemParams& params);

/// schema "cpd-analyze-1": region, equilibria with spectra, hypotheses.
nlohmann::json analyze(SystemId id, const SystemParams& params);

/// schema "cpd-taxonomy-1".
nlohmann::json taxonomy_census();

/// schema "cpd-basin-1": sidecar describing a raster written as PGM.
nlohmann::json basin_sidecar(const BasinRaster& raster,
                             const std::string& image_name);

}  // namespace cpd::report
