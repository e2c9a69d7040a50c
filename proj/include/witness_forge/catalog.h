#pragma once

// Named map families with numeric parameters, as used by the command line
// and the Python bindings.

#include <optional>
#include <string>
#include <vector>

#include "witness_forge/mapkit.h"

namespace witness_forge {

struct NamedMap {
    std::string name;
    std::vector<double> params;
    /// Set when the family lives in the GenMap class.
    std::optional<GenMap> gen;
    MapRep rep;
};

struct CatalogEntry {
    std::string name;
    std::string params;  // human-readable parameter list
    std::string summary;
};

const std::vector<CatalogEntry> &catalog_entries();

/// Throws std::invalid_argument for unknown names or bad parameters.
NamedMap build_catalog(const std::string &name, const std::vector<double> &params);

NamedMap named_from_gen(std::string name, std::vector<double> params, GenMap m);
NamedMap named_from_rep(std::string name, std::vector<double> params, MapRep m);

}  // namespace witness_forge
