#pragma once

// JSON forms of matrices, maps and certificates.
//
//   matrix:  {"dim": n, "re": [[...]], "im": [[...]]}    (rows)
//   gen map: {"kind": "gen", "d", "a": [[...]], "c"}
//   table:   {"kind": "table", "d", "action": [matrix, ...]}  (index i*d + j)
//   catalog: {"kind": "catalog", "name", "params": [...]}

#include <string>

#include <json.hpp>

#include "witness_forge/catalog.h"
#include "witness_forge/certificate.h"
#include "witness_forge/duality.h"
#include "witness_forge/hermlin.h"
#include "witness_forge/indecomp.h"
#include "witness_forge/mapkit.h"
#include "witness_forge/poscert.h"

namespace witness_forge {

using json = nlohmann::ordered_json;

/// Pretty-printed JSON with floats written at 17 significant digits, newline-terminated.
std::string dump17(const json &j, int indent = 2);

json to_json(const CMatrix &m);
json to_json(const RealMatrix &m);
json vector_to_json(const std::vector<cplx> &v);
json to_json(const GenMap &m);
json to_json(const MapRep &m);
/// gen form when available, table form otherwise; adds "name" and "params".
json to_json(const NamedMap &m);
json to_json(const Certificate &c);
json to_json(const PositivityVerdict &v);
json to_json(const Witness &w);
json to_json(const IndecompCertificate &c);

/// Throws std::invalid_argument on malformed input.
CMatrix cmatrix_from_json(const json &j);
RealMatrix realmatrix_from_json(const json &j);
NamedMap map_from_json(const json &j);

}  // namespace witness_forge
