#pragma once

#include <string>
#include <utility>
#include <vector>

#include "witness_forge/hermlin.h"

namespace witness_forge {

/// Outcome of a CP / CcP / witness check with its numeric evidence.
struct Certificate {
    std::string property;  // "cp", "ccp", "witness", ...
    std::string verdict;   // e.g. "cp" / "not_cp"
    bool holds = false;
    double lambda_min = 0.0;
    double tolerance = 0.0;
    std::vector<cplx> witness_vector;
    /// Extra named numbers (product minimum, critical b-matrix eigenvalue, ...).
    std::vector<std::pair<std::string, double>> evidence;
    std::vector<std::pair<std::string, double>> budget;
};

}  // namespace witness_forge
