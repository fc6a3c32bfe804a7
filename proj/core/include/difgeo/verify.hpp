#pragma once

#include <string>
#include <vector>

namespace difgeo {

/// One row of the gallery verification table.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail; // measured margins or the failure reason
};

/// Runs the full verification battery over the built-in curve/surface gallery.
/// Deterministic for a fixed seed. Exceptions inside a criterion mark it
/// failed and are reported in `detail`; the battery always completes.
std::vector<CriterionResult> verify_gallery(unsigned seed = 12345);

} // namespace difgeo
