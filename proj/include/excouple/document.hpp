#pragma once

#include "excouple/pairing.hpp"

#include <optional>
#include <string>

namespace excouple {

struct Options {
    IndexingConvention indexing = IndexingConvention::colim_adams;
    int max_page = 0;  // 0 = up to stabilization (still capped by EXCOUPLE_MAX_PAGE)
    int verbosity = 1;
};

/// Pairing block: three filtered complexes plus either a chain-level mu
/// (an honest TowerPairing) or page-1 tensors supplied without a chain
/// witness (a homotopy pairing; descent must then earn each page).
struct PairingBlock {
    FilteredComplex w, x, y;
    std::optional<std::map<std::pair<long, long>, std::vector<IntMat>>> chain_mu;
    std::optional<PagePairing> page1;
};

struct Document {
    int format = 1;
    std::optional<FilteredComplex> complex;
    std::optional<AugmentedTowerData> tower;
    std::optional<PairingBlock> pairing;
    Options options;
};

/// Parses the JSON document format; throws invalid_input with the parser's
/// position information or a field-level message on malformed input.
Document parse_document(const std::string& text);

}  // namespace excouple
