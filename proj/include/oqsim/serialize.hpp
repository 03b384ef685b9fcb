#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "oqsim/cluster.hpp"
#include "oqsim/fock.hpp"
#include "oqsim/klm_fusion.hpp"
#include "oqsim/linear_optics.hpp"

namespace oqsim {

using ordered_json = nlohmann::ordered_json;

// {"layout": {...}, "terms": [{"occ": [...], "re": r, "im": i}, ...]}
ordered_json state_to_json(const PureState& state);
PureState state_from_json(const ordered_json& j);

// [{"kind": "bs", "theta": t, "phi": p, "modes": [0, 1]}, ...]
ordered_json circuit_to_json(const std::vector<ElementSpec>& circuit);
std::vector<ElementSpec> circuit_from_json(const ordered_json& j);

// [{"signature": [...], "probability": p, "state": {...}}, ...]
ordered_json fusion_table_to_json(const std::vector<FusionOutcome>& outcomes);

// {"vertices": [...], "adjacency": [[...], ...], "corrections": {...}}
ordered_json graph_to_json(const ClusterGraph& graph);

std::string csv_join(const std::vector<std::string>& fields);

// Fixed-precision, locale-independent float formatting for CSV output.
std::string csv_number(double value);

}  // namespace oqsim
