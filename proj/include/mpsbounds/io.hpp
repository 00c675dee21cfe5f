#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "mpsbounds/canonical.hpp"
#include "mpsbounds/entanglement.hpp"
#include "mpsbounds/expander.hpp"
#include "mpsbounds/mps.hpp"
#include "mpsbounds/symmetry.hpp"
#include "mpsbounds/transfer.hpp"
#include "mpsbounds/truncation.hpp"

namespace mpsbounds {

using Json = nlohmann::json;

// MPS file schema:
// {"d":int,"D":int,"N":int,"uniform":bool,
//  "sites":[[[[re,im],...],...],...]}   site -> kraus -> row -> column
Json mps_to_json(const MPS& mps);
MPS mps_from_json(const Json& j);
void save_mps(const MPS& mps, const std::string& path);
MPS load_mps(const std::string& path);

Json spectrum_to_json(const TransferSpectrum& s);
Json symmetry_to_json(const SymmetryReport& r);
Json entropy_to_json(const EntropyReport& r, int region_len, int n_sites, bool thermodynamic,
                     LogBase base);
Json canonical_to_json(const CanonicalForm& cf);
Json truncation_to_json(const TruncationReport& r);
Json injectivity_to_json(const InjectivityReport& r);
Json theorem1_to_json(const Theorem1Report& r, LogBase base);
Json theorem2_to_json(const Theorem2Report& r);

double in_base(double natural_log_value, LogBase base);

}  // namespace mpsbounds
