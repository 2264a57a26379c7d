// JSON (de)serialization of the domain types and the CSV writers used by the
// CLI.  Complex numbers are [re, im] pairs; all numeric text is emitted with
// 17 significant digits.
#pragma once

#include <ostream>

#include "spinloc/dynamics.hpp"
#include "spinloc/maps.hpp"
#include "spinloc/measures.hpp"
#include "spinloc/random_ensemble.hpp"
#include "spinloc/state.hpp"
#include "spinloc/stellar.hpp"

#include <json.hpp>

namespace spinloc {

using json = nlohmann::json;

std::string format_full(double x);  // %.17g

json state_to_json(const PureState& state);
PureState state_from_json(const json& j);

json roots_to_json(const StellarRoots& roots);
StellarRoots roots_from_json(const json& j);

json hamiltonian_to_json(const SpinHamiltonian& h);
SpinHamiltonian hamiltonian_from_json(const json& j);

json report_to_json(const MeasureReport& rep);

json trace_snapshot_to_json(const TraceSnapshot& snap, const MapTrace& trace);

// Loads either a state record or a roots record from a JSON file.
PureState load_state_file(const std::string& path);

void save_json_file(const std::string& path, const json& j);

}  // namespace spinloc
