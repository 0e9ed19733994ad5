// JSON exchange format for states and observables.
//
//   {"dims":[2,2],"matrix":[[[re,im],...],...]}    operators (row-major)
//   {"dims":[2,2],"amplitudes":[[re,im],...]}       pure states
//
// Numbers are written with 17 significant digits so files round-trip exactly.

#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "srpt/hilbert.hpp"

namespace srpt {

std::string format_number(double value);

std::string to_json(const StateVector& psi);
std::string to_json(const DensityMatrix& rho);
std::string to_json(const Observable& m);

StateVector state_from_json(const nlohmann::json& j);
DensityMatrix density_from_json(const nlohmann::json& j);
Observable observable_from_json(const nlohmann::json& j);

// A state file may hold either a pure state or a density matrix.
using AnyState = std::variant<StateVector, DensityMatrix>;
AnyState any_state_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace srpt
