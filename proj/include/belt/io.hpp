#pragma once

#include "belt/maps.hpp"
#include "belt/spectral.hpp"

#include <json.hpp>

#include <string>

namespace belt {

using Json = nlohmann::json;

// {"rows": int, "cols": int, "re": [row-major], "im": [row-major]}
Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j);

// {"in_qubits": n, "out_qubits": k, "superop": <matrix>} or the named form
// {"name": "...", ...parameters}
Json map_to_json(const LinearMap& m);
LinearMap map_from_json(const Json& j);

// {"alpha": r, "m": int, "eps": r, "unitary": <matrix>, "sys_qubits": int}
Json blockenc_to_json(const BlockEncoding& be);
BlockEncoding blockenc_from_json(const Json& j);

// {"convention": "...", "phases": [...]}
Json phases_to_json(const PhaseSequence& p);
PhaseSequence phases_from_json(const Json& j);

Json load_json_file(const std::string& path);

// identity:n | transpose:n | reduction:n | redxid:q | dep:p | ad:g |
// pauli:px,py,pz | <file.json>
LinearMap parse_map_arg(const std::string& arg);

// mixed:n | pure0:n | <file.json>; qubit shorthands may omit :n when a
// context dimension is known.
Mat parse_density_arg(const std::string& arg, int qubits_hint);

}  // namespace belt
