#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "snapcx/complex.hpp"
#include "snapcx/schedule.hpp"
#include "snapcx/topology.hpp"

namespace snapcx {

// JSON interchange. Object keys come out sorted and every list is in a
// fixed order, so equal inputs give byte-identical dumps.

/// {"0": 2, "1": 1}
nlohmann::json to_json(const RoundCounter& r);
RoundCounter counter_from_json(const nlohmann::json& j);

/// {"pairs": [[[W_0...], [G_0...]], ...]}
nlohmann::json to_json(const Witness& sigma);
/// Throws InvalidInput on malformed input; does not validate (W) etc.
Witness witness_from_json(const nlohmann::json& j);

/// Inverse of canonical_key(). Throws InvalidInput on malformed text.
Witness witness_from_key(std::string_view key);

/// [[layer 1...], [layer 2...], ...]
nlohmann::json to_json(const Schedule& s);
Schedule schedule_from_json(const nlohmann::json& j);

/// Counter, f-vector and facet keys; with `full`, every simplex with its
/// codimension-one faces, by canonical key.
nlohmann::json complex_to_json(const Complex& k, bool full = false);

/// Ordered {free, cofacet, stage} list plus a per-stage summary.
nlohmann::json collapse_to_json(const Complex& k, const CollapseSequence& seq);

/// Reads back the steps written by collapse_to_json().
std::vector<CollapseStep> collapse_steps_from_json(const Complex& k,
                                                   const nlohmann::json& j);

/// Pretty-printed dump with a trailing newline.
std::string dump(const nlohmann::json& j);

/// Face poset as a Graphviz digraph, edges from face to cofacet.
std::string to_dot(const Complex& k);

/// Drawing of P(r) for |supp r| ≤ 3: boundary on a circle, interior
/// vertices placed by barycentric (Tutte) relaxation, triangles shaded by
/// the stratum X_S of their first layer. Throws InvalidInput above three
/// processes.
std::string to_svg(const Complex& k);

}  // namespace snapcx
