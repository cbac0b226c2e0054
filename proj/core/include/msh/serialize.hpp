#pragma once

// Deterministic JSON, DOT and CSV renderings. Field order is fixed by
// insertion; rationals are written as strings ("-3/2").

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "msh/bmp.hpp"
#include "msh/zlattice.hpp"

namespace msh {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Terms as {"e1,e2,...": "coefficient"}, leading term first.
Json to_json(const Polynomial& p, int variable_count);
Polynomial polynomial_from_json(const Json& j, int variable_count);

/// {"text": "1 + q", "coefficients": {"0": 1, "1": 1}}.
Json to_json(const QPoly& q);

Json weight_to_json(const Weight& w);

/// Vertices with weights, edges with integer label vectors, the order as cover relations.
Json to_json(const MomentGraph& g);
/// Inverse of to_json: the order is the transitive closure of the cover relations.
MomentGraph graph_from_json(const Json& j);
std::string to_dot(const MomentGraph& g);

Json to_json(const Sheaf& s);
Sheaf sheaf_from_json(const Json& j);

/// Sheaf document plus base, direction and per-vertex diagnostics.
Json to_json(const BMPResult& r);

Json to_json(const MultiplicityTable& t);
std::string to_csv(const MultiplicityTable& t);
std::string to_text(const MultiplicityTable& t);

Json to_json(const ZLattice& m);
ZLattice lattice_from_json(const Json& j, std::shared_ptr<const MomentGraph> graph);

Json to_json(const ShiftMatchReport& r);
std::string to_text(const ShiftMatchReport& r);

Json to_json(const GradedDims& d);

}  // namespace msh
