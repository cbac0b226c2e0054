#pragma once

// Small handcrafted graphs and sheaves used as negative controls.

#include "msh/moment_graph.hpp"
#include "msh/sheaf.hpp"

namespace msh {

/// Three vertices e < a, e < b; both edges at e carry the label x1.
MomentGraph double_label_graph();

/// Two vertices e < s joined by one edge labelled x1.
MomentGraph a1_graph();

/// On the A1 graph: stalks S at both vertices and edge module (S/x1)^2, with
/// restrictions (1, 1) from e and (1, 0) from s. Sections over {e} do not
/// extend, so the sheaf is not flabby.
Sheaf non_flabby_a1_sheaf();

}  // namespace msh
