#include "msh/fixtures.hpp"

namespace msh {

MomentGraph double_label_graph() {
  std::vector<GraphVertex> vertices{{"e", {}, 0, 0}, {"a", {}, 1, 0}, {"b", {}, 1, 0}};
  std::vector<GraphEdge> edges{{0, 1, LinearForm::from_ints({1, 0})}, {0, 2, LinearForm::from_ints({1, 0})}};
  std::vector<std::vector<bool>> leq{{true, true, true}, {false, true, false}, {false, false, true}};
  return MomentGraph(2, std::move(vertices), std::move(edges), std::move(leq));
}

MomentGraph a1_graph() {
  std::vector<GraphVertex> vertices{{"e", {}, 0, 0}, {"s", {}, 1, 1}};
  std::vector<GraphEdge> edges{{0, 1, LinearForm::from_ints({1})}};
  std::vector<std::vector<bool>> leq{{true, true}, {false, true}};
  return MomentGraph(1, std::move(vertices), std::move(edges), std::move(leq));
}

}  // namespace msh

namespace msh {

Sheaf non_flabby_a1_sheaf() {
  auto g = std::make_shared<const MomentGraph>(a1_graph());
  const Polynomial one(Rational(1));
  std::vector<std::array<PolyMatrix, 2>> r{{PolyMatrix{{one}, {one}}, PolyMatrix{{one}, {Polynomial()}}}};
  return Sheaf(std::move(g), {{0}, {0}}, {{0, 0}}, std::move(r));
}

}  // namespace msh
