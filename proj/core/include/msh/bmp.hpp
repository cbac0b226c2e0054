#pragma once

// Braden-MacPherson sheaves B(x) in either order direction.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "msh/hecke.hpp"
#include "msh/moment_graph.hpp"
#include "msh/sheaf.hpp"

namespace msh {

struct DegreeBoundPolicy {
  int slope = 2;
  int offset = 0;
  int saturation_window = 4;
  bool oracle_crosscheck = true;
  int extension_variant = 0;  // tie-break of the linear extension, see MomentGraph::linear_extension
  bool record_timing = false;

  /// Expected largest generator degree at a vertex whose length differs from
  /// the base by `length_difference`; nonnegative and even.
  int bound(int length_difference) const;
  /// Throws std::invalid_argument for negative or odd settings.
  void validate() const;
};

struct VertexDiagnostics {
  std::size_t vertex = 0;
  std::vector<int> generator_degrees;
  int bound = 0;
  bool saturated = true;
  std::optional<std::int64_t> oracle_rank;
  double seconds = 0;
};

struct BMPResult {
  Sheaf sheaf;
  std::size_t base = 0;
  Direction direction = Direction::Up;
  int degree_cap = 0;
  std::vector<VertexDiagnostics> diagnostics;  // one per vertex, in vertex order

  bool saturated() const;
  bool oracle_ok() const;
  /// Some vertex produced generators beyond its bound.
  bool provisional() const { return !saturated(); }
};

/// Ungraded multiplicity predicted by Kazhdan-Lusztig polynomials for the
/// stalk of B(base) at `vertex`: P_{x,w}(1) with x, w the longest elements of
/// the cosets of vertex and base for Down, and the Down value at the w0
/// images for Up.
std::int64_t kl_multiplicity(const Block& block, const KLTable& table, Direction d, std::size_t base,
                             std::size_t vertex);
/// Graded version of the Down value, P_{x,w}(q).
QPoly kl_polynomial(const Block& block, const KLTable& table, std::size_t base, std::size_t vertex);

/// Throws std::invalid_argument when the graph fails the GKM check. Vertex
/// lengths enter the degree bounds. No oracle comparison.
BMPResult bmp(const std::shared_ptr<const MomentGraph>& graph, Direction d, std::size_t base,
              const DegreeBoundPolicy& policy = {});

/// As above on a block graph; when the policy asks for it, every vertex gets
/// its Kazhdan-Lusztig prediction from `table` (built here when null).
BMPResult bmp(const std::shared_ptr<const Block>& block, Direction d, std::size_t base,
              const DegreeBoundPolicy& policy = {}, const KLTable* table = nullptr);

struct MultiplicityTable {
  Direction direction = Direction::Down;
  std::vector<std::string> names;
  std::vector<std::vector<std::int64_t>> ranks;  // [base w][vertex x]
  std::vector<std::vector<QPoly>> graded;
  std::vector<std::vector<std::int64_t>> oracle;
  bool saturated = true;

  bool matches_oracle() const { return ranks == oracle; }
};

MultiplicityTable multiplicity_table(const std::shared_ptr<const Block>& block, Direction d,
                                     const DegreeBoundPolicy& policy = {});
MultiplicityTable multiplicity_table(const std::shared_ptr<const Block>& block, Direction d,
                                     const std::vector<BMPResult>& results);

struct PullbackComparison {
  std::size_t base = 0;  // x for B-down(x), compared with B-up(w0 x)
  bool stalks_equal = true;
  bool edges_equal = true;
};

struct PullbackReport {
  bool ok = true;
  std::vector<PullbackComparison> comparisons;
};

/// Stalk and edge shift multisets of B-down(x) against B-up(w0 x) relabelled by w0.
PullbackComparison compare_pullback(const Block& block, const BMPResult& down, const BMPResult& up);
PullbackReport verify_w0_pullback(const std::shared_ptr<const Block>& block, const DegreeBoundPolicy& policy = {});

/// Sorted stalk shifts and edge shifts of two sheaves agree (same graph).
bool same_shift_data(const Sheaf& a, const Sheaf& b);

}  // namespace msh
