#pragma once

#include <map>
#include <string>
#include <vector>

#include "kgraph/graph.hpp"

namespace kg {

/// A directed graph given with the k-graph orientation: each edge points from
/// its source into its range, and expansion runs from range to source.
struct OneGraph {
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;  // colors ignored
};

/// Λ_k = N^k: one vertex, one loop per color.
KGraph lambda_k(int k);

/// Ω_k: vertex n in N^k; the color-i edge into n comes from n + e_i.
LazyKGraph grid(int k);
/// Ω_{k,m}: the finite grid {0 <= n <= m}; has sources for k >= 1.
KGraph finite_grid(int k, const Degree& m);
/// Δ_k: as the grid but over Z^k.
LazyKGraph delta_k(int k);

/// f^*(E) for f(x, y) = x + y: a blue (color 1) and a red (color 2) copy of
/// each edge, with squares (blue e)(red f) = (red e)(blue f).
KGraph pullback_2graph(const OneGraph& e);

OneGraph cycle_graph(int n);
OneGraph arrow_graph();

/// Λ(2^∞): level N is a red cycle on 2^N vertices (N, j); the red edge into
/// (N, j) comes from (N, j-1) and the two blue edges into (N, j) come from
/// (N+1, j) and (N+1, j + 2^N).
LazyKGraph rank2_bratteli();
/// Vertices of levels 0..levels-1.
std::vector<LazyVertex> bratteli_vertices(int levels);

/// Grid vertices n with 0 <= n_i <= r.
std::vector<LazyVertex> grid_box(int k, std::int64_t r);

/// Disjoint union; vertex and edge names receive the given prefixes.
KGraph disjoint_union(const KGraph& a, const KGraph& b, const std::string& pa = "L.",
                      const std::string& pb = "R.");
/// Disjoint union of lazy graphs; vertex ids are prefixed with 0 or 1.
LazyKGraph lazy_disjoint_union(const LazyKGraph& a, const LazyKGraph& b);

KGraph ex33();
KGraph ex310();
KGraph ex311();
KGraph ex53();
KGraph ex62();
KGraph ex64();
KGraph looptail();

/// All named finite fixtures, including disjoint unions used by negative tests.
std::map<std::string, KGraph> fixtures();

struct FamilySpec {
  std::string name;
  std::vector<std::int64_t> params;
};

/// Finite members of the families by name: lambda_k, finite_grid, pullback_cycle,
/// pullback_arrow, or any fixture name.
KGraph generate(const FamilySpec& spec);
std::vector<std::string> family_names();

}  // namespace kg
