#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "kgraph/graph.hpp"

namespace kg {

class DegreeError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class CompositionError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A path in color-block normal form: all color-1 edges, then color 2, ...
/// Degree-zero paths are vertices.
struct Path {
  VertexIndex range = 0;
  std::vector<EdgeIndex> edges;
  Degree degree;

  friend bool operator==(const Path& a, const Path& b) {
    return a.range == b.range && a.edges == b.edges;
  }
  friend auto operator<=>(const Path& a, const Path& b) {
    if (auto c = a.range <=> b.range; c != 0) return c;
    return a.edges <=> b.edges;
  }
};

Path vertex_path(const KGraph& g, VertexIndex v);
Path edge_path(const KGraph& g, EdgeIndex e);
/// Builds a path from composable edges given in any color order and returns
/// its normal form; throws CompositionError when the edges do not compose.
Path make_path(const KGraph& g, const std::vector<EdgeIndex>& edges);
VertexIndex source(const KGraph& g, const Path& p);

/// Moves the edge sequence to the given color sequence by adjacent
/// transpositions through the squares.
std::vector<EdgeIndex> reorder(const KGraph& g, std::vector<EdgeIndex> seq,
                               const std::vector<int>& target_colors);

/// vΛ^n in normal form.
std::vector<Path> enumerate_paths(const KGraph& g, VertexIndex v, const Degree& n);
/// Builds every path from v whose edges follow `colors` in that order, then
/// normalizes; used to cross-check the normal form.
std::vector<Path> enumerate_paths_in_order(const KGraph& g, VertexIndex v,
                                           const std::vector<int>& colors);

/// (p(0, m), p(m, d(p))).
std::pair<Path, Path> factor(const KGraph& g, const Path& p, const Degree& m);
/// p(m, n).
Path segment(const KGraph& g, const Path& p, const Degree& m, const Degree& n);
Path compose(const KGraph& g, const Path& p, const Path& q);

std::vector<Path> mce(const KGraph& g, const Path& lambda, const Path& mu);
std::vector<std::pair<Path, Path>> lambda_min(const KGraph& g, const Path& lambda, const Path& mu);
std::vector<Path> ext(const KGraph& g, const Path& lambda, const std::vector<Path>& e);

std::string path_str(const KGraph& g, const Path& p);

/// Paths of a lazy graph, edges listed color block by color block.
struct LazyPath {
  LazyVertex range;
  std::vector<LazyEdge> edges;
  Degree degree;
};

std::vector<LazyPath> enumerate_paths(const LazyKGraph& g, const LazyVertex& v, const Degree& n);

}  // namespace kg
