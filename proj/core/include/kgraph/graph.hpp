#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kgraph/element.hpp"
#include "kgraph/matrix.hpp"
#include "kgraph/offset.hpp"
#include "kgraph/tri.hpp"

namespace kg {

/// Named edge record as it appears in documents and fixtures.
struct EdgeSpec {
  std::string id;
  int color = 1;  // 1..k
  std::string range;
  std::string source;
};

/// f.g = g'.f' with f, f' of color i < j and g, g' of color j.
struct SquareSpec {
  std::string lo_first, lo_second;  // f, g
  std::string hi_first, hi_second;  // g', f'
};

struct Edge {
  std::string id;
  int color = 1;
  VertexIndex range = 0;
  VertexIndex source = 0;
};

struct Square {
  EdgeIndex lo_first = 0, lo_second = 0;
  EdgeIndex hi_first = 0, hi_second = 0;
};

struct Skeleton {
  int rank = 1;
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
};

struct SquareSet {
  std::vector<Square> squares;
};

/// Malformed skeleton or square references.
class StructuralError : public std::runtime_error {
public:
  StructuralError(const std::string& what, std::string offending)
      : std::runtime_error(what), offending_(std::move(offending)) {}
  const std::string& offending() const { return offending_; }

private:
  std::string offending_;
};

class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Precondition violations (wrong degree, sources present, ...).
class PreconditionError : public std::logic_error {
  using std::logic_error::logic_error;
};

/// A k-graph presented by its 1-skeleton and factorization squares.
class KGraph {
public:
  static KGraph build(int k, std::vector<std::string> vertices,
                      const std::vector<EdgeSpec>& edges,
                      const std::vector<SquareSpec>& squares);
  static KGraph from_parts(Skeleton skeleton, SquareSet squares);

  int rank() const { return skel_.rank; }
  std::size_t vertex_count() const { return skel_.vertices.size(); }
  std::size_t edge_count() const { return skel_.edges.size(); }
  const Skeleton& skeleton() const { return skel_; }
  const SquareSet& square_set() const { return squares_; }
  const std::vector<std::string>& vertex_names() const { return skel_.vertices; }
  const std::string& vertex_name(VertexIndex v) const { return skel_.vertices.at(v); }
  std::optional<VertexIndex> find_vertex(const std::string& name) const;
  VertexIndex vertex(const std::string& name) const;
  const Edge& edge(EdgeIndex e) const { return skel_.edges.at(e); }
  std::optional<EdgeIndex> find_edge(const std::string& id) const;
  EdgeIndex edge_index(const std::string& id) const;

  /// vΛ^{e_i}: edges of color i with range v.
  const std::vector<EdgeIndex>& edges_into(VertexIndex v, int color) const;
  /// Edges with source v, any color.
  const std::vector<EdgeIndex>& edges_from(VertexIndex v) const;
  /// Sources of vΛ^{e_i}, one entry per edge.
  std::vector<VertexIndex> sources(VertexIndex v, int color) const;

  bool has_sources() const { return has_sources_; }
  bool validated() const { return validated_; }

  /// Rewrites a composable pair (a, b) of distinct colors to its other
  /// factorization using the squares; nullopt when no square applies.
  std::optional<std::pair<EdgeIndex, EdgeIndex>> refactor(EdgeIndex a, EdgeIndex b) const;

  /// Returns a copy flagged as validated; throws ValidationError otherwise.
  friend KGraph validated(KGraph g);

private:
  void index();

  Skeleton skel_;
  SquareSet squares_;
  std::map<std::string, VertexIndex> vertex_by_name_;
  std::map<std::string, EdgeIndex> edge_by_id_;
  std::vector<std::vector<EdgeIndex>> into_;  // [v * k + (color - 1)]
  std::vector<std::vector<EdgeIndex>> from_;
  std::map<std::pair<EdgeIndex, EdgeIndex>, std::pair<EdgeIndex, EdgeIndex>> lo_to_hi_, hi_to_lo_;
  bool has_sources_ = false;
  bool validated_ = false;
};

KGraph validated(KGraph g);

struct SquareCheck {
  int color_i = 0, color_j = 0;
  VertexIndex range = 0, source = 0;
  bool ok = true;
  std::string message;
};

struct CommuteCheck {
  int color_i = 0, color_j = 0;
  bool ok = true;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> problems;
  std::vector<SquareCheck> squares;
  std::vector<CommuteCheck> commutation;
  bool hexagon_checked = false;
  bool hexagon_ok = true;
  std::size_t hexagon_triples = 0;
  bool has_sources = false;
};

ValidationReport validate(const KGraph& g);

struct CoordMatrix {
  Degree degree;
  BigMatrix entries;
};

/// A_{e_i} for color i.
BigMatrix edge_matrix(const KGraph& g, int color);
/// A_n(v, w) = |vΛ^n w|.
CoordMatrix coord_matrix(const KGraph& g, const Degree& n);

bool is_hereditary(const KGraph& g, const std::set<VertexIndex>& h);
/// Single-color saturation; for hereditary sets in graphs without sources this
/// is equivalent to saturation over all degrees.
bool is_saturated(const KGraph& g, const std::set<VertexIndex>& h);

/// Λ/H; H must be hereditary and saturated and the graph free of sources.
KGraph quotient_graph(const KGraph& g, const std::set<VertexIndex>& h);

/// Vertices reachable from v through sources of paths (v included).
std::set<VertexIndex> descendants(const KGraph& g, VertexIndex v);

/// Leaf test: every descendant has exactly one edge of each color. Exact.
Tri is_leaf(const KGraph& g, VertexIndex v);

// ---------------------------------------------------------------------------
// Lazily enumerated graphs.

struct LazyEdge {
  LazyVertex id;
  int color = 1;
  LazyVertex range;
  LazyVertex source;
  friend bool operator==(const LazyEdge&, const LazyEdge&) = default;
};

class LazyKGraph {
public:
  using Enumerator = std::function<std::vector<LazyEdge>(const LazyVertex&, int)>;
  using LevelFn = std::function<std::int64_t(const LazyVertex&)>;
  using NameFn = std::function<std::string(const LazyVertex&)>;
  using SquareFn = std::function<std::optional<std::pair<LazyEdge, LazyEdge>>(const LazyEdge&, const LazyEdge&)>;

  LazyKGraph(int k, std::string name, Enumerator edges_into, LevelFn level = {},
             NameFn vertex_name = {}, SquareFn squares = {});

  int rank() const { return k_; }
  const std::string& name() const { return name_; }
  std::vector<LazyEdge> edges_into(const LazyVertex& v, int color) const { return enum_(v, color); }
  std::vector<LazyVertex> sources(const LazyVertex& v, int color) const;
  bool has_level() const { return static_cast<bool>(level_); }
  std::int64_t level(const LazyVertex& v) const;
  std::string vertex_name(const LazyVertex& v) const;
  bool has_squares() const { return static_cast<bool>(squares_); }
  /// Other factorization of a composable pair of distinct colors.
  std::optional<std::pair<LazyEdge, LazyEdge>> refactor(const LazyEdge& a, const LazyEdge& b) const;

private:
  int k_;
  std::string name_;
  Enumerator enum_;
  LevelFn level_;
  NameFn vname_;
  SquareFn squares_;
};

/// Λ ×_d Z^k with vertex ids (v, n_1, ..., n_k).
LazyKGraph skew_product(std::shared_ptr<const KGraph> g);

/// Bounded leaf test: explores descendants of total degree <= depth. A branching
/// vertex gives an exact No; otherwise Yes, flagged as bounded unless every
/// descendant was explored.
Tri is_leaf(const LazyKGraph& g, const LazyVertex& v, std::int64_t depth);

std::string lazy_vertex_str(const LazyVertex& v);

}  // namespace kg
