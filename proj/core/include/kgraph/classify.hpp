#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "kgraph/graph.hpp"
#include "kgraph/lattice.hpp"
#include "kgraph/monoid.hpp"
#include "kgraph/path.hpp"
#include "kgraph/tri.hpp"

namespace kg {

Tri is_cofinal(const KGraph& g);
/// Bounded evidence: the truncated closure of every sampled vertex covers the sample.
Tri is_cofinal(const LazyKGraph& g, const std::vector<LazyVertex>& sample);

/// Pairs (α, β) with equal range and source, α != β, degrees <= box; for
/// each, an exit τ with MCE(ατ, βτ) empty is searched among degrees <= box.
struct LewinSimsEvidence {
  std::int64_t box = 0;
  std::size_t pairs = 0;
  std::size_t resolved = 0;
  std::optional<std::pair<Path, Path>> unresolved;  // first pair without an exit
  bool truncated = false;                           // stopped at the pair budget
};
LewinSimsEvidence lewin_sims_evidence(const KGraph& g, std::int64_t box, std::size_t max_pairs = 2000);

Tri is_aperiodic(const KGraph& g, const Bounds& bounds = {});
Tri is_strongly_aperiodic(const KGraph& g, const Bounds& bounds = {});

struct LinePoints {
  std::vector<VertexIndex> points;
  std::map<VertexIndex, Tri> verdicts;
};
LinePoints line_points(const KGraph& g, const Bounds& bounds = {});

struct LazyLinePoints {
  std::vector<LazyVertex> points;
  std::map<LazyVertex, Tri> verdicts;  // Yes verdicts are bounded by the depth
};
LazyLinePoints line_points(const LazyKGraph& g, const std::vector<LazyVertex>& sample, const Bounds& bounds = {});

HSSubset socle_vertices(const KGraph& g, const Bounds& bounds = {});
LazyVertexSet socle_vertices(const LazyKGraph& g, const std::vector<LazyVertex>& sample, const Bounds& bounds = {});
Tri socle_essential(const KGraph& g, const Bounds& bounds = {});
Tri socle_essential(const LazyKGraph& g, const std::vector<LazyVertex>& sample, const Bounds& bounds = {});

Tri is_semisimple(const KGraph& g, const Bounds& bounds = {});
Tri is_semisimple(const LazyKGraph& g, const std::vector<LazyVertex>& sample, const Bounds& bounds = {});

/// Classes of line points under x(m) = y(n).
std::size_t count_line_point_classes(const KGraph& g, const std::vector<VertexIndex>& points);
std::size_t count_line_point_classes(const LazyKGraph& g, const std::vector<LazyVertex>& points,
                                     std::int64_t depth);

struct ClassificationReport {
  bool has_sources = false;
  Bounds bounds;
  Tri cofinal, atomic, free_action, aperiodic, strongly_aperiodic, semisimple, socle_essential;
  // derived
  Tri graded_basic_ideal_simple, simple;
  std::vector<VertexIndex> line_points;
  std::vector<VertexIndex> socle;
  std::vector<VertexIndex> atoms;  // leaf vertices
  std::vector<std::pair<VertexIndex, Offset>> periodic_generators;
  std::optional<LatticeListing> lattice;
  std::optional<LewinSimsEvidence> lewin_sims;
  std::size_t line_point_classes = 0;
};
ClassificationReport kp_report(const KGraph& g, const Bounds& bounds = {});

/// Recomputes the derived flags from the primitive verdicts.
bool derived_flags_consistent(const ClassificationReport& r);

struct LazyReport {
  std::vector<LazyVertex> sample;
  Bounds bounds;
  Tri cofinal;
  Tri atomic;
  LazyLinePoints line_points;
  std::optional<std::pair<LazyTElement, Offset>> periodic;
  Tri semisimple;
  Tri socle_essential;
  std::size_t line_point_classes = 0;
};
LazyReport lazy_report(const LazyKGraph& g, const std::vector<LazyVertex>& sample, const Bounds& bounds = {});

}  // namespace kg
