#include "kgraph/classify.hpp"

#include <algorithm>
#include <numeric>

namespace kg {

namespace {

const char* kSources = "graph has sources; verdict withheld";

Certificate lazy_cert(CertKind kind, std::vector<LazyVertex> vs, std::int64_t bound, std::string detail) {
  Certificate c;
  c.kind = kind;
  c.lazy_vertices = std::move(vs);
  c.bound = bound;
  c.detail = std::move(detail);
  return c;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::size_t classes() {
    std::size_t n = 0;
    for (std::size_t i = 0; i < parent.size(); ++i) n += find(i) == i;
    return n;
  }
};

template <class Set>
bool meets(const Set& a, const Set& b) {
  for (const auto& x : a)
    if (b.count(x)) return true;
  return false;
}

}  // namespace

Tri is_cofinal(const KGraph& g) {
  if (g.has_sources()) return Tri::unsupported(kSources);
  BooleanReach reach(g);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    auto h = saturated_hereditary_closure(g, {v}, reach).vertices;
    if (h.size() < g.vertex_count()) {
      Certificate c;
      c.kind = CertKind::ProperHS;
      c.sets = {std::vector<VertexIndex>(h.begin(), h.end())};
      c.vertices = {v};
      c.detail = "closure of " + g.vertex_name(v) + " is a proper hereditary saturated set";
      return Tri::no(std::move(c));
    }
  }
  Certificate c;
  c.kind = CertKind::TrivialLattice;
  c.detail = "every vertex generates all of the vertex set";
  return Tri::yes(std::move(c));
}

Tri is_cofinal(const LazyKGraph& g, const std::vector<LazyVertex>& sample) {
  LazyVertexSet all(sample.begin(), sample.end());
  for (const auto& v : sample)
    if (truncated_closure(g, {v}, all) != all)
      return Tri::exhausted(static_cast<std::int64_t>(sample.size()),
                            "truncated closure of " + g.vertex_name(v) + " misses sampled vertices");
  return Tri::yes(lazy_cert(CertKind::BoundedEvidence, sample, 0,
                            "truncated closure of every sampled vertex covers the sample"),
                  true);
}

namespace {

/// Whether some path extends both a and b (MCE(a, b) nonempty).
bool common_extension(const KGraph& g, const Path& a, const Path& b) {
  const Degree top = join(a.degree, b.degree);
  for (const auto& alpha : enumerate_paths(g, source(g, a), top - a.degree))
    if (factor(g, compose(g, a, alpha), b.degree).first == b) return true;
  return false;
}

}  // namespace

LewinSimsEvidence lewin_sims_evidence(const KGraph& g, std::int64_t box, std::size_t max_pairs) {
  LewinSimsEvidence ev;
  ev.box = box;
  const auto k = static_cast<std::size_t>(g.rank());
  auto degrees = degrees_up_to(Degree::constant(k, box));
  // Paths from each vertex with degree in the box, shortest first.
  std::vector<std::vector<Path>> from(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    for (const auto& d : degrees)
      for (auto& p : enumerate_paths(g, v, d)) from[v].push_back(std::move(p));
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    std::map<VertexIndex, std::vector<const Path*>> by_source;
    for (const auto& p : from[v]) by_source[source(g, p)].push_back(&p);
    for (const auto& [s, paths] : by_source)
      for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = i + 1; j < paths.size(); ++j) {
          if (ev.pairs == max_pairs) {
            ev.truncated = true;
            return ev;
          }
          const auto& a = *paths[i];
          const auto& b = *paths[j];
          ++ev.pairs;
          bool found = a.degree == b.degree;
          for (std::size_t t = 0; !found && t < from[s].size(); ++t)
            found = !common_extension(g, compose(g, a, from[s][t]), compose(g, b, from[s][t]));
          if (found)
            ++ev.resolved;
          else if (!ev.unresolved)
            ev.unresolved = std::pair{a, b};
        }
  }
  return ev;
}

namespace {

Tri aperiodic_with_evidence(const KGraph& g, const Bounds& bounds, std::optional<LewinSimsEvidence>* evidence) {
  if (g.has_sources()) return Tri::unsupported(kSources);
  auto free = acts_freely(g, bounds);
  if (free.is_yes()) {
    Certificate c;
    c.kind = CertKind::FreeAction;
    c.parts = {free.cert};
    c.detail = "the action on the talented monoid is free";
    return Tri::yes(std::move(c));
  }
  auto atomic = is_atomic(g);
  if (free.is_no() && atomic.is_yes()) {
    Certificate c = free.cert;
    c.parts = {atomic.cert};
    c.detail += "; the monoid is atomic";
    return Tri::no(std::move(c));
  }
  auto ev = lewin_sims_evidence(g, 2);
  auto t = Tri::exhausted(bounds.box, "Lewin-Sims evidence: " + std::to_string(ev.resolved) + " of " +
                                          std::to_string(ev.pairs) + " pairs have an exit up to degree box 2");
  if (evidence) *evidence = std::move(ev);
  return t;
}

Tri strongly_aperiodic(const KGraph& g, const Bounds& bounds, const Tri* whole) {
  if (g.has_sources()) return Tri::unsupported(kSources);
  LatticeListing lattice;
  try {
    lattice = all_hs_subsets(g);
  } catch (const ResourceError& e) {
    return Tri::exhausted(16, e.what());
  }
  std::vector<Tri> parts;
  for (const auto& h : lattice.sets) {
    if (h.size() == g.vertex_count()) continue;
    auto r = h.empty() && whole ? *whole : aperiodic_with_evidence(quotient_graph(g, h), bounds, nullptr);
    Certificate c;
    c.kind = CertKind::Quotient;
    c.sets = {std::vector<VertexIndex>(h.begin(), h.end())};
    c.parts = {std::move(r.cert)};
    c.detail = "aperiodicity of the quotient";
    parts.push_back(Tri{r.verdict, std::move(c), r.bounded});
    if (r.is_no()) break;  // decides the conjunction
  }
  return tri_and(parts, "aperiodicity of every quotient by a proper hereditary saturated set");
}

}  // namespace

Tri is_aperiodic(const KGraph& g, const Bounds& bounds) { return aperiodic_with_evidence(g, bounds, nullptr); }


Tri is_strongly_aperiodic(const KGraph& g, const Bounds& bounds) { return strongly_aperiodic(g, bounds, nullptr); }

LinePoints line_points(const KGraph& g, const Bounds&) {
  LinePoints out;
  const auto k = static_cast<std::size_t>(g.rank());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (g.has_sources()) {
      out.verdicts.emplace(v, Tri::unsupported(kSources));
      continue;
    }
    auto leaf = is_leaf(g, v);
    if (!leaf.is_yes()) {
      out.verdicts.emplace(v, std::move(leaf));
      continue;
    }
    auto col = leaf_orbit_collision(g, v, static_cast<std::int64_t>(g.vertex_count()));
    if (!col) {
      out.verdicts.emplace(v, Tri::exhausted(static_cast<std::int64_t>(g.vertex_count())));
      continue;
    }
    Certificate c;
    c.kind = CertKind::PeriodicAtom;
    c.a = gen(v, Offset::zero(k));
    c.vertices = {v};
    c.push = col->first;
    c.push2 = col->second;
    c.period = col->period;
    c.detail = "leaf orbit repeats, so the atom is periodic";
    out.verdicts.emplace(v, Tri::no(std::move(c)));
  }
  return out;
}

LazyLinePoints line_points(const LazyKGraph& g, const std::vector<LazyVertex>& sample, const Bounds& bounds) {
  LazyLinePoints out;
  const auto k = static_cast<std::size_t>(g.rank());
  for (const auto& v : sample) {
    auto leaf = is_leaf(g, v, bounds.depth);
    if (!leaf.is_yes()) {
      out.verdicts.emplace(v, std::move(leaf));
      continue;
    }
    if (auto col = leaf_orbit_collision(g, v, bounds.depth)) {
      Certificate c = lazy_cert(CertKind::PeriodicAtom, {v}, bounds.depth, "leaf orbit repeats");
      c.lazy_a = LazyTElement(LazyTGen{v, Offset::zero(k)});
      c.push = col->first;
      c.push2 = col->second;
      c.period = col->period;
      out.verdicts.emplace(v, Tri::no(std::move(c)));
      continue;
    }
    Certificate c = lazy_cert(CertKind::InjectiveOrbit, {v}, bounds.depth,
                              "leaf with injective orbit up to total degree " + std::to_string(bounds.depth));
    c.parts = {leaf.cert};
    out.verdicts.emplace(v, Tri::yes(std::move(c), true));
    out.points.push_back(v);
  }
  return out;
}

HSSubset socle_vertices(const KGraph& g, const Bounds& bounds) {
  auto lp = line_points(g, bounds);
  return saturated_hereditary_closure(g, VertexSet(lp.points.begin(), lp.points.end()));
}

LazyVertexSet socle_vertices(const LazyKGraph& g, const std::vector<LazyVertex>& sample, const Bounds& bounds) {
  auto lp = line_points(g, sample, bounds);
  return truncated_closure(g, LazyVertexSet(lp.points.begin(), lp.points.end()),
                           LazyVertexSet(sample.begin(), sample.end()));
}

Tri socle_essential(const KGraph& g, const Bounds& bounds) {
  if (g.has_sources()) return Tri::unsupported(kSources);
  auto lp = line_points(g, bounds);
  VertexSet points(lp.points.begin(), lp.points.end());
  Certificate c;
  c.vertices = lp.points;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (!meets(descendants(g, v), points)) {
      c.kind = CertKind::LinePointMissing;
      c.numbers = {static_cast<std::int64_t>(v)};
      c.detail = g.vertex_name(v) + " reaches no line point";
      return Tri::no(std::move(c));
    }
  c.kind = CertKind::LinePointReach;
  c.detail = "every vertex reaches a line point";
  return Tri::yes(std::move(c));
}

Tri socle_essential(const LazyKGraph& g, const std::vector<LazyVertex>& sample, const Bounds& bounds) {
  auto lp = line_points(g, sample, bounds);
  LazyVertexSet points(lp.points.begin(), lp.points.end());
  for (const auto& v : sample) {
    if (points.count(v)) continue;
    // descendants inside the sample
    LazyVertexSet seen{v};
    std::vector<LazyVertex> todo{v};
    bool hit = false;
    while (!todo.empty() && !hit) {
      auto x = todo.back();
      todo.pop_back();
      for (int i = 1; i <= g.rank() && !hit; ++i)
        for (const auto& s : g.sources(x, i)) {
          if (points.count(s)) hit = true;
          if (std::find(sample.begin(), sample.end(), s) != sample.end() && seen.insert(s).second) todo.push_back(s);
        }
    }
    if (!hit) return Tri::exhausted(bounds.depth, g.vertex_name(v) + " reaches no sampled line point");
  }
  Certificate c = lazy_cert(CertKind::LinePointReach, sample, bounds.depth,
                            "every sampled vertex reaches a sampled line point");
  c.lazy_vertices.insert(c.lazy_vertices.end(), lp.points.begin(), lp.points.end());
  c.numbers = {static_cast<std::int64_t>(sample.size())};
  return Tri::yes(std::move(c), true);
}

Tri is_semisimple(const KGraph& g, const Bounds& bounds) {
  if (g.has_sources()) return Tri::unsupported(kSources);
  return tri_and({is_atomic(g), acts_freely(g, bounds)}, "atomic and the action is free");
}

namespace {

Tri lazy_semisimple(const std::vector<LazyVertex>& sample, const Bounds& bounds,
                    const std::optional<std::pair<LazyTElement, Offset>>& periodic, const LazyLinePoints& lp) {
  if (periodic) {
    Certificate c;
    c.kind = CertKind::PeriodicElement;
    c.lazy_a = periodic->first;
    c.period = periodic->second;
    c.bound = bounds.push;
    c.detail = "a periodic element rules out a free action";
    return Tri::no(std::move(c));
  }
  if (lp.points.size() == sample.size()) {
    Certificate c;
    c.kind = CertKind::Composite;
    c.detail = "every sampled vertex is a line point and no periodic element was found";
    for (const auto& v : sample) c.parts.push_back(lp.verdicts.at(v).cert);
    return Tri::yes(std::move(c), true);
  }
  return Tri::exhausted(bounds.depth, "some sampled vertex is not a line point within the bound");
}

}  // namespace

Tri is_semisimple(const LazyKGraph& g, const std::vector<LazyVertex>& sample, const Bounds& bounds) {
  auto lp = line_points(g, sample, bounds);
  return lazy_semisimple(sample, bounds, find_periodic_element(g, sample, bounds), lp);
}

std::size_t count_line_point_classes(const KGraph& g, const std::vector<VertexIndex>& points) {
  std::vector<VertexSet> orbits;
  for (auto v : points) orbits.push_back(descendants(g, v));
  UnionFind uf(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (meets(orbits[i], orbits[j])) uf.unite(i, j);
  return uf.classes();
}

std::size_t count_line_point_classes(const LazyKGraph& g, const std::vector<LazyVertex>& points,
                                     std::int64_t depth) {
  std::vector<std::set<LazyVertex>> orbits;
  for (const auto& v : points) orbits.push_back(leaf_orbit(g, v, depth));
  UnionFind uf(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (meets(orbits[i], orbits[j])) uf.unite(i, j);
  return uf.classes();
}

ClassificationReport kp_report(const KGraph& g, const Bounds& bounds) {
  ClassificationReport r;
  r.bounds = bounds;
  r.has_sources = g.has_sources();
  if (r.has_sources) {
    auto u = Tri::unsupported(kSources);
    r.cofinal = r.atomic = r.free_action = r.aperiodic = r.strongly_aperiodic = r.semisimple =
        r.socle_essential = u;
    r.graded_basic_ideal_simple = r.simple = u;
    r.lewin_sims = lewin_sims_evidence(g, 2);
    r.periodic_generators = periodic_generators(g, bounds);
    return r;
  }
  r.cofinal = is_cofinal(g);
  r.atomic = is_atomic(g);
  r.free_action = acts_freely(g, bounds);
  r.aperiodic = aperiodic_with_evidence(g, bounds, &r.lewin_sims);
  r.strongly_aperiodic = strongly_aperiodic(g, bounds, &r.aperiodic);
  r.semisimple = is_semisimple(g, bounds);
  r.socle_essential = socle_essential(g, bounds);
  r.graded_basic_ideal_simple = r.cofinal;
  r.simple = tri_and({r.cofinal, r.aperiodic}, "cofinal and aperiodic");
  r.line_points = line_points(g, bounds).points;
  auto soc = saturated_hereditary_closure(g, VertexSet(r.line_points.begin(), r.line_points.end())).vertices;
  r.socle.assign(soc.begin(), soc.end());
  r.atoms = atoms(g).leaves;
  if (g.vertex_count() <= 12) r.lattice = all_hs_subsets(g, 12);
  r.line_point_classes = count_line_point_classes(g, r.line_points);
  r.periodic_generators = periodic_generators(g, bounds);
  return r;
}

bool derived_flags_consistent(const ClassificationReport& r) {
  return r.graded_basic_ideal_simple.verdict == r.cofinal.verdict &&
         r.simple.verdict == tri_and({r.cofinal, r.aperiodic}).verdict;
}

LazyReport lazy_report(const LazyKGraph& g, const std::vector<LazyVertex>& sample, const Bounds& bounds) {
  LazyReport r;
  r.sample = sample;
  r.bounds = bounds;
  r.cofinal = is_cofinal(g, sample);
  r.atomic = is_atomic(g, sample, bounds.depth);
  r.line_points = line_points(g, sample, bounds);
  r.periodic = find_periodic_element(g, sample, bounds);
  r.semisimple = lazy_semisimple(sample, bounds, r.periodic, r.line_points);
  r.socle_essential = socle_essential(g, sample, bounds);
  r.line_point_classes = count_line_point_classes(g, r.line_points.points, bounds.depth);
  return r;
}

}  // namespace kg
