#include "kgraph/replay.hpp"

#include <algorithm>
#include <deque>

#include "kgraph/classify.hpp"
#include "kgraph/lattice.hpp"
#include "kgraph/monoid.hpp"
#include "kgraph/rewrite.hpp"

namespace kg {

Verdict claimed_verdict(CertKind k) {
  switch (k) {
    case CertKind::Reflexive:
    case CertKind::Derivation:
    case CertKind::LevelEquality:
    case CertKind::LevelDominance:
    case CertKind::LeafGenerator:
    case CertKind::LeafClosure:
    case CertKind::MultiplicativeIndependence:
    case CertKind::FreeAction:
    case CertKind::InjectiveOrbit:
    case CertKind::TrivialLattice:
    case CertKind::SupportInside:
    case CertKind::LinePointReach:
    case CertKind::BoundedEvidence:
      return Verdict::Yes;
    case CertKind::ZeroSeparated:
    case CertKind::LinearInvariant:
    case CertKind::FiniteReducts:
    case CertKind::InjectiveMatrices:
    case CertKind::KernelStabilized:
    case CertKind::ConicalZero:
    case CertKind::BranchingVertex:
    case CertKind::NotSingleGenerator:
    case CertKind::ZeroElement:
    case CertKind::ClosureGap:
    case CertKind::PeriodicElement:
    case CertKind::PeriodicAtom:
    case CertKind::ProperHS:
    case CertKind::SupportEscapes:
    case CertKind::LinePointMissing:
      return Verdict::No;
    default:
      return Verdict::Unknown;
  }
}

namespace {

bool is_m_chain(const Certificate& c) {
  auto empty_offsets = [](const TElement& e) {
    return std::all_of(e.terms().begin(), e.terms().end(), [](const auto& t) { return t.first.offset.size() == 0; });
  };
  return empty_offsets(c.a) && empty_offsets(c.b) &&
         std::all_of(c.chain.begin(), c.chain.end(), [](const ChainLink& l) { return l.gen.offset.size() == 0; });
}

template <class Sys>
FreeElement<typename Sys::generator> from_t(const Sys& sys, const TElement& e) {
  FreeElement<typename Sys::generator> out;
  for (const auto& [t, n] : e.terms()) out.add(sys.from_tgen(t), n);
  return out;
}

template <class Sys>
bool replay_chain(const Sys& sys, const Certificate& c) {
  DerivationTrace<typename Sys::generator> tr;
  for (const auto& l : c.chain) tr.push_back({sys.from_tgen(l.gen), l.color, l.times, l.inverse});
  auto end = replay(sys, from_t(sys, c.a), tr);
  return end && *end == from_t(sys, c.b);
}

template <class Sys>
bool replay_reducts(const Sys& sys, const Certificate& c) {
  if (sys.has_sources()) return false;
  auto a = from_t(sys, c.a), b = from_t(sys, c.b);
  auto ra = reachable(sys, a, c.bound), rb = reachable(sys, b, c.bound);
  if (!ra.closed || !rb.closed) return false;
  for (const auto& [x, tr] : ra.elements)
    if (rb.elements.count(x)) return false;
  return true;
}

bool dominates(const BigVector& x, const BigVector& y) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > y[i]) return false;
  return true;
}

VertexSet as_set(const std::vector<VertexIndex>& v) { return VertexSet(v.begin(), v.end()); }

/// Vertex reached from a leaf by the unique path of degree m.
std::optional<VertexIndex> orbit_point(const KGraph& g, VertexIndex v, const Degree& m) {
  for (int i = 1; i <= g.rank(); ++i)
    for (std::int64_t t = 0; t < m[static_cast<std::size_t>(i - 1)]; ++t) {
      auto s = g.sources(v, i);
      if (s.size() != 1) return std::nullopt;
      v = s.front();
    }
  return v;
}

std::optional<LazyVertex> orbit_point(const LazyKGraph& g, LazyVertex v, const Degree& m) {
  for (int i = 1; i <= g.rank(); ++i)
    for (std::int64_t t = 0; t < m[static_cast<std::size_t>(i - 1)]; ++t) {
      auto s = g.sources(v, i);
      if (s.size() != 1) return std::nullopt;
      v = s.front();
    }
  return v;
}

bool replay_level(const KGraph& g, const Certificate& c) {
  if (g.has_sources()) return false;
  LevelEngine eng(g);
  const Offset s = c.level + c.push;
  if (!c.push.is_degree()) return false;
  switch (c.kind) {
    case CertKind::LevelEquality:
      return eng.push(c.a, s) == eng.push(c.b, s);
    case CertKind::LevelDominance:
      return dominates(eng.push(c.a, s), eng.push(c.b, s));
    case CertKind::InjectiveMatrices:
      return eng.exact_available() && eng.push(c.a, c.level) != eng.push(c.b, c.level);
    case CertKind::KernelStabilized:
      return eng.commuting() && eng.stabilization().leq(c.push) && eng.push(c.a, s) != eng.push(c.b, s);
    case CertKind::SupportInside: {
      auto x = eng.push(c.a, s);
      auto h = as_set(c.sets.at(0));
      for (VertexIndex v = 0; v < x.size(); ++v)
        if (x[v] != 0 && !h.count(v)) return false;
      return true;
    }
    default:
      return false;
  }
}

bool replay_periodic_atom(const KGraph& g, const Certificate& c) {
  const auto k = static_cast<std::size_t>(g.rank());
  const auto v = c.vertices.at(0);
  if (!is_leaf(g, v).is_yes() || c.a != gen(v, Offset::zero(k))) return false;
  auto x1 = orbit_point(g, v, c.push), x2 = orbit_point(g, v, c.push2);
  if (!x1 || !x2 || *x1 != *x2 || c.push == c.push2) return false;
  if (c.period != normalize_sign(c.push2 - c.push)) return false;
  auto eq = t_equal(g, act(c.period, c.a), c.a);
  if (!eq.is_yes() || !replay(g, eq.cert)) return false;
  return std::all_of(c.parts.begin(), c.parts.end(), [&](const Certificate& p) { return replay(g, p); });
}

std::vector<VertexIndex> line_point_list(const KGraph& g) { return line_points(g).points; }

}  // namespace

bool replay(const KGraph& g, const Certificate& c) {
  try {
    switch (c.kind) {
      case CertKind::Reflexive:
        return c.a == c.b && c.chain.empty();
      case CertKind::Derivation:
        return is_m_chain(c) ? replay_chain(GraphMonoidSystem(g), c) : replay_chain(SkewSystem(g), c);
      case CertKind::ZeroSeparated:
      case CertKind::ConicalZero:
        return c.kind == CertKind::ZeroSeparated ? c.a.is_zero() != c.b.is_zero()
                                                 : !c.a.is_zero() && c.b.is_zero();
      case CertKind::LinearInvariant:
        return check_invariant(g, c);
      case CertKind::FiniteReducts:
        return is_m_chain(c) ? replay_reducts(GraphMonoidSystem(g), c) : replay_reducts(SkewSystem(g), c);
      case CertKind::LevelEquality:
      case CertKind::LevelDominance:
      case CertKind::InjectiveMatrices:
      case CertKind::KernelStabilized:
      case CertKind::SupportInside:
        return replay_level(g, c);
      case CertKind::LeafGenerator:
        return is_leaf(g, c.vertices.at(0)).is_yes();
      case CertKind::BranchingVertex: {
        auto v = c.vertices.at(0), w = c.vertices.at(1);
        auto cnt = static_cast<std::int64_t>(g.edges_into(w, static_cast<int>(c.numbers.at(0))).size());
        return descendants(g, v).count(w) && cnt == c.numbers.at(1) && cnt != 1;
      }
      case CertKind::NotSingleGenerator:
        return c.a.total() > 1;
      case CertKind::ZeroElement:
        return c.a.is_zero();
      case CertKind::LeafClosure: {
        for (auto v : c.vertices)
          if (!is_leaf(g, v).is_yes()) return false;
        return saturated_hereditary_closure(g, as_set(c.vertices)).vertices.size() == g.vertex_count();
      }
      case CertKind::ClosureGap: {
        if (c.vertices != atoms(g).leaves) return false;
        auto h = saturated_hereditary_closure(g, as_set(c.vertices)).vertices;
        return !h.count(static_cast<VertexIndex>(c.numbers.at(0)));
      }
      case CertKind::MultiplicativeIndependence: {
        if (g.vertex_count() != 1 || g.has_sources()) return false;
        for (int i = 1; i <= g.rank(); ++i)
          if (static_cast<std::int64_t>(g.edges_into(0, i).size()) != c.numbers.at(static_cast<std::size_t>(i - 1)))
            return false;
        return !multiplicative_relation(c.numbers);
      }
      case CertKind::PeriodicElement: {
        if (c.a.is_zero() || c.period.is_zero()) return false;
        auto eq = t_equal(g, act(c.period, c.a), c.a);
        return eq.is_yes() && replay(g, eq.cert);
      }
      case CertKind::PeriodicAtom:
        return replay_periodic_atom(g, c);
      case CertKind::FreeAction:
        if (c.parts.empty()) return g.vertex_count() == 0;
        return std::all_of(c.parts.begin(), c.parts.end(), [&](const Certificate& p) {
          return claimed_verdict(p.kind) == Verdict::Yes && replay(g, p);
        });
      case CertKind::TrivialLattice: {
        if (g.has_sources()) return false;
        for (VertexIndex v = 0; v < g.vertex_count(); ++v)
          if (saturated_hereditary_closure(g, {v}).vertices.size() != g.vertex_count()) return false;
        return true;
      }
      case CertKind::ProperHS: {
        auto h = as_set(c.sets.at(0));
        return !g.has_sources() && !h.empty() && h.size() < g.vertex_count() && is_hereditary(g, h) &&
               is_saturated(g, h);
      }
      case CertKind::SupportEscapes:
        return ideal_membership(g, c.a, as_set(c.sets.at(0))).is_no();
      case CertKind::LinePointReach: {
        if (g.has_sources()) return false;
        auto lp = as_set(line_point_list(g));
        for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
          auto d = descendants(g, v);
          if (std::none_of(d.begin(), d.end(), [&](VertexIndex w) { return lp.count(w) > 0; })) return false;
        }
        return true;
      }
      case CertKind::LinePointMissing: {
        if (g.has_sources()) return false;
        auto lp = as_set(line_point_list(g));
        auto d = descendants(g, static_cast<VertexIndex>(c.numbers.at(0)));
        return std::none_of(d.begin(), d.end(), [&](VertexIndex w) { return lp.count(w) > 0; });
      }
      case CertKind::Quotient:
        return c.parts.size() == 1 && replay(quotient_graph(g, as_set(c.sets.at(0))), c.parts[0]);
      case CertKind::Composite:
        return !c.parts.empty() &&
               std::all_of(c.parts.begin(), c.parts.end(), [&](const Certificate& p) { return replay(g, p); });
      default:
        return false;
    }
  } catch (const std::exception&) {
    return false;
  }
}

namespace {

bool lazy_reachable(const LazyKGraph& g, const LazyVertex& from, const LazyVertex& to, std::int64_t depth) {
  std::set<LazyVertex> seen{from};
  std::vector<LazyVertex> frontier{from};
  for (std::int64_t d = 0; d <= depth && !frontier.empty(); ++d) {
    std::vector<LazyVertex> next;
    for (const auto& x : frontier) {
      if (x == to) return true;
      for (int i = 1; i <= g.rank(); ++i)
        for (const auto& s : g.sources(x, i))
          if (seen.insert(s).second) next.push_back(s);
    }
    frontier = std::move(next);
  }
  return false;
}

const std::int64_t kLazyDepth = 64;

}  // namespace

bool replay(const LazyKGraph& g, const Certificate& c) {
  try {
    const auto k = static_cast<std::size_t>(g.rank());
    switch (c.kind) {
      case CertKind::Reflexive:
        return c.lazy_a == c.lazy_b;
      case CertKind::LevelEquality: {
        LazyLevelEngine eng(g);
        auto x = eng.push(c.lazy_a, c.level + c.push);
        auto y = eng.push(c.lazy_b, c.level + c.push);
        return c.push.is_degree() && x && y && *x == *y;
      }
      case CertKind::LeafGenerator:
        return is_leaf(g, c.lazy_vertices.at(0), c.bound > 0 ? c.bound : kLazyDepth).is_yes();
      case CertKind::BranchingVertex: {
        const auto& v = c.lazy_vertices.at(0);
        const auto& w = c.lazy_vertices.at(1);
        auto cnt = static_cast<std::int64_t>(g.sources(w, static_cast<int>(c.numbers.at(0))).size());
        return cnt == c.numbers.at(1) && cnt != 1 && lazy_reachable(g, v, w, kLazyDepth);
      }
      case CertKind::LeafClosure: {
        const LazyVertexSet all(c.lazy_vertices.begin(), c.lazy_vertices.end());
        LazyVertexSet leaves;
        for (auto i : c.numbers) {
          const auto& v = c.lazy_vertices.at(static_cast<std::size_t>(i));
          if (!is_leaf(g, v, c.bound).is_yes()) return false;
          leaves.insert(v);
        }
        return truncated_closure(g, leaves, all) == all;
      }
      case CertKind::PeriodicAtom: {
        const auto& v = c.lazy_vertices.at(0);
        if (c.lazy_a != LazyTElement(LazyTGen{v, Offset::zero(k)})) return false;
        if (!is_leaf(g, v, c.bound > 0 ? c.bound : kLazyDepth).is_yes()) return false;
        auto x1 = orbit_point(g, v, c.push), x2 = orbit_point(g, v, c.push2);
        if (!x1 || !x2 || *x1 != *x2 || c.push == c.push2) return false;
        if (c.period != normalize_sign(c.push2 - c.push)) return false;
        auto eq = t_equal(g, act(c.period, c.lazy_a), c.lazy_a, 16);
        return eq.is_yes() && replay(g, eq.cert);
      }
      case CertKind::InjectiveOrbit: {
        const auto& v = c.lazy_vertices.at(0);
        if (!is_leaf(g, v, c.bound).is_yes()) return false;
        return !leaf_orbit_collision(g, v, c.bound);
      }
      case CertKind::PeriodicElement: {
        if (c.lazy_a.is_zero() || c.period.is_zero()) return false;
        auto eq = t_equal(g, act(c.period, c.lazy_a), c.lazy_a, c.bound > 0 ? c.bound : 16);
        return eq.is_yes() && replay(g, eq.cert);
      }
      case CertKind::BoundedEvidence:
        return is_cofinal(g, c.lazy_vertices).is_yes();
      case CertKind::LinePointReach: {
        auto n = static_cast<std::size_t>(c.numbers.at(0));
        std::vector<LazyVertex> sample(c.lazy_vertices.begin(), c.lazy_vertices.begin() + static_cast<std::ptrdiff_t>(n));
        Bounds b;
        b.depth = c.bound;
        return socle_essential(g, sample, b).is_yes();
      }
      case CertKind::Composite:
        return !c.parts.empty() &&
               std::all_of(c.parts.begin(), c.parts.end(), [&](const Certificate& p) { return replay(g, p); });
      default:
        return false;
    }
  } catch (const std::exception&) {
    return false;
  }
}

namespace {

template <class G>
bool replay_tri(const G& g, const Tri& t) {
  if (t.is_unknown()) return false;
  auto claim = claimed_verdict(t.cert.kind);
  if (claim != Verdict::Unknown && claim != t.verdict) return false;
  if (t.cert.kind == CertKind::Composite || t.cert.kind == CertKind::Quotient) {
    // a No conjunction carries its refuting part; a Yes one carries every part
    for (const auto& p : t.cert.parts) {
      auto pc = claimed_verdict(p.kind);
      if (pc != Verdict::Unknown && pc != t.verdict) return false;
    }
  }
  return replay(g, t.cert);
}

}  // namespace

bool replay(const KGraph& g, const Tri& t) { return replay_tri(g, t); }
bool replay(const LazyKGraph& g, const Tri& t) { return replay_tri(g, t); }

}  // namespace kg
