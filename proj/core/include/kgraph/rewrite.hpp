#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kgraph/element.hpp"
#include "kgraph/graph.hpp"
#include "kgraph/tri.hpp"

namespace kg {

class StepError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// `times` occurrences of gen replaced by their color-`color` sources, or the
/// reverse move when `inverse` is set.
template <class Gen>
struct TraceStep {
  Gen gen;
  int color = 0;
  std::uint64_t times = 1;
  bool inverse = false;
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

template <class Gen>
using DerivationTrace = std::vector<TraceStep<Gen>>;

/// Relations of M_Λ: generators are vertices.
class GraphMonoidSystem {
public:
  using generator = VertexIndex;
  explicit GraphMonoidSystem(const KGraph& g) : g_(&g) {}

  const KGraph& graph() const { return *g_; }
  int rank() const { return g_->rank(); }
  bool has_sources() const { return g_->has_sources(); }
  std::vector<VertexIndex> expand(VertexIndex v, int color) const { return g_->sources(v, color); }
  /// (x, i) with v among the color-i sources of x.
  std::vector<std::pair<VertexIndex, int>> preimages(VertexIndex v) const;
  TGen to_tgen(VertexIndex v) const { return TGen{v, Offset()}; }
  VertexIndex from_tgen(const TGen& t) const { return t.vertex; }

private:
  const KGraph* g_;
};

/// Relations of M over the skew product Λ ×_d Z^k: generators are (v, n).
class SkewSystem {
public:
  using generator = TGen;
  explicit SkewSystem(const KGraph& g) : g_(&g) {}

  const KGraph& graph() const { return *g_; }
  int rank() const { return g_->rank(); }
  bool has_sources() const { return g_->has_sources(); }
  std::vector<TGen> expand(const TGen& x, int color) const;
  std::vector<std::pair<TGen, int>> preimages(const TGen& x) const;
  const Offset& offset(const TGen& x) const { return x.offset; }
  TGen to_tgen(const TGen& x) const { return x; }
  TGen from_tgen(const TGen& t) const { return t; }

private:
  const KGraph* g_;
};

struct RewriteLimits {
  std::size_t max_states = 200000;
};

// ---------------------------------------------------------------------------

template <class Sys>
FreeElement<typename Sys::generator> step(const Sys& sys, const FreeElement<typename Sys::generator>& elem,
                                          const typename Sys::generator& gen, int color,
                                          std::uint64_t times = 1) {
  if (elem.count(gen) < times) throw StepError("generator occurrence not present");
  auto src = sys.expand(gen, color);
  if (src.empty()) throw StepError("inapplicable rule: no edges of this color");
  auto out = elem;
  out.remove(gen, times);
  for (const auto& s : src) out.add(s, times);
  return out;
}

/// Applies one trace step; nullopt when it does not apply.
template <class Sys>
std::optional<FreeElement<typename Sys::generator>> apply_step(
    const Sys& sys, FreeElement<typename Sys::generator> elem, const TraceStep<typename Sys::generator>& s) {
  if (s.times == 0) return elem;
  auto src = sys.expand(s.gen, s.color);
  if (src.empty()) return std::nullopt;
  if (!s.inverse) {
    if (!elem.remove(s.gen, s.times)) return std::nullopt;
    for (const auto& x : src) elem.add(x, s.times);
  } else {
    FreeElement<typename Sys::generator> need;
    for (const auto& x : src) need.add(x, s.times);
    if (!need.leq(elem)) return std::nullopt;
    for (const auto& [x, n] : need.terms()) elem.remove(x, n);
    elem.add(s.gen, s.times);
  }
  return elem;
}

template <class Sys>
std::optional<FreeElement<typename Sys::generator>> replay(const Sys& sys,
                                                         FreeElement<typename Sys::generator> start,
                                                         const DerivationTrace<typename Sys::generator>& trace) {
  for (const auto& s : trace) {
    auto next = apply_step(sys, std::move(start), s);
    if (!next) return std::nullopt;
    start = std::move(*next);
  }
  return start;
}

template <class Gen>
DerivationTrace<Gen> reversed(const DerivationTrace<Gen>& t) {
  DerivationTrace<Gen> r(t.rbegin(), t.rend());
  for (auto& s : r) s.inverse = !s.inverse;
  return r;
}

namespace detail {

template <class Sys>
std::vector<std::pair<TraceStep<typename Sys::generator>, FreeElement<typename Sys::generator>>>
neighbours(const Sys& sys, const FreeElement<typename Sys::generator>& e, bool with_inverse) {
  using Gen = typename Sys::generator;
  std::vector<std::pair<TraceStep<Gen>, FreeElement<Gen>>> out;
  for (const auto& [g, n] : e.terms())
    for (int i = 1; i <= sys.rank(); ++i) {
      TraceStep<Gen> s{g, i, 1, false};
      if (auto r = apply_step(sys, e, s)) out.emplace_back(s, std::move(*r));
    }
  if (with_inverse) {
    std::set<std::pair<Gen, int>> tried;
    for (const auto& [g, n] : e.terms())
      for (auto& [x, i] : sys.preimages(g)) {
        if (!tried.emplace(x, i).second) continue;
        TraceStep<Gen> s{x, i, 1, true};
        if (auto r = apply_step(sys, e, s)) out.emplace_back(s, std::move(*r));
      }
  }
  return out;
}

}  // namespace detail

template <class Gen>
struct ReachResult {
  std::map<FreeElement<Gen>, DerivationTrace<Gen>> elements;
  bool closed = false;  // no unexplored successors remain
};

/// Everything reachable from elem in at most `bound` forward steps.
template <class Sys>
ReachResult<typename Sys::generator> reachable(const Sys& sys, const FreeElement<typename Sys::generator>& elem,
                                               std::int64_t bound, RewriteLimits lim = {}) {
  using Gen = typename Sys::generator;
  ReachResult<Gen> res;
  res.elements.emplace(elem, DerivationTrace<Gen>{});
  std::vector<FreeElement<Gen>> frontier{elem};
  bool truncated = false;
  for (std::int64_t d = 0; !frontier.empty(); ++d) {
    std::vector<FreeElement<Gen>> next;
    for (const auto& x : frontier) {
      for (auto& [s, y] : detail::neighbours(sys, x, false)) {
        if (res.elements.count(y)) continue;
        if (d >= bound || res.elements.size() >= lim.max_states) {
          truncated = true;
          continue;
        }
        auto tr = res.elements.at(x);
        tr.push_back(s);
        res.elements.emplace(y, std::move(tr));
        next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  res.closed = !truncated;
  return res;
}

template <class Gen>
struct Reduct {
  FreeElement<Gen> target;
  DerivationTrace<Gen> from_a, from_b;
};

namespace detail {

/// Expands every occurrence of every generator once by color i.
template <class Sys>
bool expand_all(const Sys& sys, FreeElement<typename Sys::generator>& e, int color,
                DerivationTrace<typename Sys::generator>& trace) {
  using Gen = typename Sys::generator;
  FreeElement<Gen> out;
  for (const auto& [g, n] : e.terms()) {
    auto src = sys.expand(g, color);
    if (src.empty()) return false;
    for (const auto& s : src) {
      if (n > (~std::uint64_t{0}) / 4) return false;
      out.add(s, n);
    }
    trace.push_back(TraceStep<Gen>{g, color, n, false});
  }
  e = std::move(out);
  return true;
}

/// Applies u -> sum over uΛ^m of s(λ) to every generator.
template <class Sys>
std::optional<std::pair<FreeElement<typename Sys::generator>, DerivationTrace<typename Sys::generator>>>
expand_degree(const Sys& sys, FreeElement<typename Sys::generator> e, const Degree& m) {
  DerivationTrace<typename Sys::generator> tr;
  try {
    for (int i = 1; i <= sys.rank(); ++i)
      for (std::int64_t t = 0; t < m[i - 1]; ++t)
        if (!expand_all(sys, e, i, tr)) return std::nullopt;
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
  return std::pair{std::move(e), std::move(tr)};
}

/// Pushes every generator (v, n) of a leveled system up to level t.
template <class Sys>
std::optional<std::pair<FreeElement<typename Sys::generator>, DerivationTrace<typename Sys::generator>>>
push_to(const Sys& sys, FreeElement<typename Sys::generator> e, const Offset& t) {
  using Gen = typename Sys::generator;
  DerivationTrace<Gen> tr;
  try {
    for (int i = 1; i <= sys.rank(); ++i) {
      while (true) {
        FreeElement<Gen> out;
        bool moved = false;
        for (const auto& [g, n] : e.terms()) {
          if (sys.offset(g)[i - 1] >= t[i - 1]) {
            out.add(g, n);
            continue;
          }
          auto src = sys.expand(g, i);
          if (src.empty()) return std::nullopt;
          for (const auto& s : src) out.add(s, n);
          tr.push_back(TraceStep<Gen>{g, i, n, false});
          moved = true;
        }
        e = std::move(out);
        if (!moved) break;
      }
    }
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
  return std::pair{std::move(e), std::move(tr)};
}

template <class Sys>
concept Leveled = requires(const Sys& s, const typename Sys::generator& g) {
  { s.offset(g) } -> std::convertible_to<const Offset&>;
};

}  // namespace detail

/// Some γ with a -> γ and b -> γ. Forward search first; on graphs without
/// sources the degree-matched expansions of the confluence argument follow.
template <class Sys>
std::optional<Reduct<typename Sys::generator>> common_reduct(const Sys& sys,
                                                             const FreeElement<typename Sys::generator>& a,
                                                             const FreeElement<typename Sys::generator>& b,
                                                             std::int64_t bound, RewriteLimits lim = {}) {
  using Gen = typename Sys::generator;
  if (a == b) return Reduct<Gen>{a, {}, {}};
  RewriteLimits small{std::min<std::size_t>(lim.max_states, 20000)};
  auto ra = reachable(sys, a, bound, small);
  auto rb = reachable(sys, b, bound, small);
  for (const auto& [x, tr] : ra.elements) {
    auto it = rb.elements.find(x);
    if (it != rb.elements.end()) return Reduct<Gen>{x, tr, it->second};
  }
  if (sys.has_sources() || a.is_zero() || b.is_zero()) return std::nullopt;
  const auto k = static_cast<std::size_t>(sys.rank());
  if constexpr (detail::Leveled<Sys>) {
    Offset t;
    bool first = true;
    for (const auto* e : {&a, &b})
      for (const auto& [g, n] : e->terms()) {
        t = first ? sys.offset(g) : join(t, sys.offset(g));
        first = false;
      }
    for (std::int64_t j = 0; j <= bound; ++j) {
      Offset level = t + Offset::constant(k, j);
      auto pa = detail::push_to(sys, a, level);
      auto pb = detail::push_to(sys, b, level);
      if (!pa || !pb) break;
      if (pa->first == pb->first) return Reduct<Gen>{pa->first, pa->second, pb->second};
    }
  } else {
    std::map<FreeElement<Gen>, DerivationTrace<Gen>> side_a;
    auto box = degrees_up_to(Offset::constant(k, bound));
    std::vector<Degree> ms;
    for (auto& m : box)
      if (m.l1() <= bound) ms.push_back(m);
    for (const auto& m : ms)
      if (auto r = detail::expand_degree(sys, a, m)) side_a.emplace(r->first, r->second);
    for (const auto& m : ms)
      if (auto r = detail::expand_degree(sys, b, m)) {
        auto it = side_a.find(r->first);
        if (it != side_a.end()) return Reduct<Gen>{r->first, it->second, r->second};
      }
  }
  return std::nullopt;
}

namespace detail {

template <class Sys>
std::vector<ChainLink> to_chain(const Sys& sys, const DerivationTrace<typename Sys::generator>& tr) {
  std::vector<ChainLink> out;
  for (const auto& s : tr) out.push_back(ChainLink{sys.to_tgen(s.gen), s.color, s.times, s.inverse});
  return out;
}

template <class Sys>
TElement to_telement(const Sys& sys, const FreeElement<typename Sys::generator>& e) {
  TElement out;
  for (const auto& [g, n] : e.terms()) out.add(sys.to_tgen(g), n);
  return out;
}

template <class Sys>
Tri derivation_yes(const Sys& sys, const FreeElement<typename Sys::generator>& a,
                   const FreeElement<typename Sys::generator>& b,
                   const DerivationTrace<typename Sys::generator>& tr, std::string detail) {
  Certificate c;
  c.kind = tr.empty() ? CertKind::Reflexive : CertKind::Derivation;
  c.a = to_telement(sys, a);
  c.b = to_telement(sys, b);
  c.chain = to_chain(sys, tr);
  c.detail = std::move(detail);
  return Tri::yes(std::move(c));
}

/// Bidirectional breadth-first search over forward and inverse steps.
template <class Sys>
std::optional<DerivationTrace<typename Sys::generator>> connect(const Sys& sys,
                                                                const FreeElement<typename Sys::generator>& a,
                                                                const FreeElement<typename Sys::generator>& b,
                                                                std::int64_t bound, RewriteLimits lim) {
  using Gen = typename Sys::generator;
  using Elem = FreeElement<Gen>;
  struct Parent {
    Elem prev;
    TraceStep<Gen> step;
    bool root;
  };
  std::map<Elem, Parent> pa, pb;
  pa.emplace(a, Parent{a, {}, true});
  pb.emplace(b, Parent{b, {}, true});
  std::vector<Elem> fa{a}, fb{b};
  auto path_to = [](const std::map<Elem, Parent>& par, Elem x) {
    DerivationTrace<Gen> tr;
    while (!par.at(x).root) {
      const auto& p = par.at(x);
      tr.push_back(p.step);
      x = p.prev;
    }
    std::reverse(tr.begin(), tr.end());
    return tr;
  };
  auto joined = [&](const Elem& meet) {
    auto left = path_to(pa, meet);
    auto right = reversed(path_to(pb, meet));
    left.insert(left.end(), right.begin(), right.end());
    return left;
  };
  for (std::int64_t d = 0; d < bound; ++d) {
    bool grow_a = !fa.empty() && (fb.empty() || fa.size() <= fb.size());
    auto& frontier = grow_a ? fa : fb;
    auto& mine = grow_a ? pa : pb;
    auto& other = grow_a ? pb : pa;
    std::vector<Elem> next;
    for (const auto& x : frontier)
      for (auto& [s, y] : neighbours(sys, x, true)) {
        if (mine.count(y)) continue;
        mine.emplace(y, Parent{x, s, false});
        if (other.count(y)) return joined(y);
        if (pa.size() + pb.size() > lim.max_states) return std::nullopt;
        next.push_back(std::move(y));
      }
    frontier = std::move(next);
    if (fa.empty() && fb.empty()) break;
  }
  return std::nullopt;
}

}  // namespace detail

/// Separating linear invariant for M_Λ: a vector phi over Z/p with
/// phi(v) = sum_w A_i(v, w) phi(w) whenever vΛ^{e_i} is nonempty and
/// phi(a) != phi(b). Returns the certificate when one exists.
std::optional<Certificate> separating_invariant(const KGraph& g, const MElement& a, const MElement& b);

/// Checks a separating invariant certificate.
bool check_invariant(const KGraph& g, const Certificate& c);

/// a ~ b in the monoid of the system. Yes carries a derivation; No carries a
/// zero separation, a linear invariant, or exhausted finite reduct sets.
template <class Sys>
Tri congruent(const Sys& sys, const FreeElement<typename Sys::generator>& a,
              const FreeElement<typename Sys::generator>& b, std::int64_t bound, RewriteLimits lim = {}) {
  if (a == b) return detail::derivation_yes(sys, a, b, {}, "identical elements");
  if (a.is_zero() != b.is_zero()) {
    Certificate c;
    c.kind = CertKind::ZeroSeparated;
    c.a = detail::to_telement(sys, a);
    c.b = detail::to_telement(sys, b);
    c.detail = "relations never produce or consume the zero element";
    return Tri::no(std::move(c));
  }
  if (auto tr = detail::connect(sys, a, b, bound, lim))
    return detail::derivation_yes(sys, a, b, *tr, "connected by forward and inverse steps");
  if (!sys.has_sources()) {
    if (auto r = common_reduct(sys, a, b, bound, lim)) {
      auto tr = r->from_a;
      auto back = reversed(r->from_b);
      tr.insert(tr.end(), back.begin(), back.end());
      return detail::derivation_yes(sys, a, b, tr, "common reduct");
    }
  }
  if constexpr (std::is_same_v<Sys, GraphMonoidSystem>) {
    if (auto c = separating_invariant(sys.graph(), a, b)) return Tri::no(std::move(*c));
  }
  if (!sys.has_sources()) {
    auto ra = reachable(sys, a, bound, lim);
    auto rb = reachable(sys, b, bound, lim);
    if (ra.closed && rb.closed) {
      Certificate c;
      c.kind = CertKind::FiniteReducts;
      c.a = detail::to_telement(sys, a);
      c.b = detail::to_telement(sys, b);
      c.bound = bound;
      c.numbers = {static_cast<std::int64_t>(ra.elements.size()),
                   static_cast<std::int64_t>(rb.elements.size())};
      c.detail = "finite disjoint reduct sets; confluence forbids a meeting point";
      return Tri::no(std::move(c));
    }
  }
  return Tri::exhausted(bound, "no connection within the search bound");
}

/// Splits a derivation from a1 + a2 into derivations of the two summands by
/// attributing each expanded occurrence to the summand that owns it.
template <class Sys>
std::pair<FreeElement<typename Sys::generator>, FreeElement<typename Sys::generator>> split_derivation(
    const Sys& sys, const DerivationTrace<typename Sys::generator>& trace,
    const FreeElement<typename Sys::generator>& a1, const FreeElement<typename Sys::generator>& a2) {
  auto b1 = a1, b2 = a2;
  for (const auto& s : trace) {
    if (s.inverse) throw StepError("split_derivation takes forward traces only");
    std::uint64_t left = s.times;
    std::uint64_t take1 = std::min(left, b1.count(s.gen));
    std::uint64_t take2 = left - take1;
    if (b2.count(s.gen) < take2) throw StepError("trace does not replay on a1 + a2");
    if (take1) b1 = step(sys, b1, s.gen, s.color, take1);
    if (take2) b2 = step(sys, b2, s.gen, s.color, take2);
  }
  return {b1, b2};
}

}  // namespace kg
