#include "kgraph/monoid.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "kgraph/lattice.hpp"
#include "kgraph/path.hpp"

namespace kg {

namespace {

std::size_t rank_of(const KGraph& g) { return static_cast<std::size_t>(g.rank()); }

void require_no_sources(const KGraph& g, const char* what) {
  if (g.has_sources()) throw PreconditionError(std::string(what) + " needs a graph without sources");
}

TElement to_telement(const BigVector& x, const Offset& level) {
  TElement out;
  for (VertexIndex v = 0; v < x.size(); ++v) {
    if (x[v] == 0) continue;
    if (x[v] > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("multiplicity overflow");
    out.add(TGen{v, level}, x[v].convert_to<std::uint64_t>());
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

LevelEngine::LevelEngine(const KGraph& g) : g_(&g) {
  exact_ = !g.has_sources();
  for (int i = 1; i <= g.rank(); ++i) {
    gens_.push_back(edge_matrix(g, i));
    dets_.push_back(gens_.back().determinant());
    if (dets_.back() == 0) exact_ = false;
  }
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (!(gens_[i] * gens_[j] == gens_[j] * gens_[i])) commuting_ = false;
}

const BigMatrix& LevelEngine::power(const Degree& m) {
  auto it = cache_.find(m);
  if (it != cache_.end()) return it->second;
  if (m.size() != gens_.size() || !m.is_degree()) throw DegreeError("power needs a degree in N^k");
  std::size_t i = 0;
  while (i < m.size() && m[i] == 0) ++i;
  BigMatrix r;
  if (i == m.size()) {
    r = BigMatrix::identity(g_->vertex_count());
  } else {
    Degree prev = m;
    prev[i] -= 1;
    r = power(prev) * gens_[i];
  }
  return cache_.emplace(m, std::move(r)).first->second;
}

BigVector LevelEngine::push(const TElement& a, const Offset& t) {
  BigVector x(g_->vertex_count());
  for (const auto& [gn, n] : a.terms()) {
    if (!gn.offset.leq(t)) throw DegreeError("level does not dominate the element's offsets");
    const auto& p = power(t - gn.offset);
    for (VertexIndex w = 0; w < x.size(); ++w)
      if (p(gn.vertex, w) != 0) x[w] += p(gn.vertex, w) * n;
  }
  return x;
}

const Degree& LevelEngine::stabilization() {
  if (stab_) return *stab_;
  Degree s(gens_.size());
  const auto n = g_->vertex_count();
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    BigMatrix p = BigMatrix::identity(n);
    std::size_t r = n;
    std::int64_t j = 0;
    while (true) {
      auto next = p * gens_[i];
      auto rn = next.rank();
      if (rn == r) break;
      p = std::move(next);
      r = rn;
      ++j;
    }
    s[i] = j;
  }
  stab_ = s;
  return *stab_;
}

Degree kernel_stabilization(const KGraph& g) {
  LevelEngine e(g);
  return e.stabilization();
}

Offset common_level(std::size_t k, const std::vector<const TElement*>& elems) {
  std::optional<Offset> t;
  for (const auto* e : elems)
    for (const auto& [gn, n] : e->terms()) t = t ? join(*t, gn.offset) : gn.offset;
  return t ? *t : Offset::zero(k);
}

LevelForm push_to_level(const KGraph& g, const TElement& a, const Offset& t) {
  require_no_sources(g, "push_to_level");
  LevelEngine e(g);
  return LevelForm{t, e.push(a, t)};
}

bool exact_mode_available(const KGraph& g) { return LevelEngine(g).exact_available(); }

// ---------------------------------------------------------------------------

namespace {

Certificate pair_cert(CertKind kind, const TElement& a, const TElement& b, const Offset& t) {
  Certificate c;
  c.kind = kind;
  c.a = a;
  c.b = b;
  c.level = t;
  c.push = Degree::zero(t.size());
  return c;
}

Tri rewrite_equal(const KGraph& g, const TElement& a, const TElement& b, std::int64_t depth) {
  SkewSystem sys(g);
  auto r = congruent(sys, a, b, depth);
  r.cert.detail = "skew-product rewriting: " + r.cert.detail;
  return r;
}

Tri level_equal(LevelEngine& eng, const TElement& a, const TElement& b, EqMode mode) {
  const auto& g = eng.graph();
  const auto k = rank_of(g);
  if (a == b) {
    auto c = pair_cert(CertKind::Reflexive, a, b, common_level(k, {&a}));
    c.detail = "identical elements";
    return Tri::yes(std::move(c));
  }
  if (a.is_zero() != b.is_zero()) {
    auto c = pair_cert(CertKind::ZeroSeparated, a, b, Offset::zero(k));
    c.detail = "a nonzero element pushes to a nonzero vector";
    return Tri::no(std::move(c));
  }
  const Offset t = common_level(k, {&a, &b});
  auto x = eng.push(a, t);
  auto y = eng.push(b, t);
  auto equal_at = [&](const Degree& m) { return eng.advance(x, m) == eng.advance(y, m); };
  auto yes = [&](const Degree& m) {
    auto c = pair_cert(CertKind::LevelEquality, a, b, t);
    c.push = m;
    c.detail = "level vectors agree at " + (t + m).str();
    return Tri::yes(std::move(c));
  };
  if (x == y) return yes(Degree::zero(k));
  const bool exact = mode.kind == EqMode::Kind::Exact ||
                     (mode.kind == EqMode::Kind::Auto && eng.exact_available());
  if (exact) {
    if (!eng.exact_available())
      throw PreconditionError("exact mode needs every edge matrix to be nonsingular");
    auto c = pair_cert(CertKind::InjectiveMatrices, a, b, t);
    for (const auto& d : eng.determinants())
      c.detail += (c.detail.empty() ? "determinants " : ", ") + d.str();
    return Tri::no(std::move(c));
  }
  if (eng.commuting()) {
    const auto& s = eng.stabilization();
    if (mode.kind == EqMode::Kind::Auto || s.l1() <= mode.max_push) {
      if (!equal_at(s)) {
        auto c = pair_cert(CertKind::KernelStabilized, a, b, t);
        c.push = s;
        c.detail = "vectors still differ at " + (t + s).str() + " where the kernels have stabilized";
        return Tri::no(std::move(c));
      }
      for (const auto& m : degrees_up_to(s))
        if (equal_at(m)) return yes(m);
    }
  }
  const auto j = mode.max_push / static_cast<std::int64_t>(std::max<std::size_t>(k, 1));
  const Degree top = Degree::constant(k, j);
  if (equal_at(top))
    for (std::int64_t i = 1; i <= j; ++i)
      if (equal_at(Degree::constant(k, i))) return yes(Degree::constant(k, i));
  return Tri::exhausted(mode.max_push, "no equalizing pushforward with |m|_1 <= bound");
}

}  // namespace

Tri t_equal(const KGraph& g, const TElement& a, const TElement& b, EqMode mode) {
  if (mode.kind == EqMode::Kind::Rewrite) return rewrite_equal(g, a, b, mode.max_push);
  if (g.has_sources()) {
    if (mode.kind == EqMode::Kind::Exact) throw PreconditionError("exact mode needs a graph without sources");
    return rewrite_equal(g, a, b, std::min<std::int64_t>(mode.max_push, 8));
  }
  LevelEngine eng(g);
  return level_equal(eng, a, b, mode);
}

Tri t_leq(const KGraph& g, const TElement& a, const TElement& b, EqMode mode) {
  if (g.has_sources()) return Tri::unsupported("order comparison needs a graph without sources");
  const auto k = rank_of(g);
  if (a.is_zero()) {
    auto c = pair_cert(CertKind::LevelDominance, a, b, common_level(k, {&b}));
    c.push = Degree::zero(k);
    c.detail = "zero is below everything";
    return Tri::yes(std::move(c));
  }
  if (b.is_zero()) {
    auto c = pair_cert(CertKind::ConicalZero, a, b, common_level(k, {&a}));
    c.detail = "a nonzero element is not below zero in a conical monoid";
    return Tri::no(std::move(c));
  }
  LevelEngine eng(g);
  const Offset t = common_level(k, {&a, &b});
  auto x = eng.push(a, t);
  auto y = eng.push(b, t);
  auto dominated = [&](const Degree& m) {
    auto xm = eng.advance(x, m), ym = eng.advance(y, m);
    for (std::size_t v = 0; v < xm.size(); ++v)
      if (xm[v] > ym[v]) return false;
    return true;
  };
  const auto j = mode.max_push / static_cast<std::int64_t>(std::max<std::size_t>(k, 1));
  for (std::int64_t i = 0; i <= j; ++i) {
    Degree m = Degree::constant(k, i);
    if (dominated(m)) {
      auto c = pair_cert(CertKind::LevelDominance, a, b, t);
      c.push = m;
      c.detail = "componentwise dominance at " + (t + m).str();
      return Tri::yes(std::move(c));
    }
  }
  return Tri::exhausted(mode.max_push, "no dominating pushforward with |m|_1 <= bound");
}

TElement act(const Offset& n, const TElement& a) {
  TElement out;
  for (const auto& [gn, m] : a.terms()) out.add(TGen{gn.vertex, gn.offset + n}, m);
  return out;
}

MElement forget(const TElement& a) {
  MElement out;
  for (const auto& [gn, m] : a.terms()) out.add(gn.vertex, m);
  return out;
}

Tri m_congruent(const KGraph& g, const MElement& x, const MElement& y, std::int64_t bound) {
  return congruent(GraphMonoidSystem(g), x, y, bound);
}

SkewElement to_skew(const TElement& a) { return a; }

// ---------------------------------------------------------------------------

Tri is_atom(const KGraph& g, const TElement& a) {
  if (g.has_sources()) return Tri::unsupported("atoms are described for graphs without sources");
  Certificate c;
  c.a = a;
  if (a.is_zero()) {
    c.kind = CertKind::ZeroElement;
    c.detail = "zero is not an atom";
    return Tri::no(std::move(c));
  }
  if (a.total() > 1) {
    c.kind = CertKind::NotSingleGenerator;
    c.detail = "a sum of two nonzero elements";
    return Tri::no(std::move(c));
  }
  auto r = is_leaf(g, a.terms().begin()->first.vertex);
  r.cert.a = a;
  return r;
}

AtomsDescription atoms(const KGraph& g) {
  if (g.has_sources()) throw PreconditionError("atoms are described for graphs without sources");
  AtomsDescription out;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (is_leaf(g, v).is_yes()) out.leaves.push_back(v);
  return out;
}

Tri is_atomic(const KGraph& g) {
  if (g.has_sources()) return Tri::unsupported("atomicity needs a graph without sources");
  auto leaves = atoms(g).leaves;
  auto closure = saturated_hereditary_closure(g, VertexSet(leaves.begin(), leaves.end())).vertices;
  Certificate c;
  c.vertices = leaves;
  c.sets = {std::vector<VertexIndex>(closure.begin(), closure.end())};
  if (closure.size() == g.vertex_count()) {
    c.kind = CertKind::LeafClosure;
    c.detail = "hereditary saturated closure of the leaves is every vertex";
    return Tri::yes(std::move(c));
  }
  VertexIndex missing = 0;
  while (closure.count(missing)) ++missing;
  c.kind = CertKind::ClosureGap;
  c.numbers = {static_cast<std::int64_t>(missing)};
  c.detail = g.vertex_name(missing) + " lies outside the closure of the leaves";
  return Tri::no(std::move(c));
}

std::optional<std::vector<TGen>> factor_into_atoms(const KGraph& g, const TElement& a, std::int64_t bound) {
  if (g.has_sources()) return std::nullopt;
  const auto k = rank_of(g);
  std::vector<bool> leaf(g.vertex_count());
  for (auto v : atoms(g).leaves) leaf[v] = true;
  LevelEngine eng(g);
  std::vector<Degree> ms;
  for (const auto& m : degrees_up_to(Degree::constant(k, bound)))
    if (m.l1() <= bound) ms.push_back(m);
  std::vector<TGen> out;
  for (const auto& [gn, n] : a.terms()) {
    bool done = false;
    for (const auto& m : ms) {
      const auto& p = eng.power(m);
      bool all_leaves = true;
      for (VertexIndex w = 0; w < g.vertex_count() && all_leaves; ++w)
        if (p(gn.vertex, w) != 0 && !leaf[w]) all_leaves = false;
      if (!all_leaves) continue;
      for (VertexIndex w = 0; w < g.vertex_count(); ++w) {
        if (p(gn.vertex, w) == 0) continue;
        auto times = p(gn.vertex, w) * n;
        if (times > 4096) return std::nullopt;
        for (auto i = times.convert_to<std::uint64_t>(); i > 0; --i) out.push_back(TGen{w, gn.offset + m});
      }
      done = true;
      break;
    }
    if (!done) return std::nullopt;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

std::optional<OrbitCollision> leaf_orbit_collision(const KGraph& g, VertexIndex leaf, std::int64_t limit) {
  const auto k = rank_of(g);
  std::map<Degree, VertexIndex> x;
  std::map<VertexIndex, Degree> first;
  for (const auto& m : degrees_up_to(Degree::constant(k, limit))) {
    if (m.l1() > limit) continue;
    VertexIndex here = leaf;
    if (!m.is_zero()) {
      std::size_t i = 0;
      while (m[i] == 0) ++i;
      Degree prev = m;
      prev[i] -= 1;
      auto src = g.sources(x.at(prev), static_cast<int>(i + 1));
      if (src.size() != 1) return std::nullopt;
      here = src.front();
    }
    x.emplace(m, here);
    auto [it, fresh] = first.emplace(here, m);
    if (!fresh) return OrbitCollision{it->second, m, normalize_sign(m - it->second)};
  }
  return std::nullopt;
}

std::optional<Offset> multiplicative_relation(const std::vector<std::int64_t>& counts) {
  const auto k = counts.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (counts[i] <= 0) throw PreconditionError("counts must be positive");
    if (counts[i] == 1) return Offset::unit(k, static_cast<int>(i + 1));
  }
  // Exponent matrix: rows are primes, columns colors.
  std::map<std::int64_t, std::vector<std::int64_t>> expo;
  for (std::size_t i = 0; i < k; ++i) {
    auto a = counts[i];
    for (std::int64_t p = 2; p * p <= a; ++p)
      while (a % p == 0) {
        expo[p].resize(k);
        expo[p][i] += 1;
        a /= p;
      }
    if (a > 1) {
      expo[a].resize(k);
      expo[a][i] += 1;
    }
  }
  using Q = boost::multiprecision::cpp_rational;
  std::vector<std::vector<Q>> rows;
  for (auto& [p, r] : expo) rows.emplace_back(r.begin(), r.end());
  std::vector<int> pivot_of_col(k, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Q inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == r || rows[o][c] == 0) continue;
      Q f = rows[o][c];
      for (std::size_t j = 0; j < k; ++j) rows[o][j] -= f * rows[r][j];
    }
    pivot_of_col[c] = static_cast<int>(r);
    ++r;
  }
  for (std::size_t free = 0; free < k; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    std::vector<Q> z(k);
    z[free] = 1;
    for (std::size_t c = 0; c < k; ++c)
      if (pivot_of_col[c] >= 0) z[c] = -rows[static_cast<std::size_t>(pivot_of_col[c])][free];
    BigInt l = 1;
    for (const auto& q : z) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(q));
    Offset out(k);
    for (std::size_t c = 0; c < k; ++c) {
      Q v = z[c] * l;
      out[c] = boost::multiprecision::numerator(v).convert_to<std::int64_t>();
    }
    return normalize_sign(out);
  }
  return std::nullopt;
}

namespace {

__extension__ typedef unsigned __int128 u128;

const std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;

std::uint64_t mod_of(const BigInt& x) { return static_cast<std::uint64_t>(x % kMod); }

std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  auto s = a + b;
  return s >= kMod ? s - kMod : s;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % kMod);
}

/// Periodicity checks at a fixed top level, filtered by residues mod 2^61-1.
class PeriodChecker {
public:
  PeriodChecker(const KGraph& g, EqMode mode) : eng_(g), mode_(mode) {
    const auto k = rank_of(g);
    if (eng_.exact_available())
      lift_ = Degree::zero(k);
    else if (eng_.commuting())
      lift_ = eng_.stabilization();
    else
      lift_ = Degree::constant(k, mode.max_push / static_cast<std::int64_t>(std::max<std::size_t>(k, 1)));
  }

  bool candidate(const TElement& a, const Offset& n) {
    TElement b = act(n, a);
    const Offset t = common_level(rank_of(eng_.graph()), {&a, &b}) + lift_;
    return residues(a, t) == residues(b, t);
  }

  LevelEngine& engine() { return eng_; }
  EqMode mode() const { return mode_; }

private:
  const std::vector<std::uint64_t>& row(VertexIndex v, const Degree& d) {
    auto key = std::pair{v, d};
    auto it = rows_.find(key);
    if (it != rows_.end()) return it->second;
    const auto& p = eng_.power(d);
    std::vector<std::uint64_t> r(eng_.graph().vertex_count());
    for (VertexIndex w = 0; w < r.size(); ++w) r[w] = mod_of(p(v, w));
    return rows_.emplace(key, std::move(r)).first->second;
  }

  std::vector<std::uint64_t> residues(const TElement& a, const Offset& t) {
    std::vector<std::uint64_t> out(eng_.graph().vertex_count());
    for (const auto& [gn, n] : a.terms()) {
      const auto& r = row(gn.vertex, t - gn.offset);
      for (std::size_t w = 0; w < out.size(); ++w) out[w] = addmod(out[w], mulmod(r[w], n % kMod));
    }
    return out;
  }

  LevelEngine eng_;
  EqMode mode_;
  Degree lift_;
  std::map<std::pair<VertexIndex, Degree>, std::vector<std::uint64_t>> rows_;
};

/// Candidate elements in search order: single generators first.
template <class Vertex, class Gen, class Visit>
bool enumerate_candidates(const std::vector<Vertex>& vertices, std::size_t k, const Bounds& b, Visit&& visit) {
  const Offset zero = Offset::zero(k);
  for (const auto& v : vertices)
    for (std::uint64_t c = 1; c <= b.coeff; ++c)
      if (visit(FreeElement<Gen>(Gen{v, zero}, c))) return true;
  if (b.support < 2) return false;
  std::vector<Offset> offsets;
  for (const auto& d : degrees_up_to(Offset::constant(k, 2 * b.box))) offsets.push_back(d - Offset::constant(k, b.box));
  for (const auto& v : vertices)
    for (const auto& w : vertices)
      for (const auto& o : offsets) {
        if (v == w && o.is_zero()) continue;
        for (std::uint64_t c1 = 1; c1 <= b.coeff; ++c1)
          for (std::uint64_t c2 = 1; c2 <= b.coeff; ++c2) {
            FreeElement<Gen> e(Gen{v, zero}, c1);
            e.add(Gen{w, o}, c2);
            if (visit(e)) return true;
          }
      }
  return false;
}

}  // namespace

std::optional<PeriodicWitness> find_periodic_element(const KGraph& g, const Bounds& bounds) {
  const auto k = rank_of(g);
  auto periods = normalized_periods(k, bounds.box);
  std::vector<VertexIndex> vertices(g.vertex_count());
  for (VertexIndex v = 0; v < vertices.size(); ++v) vertices[v] = v;
  std::optional<PeriodicWitness> found;
  if (g.has_sources()) {
    // Rewriting only: single generators with unit coefficient.
    for (auto v : vertices)
      for (const auto& n : periods) {
        auto a = gen(v, Offset::zero(k));
        auto r = t_equal(g, act(n, a), a, EqMode::rewrite(bounds.rewrite_depth));
        if (r.is_yes()) return PeriodicWitness{a, n, r};
      }
    return std::nullopt;
  }
  PeriodChecker chk(g, EqMode::automatic(bounds.push));
  enumerate_candidates<VertexIndex, TGen>(vertices, k, bounds, [&](const TElement& a) {
    for (const auto& n : periods) {
      if (!chk.candidate(a, n)) continue;
      auto r = level_equal(chk.engine(), act(n, a), a, chk.mode());
      if (r.is_yes()) {
        found = PeriodicWitness{a, n, r};
        return true;
      }
    }
    return false;
  });
  return found;
}

std::vector<std::pair<VertexIndex, Offset>> periodic_generators(const KGraph& g, const Bounds& bounds) {
  const auto k = rank_of(g);
  auto periods = normalized_periods(k, bounds.box);
  std::vector<std::pair<VertexIndex, Offset>> out;
  std::optional<PeriodChecker> chk;
  if (!g.has_sources()) chk.emplace(g, EqMode::automatic(bounds.push));
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    auto a = gen(v, Offset::zero(k));
    for (const auto& n : periods) {
      bool equal = chk ? chk->candidate(a, n) && level_equal(chk->engine(), act(n, a), a, chk->mode()).is_yes()
                       : t_equal(g, act(n, a), a, EqMode::rewrite(bounds.rewrite_depth)).is_yes();
      if (equal) {
        out.emplace_back(v, n);
        break;
      }
    }
  }
  return out;
}

Tri acts_freely(const KGraph& g, const Bounds& bounds) {
  if (g.has_sources()) return Tri::unsupported("free action is decided for graphs without sources");
  const auto k = rank_of(g);
  Certificate c;
  if (g.vertex_count() == 0) {
    c.kind = CertKind::FreeAction;
    c.detail = "the monoid is zero";
    return Tri::yes(std::move(c));
  }
  const auto limit = static_cast<std::int64_t>(g.vertex_count());
  for (auto v : atoms(g).leaves) {
    auto col = leaf_orbit_collision(g, v, limit);
    if (!col) continue;
    c.kind = CertKind::PeriodicAtom;
    c.a = gen(v, Offset::zero(k));
    c.vertices = {v};
    c.push = col->first;
    c.push2 = col->second;
    c.period = col->period;
    c.detail = "leaf orbit of " + g.vertex_name(v) + " repeats at " + col->first.str() + " and " +
               col->second.str();
    return Tri::no(std::move(c));
  }
  if (g.vertex_count() == 1) {
    std::vector<std::int64_t> counts;
    for (int i = 1; i <= g.rank(); ++i) counts.push_back(static_cast<std::int64_t>(g.edges_into(0, i).size()));
    c.a = gen(0, Offset::zero(k));
    c.numbers = counts;
    if (auto rel = multiplicative_relation(counts)) {
      c.kind = CertKind::PeriodicElement;
      c.period = *rel;
      c.detail = "edge counts are multiplicatively dependent";
      return Tri::no(std::move(c));
    }
    c.kind = CertKind::MultiplicativeIndependence;
    c.detail = "edge counts are multiplicatively independent and exceed 1";
    return Tri::yes(std::move(c));
  }
  if (auto w = find_periodic_element(g, bounds)) {
    c.kind = CertKind::PeriodicElement;
    c.a = w->element;
    c.period = w->period;
    c.detail = "periodic element found by search";
    return Tri::no(std::move(c));
  }
  return Tri::exhausted(bounds.box, "no periodic element in the search box");
}

std::optional<std::array<TElement, 4>> refine(const KGraph& g, const TElement& a, const TElement& b,
                                              const TElement& c, const TElement& d, EqMode mode) {
  if (a == c && b == d) return std::array<TElement, 4>{a, {}, {}, b};
  if (b.is_zero() && a == c + d) return std::array<TElement, 4>{c, d, {}, {}};
  auto eq = t_equal(g, a + b, c + d, mode);
  if (!eq.is_yes()) throw PreconditionError("refine needs a + b = c + d");
  if (g.has_sources()) return std::nullopt;
  const auto k = rank_of(g);
  LevelEngine eng(g);
  const auto ab = a + b, cd = c + d;
  Offset s = common_level(k, {&ab, &cd}) + eq.cert.push;
  auto A = eng.push(a, s), B = eng.push(b, s), C = eng.push(c, s), D = eng.push(d, s);
  const auto n = g.vertex_count();
  BigVector z1(n), z2(n), z3(n), z4(n);
  for (VertexIndex v = 0; v < n; ++v) {
    z1[v] = A[v] < C[v] ? A[v] : C[v];
    z2[v] = A[v] - z1[v];
    z3[v] = C[v] - z1[v];
    z4[v] = B[v] - z3[v];
    if (z4[v] < 0 || z4[v] != D[v] - z2[v]) return std::nullopt;
  }
  try {
    return std::array<TElement, 4>{to_telement(z1, s), to_telement(z2, s), to_telement(z3, s),
                                   to_telement(z4, s)};
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------

std::optional<SparseLevel> LazyLevelEngine::push_generator(const LazyVertex& v, const Degree& m) {
  auto key = std::pair{v, m};
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  std::optional<SparseLevel> out;
  std::size_t i = 0;
  while (i < m.size() && m[i] == 0) ++i;
  if (i == m.size()) {
    out = SparseLevel{{v, 1}};
  } else {
    Degree prev = m;
    prev[i] -= 1;
    auto base = push_generator(v, prev);
    if (base) {
      out = SparseLevel{};
      for (const auto& [w, n] : *base) {
        auto src = g_->sources(w, static_cast<int>(i + 1));
        if (src.empty()) {
          out.reset();
          break;
        }
        for (const auto& s : src) {
          auto& slot = (*out)[s];
          if (slot + n < slot) {
            out.reset();
            break;
          }
          slot += n;
        }
        if (!out) break;
      }
    }
  }
  return cache_.emplace(key, std::move(out)).first->second;
}

std::optional<SparseLevel> LazyLevelEngine::push(const LazyTElement& a, const Offset& t) {
  SparseLevel out;
  for (const auto& [gn, n] : a.terms()) {
    if (!gn.offset.leq(t)) throw DegreeError("level does not dominate the element's offsets");
    auto p = push_generator(gn.vertex, t - gn.offset);
    if (!p) return std::nullopt;
    for (const auto& [w, m] : *p) {
      if (m != 0 && n > std::numeric_limits<std::uint64_t>::max() / m) return std::nullopt;
      auto& slot = out[w];
      if (slot + m * n < slot) return std::nullopt;
      slot += m * n;
    }
  }
  return out;
}

namespace {

Offset lazy_level(std::size_t k, const std::vector<const LazyTElement*>& elems) {
  std::optional<Offset> t;
  for (const auto* e : elems)
    for (const auto& [gn, n] : e->terms()) t = t ? join(*t, gn.offset) : gn.offset;
  return t ? *t : Offset::zero(k);
}

}  // namespace

Tri t_equal(const LazyKGraph& g, const LazyTElement& a, const LazyTElement& b, std::int64_t max_push,
            LazyLevelEngine* engine) {
  const auto k = static_cast<std::size_t>(g.rank());
  Certificate c;
  c.lazy_a = a;
  c.lazy_b = b;
  if (a == b) {
    c.kind = CertKind::Reflexive;
    c.detail = "identical elements";
    return Tri::yes(std::move(c));
  }
  std::optional<LazyLevelEngine> own;
  if (!engine) engine = &own.emplace(g);
  c.level = lazy_level(k, {&a, &b});
  const auto j = max_push / static_cast<std::int64_t>(std::max<std::size_t>(k, 1));
  for (std::int64_t i : {std::int64_t{0}, j}) {
    Degree m = Degree::constant(k, i);
    auto x = engine->push(a, c.level + m);
    auto y = engine->push(b, c.level + m);
    if (x && y && *x == *y) {
      c.kind = CertKind::LevelEquality;
      c.push = m;
      c.detail = "level vectors agree at " + (c.level + m).str();
      return Tri::yes(std::move(c));
    }
  }
  return Tri::exhausted(max_push, "no equalizing pushforward within the bound");
}

LazyTElement act(const Offset& n, const LazyTElement& a) {
  LazyTElement out;
  for (const auto& [gn, m] : a.terms()) out.add(LazyTGen{gn.vertex, gn.offset + n}, m);
  return out;
}

Tri is_atomic(const LazyKGraph& g, const std::vector<LazyVertex>& sample, std::int64_t depth) {
  Certificate c;
  c.kind = CertKind::LeafClosure;
  c.lazy_vertices = sample;
  c.bound = depth;
  LazyVertexSet leaves;
  for (std::size_t i = 0; i < sample.size(); ++i)
    if (is_leaf(g, sample[i], depth).is_yes()) {
      leaves.insert(sample[i]);
      c.numbers.push_back(static_cast<std::int64_t>(i));
    }
  const LazyVertexSet all(sample.begin(), sample.end());
  if (truncated_closure(g, leaves, all) != all)
    return Tri::exhausted(depth, "the sampled leaves do not close up to the sample");
  c.detail = std::to_string(leaves.size()) + " sampled leaves close up to the sample";
  return Tri::yes(std::move(c), true);
}

std::optional<std::pair<LazyTElement, Offset>> find_periodic_element(const LazyKGraph& g,
                                                                     const std::vector<LazyVertex>& vertices,
                                                                     const Bounds& bounds) {
  const auto k = static_cast<std::size_t>(g.rank());
  auto periods = normalized_periods(k, bounds.box);
  LazyLevelEngine eng(g);
  const auto j = bounds.push / static_cast<std::int64_t>(std::max<std::size_t>(k, 1));
  const Degree top = Degree::constant(k, j);
  auto equal_at = [&](const LazyTElement& a, const Offset& n) {
    auto b = act(n, a);
    Offset t = lazy_level(k, {&a, &b}) + top;
    auto x = eng.push(a, t);
    if (!x) return false;
    auto y = eng.push(b, t);
    return y && *x == *y;
  };
  const Offset zero = Offset::zero(k);
  for (const auto& v : vertices)
    for (std::uint64_t c = 1; c <= bounds.coeff; ++c) {
      LazyTElement a(LazyTGen{v, zero}, c);
      for (const auto& n : periods)
        if (equal_at(a, n)) return std::pair{a, n};
    }
  if (bounds.support < 2) return std::nullopt;
  // Same order as the finite search. Coefficients are positive, so the
  // support of the level vectors does not depend on them: periods whose
  // supports differ are dropped once per pair of generators.
  auto support = [&](const LazyVertex& v, const Offset& o, const LazyVertex& w, const Offset& p, const Offset& t)
      -> std::optional<std::set<LazyVertex>> {
    auto x = eng.push_generator(v, t - o);
    auto y = eng.push_generator(w, t - p);
    if (!x || !y) return std::nullopt;
    std::set<LazyVertex> out;
    for (const auto& [u, m] : *x) out.insert(u);
    for (const auto& [u, m] : *y) out.insert(u);
    return out;
  };
  std::vector<Offset> offsets;
  for (const auto& d : degrees_up_to(Offset::constant(k, 2 * bounds.box)))
    offsets.push_back(d - Offset::constant(k, bounds.box));
  for (const auto& v : vertices)
    for (const auto& w : vertices)
      for (const auto& o : offsets) {
        if (v == w && o.is_zero()) continue;
        std::vector<Offset> live;
        for (const auto& n : periods) {
          Offset t = join(join(zero, o), join(n, o + n)) + top;
          auto sa = support(v, zero, w, o, t);
          if (!sa) continue;
          auto sb = support(v, n, w, o + n, t);
          if (sb && *sa == *sb) live.push_back(n);
        }
        if (live.empty()) continue;
        for (std::uint64_t c1 = 1; c1 <= bounds.coeff; ++c1)
          for (std::uint64_t c2 = 1; c2 <= bounds.coeff; ++c2) {
            LazyTElement a(LazyTGen{v, zero}, c1);
            a.add(LazyTGen{w, o}, c2);
            for (const auto& n : live)
              if (equal_at(a, n)) return std::pair{a, n};
          }
      }
  return std::nullopt;
}

std::optional<OrbitCollision> leaf_orbit_collision(const LazyKGraph& g, const LazyVertex& leaf,
                                                   std::int64_t depth) {
  const auto k = static_cast<std::size_t>(g.rank());
  std::map<Degree, LazyVertex> x;
  std::map<LazyVertex, Degree> first;
  for (const auto& m : degrees_up_to(Degree::constant(k, depth))) {
    if (m.l1() > depth) continue;
    LazyVertex here = leaf;
    if (!m.is_zero()) {
      std::size_t i = 0;
      while (m[i] == 0) ++i;
      Degree prev = m;
      prev[i] -= 1;
      auto src = g.sources(x.at(prev), static_cast<int>(i + 1));
      if (src.size() != 1) return std::nullopt;
      here = src.front();
    }
    x.emplace(m, here);
    auto [it, fresh] = first.emplace(here, m);
    if (!fresh) return OrbitCollision{it->second, m, normalize_sign(m - it->second)};
  }
  return std::nullopt;
}

std::set<LazyVertex> leaf_orbit(const LazyKGraph& g, const LazyVertex& leaf, std::int64_t depth) {
  const auto k = static_cast<std::size_t>(g.rank());
  std::map<Degree, LazyVertex> x;
  std::set<LazyVertex> out;
  for (const auto& m : degrees_up_to(Degree::constant(k, depth))) {
    if (m.l1() > depth) continue;
    LazyVertex here = leaf;
    if (!m.is_zero()) {
      std::size_t i = 0;
      while (m[i] == 0) ++i;
      Degree prev = m;
      prev[i] -= 1;
      auto it = x.find(prev);
      if (it == x.end()) continue;
      auto src = g.sources(it->second, static_cast<int>(i + 1));
      if (src.size() != 1) continue;
      here = src.front();
    }
    x.emplace(m, here);
    out.insert(here);
  }
  return out;
}

}  // namespace kg
