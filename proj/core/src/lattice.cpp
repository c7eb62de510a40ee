#include "kgraph/lattice.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "kgraph/monoid.hpp"

namespace kg {

BoolMatrix BoolMatrix::identity(std::size_t size) {
  BoolMatrix m(size);
  for (std::size_t i = 0; i < size; ++i) m.set(i, i);
  return m;
}

BoolMatrix BoolMatrix::operator*(const BoolMatrix& o) const {
  BoolMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (!(*this)(i, k)) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (o(k, j)) r.set(i, j);
    }
  return r;
}

VertexSet BoolMatrix::row(std::size_t v) const {
  VertexSet out;
  for (std::size_t w = 0; w < n; ++w)
    if ((*this)(v, w)) out.insert(w);
  return out;
}

BoolMatrix support_matrix(const KGraph& g, const Degree& n) {
  auto a = coord_matrix(g, n).entries;
  BoolMatrix m(g.vertex_count());
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j)
      if (a(i, j) != 0) m.set(i, j);
  return m;
}

BooleanReach::BooleanReach(const KGraph& g, std::size_t max_elements) {
  const auto n = g.vertex_count();
  const auto k = static_cast<std::size_t>(g.rank());
  for (int i = 1; i <= g.rank(); ++i) {
    BoolMatrix m(n);
    for (VertexIndex v = 0; v < n; ++v)
      for (auto e : g.edges_into(v, i)) m.set(v, g.edge(e).source);
    gens_.push_back(std::move(m));
  }
  std::map<BoolMatrix, std::size_t> seen;
  elements_.push_back({BoolMatrix::identity(n), Degree::zero(k)});
  seen.emplace(elements_.front().matrix, 0);
  for (std::size_t idx = 0; idx < elements_.size(); ++idx)
    for (int i = 1; i <= g.rank(); ++i) {
      auto prod = elements_[idx].matrix * gens_[static_cast<std::size_t>(i - 1)];
      if (seen.count(prod)) continue;
      if (elements_.size() >= max_elements) throw ResourceError("Boolean reachability semigroup too large");
      auto deg = elements_[idx].degree + Degree::unit(k, i);
      seen.emplace(prod, elements_.size());
      elements_.push_back({std::move(prod), std::move(deg)});
    }
}

VertexSet hereditary_closure(const KGraph& g, const VertexSet& x) {
  VertexSet out = x;
  std::deque<VertexIndex> todo(x.begin(), x.end());
  while (!todo.empty()) {
    auto v = todo.front();
    todo.pop_front();
    for (int i = 1; i <= g.rank(); ++i)
      for (auto e : g.edges_into(v, i))
        if (out.insert(g.edge(e).source).second) todo.push_back(g.edge(e).source);
  }
  return out;
}

HSSubset saturated_hereditary_closure(const KGraph& g, const VertexSet& x) {
  if (g.has_sources()) throw PreconditionError("saturation needs a graph without sources");
  return saturated_hereditary_closure(g, x, BooleanReach(g));
}

HSSubset saturated_hereditary_closure(const KGraph& g, const VertexSet& x, const BooleanReach& reach) {
  if (g.has_sources()) throw PreconditionError("saturation needs a graph without sources");
  VertexSet h = hereditary_closure(g, x);
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      if (h.count(v)) continue;
      for (const auto& r : reach.elements()) {
        auto row = r.matrix.row(v);
        if (std::includes(h.begin(), h.end(), row.begin(), row.end())) {
          h.insert(v);
          changed = true;
          break;
        }
      }
    }
    if (changed) h = hereditary_closure(g, h);
  }
  return HSSubset{std::move(h), true, true};
}

std::size_t LatticeListing::index_of(const VertexSet& h) const {
  auto it = std::find(sets.begin(), sets.end(), h);
  if (it == sets.end()) throw std::out_of_range("set not in lattice");
  return static_cast<std::size_t>(it - sets.begin());
}

LatticeListing all_hs_subsets(const KGraph& g, std::size_t size_limit) {
  if (g.has_sources()) throw PreconditionError("hereditary saturated lattice needs a graph without sources");
  const auto n = g.vertex_count();
  if (n > size_limit || n >= 63) throw ResourceError("too many vertices for lattice enumeration");
  LatticeListing out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet h;
    for (VertexIndex v = 0; v < n; ++v)
      if (mask >> v & 1) h.insert(v);
    if (is_hereditary(g, h) && is_saturated(g, h)) out.sets.push_back(std::move(h));
  }
  std::sort(out.sets.begin(), out.sets.end(), [](const VertexSet& a, const VertexSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  BooleanReach reach(g);
  const auto m = out.sets.size();
  out.meet.assign(m, std::vector<std::size_t>(m));
  out.join.assign(m, std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      VertexSet both, either;
      std::set_intersection(out.sets[i].begin(), out.sets[i].end(), out.sets[j].begin(), out.sets[j].end(),
                            std::inserter(both, both.end()));
      std::set_union(out.sets[i].begin(), out.sets[i].end(), out.sets[j].begin(), out.sets[j].end(),
                     std::inserter(either, either.end()));
      out.meet[i][j] = out.meet[j][i] = out.index_of(both);
      out.join[i][j] = out.join[j][i] = out.index_of(saturated_hereditary_closure(g, either, reach).vertices);
    }
  return out;
}

Tri ideal_membership(const KGraph& g, const TElement& a, const VertexSet& h) {
  if (g.has_sources()) return Tri::unsupported("ideal membership needs a graph without sources");
  Certificate c;
  c.a = a;
  c.sets = {std::vector<VertexIndex>(h.begin(), h.end())};
  if (a.is_zero()) {
    c.kind = CertKind::SupportInside;
    c.level = Offset::zero(static_cast<std::size_t>(g.rank()));
    c.push = c.level;
    c.detail = "zero lies in every ideal";
    return Tri::yes(std::move(c));
  }
  c.level = common_level(static_cast<std::size_t>(g.rank()), {&a});
  auto form = push_to_level(g, a, c.level);
  VertexSet supp;
  for (VertexIndex v = 0; v < form.vector.size(); ++v)
    if (form.vector[v] != 0) supp.insert(v);
  BooleanReach reach(g);
  for (const auto& r : reach.elements()) {
    bool inside = true;
    for (auto v : supp) {
      for (auto w : r.matrix.row(v))
        if (!h.count(w)) {
          inside = false;
          break;
        }
      if (!inside) break;
    }
    if (inside) {
      c.kind = CertKind::SupportInside;
      c.push = r.degree;
      c.detail = "pushforward supported inside H";
      return Tri::yes(std::move(c));
    }
  }
  c.kind = CertKind::SupportEscapes;
  c.numbers = {static_cast<std::int64_t>(reach.elements().size())};
  c.detail = "every support pattern of the Boolean reachability semigroup leaves H";
  return Tri::no(std::move(c));
}

OrderIdealDesc rho(const KGraph& g, const VertexSet& h) {
  if (g.has_sources()) throw PreconditionError("order ideals need a graph without sources");
  if (!is_hereditary(g, h) || !is_saturated(g, h)) throw PreconditionError("rho needs a hereditary saturated set");
  return OrderIdealDesc{HSSubset{h, true, true}};
}

VertexSet eta(const KGraph& g, const OrderIdealDesc& j) {
  VertexSet out;
  const auto k = static_cast<std::size_t>(g.rank());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (ideal_membership(g, gen(v, Offset::zero(k)), j.generator.vertices).is_yes()) out.insert(v);
  return out;
}

bool is_prime_ideal(const KGraph& g, const VertexSet& h) {
  if (g.has_sources()) throw PreconditionError("prime ideals need a graph without sources");
  if (h.size() >= g.vertex_count()) throw PreconditionError("only proper ideals are classified");
  if (!is_hereditary(g, h) || !is_saturated(g, h))
    throw PreconditionError("prime test needs a hereditary saturated set");
  std::vector<VertexSet> reach(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (!h.count(v)) reach[v] = descendants(g, v);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (h.count(v)) continue;
    for (VertexIndex w = v + 1; w < g.vertex_count(); ++w) {
      if (h.count(w)) continue;
      bool common = false;
      for (auto u : reach[v])
        if (!h.count(u) && reach[w].count(u)) {
          common = true;
          break;
        }
      if (!common) return false;
    }
  }
  return true;
}

TElement quotient_monoid_map(const KGraph& g, const VertexSet& h, const TElement& a) {
  if (g.has_sources()) throw PreconditionError("quotient maps need a graph without sources");
  if (!is_hereditary(g, h) || !is_saturated(g, h))
    throw PreconditionError("quotient map needs a hereditary saturated set");
  std::vector<VertexIndex> remap(g.vertex_count());
  VertexIndex next = 0;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (!h.count(v)) remap[v] = next++;
  TElement out;
  for (const auto& [t, n] : a.terms())
    if (!h.count(t.vertex)) out.add(TGen{remap[t.vertex], t.offset}, n);
  return out;
}

LazyVertexSet truncated_closure(const LazyKGraph& g, const LazyVertexSet& x, const LazyVertexSet& sample) {
  LazyVertexSet h;
  for (const auto& v : x)
    if (sample.count(v)) h.insert(v);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& v : sample) {
      if (h.count(v)) {
        for (int i = 1; i <= g.rank(); ++i)
          for (const auto& s : g.sources(v, i))
            if (sample.count(s) && h.insert(s).second) changed = true;
        continue;
      }
      for (int i = 1; i <= g.rank(); ++i) {
        auto src = g.sources(v, i);
        if (src.empty()) continue;
        if (std::all_of(src.begin(), src.end(), [&](const LazyVertex& s) { return h.count(s) > 0; })) {
          h.insert(v);
          changed = true;
          break;
        }
      }
    }
  }
  return h;
}

}  // namespace kg
