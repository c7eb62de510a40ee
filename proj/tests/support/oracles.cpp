#include "support/oracles.hpp"

#include <algorithm>

#include "kgraph/offset.hpp"

namespace kgtest {

using kg::BigInt;
using kg::Degree;
using kg::KGraph;
using kg::VertexIndex;

Level step_level(const KGraph& g, const Level& x, int color) {
  Level y(x.size());
  for (const auto& e : g.skeleton().edges)
    if (e.color == color) y[e.source] += x[e.range];
  return y;
}

Level path_counts(const KGraph& g, VertexIndex v, const Degree& n) {
  Level x(g.vertex_count());
  x[v] = 1;
  for (std::size_t i = 0; i < n.size(); ++i)
    for (std::int64_t s = 0; s < n[i]; ++s) x = step_level(g, x, static_cast<int>(i + 1));
  return x;
}

Level skew_expand(const KGraph& g, const kg::TElement& a, const kg::Offset& t) {
  // Terms keyed by offset; rewriting lowers each coordinate gap to zero.
  std::map<kg::Offset, Level> terms;
  for (const auto& [gen, m] : a.terms()) {
    auto& level = terms[gen.offset];
    if (level.empty()) level.assign(g.vertex_count(), 0);
    level[gen.vertex] += m;
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::map<kg::Offset, Level> next;
    for (const auto& [key, value] : terms) {
      kg::Offset n = key;
      Level x = value;
      while (n[i] < t[i]) {
        x = step_level(g, x, static_cast<int>(i + 1));
        n[i] += 1;
      }
      auto& slot = next[n];
      if (slot.empty()) slot.assign(g.vertex_count(), 0);
      for (std::size_t v = 0; v < x.size(); ++v) slot[v] += x[v];
    }
    terms = std::move(next);
  }
  if (terms.empty()) return Level(g.vertex_count());
  return terms.begin()->second;
}

namespace {

kg::Offset join_offsets(const KGraph& g, const kg::TElement& a, const kg::TElement& b) {
  kg::Offset t(static_cast<std::size_t>(g.rank()));
  bool first = true;
  for (const auto* e : {&a, &b})
    for (const auto& [gen, m] : e->terms()) {
      t = first ? gen.offset : kg::join(t, gen.offset);
      first = false;
    }
  return t;
}

}  // namespace

std::optional<std::int64_t> oracle_equal(const KGraph& g, const kg::TElement& a, const kg::TElement& b,
                                         std::int64_t max_j) {
  const auto t = join_offsets(g, a, b);
  for (std::int64_t j = 0; j <= max_j; ++j) {
    auto level = t + kg::Offset::constant(t.size(), j);
    if (skew_expand(g, a, level) == skew_expand(g, b, level)) return j;
  }
  return std::nullopt;
}

bool oracle_dominated(const KGraph& g, const kg::TElement& a, const kg::TElement& b, std::int64_t max_j) {
  const auto t = join_offsets(g, a, b);
  for (std::int64_t j = 0; j <= max_j; ++j) {
    auto level = t + kg::Offset::constant(t.size(), j);
    auto x = skew_expand(g, a, level), y = skew_expand(g, b, level);
    bool ok = true;
    for (std::size_t v = 0; v < x.size(); ++v) ok = ok && x[v] <= y[v];
    if (ok) return true;
  }
  return false;
}

bool hereditary_by_definition(const KGraph& g, const std::set<VertexIndex>& h) {
  for (const auto& e : g.skeleton().edges)
    if (h.count(e.range) && !h.count(e.source)) return false;
  return true;
}

bool saturated_by_definition(const KGraph& g, const std::set<VertexIndex>& h, std::int64_t depth) {
  const auto k = static_cast<std::size_t>(g.rank());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (h.count(v)) continue;
    for (const auto& n : kg::degrees_up_to(kg::Offset::constant(k, depth))) {
      if (n.is_zero()) continue;
      auto row = path_counts(g, v, n);
      bool any = false, inside = true;
      for (VertexIndex w = 0; w < row.size(); ++w)
        if (row[w] > 0) {
          any = true;
          inside = inside && h.count(w);
        }
      if (any && inside) return false;
    }
  }
  return true;
}

std::vector<std::set<VertexIndex>> brute_hs_subsets(const KGraph& g, std::int64_t depth) {
  const auto n = g.vertex_count();
  std::vector<std::set<VertexIndex>> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::set<VertexIndex> h;
    for (VertexIndex v = 0; v < n; ++v)
      if (mask >> v & 1u) h.insert(v);
    if (hereditary_by_definition(g, h) && saturated_by_definition(g, h, depth)) out.push_back(std::move(h));
  }
  return out;
}

std::set<VertexIndex> brute_closure(const std::vector<std::set<VertexIndex>>& hs, const std::set<VertexIndex>& x,
                                    std::size_t vertex_count) {
  std::set<VertexIndex> out;
  for (VertexIndex v = 0; v < vertex_count; ++v) out.insert(v);
  for (const auto& h : hs)
    if (std::includes(h.begin(), h.end(), x.begin(), x.end())) {
      std::set<VertexIndex> meet;
      std::set_intersection(out.begin(), out.end(), h.begin(), h.end(), std::inserter(meet, meet.end()));
      out = std::move(meet);
    }
  return out;
}

bool oracle_leaf(const KGraph& g, VertexIndex v, std::int64_t depth) {
  const auto k = static_cast<std::size_t>(g.rank());
  for (const auto& m : kg::degrees_up_to(kg::Offset::constant(k, depth))) {
    auto row = path_counts(g, v, m);
    BigInt total = 0;
    for (const auto& x : row) total += x;
    if (total != 1) return false;
  }
  return true;
}

bool oracle_atomic(const KGraph& g, std::int64_t depth) {
  const auto k = static_cast<std::size_t>(g.rank());
  std::vector<bool> leaf(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) leaf[v] = oracle_leaf(g, v, depth);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    bool reached = false;
    for (const auto& m : kg::degrees_up_to(kg::Offset::constant(k, depth))) {
      auto row = path_counts(g, v, m);
      bool all = true;
      for (VertexIndex w = 0; w < row.size(); ++w)
        if (row[w] > 0 && !leaf[w]) all = false;
      if (all) {
        reached = true;
        break;
      }
    }
    if (!reached) return false;
  }
  return true;
}

}  // namespace kgtest
