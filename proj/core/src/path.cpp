#include "kgraph/path.hpp"

#include <algorithm>
#include <set>

namespace kg {

namespace {

Degree degree_of(const KGraph& g, const std::vector<EdgeIndex>& edges) {
  Degree d(static_cast<std::size_t>(g.rank()));
  for (auto e : edges) d[g.edge(e).color - 1] += 1;
  return d;
}

void check_composable(const KGraph& g, VertexIndex range, const std::vector<EdgeIndex>& edges) {
  VertexIndex at = range;
  for (auto e : edges) {
    if (g.edge(e).range != at)
      throw CompositionError("edge '" + g.edge(e).id + "' does not compose");
    at = g.edge(e).source;
  }
}

std::vector<int> colors_of(const KGraph& g, const std::vector<EdgeIndex>& edges) {
  std::vector<int> c;
  for (auto e : edges) c.push_back(g.edge(e).color);
  return c;
}

std::vector<int> block_colors(const Degree& d) {
  std::vector<int> c;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::int64_t t = 0; t < d[i]; ++t) c.push_back(static_cast<int>(i) + 1);
  return c;
}

Path from_normal(const KGraph& g, VertexIndex range, std::vector<EdgeIndex> edges) {
  Path p;
  p.range = range;
  p.degree = degree_of(g, edges);
  p.edges = std::move(edges);
  return p;
}

void require_degree(const KGraph& g, const Degree& m) {
  if (m.size() != static_cast<std::size_t>(g.rank()) || !m.is_degree())
    throw DegreeError("expected a degree in N^k");
}

}  // namespace

Path vertex_path(const KGraph& g, VertexIndex v) {
  if (v >= g.vertex_count()) throw std::out_of_range("vertex out of range");
  return from_normal(g, v, {});
}

Path edge_path(const KGraph& g, EdgeIndex e) { return from_normal(g, g.edge(e).range, {e}); }

std::vector<EdgeIndex> reorder(const KGraph& g, std::vector<EdgeIndex> seq,
                               const std::vector<int>& target) {
  if (target.size() != seq.size()) throw DegreeError("reorder: length mismatch");
  for (std::size_t p = 0; p < seq.size(); ++p) {
    std::size_t q = p;
    while (q < seq.size() && g.edge(seq[q]).color != target[p]) ++q;
    if (q == seq.size()) throw DegreeError("reorder: color multiset mismatch");
    for (; q > p; --q) {
      auto r = g.refactor(seq[q - 1], seq[q]);
      if (!r)
        throw CompositionError("no square refactors '" + g.edge(seq[q - 1]).id + "." +
                               g.edge(seq[q]).id + "'");
      seq[q - 1] = r->first;
      seq[q] = r->second;
    }
  }
  return seq;
}

Path make_path(const KGraph& g, const std::vector<EdgeIndex>& edges) {
  if (edges.empty()) throw CompositionError("make_path needs at least one edge; use vertex_path");
  const VertexIndex range = g.edge(edges.front()).range;
  check_composable(g, range, edges);
  auto colors = colors_of(g, edges);
  std::sort(colors.begin(), colors.end());
  return from_normal(g, range, reorder(g, edges, colors));
}

VertexIndex source(const KGraph& g, const Path& p) {
  return p.edges.empty() ? p.range : g.edge(p.edges.back()).source;
}

namespace {

void extend(const KGraph& g, const std::vector<int>& colors, std::size_t pos, VertexIndex at,
            std::vector<EdgeIndex>& cur, std::vector<std::vector<EdgeIndex>>& out) {
  if (pos == colors.size()) {
    out.push_back(cur);
    return;
  }
  for (auto e : g.edges_into(at, colors[pos])) {
    cur.push_back(e);
    extend(g, colors, pos + 1, g.edge(e).source, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Path> enumerate_paths(const KGraph& g, VertexIndex v, const Degree& n) {
  require_degree(g, n);
  std::vector<std::vector<EdgeIndex>> seqs;
  std::vector<EdgeIndex> cur;
  extend(g, block_colors(n), 0, v, cur, seqs);
  std::vector<Path> out;
  for (auto& s : seqs) out.push_back(from_normal(g, v, std::move(s)));
  return out;
}

std::vector<Path> enumerate_paths_in_order(const KGraph& g, VertexIndex v,
                                           const std::vector<int>& colors) {
  std::vector<std::vector<EdgeIndex>> seqs;
  std::vector<EdgeIndex> cur;
  extend(g, colors, 0, v, cur, seqs);
  auto sorted = colors;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Path> out;
  for (auto& s : seqs) out.push_back(from_normal(g, v, reorder(g, std::move(s), sorted)));
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<Path, Path> factor(const KGraph& g, const Path& p, const Degree& m) {
  require_degree(g, m);
  if (!m.leq(p.degree)) throw DegreeError("factor: m is not below d(p)");
  auto head_colors = block_colors(m);
  auto tail_colors = block_colors(p.degree - m);
  auto target = head_colors;
  target.insert(target.end(), tail_colors.begin(), tail_colors.end());
  auto seq = reorder(g, p.edges, target);
  std::vector<EdgeIndex> head(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(head_colors.size()));
  std::vector<EdgeIndex> tail(seq.begin() + static_cast<std::ptrdiff_t>(head_colors.size()), seq.end());
  Path h = from_normal(g, p.range, std::move(head));
  Path t = from_normal(g, source(g, h), std::move(tail));
  return {h, t};
}

Path segment(const KGraph& g, const Path& p, const Degree& m, const Degree& n) {
  require_degree(g, m);
  require_degree(g, n);
  if (!m.leq(n) || !n.leq(p.degree)) throw DegreeError("segment: need 0 <= m <= n <= d(p)");
  auto first = factor(g, p, n).first;
  return factor(g, first, m).second;
}

Path compose(const KGraph& g, const Path& p, const Path& q) {
  if (source(g, p) != q.range) throw CompositionError("compose: s(p) != r(q)");
  std::vector<EdgeIndex> seq = p.edges;
  seq.insert(seq.end(), q.edges.begin(), q.edges.end());
  auto colors = block_colors(p.degree + q.degree);
  return from_normal(g, p.range, reorder(g, std::move(seq), colors));
}

std::vector<std::pair<Path, Path>> lambda_min(const KGraph& g, const Path& lambda, const Path& mu) {
  std::vector<std::pair<Path, Path>> out;
  if (lambda.range != mu.range) return out;
  const Degree top = join(lambda.degree, mu.degree);
  for (const auto& alpha : enumerate_paths(g, source(g, lambda), top - lambda.degree)) {
    Path tau = compose(g, lambda, alpha);
    auto [head, beta] = factor(g, tau, mu.degree);
    if (head == mu) out.emplace_back(alpha, beta);
  }
  return out;
}

std::vector<Path> mce(const KGraph& g, const Path& lambda, const Path& mu) {
  std::vector<Path> out;
  for (const auto& [alpha, beta] : lambda_min(g, lambda, mu)) out.push_back(compose(g, lambda, alpha));
  return out;
}

std::vector<Path> ext(const KGraph& g, const Path& lambda, const std::vector<Path>& e) {
  std::set<Path> acc;
  for (const auto& mu : e)
    for (auto& [alpha, beta] : lambda_min(g, lambda, mu)) acc.insert(alpha);
  return {acc.begin(), acc.end()};
}

std::string path_str(const KGraph& g, const Path& p) {
  if (p.edges.empty()) return g.vertex_name(p.range);
  std::string s;
  for (std::size_t i = 0; i < p.edges.size(); ++i) s += (i ? "." : "") + g.edge(p.edges[i]).id;
  return s;
}

std::vector<LazyPath> enumerate_paths(const LazyKGraph& g, const LazyVertex& v, const Degree& n) {
  if (n.size() != static_cast<std::size_t>(g.rank()) || !n.is_degree())
    throw DegreeError("expected a degree in N^k");
  auto colors = block_colors(n);
  std::vector<LazyPath> out;
  std::vector<LazyEdge> cur;
  auto rec = [&](auto&& self, std::size_t pos, const LazyVertex& at) -> void {
    if (pos == colors.size()) {
      out.push_back(LazyPath{v, cur, n});
      return;
    }
    for (auto& e : g.edges_into(at, colors[pos])) {
      cur.push_back(e);
      self(self, pos + 1, e.source);
      cur.pop_back();
    }
  };
  rec(rec, 0, v);
  return out;
}

}  // namespace kg
