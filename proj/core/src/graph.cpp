#include "kgraph/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace kg {

KGraph KGraph::build(int k, std::vector<std::string> vertices,
                     const std::vector<EdgeSpec>& edges,
                     const std::vector<SquareSpec>& squares) {
  if (k < 1) throw StructuralError("rank must be positive", std::to_string(k));
  Skeleton skel;
  skel.rank = k;
  std::map<std::string, VertexIndex> vid;
  for (const auto& name : vertices) {
    if (!vid.emplace(name, vid.size()).second)
      throw StructuralError("duplicate vertex '" + name + "'", name);
  }
  skel.vertices = std::move(vertices);
  std::map<std::string, EdgeIndex> eid;
  for (const auto& e : edges) {
    if (e.color < 1 || e.color > k)
      throw StructuralError("edge '" + e.id + "' has color " + std::to_string(e.color) +
                                " outside 1.." + std::to_string(k),
                            e.id);
    auto r = vid.find(e.range), s = vid.find(e.source);
    if (r == vid.end())
      throw StructuralError("edge '" + e.id + "' has undeclared range '" + e.range + "'", e.id);
    if (s == vid.end())
      throw StructuralError("edge '" + e.id + "' has undeclared source '" + e.source + "'", e.id);
    if (!eid.emplace(e.id, skel.edges.size()).second)
      throw StructuralError("duplicate edge id '" + e.id + "'", e.id);
    skel.edges.push_back(Edge{e.id, e.color, r->second, s->second});
  }
  SquareSet sq;
  auto lookup = [&](const std::string& id) {
    auto it = eid.find(id);
    if (it == eid.end()) throw StructuralError("square references unknown edge '" + id + "'", id);
    return it->second;
  };
  for (const auto& s : squares)
    sq.squares.push_back(Square{lookup(s.lo_first), lookup(s.lo_second),
                                lookup(s.hi_first), lookup(s.hi_second)});
  return from_parts(std::move(skel), std::move(sq));
}

KGraph KGraph::from_parts(Skeleton skeleton, SquareSet squares) {
  KGraph g;
  g.skel_ = std::move(skeleton);
  g.squares_ = std::move(squares);
  const auto n = g.skel_.vertices.size();
  for (const auto& e : g.skel_.edges) {
    if (e.color < 1 || e.color > g.skel_.rank)
      throw StructuralError("edge '" + e.id + "' has an out-of-range color", e.id);
    if (e.range >= n || e.source >= n)
      throw StructuralError("edge '" + e.id + "' references a missing vertex", e.id);
  }
  for (const auto& s : g.squares_.squares)
    for (auto e : {s.lo_first, s.lo_second, s.hi_first, s.hi_second})
      if (e >= g.skel_.edges.size())
        throw StructuralError("square references a missing edge", std::to_string(e));
  g.index();
  return g;
}

void KGraph::index() {
  const auto n = skel_.vertices.size();
  const auto k = static_cast<std::size_t>(skel_.rank);
  vertex_by_name_.clear();
  edge_by_id_.clear();
  for (VertexIndex v = 0; v < n; ++v) vertex_by_name_[skel_.vertices[v]] = v;
  into_.assign(n * k, {});
  from_.assign(n, {});
  for (EdgeIndex e = 0; e < skel_.edges.size(); ++e) {
    const auto& ed = skel_.edges[e];
    edge_by_id_[ed.id] = e;
    into_[ed.range * k + (ed.color - 1)].push_back(e);
    from_[ed.source].push_back(e);
  }
  lo_to_hi_.clear();
  hi_to_lo_.clear();
  for (const auto& s : squares_.squares) {
    lo_to_hi_.emplace(std::pair{s.lo_first, s.lo_second}, std::pair{s.hi_first, s.hi_second});
    hi_to_lo_.emplace(std::pair{s.hi_first, s.hi_second}, std::pair{s.lo_first, s.lo_second});
  }
  has_sources_ = false;
  for (const auto& bucket : into_)
    if (bucket.empty()) has_sources_ = true;
}

std::optional<VertexIndex> KGraph::find_vertex(const std::string& name) const {
  auto it = vertex_by_name_.find(name);
  if (it == vertex_by_name_.end()) return std::nullopt;
  return it->second;
}

VertexIndex KGraph::vertex(const std::string& name) const {
  auto v = find_vertex(name);
  if (!v) throw std::out_of_range("unknown vertex '" + name + "'");
  return *v;
}

std::optional<EdgeIndex> KGraph::find_edge(const std::string& id) const {
  auto it = edge_by_id_.find(id);
  if (it == edge_by_id_.end()) return std::nullopt;
  return it->second;
}

EdgeIndex KGraph::edge_index(const std::string& id) const {
  auto e = find_edge(id);
  if (!e) throw std::out_of_range("unknown edge '" + id + "'");
  return *e;
}

const std::vector<EdgeIndex>& KGraph::edges_into(VertexIndex v, int color) const {
  if (color < 1 || color > skel_.rank) throw std::out_of_range("color out of range");
  return into_.at(v * static_cast<std::size_t>(skel_.rank) + (color - 1));
}

const std::vector<EdgeIndex>& KGraph::edges_from(VertexIndex v) const { return from_.at(v); }

std::vector<VertexIndex> KGraph::sources(VertexIndex v, int color) const {
  std::vector<VertexIndex> out;
  for (auto e : edges_into(v, color)) out.push_back(skel_.edges[e].source);
  return out;
}

std::optional<std::pair<EdgeIndex, EdgeIndex>> KGraph::refactor(EdgeIndex a, EdgeIndex b) const {
  const int ca = edge(a).color, cb = edge(b).color;
  if (ca == cb) return std::nullopt;
  const auto& table = ca < cb ? lo_to_hi_ : hi_to_lo_;
  auto it = table.find({a, b});
  if (it == table.end()) return std::nullopt;
  return it->second;
}

KGraph validated(KGraph g) {
  auto report = validate(g);
  if (!report.valid) {
    std::string msg = "k-graph validation failed";
    if (!report.problems.empty()) msg += ": " + report.problems.front();
    throw ValidationError(msg);
  }
  g.validated_ = true;
  return g;
}

namespace {

void check_hexagons(const KGraph& g, ValidationReport& rep) {
  rep.hexagon_checked = true;
  const auto& edges = g.skeleton().edges;
  auto swap_at = [&](std::vector<EdgeIndex>& p, std::size_t i) {
    auto r = g.refactor(p[i], p[i + 1]);
    if (!r) return false;
    p[i] = r->first;
    p[i + 1] = r->second;
    return true;
  };
  for (EdgeIndex a = 0; a < edges.size(); ++a) {
    const int ca = edges[a].color;
    for (int cb = ca + 1; cb <= g.rank(); ++cb)
      for (auto b : g.edges_into(edges[a].source, cb))
        for (int cc = cb + 1; cc <= g.rank(); ++cc)
          for (auto c : g.edges_into(edges[b].source, cc)) {
            ++rep.hexagon_triples;
            std::vector<EdgeIndex> p1{a, b, c}, p2{a, b, c};
            bool ok = swap_at(p1, 0) && swap_at(p1, 1) && swap_at(p1, 0);
            ok = ok && swap_at(p2, 1) && swap_at(p2, 0) && swap_at(p2, 1);
            if (!ok || p1 != p2) {
              rep.hexagon_ok = false;
              rep.problems.push_back("associativity fails on triple (" + edges[a].id + "," +
                                     edges[b].id + "," + edges[c].id + ")");
            }
          }
  }
}

}  // namespace

ValidationReport validate(const KGraph& g) {
  ValidationReport rep;
  const auto& edges = g.skeleton().edges;
  const int k = g.rank();
  const auto n = g.vertex_count();
  auto name = [&](EdgeIndex e) { return edges[e].id; };

  // Shape and coherence of every listed square.
  std::map<std::pair<EdgeIndex, EdgeIndex>, int> lo_seen, hi_seen;
  for (const auto& s : g.square_set().squares) {
    const auto &f = edges[s.lo_first], &gg = edges[s.lo_second];
    const auto &g2 = edges[s.hi_first], &f2 = edges[s.hi_second];
    std::string label = "square " + name(s.lo_first) + "." + name(s.lo_second) + " = " +
                        name(s.hi_first) + "." + name(s.hi_second);
    if (!(f.color < gg.color && f2.color == f.color && g2.color == gg.color)) {
      rep.problems.push_back(label + ": colors must read (i,j) = (j,i) with i < j");
      continue;
    }
    if (f.source != gg.range || g2.source != f2.range || f.range != g2.range ||
        gg.source != f2.source) {
      rep.problems.push_back(label + ": ranges and sources do not cohere");
      continue;
    }
    ++lo_seen[{s.lo_first, s.lo_second}];
    ++hi_seen[{s.hi_first, s.hi_second}];
  }

  // Bijectivity per color pair and endpoints.
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      std::map<std::pair<VertexIndex, VertexIndex>, SquareCheck> groups;
      auto group = [&](VertexIndex u, VertexIndex w) -> SquareCheck& {
        auto [it, fresh] = groups.try_emplace({u, w});
        if (fresh) it->second = SquareCheck{i, j, u, w, true, {}};
        return it->second;
      };
      for (VertexIndex u = 0; u < n; ++u) {
        for (auto f : g.edges_into(u, i))
          for (auto gg : g.edges_into(edges[f].source, j)) {
            auto& chk = group(u, edges[gg].source);
            int c = lo_seen.count({f, gg}) ? lo_seen[{f, gg}] : 0;
            if (c != 1) {
              chk.ok = false;
              chk.message += (c == 0 ? "missing square for " : "duplicated square for ") +
                             name(f) + "." + name(gg) + "; ";
            }
          }
        for (auto g2 : g.edges_into(u, j))
          for (auto f2 : g.edges_into(edges[g2].source, i)) {
            auto& chk = group(u, edges[f2].source);
            int c = hi_seen.count({g2, f2}) ? hi_seen[{g2, f2}] : 0;
            if (c != 1) {
              chk.ok = false;
              chk.message += (c == 0 ? "no square produces " : "several squares produce ") +
                             name(g2) + "." + name(f2) + "; ";
            }
          }
      }
      for (auto& [key, chk] : groups) {
        if (!chk.ok)
          rep.problems.push_back("colors (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") from " + g.vertex_name(key.first) + " to " +
                                 g.vertex_name(key.second) + ": " + chk.message);
        rep.squares.push_back(chk);
      }
    }

  std::vector<BigMatrix> mats;
  for (int i = 1; i <= k; ++i) mats.push_back(edge_matrix(g, i));
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      bool ok = mats[i - 1] * mats[j - 1] == mats[j - 1] * mats[i - 1];
      rep.commutation.push_back(CommuteCheck{i, j, ok});
      if (!ok)
        rep.problems.push_back("coordinate matrices of colors " + std::to_string(i) + " and " +
                               std::to_string(j) + " do not commute");
    }

  if (k >= 3 && rep.problems.empty()) check_hexagons(g, rep);
  rep.has_sources = g.has_sources();
  rep.valid = rep.problems.empty();
  return rep;
}

BigMatrix edge_matrix(const KGraph& g, int color) {
  BigMatrix m(g.vertex_count());
  for (const auto& e : g.skeleton().edges)
    if (e.color == color) m(e.range, e.source) += 1;
  return m;
}

CoordMatrix coord_matrix(const KGraph& g, const Degree& n) {
  if (n.size() != static_cast<std::size_t>(g.rank()) || !n.is_degree())
    throw PreconditionError("coord_matrix needs a degree in N^k");
  BigMatrix r = BigMatrix::identity(g.vertex_count());
  for (int i = 1; i <= g.rank(); ++i) {
    BigMatrix a = edge_matrix(g, i);
    for (std::int64_t t = 0; t < n[i - 1]; ++t) r = r * a;
  }
  return CoordMatrix{n, std::move(r)};
}

bool is_hereditary(const KGraph& g, const std::set<VertexIndex>& h) {
  for (const auto& e : g.skeleton().edges)
    if (h.count(e.range) && !h.count(e.source)) return false;
  return true;
}

bool is_saturated(const KGraph& g, const std::set<VertexIndex>& h) {
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (h.count(v)) continue;
    for (int i = 1; i <= g.rank(); ++i) {
      const auto& in = g.edges_into(v, i);
      if (in.empty()) continue;
      bool inside = std::all_of(in.begin(), in.end(),
                                [&](EdgeIndex e) { return h.count(g.edge(e).source) > 0; });
      if (inside) return false;
    }
  }
  return true;
}

KGraph quotient_graph(const KGraph& g, const std::set<VertexIndex>& h) {
  if (g.has_sources()) throw PreconditionError("quotient_graph needs a graph without sources");
  if (!is_hereditary(g, h) || !is_saturated(g, h))
    throw PreconditionError("quotient_graph needs a hereditary saturated subset");
  Skeleton skel;
  skel.rank = g.rank();
  std::vector<VertexIndex> remap(g.vertex_count(), static_cast<VertexIndex>(-1));
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (!h.count(v)) {
      remap[v] = skel.vertices.size();
      skel.vertices.push_back(g.vertex_name(v));
    }
  std::vector<EdgeIndex> emap(g.edge_count(), static_cast<EdgeIndex>(-1));
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    if (h.count(ed.source)) continue;
    emap[e] = skel.edges.size();
    skel.edges.push_back(Edge{ed.id, ed.color, remap[ed.range], remap[ed.source]});
  }
  SquareSet sq;
  for (const auto& s : g.square_set().squares) {
    if (emap[s.lo_first] == static_cast<EdgeIndex>(-1) ||
        emap[s.lo_second] == static_cast<EdgeIndex>(-1) ||
        emap[s.hi_first] == static_cast<EdgeIndex>(-1) ||
        emap[s.hi_second] == static_cast<EdgeIndex>(-1))
      continue;
    sq.squares.push_back(Square{emap[s.lo_first], emap[s.lo_second], emap[s.hi_first],
                                emap[s.hi_second]});
  }
  auto q = KGraph::from_parts(std::move(skel), std::move(sq));
  return g.validated() ? validated(std::move(q)) : q;
}

std::set<VertexIndex> descendants(const KGraph& g, VertexIndex v) {
  std::set<VertexIndex> seen{v};
  std::deque<VertexIndex> todo{v};
  while (!todo.empty()) {
    auto x = todo.front();
    todo.pop_front();
    for (int i = 1; i <= g.rank(); ++i)
      for (auto e : g.edges_into(x, i))
        if (seen.insert(g.edge(e).source).second) todo.push_back(g.edge(e).source);
  }
  return seen;
}

Tri is_leaf(const KGraph& g, VertexIndex v) {
  for (auto w : descendants(g, v))
    for (int i = 1; i <= g.rank(); ++i) {
      auto cnt = g.edges_into(w, i).size();
      if (cnt != 1) {
        Certificate c;
        c.kind = CertKind::BranchingVertex;
        c.vertices = {v, w};
        c.numbers = {i, static_cast<std::int64_t>(cnt)};
        c.detail = g.vertex_name(w) + " has " + std::to_string(cnt) + " edges of color " +
                   std::to_string(i);
        return Tri::no(std::move(c));
      }
    }
  Certificate c;
  c.kind = CertKind::LeafGenerator;
  c.vertices = {v};
  c.detail = "every descendant of " + g.vertex_name(v) + " has one edge per color";
  return Tri::yes(std::move(c));
}

// ---------------------------------------------------------------------------

std::string lazy_vertex_str(const LazyVertex& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

LazyKGraph::LazyKGraph(int k, std::string name, Enumerator edges_into, LevelFn level,
                       NameFn vertex_name, SquareFn squares)
    : k_(k), name_(std::move(name)), enum_(std::move(edges_into)), level_(std::move(level)),
      vname_(std::move(vertex_name)), squares_(std::move(squares)) {
  if (k < 1) throw PreconditionError("rank must be positive");
}

std::vector<LazyVertex> LazyKGraph::sources(const LazyVertex& v, int color) const {
  std::vector<LazyVertex> out;
  for (auto& e : enum_(v, color)) out.push_back(std::move(e.source));
  return out;
}

std::int64_t LazyKGraph::level(const LazyVertex& v) const {
  if (!level_) throw PreconditionError("graph '" + name_ + "' is not leveled");
  return level_(v);
}

std::optional<std::pair<LazyEdge, LazyEdge>> LazyKGraph::refactor(const LazyEdge& a,
                                                                 const LazyEdge& b) const {
  if (!squares_ || a.color == b.color || a.source != b.range) return std::nullopt;
  return squares_(a, b);
}

std::string LazyKGraph::vertex_name(const LazyVertex& v) const {
  return vname_ ? vname_(v) : lazy_vertex_str(v);
}

LazyKGraph skew_product(std::shared_ptr<const KGraph> g) {
  const int k = g->rank();
  auto edges = [g, k](const LazyVertex& v, int color) {
    std::vector<LazyEdge> out;
    const auto base = static_cast<VertexIndex>(v.at(0));
    for (auto e : g->edges_into(base, color)) {
      LazyEdge le;
      le.id = v;
      le.id[0] = static_cast<std::int64_t>(e);
      le.color = color;
      le.range = v;
      le.source = v;
      le.source[0] = static_cast<std::int64_t>(g->edge(e).source);
      le.source[color] += 1;
      out.push_back(std::move(le));
    }
    (void)k;
    return out;
  };
  auto name = [g](const LazyVertex& v) {
    std::string s = "(" + g->vertex_name(static_cast<VertexIndex>(v.at(0))) + ",(";
    for (std::size_t i = 1; i < v.size(); ++i) s += (i > 1 ? "," : "") + std::to_string(v[i]);
    return s + "))";
  };
  auto squares = [g](const LazyEdge& a, const LazyEdge& b)
      -> std::optional<std::pair<LazyEdge, LazyEdge>> {
    auto r = g->refactor(static_cast<EdgeIndex>(a.id.at(0)), static_cast<EdgeIndex>(b.id.at(0)));
    if (!r) return std::nullopt;
    const auto& e1 = g->edge(r->first);
    const auto& e2 = g->edge(r->second);
    LazyEdge x{a.id, e1.color, a.range, a.range};
    x.id[0] = static_cast<std::int64_t>(r->first);
    x.source[0] = static_cast<std::int64_t>(e1.source);
    x.source[e1.color] += 1;
    LazyEdge y{x.source, e2.color, x.source, x.source};
    y.id[0] = static_cast<std::int64_t>(r->second);
    y.source[0] = static_cast<std::int64_t>(e2.source);
    y.source[e2.color] += 1;
    return std::pair{x, y};
  };
  return LazyKGraph(k, "skew", std::move(edges), {}, std::move(name), std::move(squares));
}

Tri is_leaf(const LazyKGraph& g, const LazyVertex& v, std::int64_t depth) {
  // Breadth-first over descendants by total degree.
  std::set<LazyVertex> seen{v};
  std::vector<LazyVertex> frontier{v};
  bool truncated = false;
  for (std::int64_t d = 0; d <= depth && !frontier.empty(); ++d) {
    std::vector<LazyVertex> next;
    for (const auto& x : frontier)
      for (int i = 1; i <= g.rank(); ++i) {
        auto src = g.sources(x, i);
        if (src.size() != 1) {
          Certificate c;
          c.kind = CertKind::BranchingVertex;
          c.lazy_vertices = {v, x};
          c.numbers = {i, static_cast<std::int64_t>(src.size())};
          c.detail = g.vertex_name(x) + " has " + std::to_string(src.size()) +
                     " edges of color " + std::to_string(i);
          return Tri::no(std::move(c));
        }
        if (seen.count(src[0])) continue;
        if (d == depth) {
          truncated = true;
          continue;
        }
        seen.insert(src[0]);
        next.push_back(src[0]);
      }
    frontier = std::move(next);
  }
  Certificate c;
  c.lazy_vertices = {v};
  c.bound = depth;
  if (!truncated) {
    c.kind = CertKind::LeafGenerator;
    c.detail = "all descendants explored";
    return Tri::yes(std::move(c));
  }
  c.kind = CertKind::LeafGenerator;
  c.detail = "no branching among descendants within depth " + std::to_string(depth);
  return Tri::yes(std::move(c), true);
}

}  // namespace kg
