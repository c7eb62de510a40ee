#include "kgraph/families.hpp"

#include <stdexcept>

namespace kg {

KGraph lambda_k(int k) {
  if (k < 1) throw PreconditionError("lambda_k needs k >= 1");
  std::vector<EdgeSpec> edges;
  for (int i = 1; i <= k; ++i) edges.push_back({"l" + std::to_string(i), i, "v", "v"});
  std::vector<SquareSpec> squares;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      auto li = "l" + std::to_string(i), lj = "l" + std::to_string(j);
      squares.push_back({li, lj, lj, li});
    }
  return validated(KGraph::build(k, {"v"}, edges, squares));
}

namespace {

std::string grid_name(const std::vector<std::int64_t>& n) {
  std::string s = "x";
  for (std::size_t i = 0; i < n.size(); ++i) s += (i ? "_" : "") + std::to_string(n[i]);
  return s;
}

std::string grid_edge(int color, const std::vector<std::int64_t>& n) {
  return "c" + std::to_string(color) + "@" + grid_name(n);
}

LazyKGraph lattice_grid(int k, bool whole_lattice) {
  if (k < 1) throw PreconditionError("grid needs k >= 1");
  auto edges = [k, whole_lattice](const LazyVertex& v, int color) {
    std::vector<LazyEdge> out;
    if (v.size() != static_cast<std::size_t>(k)) return out;
    if (!whole_lattice)
      for (auto x : v)
        if (x < 0) return out;
    LazyEdge e;
    e.id = v;
    e.id.insert(e.id.begin(), color);
    e.color = color;
    e.range = v;
    e.source = v;
    e.source[color - 1] += 1;
    out.push_back(std::move(e));
    return out;
  };
  auto squares = [](const LazyEdge& a, const LazyEdge& b)
      -> std::optional<std::pair<LazyEdge, LazyEdge>> {
    LazyEdge x, y;
    x.color = b.color;
    x.range = a.range;
    x.source = a.range;
    x.source[b.color - 1] += 1;
    x.id = x.range;
    x.id.insert(x.id.begin(), x.color);
    y.color = a.color;
    y.range = x.source;
    y.source = b.source;
    y.id = y.range;
    y.id.insert(y.id.begin(), y.color);
    return std::pair{x, y};
  };
  auto name = [](const LazyVertex& v) { return grid_name(v); };
  return LazyKGraph(k, whole_lattice ? "delta" : "grid", edges, {}, name, squares);
}

}  // namespace

LazyKGraph grid(int k) { return lattice_grid(k, false); }
LazyKGraph delta_k(int k) { return lattice_grid(k, true); }

KGraph finite_grid(int k, const Degree& m) {
  if (k < 1 || m.size() != static_cast<std::size_t>(k) || !m.is_degree())
    throw PreconditionError("finite_grid needs k >= 1 and m in N^k");
  std::vector<std::string> vertices;
  std::vector<std::vector<std::int64_t>> pts;
  for (const auto& n : degrees_up_to(m)) pts.push_back(n.components());
  std::sort(pts.begin(), pts.end());
  for (const auto& n : pts) vertices.push_back(grid_name(n));
  auto inside = [&](const std::vector<std::int64_t>& n) {
    for (int i = 0; i < k; ++i)
      if (n[i] > m[i]) return false;
    return true;
  };
  std::vector<EdgeSpec> edges;
  std::vector<SquareSpec> squares;
  for (const auto& n : pts)
    for (int i = 1; i <= k; ++i) {
      auto s = n;
      s[i - 1] += 1;
      if (inside(s)) edges.push_back({grid_edge(i, n), i, grid_name(n), grid_name(s)});
      for (int j = i + 1; j <= k; ++j) {
        auto t = s;
        t[j - 1] += 1;
        if (!inside(t)) continue;
        auto nj = n;
        nj[j - 1] += 1;
        squares.push_back({grid_edge(i, n), grid_edge(j, s), grid_edge(j, n), grid_edge(i, nj)});
      }
    }
  return validated(KGraph::build(k, vertices, edges, squares));
}

KGraph pullback_2graph(const OneGraph& e) {
  std::vector<EdgeSpec> edges;
  for (const auto& x : e.edges) {
    edges.push_back({x.id + "_b", 1, x.range, x.source});
    edges.push_back({x.id + "_r", 2, x.range, x.source});
  }
  std::vector<SquareSpec> squares;
  for (const auto& a : e.edges)
    for (const auto& b : e.edges)
      if (a.source == b.range)
        squares.push_back({a.id + "_b", b.id + "_r", a.id + "_r", b.id + "_b"});
  return validated(KGraph::build(2, e.vertices, edges, squares));
}

OneGraph cycle_graph(int n) {
  if (n < 1) throw PreconditionError("cycle_graph needs n >= 1");
  OneGraph g;
  for (int i = 0; i < n; ++i) g.vertices.push_back("c" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    g.edges.push_back({"e" + std::to_string(i), 1, g.vertices[(i + 1) % n], g.vertices[i]});
  return g;
}

OneGraph arrow_graph() { return OneGraph{{"u", "v"}, {{"e", 1, "u", "v"}}}; }

namespace {

std::int64_t pow2(std::int64_t n) { return std::int64_t{1} << n; }

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

LazyEdge bratteli_red(std::int64_t n, std::int64_t j) {
  return LazyEdge{{2, n, j}, 2, {n, j}, {n, mod(j - 1, pow2(n))}};
}

LazyEdge bratteli_blue(std::int64_t n, std::int64_t j, std::int64_t which) {
  return LazyEdge{{1, n, j, which}, 1, {n, j}, {n + 1, j + which * pow2(n)}};
}

}  // namespace

LazyKGraph rank2_bratteli() {
  auto edges = [](const LazyVertex& v, int color) {
    std::vector<LazyEdge> out;
    if (v.size() != 2 || v[0] < 0 || v[0] > 60 || v[1] < 0 || v[1] >= pow2(v[0])) return out;
    if (color == 2) out.push_back(bratteli_red(v[0], v[1]));
    if (color == 1)
      for (std::int64_t w = 0; w < 2; ++w) out.push_back(bratteli_blue(v[0], v[1], w));
    return out;
  };
  auto level = [](const LazyVertex& v) { return v.at(0); };
  auto name = [](const LazyVertex& v) {
    return "b" + std::to_string(v.at(0)) + "_" + std::to_string(v.at(1));
  };
  // Both candidate refactorizations share range and source, and the two
  // sources one level down are distinct, so each square is forced.
  auto squares = [](const LazyEdge& a, const LazyEdge& b)
      -> std::optional<std::pair<LazyEdge, LazyEdge>> {
    const auto n = a.range[0], j = a.range[1];
    if (a.color == 1 && b.color == 2) {
      auto red = bratteli_red(n, j);
      const auto jm = red.source[1];
      for (std::int64_t w = 0; w < 2; ++w) {
        auto blue = bratteli_blue(n, jm, w);
        if (blue.source == b.source) return std::pair{red, blue};
      }
    } else if (a.color == 2 && b.color == 1) {
      for (std::int64_t w = 0; w < 2; ++w) {
        auto blue = bratteli_blue(n, j, w);
        auto red = bratteli_red(blue.source[0], blue.source[1]);
        if (red.source == b.source) return std::pair{blue, red};
      }
    }
    return std::nullopt;
  };
  return LazyKGraph(2, "bratteli", edges, level, name, squares);
}

std::vector<LazyVertex> bratteli_vertices(int levels) {
  std::vector<LazyVertex> out;
  for (std::int64_t n = 0; n < levels; ++n)
    for (std::int64_t j = 0; j < pow2(n); ++j) out.push_back({n, j});
  return out;
}

std::vector<LazyVertex> grid_box(int k, std::int64_t r) {
  std::vector<LazyVertex> out;
  for (const auto& d : degrees_up_to(Offset::constant(static_cast<std::size_t>(k), r)))
    out.push_back(d.components());
  std::sort(out.begin(), out.end());
  return out;
}

KGraph disjoint_union(const KGraph& a, const KGraph& b, const std::string& pa, const std::string& pb) {
  if (a.rank() != b.rank()) throw PreconditionError("disjoint_union needs equal ranks");
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  std::vector<SquareSpec> squares;
  for (const auto& [g, p] : {std::pair{&a, pa}, std::pair{&b, pb}}) {
    for (const auto& v : g->vertex_names()) vertices.push_back(p + v);
    for (const auto& e : g->skeleton().edges)
      edges.push_back({p + e.id, e.color, p + g->vertex_name(e.range), p + g->vertex_name(e.source)});
    for (const auto& s : g->square_set().squares)
      squares.push_back({p + g->edge(s.lo_first).id, p + g->edge(s.lo_second).id,
                         p + g->edge(s.hi_first).id, p + g->edge(s.hi_second).id});
  }
  return validated(KGraph::build(a.rank(), vertices, edges, squares));
}

LazyKGraph lazy_disjoint_union(const LazyKGraph& a, const LazyKGraph& b) {
  if (a.rank() != b.rank()) throw PreconditionError("lazy_disjoint_union needs equal ranks");
  auto tag = [](std::int64_t t, LazyVertex v) {
    v.insert(v.begin(), t);
    return v;
  };
  auto edges = [a, b, tag](const LazyVertex& v, int color) {
    std::vector<LazyEdge> out;
    if (v.empty() || (v[0] != 0 && v[0] != 1)) return out;
    LazyVertex inner(v.begin() + 1, v.end());
    for (auto& e : (v[0] == 0 ? a : b).edges_into(inner, color))
      out.push_back(LazyEdge{tag(v[0], e.id), e.color, tag(v[0], e.range), tag(v[0], e.source)});
    return out;
  };
  auto name = [a, b](const LazyVertex& v) {
    LazyVertex inner(v.begin() + 1, v.end());
    return std::to_string(v.at(0)) + "." + (v[0] == 0 ? a : b).vertex_name(inner);
  };
  return LazyKGraph(a.rank(), a.name() + "+" + b.name(), edges, {}, name);
}

KGraph ex33() {
  // Blue color 1, red color 2, dotted color 3; every edge has range x.
  return validated(KGraph::build(3, {"x", "w", "v", "u"},
                                 {{"b_w", 1, "x", "w"},
                                  {"b_u", 1, "x", "u"},
                                  {"r_v", 2, "x", "v"},
                                  {"r_u", 2, "x", "u"},
                                  {"d_u", 3, "x", "u"}},
                                 {}));
}

KGraph ex310() {
  std::vector<EdgeSpec> edges;
  for (int i = 1; i <= 3; ++i) edges.push_back({"f" + std::to_string(i), 1, "v", "v"});
  for (int j = 1; j <= 3; ++j) edges.push_back({"g" + std::to_string(j), 2, "v", "v"});
  std::vector<SquareSpec> squares;
  // g_j f_1 = f_2 g_j, g_j f_2 = f_1 g_j, g_j f_3 = f_3 g_j (j = 1, 3); g_2 f_i = f_i g_2.
  for (std::string j : {"g1", "g3"}) {
    squares.push_back({"f2", j, j, "f1"});
    squares.push_back({"f1", j, j, "f2"});
    squares.push_back({"f3", j, j, "f3"});
  }
  for (std::string f : {"f1", "f2", "f3"}) squares.push_back({f, "g2", "g2", f});
  return validated(KGraph::build(2, {"v"}, edges, squares));
}

KGraph ex311() {
  OneGraph c4{{"u", "z", "w", "v"},
              {{"uz", 1, "z", "u"}, {"zw", 1, "w", "z"}, {"wv", 1, "v", "w"}, {"vu", 1, "u", "v"}}};
  return pullback_2graph(c4);
}

KGraph ex53() {
  // α red and β blue, both from v into u.
  return validated(KGraph::build(2, {"u", "v"}, {{"beta", 1, "u", "v"}, {"alpha", 2, "u", "v"}}, {}));
}

KGraph ex62() {
  return validated(KGraph::build(2, {"u", "v"},
                                 {{"y", 1, "u", "u"},
                                  {"x", 2, "u", "u"},
                                  {"f", 1, "v", "u"},
                                  {"e", 2, "v", "u"}},
                                 {{"f", "x", "e", "y"}, {"y", "x", "x", "y"}}));
}

KGraph ex64() {
  std::vector<EdgeSpec> edges;
  for (int i = 1; i <= 3; ++i) edges.push_back({"f" + std::to_string(i), 1, "v", "v"});
  for (int j = 1; j <= 2; ++j) edges.push_back({"g" + std::to_string(j), 2, "v", "v"});
  std::vector<SquareSpec> squares;
  // f_i g_j = g_i f_j for i, j <= 2; f_3 g_i = g_i f_3.
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      squares.push_back({"f" + std::to_string(i), "g" + std::to_string(j), "g" + std::to_string(i),
                         "f" + std::to_string(j)});
  for (int i = 1; i <= 2; ++i)
    squares.push_back({"f3", "g" + std::to_string(i), "g" + std::to_string(i), "f3"});
  return validated(KGraph::build(2, {"v"}, edges, squares));
}

KGraph looptail() {
  OneGraph e{{"a", "b"}, {{"la", 1, "a", "a"}, {"lb", 1, "b", "b"}, {"t", 1, "a", "b"}}};
  return pullback_2graph(e);
}

std::map<std::string, KGraph> fixtures() {
  std::map<std::string, KGraph> m;
  m.emplace("EX33", ex33());
  m.emplace("EX310", ex310());
  m.emplace("EX311", ex311());
  m.emplace("EX53", ex53());
  m.emplace("EX62", ex62());
  m.emplace("EX64", ex64());
  m.emplace("LOOPTAIL", looptail());
  m.emplace("EX64+EX64", disjoint_union(ex64(), ex64()));
  m.emplace("EX62+EX64", disjoint_union(ex62(), ex64()));
  return m;
}

std::vector<std::string> family_names() {
  std::vector<std::string> names{"lambda_k", "finite_grid", "pullback_cycle", "pullback_arrow"};
  for (const auto& [n, g] : fixtures()) names.push_back(n);
  return names;
}

KGraph generate(const FamilySpec& spec) {
  const auto& p = spec.params;
  auto need = [&](std::size_t n) {
    if (p.size() != n)
      throw PreconditionError("family '" + spec.name + "' takes " + std::to_string(n) + " parameter(s)");
  };
  if (spec.name == "lambda_k") {
    need(1);
    return lambda_k(static_cast<int>(p[0]));
  }
  if (spec.name == "finite_grid") {
    if (p.empty()) throw PreconditionError("finite_grid takes k followed by m_1..m_k");
    need(1 + static_cast<std::size_t>(p[0]));
    return finite_grid(static_cast<int>(p[0]), Degree(std::vector<std::int64_t>(p.begin() + 1, p.end())));
  }
  if (spec.name == "pullback_cycle") {
    need(1);
    return pullback_2graph(cycle_graph(static_cast<int>(p[0])));
  }
  if (spec.name == "pullback_arrow") {
    need(0);
    return pullback_2graph(arrow_graph());
  }
  auto all = fixtures();
  auto it = all.find(spec.name);
  if (it == all.end()) throw std::invalid_argument("unknown family '" + spec.name + "'");
  need(0);
  return it->second;
}

}  // namespace kg
