#include "cli/document.hpp"

#include <regex>
#include <sstream>

namespace kg::cli {

using nlohmann::json;

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

bool operator==(const GraphDocument& a, const GraphDocument& b) {
  auto edge_eq = [](const EdgeSpec& x, const EdgeSpec& y) {
    return x.id == y.id && x.color == y.color && x.range == y.range && x.source == y.source;
  };
  auto sq_eq = [](const SquareSpec& x, const SquareSpec& y) {
    return x.lo_first == y.lo_first && x.lo_second == y.lo_second && x.hi_first == y.hi_first &&
           x.hi_second == y.hi_second;
  };
  return a.format_version == b.format_version && a.k == b.k && a.vertices == b.vertices &&
         std::equal(a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(), edge_eq) &&
         std::equal(a.squares.begin(), a.squares.end(), b.squares.begin(), b.squares.end(), sq_eq);
}

GraphDocument parse_graph_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
  GraphDocument d;
  d.format_version = field<int>(j, "format_version");
  if (d.format_version != 1) throw ParseError("unsupported format_version " + std::to_string(d.format_version));
  d.k = field<int>(j, "k");
  if (d.k < 1) throw ParseError("k must be at least 1");
  d.vertices = field<std::vector<std::string>>(j, "vertices");
  for (const auto& e : field<json>(j, "edges")) {
    EdgeSpec s{field<std::string>(e, "id"), field<int>(e, "color"), field<std::string>(e, "range"),
               field<std::string>(e, "source")};
    if (s.color < 1 || s.color > d.k) throw ParseError("edge " + s.id + " has unknown color " + std::to_string(s.color));
    d.edges.push_back(std::move(s));
  }
  if (j.contains("squares"))
    for (const auto& s : j.at("squares")) {
      auto lo = field<std::vector<std::string>>(s, "lo");
      auto hi = field<std::vector<std::string>>(s, "hi");
      if (lo.size() != 2 || hi.size() != 2) throw ParseError("a square lists two edges on each side");
      d.squares.push_back(SquareSpec{lo[0], lo[1], hi[0], hi[1]});
    }
  return d;
}

std::string serialize(const GraphDocument& d) {
  json j;
  j["format_version"] = d.format_version;
  j["k"] = d.k;
  j["vertices"] = d.vertices;
  j["edges"] = json::array();
  for (const auto& e : d.edges)
    j["edges"].push_back({{"id", e.id}, {"color", e.color}, {"range", e.range}, {"source", e.source}});
  j["squares"] = json::array();
  for (const auto& s : d.squares)
    j["squares"].push_back({{"lo", {s.lo_first, s.lo_second}}, {"hi", {s.hi_first, s.hi_second}}});
  return j.dump(2) + "\n";
}

GraphDocument to_document(const KGraph& g) {
  GraphDocument d;
  d.k = g.rank();
  d.vertices = g.vertex_names();
  for (const auto& e : g.skeleton().edges)
    d.edges.push_back(EdgeSpec{e.id, e.color, g.vertex_name(e.range), g.vertex_name(e.source)});
  for (const auto& s : g.square_set().squares)
    d.squares.push_back(SquareSpec{g.edge(s.lo_first).id, g.edge(s.lo_second).id, g.edge(s.hi_first).id,
                                   g.edge(s.hi_second).id});
  return d;
}

KGraph to_graph(const GraphDocument& d) { return KGraph::build(d.k, d.vertices, d.edges, d.squares); }

TElement parse_element(const KGraph& g, const std::string& text) {
  static const std::regex term(R"(^\s*([A-Za-z0-9_.:@]+)\s*\(([^)]*)\)\s*(?:\*\s*([0-9]+))?\s*$)");
  static const std::regex zero(R"(^\s*0\s*$)");
  TElement out;
  if (std::regex_match(text, zero)) return out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, '+')) {
    std::smatch m;
    if (!std::regex_match(piece, m, term)) throw ParseError("cannot parse term '" + piece + "'");
    auto v = g.find_vertex(m[1].str());
    if (!v) throw ParseError("unknown vertex '" + m[1].str() + "'");
    Offset n;
    std::vector<std::int64_t> comps;
    std::stringstream cs(m[2].str());
    std::string c;
    while (std::getline(cs, c, ',')) {
      try {
        std::size_t used = 0;
        comps.push_back(std::stoll(c, &used));
        if (c.find_first_not_of(" \t", used) != std::string::npos) throw ParseError("bad offset");
      } catch (const std::logic_error&) {
        throw ParseError("bad offset component '" + c + "'");
      }
    }
    if (comps.size() != static_cast<std::size_t>(g.rank()))
      throw ParseError("offset of '" + piece + "' needs " + std::to_string(g.rank()) + " components");
    std::uint64_t coeff = 1;
    if (m[3].matched) {
      try {
        coeff = std::stoull(m[3].str());
      } catch (const std::logic_error&) {
        throw ParseError("bad coefficient in '" + piece + "'");
      }
    }
    out.add(TGen{*v, Offset(comps)}, coeff);
  }
  return out;
}

std::string format_element(const KGraph& g, const TElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [t, n] : a.terms()) {
    if (!out.empty()) out += " + ";
    out += g.vertex_name(t.vertex) + t.offset.str();
    if (n != 1) out += "*" + std::to_string(n);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

json offset_json(const Offset& o) { return o.components(); }
Offset offset_from(const json& j) { return Offset(j.get<std::vector<std::int64_t>>()); }

json element_json(const TElement& e) {
  json a = json::array();
  for (const auto& [t, n] : e.terms()) a.push_back({{"v", t.vertex}, {"n", offset_json(t.offset)}, {"m", n}});
  return a;
}

TElement element_from(const json& j) {
  TElement e;
  for (const auto& t : j) e.add(TGen{t.at("v").get<VertexIndex>(), offset_from(t.at("n"))}, t.at("m").get<std::uint64_t>());
  return e;
}

json lazy_element_json(const LazyTElement& e) {
  json a = json::array();
  for (const auto& [t, n] : e.terms()) a.push_back({{"v", t.vertex}, {"n", offset_json(t.offset)}, {"m", n}});
  return a;
}

LazyTElement lazy_element_from(const json& j) {
  LazyTElement e;
  for (const auto& t : j)
    e.add(LazyTGen{t.at("v").get<LazyVertex>(), offset_from(t.at("n"))}, t.at("m").get<std::uint64_t>());
  return e;
}

CertKind kind_from(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(CertKind::Unsupported); ++i)
    if (to_string(static_cast<CertKind>(i)) == s) return static_cast<CertKind>(i);
  throw ParseError("unknown certificate kind '" + s + "'");
}

Verdict verdict_from(const std::string& s) {
  for (auto v : {Verdict::Yes, Verdict::No, Verdict::Unknown})
    if (to_string(v) == s) return v;
  throw ParseError("unknown verdict '" + s + "'");
}

}  // namespace

json to_json(const Certificate& c) {
  json j;
  j["kind"] = std::string(to_string(c.kind));
  j["detail"] = c.detail;
  j["a"] = element_json(c.a);
  j["b"] = element_json(c.b);
  j["lazy_a"] = lazy_element_json(c.lazy_a);
  j["lazy_b"] = lazy_element_json(c.lazy_b);
  j["level"] = offset_json(c.level);
  j["period"] = offset_json(c.period);
  j["push"] = offset_json(c.push);
  j["push2"] = offset_json(c.push2);
  j["vertices"] = c.vertices;
  j["lazy_vertices"] = c.lazy_vertices;
  j["chain"] = json::array();
  for (const auto& l : c.chain)
    j["chain"].push_back({{"v", l.gen.vertex}, {"n", offset_json(l.gen.offset)}, {"color", l.color},
                          {"times", l.times}, {"inverse", l.inverse}});
  j["numbers"] = c.numbers;
  j["sets"] = c.sets;
  j["parts"] = json::array();
  for (const auto& p : c.parts) j["parts"].push_back(to_json(p));
  j["bound"] = c.bound;
  return j;
}

Certificate certificate_from_json(const json& j) {
  try {
    Certificate c;
    c.kind = kind_from(j.at("kind").get<std::string>());
    c.detail = j.at("detail").get<std::string>();
    c.a = element_from(j.at("a"));
    c.b = element_from(j.at("b"));
    c.lazy_a = lazy_element_from(j.at("lazy_a"));
    c.lazy_b = lazy_element_from(j.at("lazy_b"));
    c.level = offset_from(j.at("level"));
    c.period = offset_from(j.at("period"));
    c.push = offset_from(j.at("push"));
    c.push2 = offset_from(j.at("push2"));
    c.vertices = j.at("vertices").get<std::vector<VertexIndex>>();
    c.lazy_vertices = j.at("lazy_vertices").get<std::vector<LazyVertex>>();
    for (const auto& l : j.at("chain"))
      c.chain.push_back(ChainLink{TGen{l.at("v").get<VertexIndex>(), offset_from(l.at("n"))}, l.at("color").get<int>(),
                                  l.at("times").get<std::uint64_t>(), l.at("inverse").get<bool>()});
    c.numbers = j.at("numbers").get<std::vector<std::int64_t>>();
    c.sets = j.at("sets").get<std::vector<std::vector<VertexIndex>>>();
    for (const auto& p : j.at("parts")) c.parts.push_back(certificate_from_json(p));
    c.bound = j.at("bound").get<std::int64_t>();
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
}

bool operator==(const PropertyEntry& a, const PropertyEntry& b) {
  return a.verdict == b.verdict && a.bounded == b.bounded && a.cert == b.cert;
}

bool operator==(const ReportDocument& a, const ReportDocument& b) {
  return a.format_version == b.format_version && a.subject == b.subject && a.properties == b.properties &&
         a.bounds == b.bounds && a.sets == b.sets && a.timings == b.timings;
}

json to_json(const ReportDocument& r) {
  json j;
  j["format_version"] = r.format_version;
  j["subject"] = r.subject;
  j["properties"] = json::object();
  for (const auto& [name, p] : r.properties)
    j["properties"][name] = {{"verdict", std::string(to_string(p.verdict))},
                             {"bounded", p.bounded},
                             {"certificate", to_json(p.cert)}};
  j["bounds"] = r.bounds;
  j["sets"] = r.sets;
  j["timings"] = r.timings;
  return j;
}

ReportDocument report_from_json(const json& j) {
  try {
    ReportDocument r;
    r.format_version = j.at("format_version").get<int>();
    r.subject = j.at("subject").get<std::string>();
    for (const auto& [name, p] : j.at("properties").items())
      r.properties[name] = PropertyEntry{verdict_from(p.at("verdict").get<std::string>()), p.at("bounded").get<bool>(),
                                         certificate_from_json(p.at("certificate"))};
    r.bounds = j.at("bounds").get<std::map<std::string, std::int64_t>>();
    r.sets = j.at("sets").get<std::map<std::string, std::vector<std::string>>>();
    r.timings = j.at("timings").get<std::map<std::string, double>>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

std::string serialize(const ReportDocument& r) { return to_json(r).dump(2) + "\n"; }

ReportDocument parse_report_document(const std::string& text) {
  try {
    return report_from_json(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

PropertyEntry entry(const Tri& t) { return PropertyEntry{t.verdict, t.bounded, t.cert}; }

ReportDocument make_report(const KGraph& g, const ClassificationReport& r, const std::string& subject) {
  ReportDocument d;
  d.subject = subject;
  d.properties["cofinal"] = entry(r.cofinal);
  d.properties["atomic"] = entry(r.atomic);
  d.properties["freeAction"] = entry(r.free_action);
  d.properties["aperiodic"] = entry(r.aperiodic);
  d.properties["stronglyAperiodic"] = entry(r.strongly_aperiodic);
  d.properties["semisimple"] = entry(r.semisimple);
  d.properties["socleEssential"] = entry(r.socle_essential);
  d.properties["gradedBasicIdealSimple"] = entry(r.graded_basic_ideal_simple);
  d.properties["simple"] = entry(r.simple);
  d.bounds = {{"push", r.bounds.push},       {"rewrite_depth", r.bounds.rewrite_depth},
              {"support", r.bounds.support}, {"coeff", static_cast<std::int64_t>(r.bounds.coeff)},
              {"box", r.bounds.box},         {"depth", r.bounds.depth}};
  auto names = [&](const std::vector<VertexIndex>& vs) {
    std::vector<std::string> out;
    for (auto v : vs) out.push_back(g.vertex_name(v));
    return out;
  };
  d.sets["linePoints"] = names(r.line_points);
  d.sets["socle"] = names(r.socle);
  d.sets["atoms"] = names(r.atoms);
  std::vector<std::string> periodic;
  for (const auto& [v, n] : r.periodic_generators) periodic.push_back(g.vertex_name(v) + n.str());
  d.sets["periodicGenerators"] = periodic;
  if (r.lattice) {
    std::vector<std::string> sets;
    for (const auto& h : r.lattice->sets) {
      std::string s = "{";
      for (auto v : h) s += (s.size() > 1 ? "," : "") + g.vertex_name(v);
      sets.push_back(s + "}");
    }
    d.sets["lattice"] = sets;
  }
  d.sets["lineClasses"] = {std::to_string(r.line_point_classes)};
  if (r.lewin_sims) {
    d.bounds["lewinSimsPairs"] = static_cast<std::int64_t>(r.lewin_sims->pairs);
    d.bounds["lewinSimsResolved"] = static_cast<std::int64_t>(r.lewin_sims->resolved);
  }
  d.sets["hasSources"] = {r.has_sources ? "true" : "false"};
  return d;
}

}  // namespace kg::cli
