#include "cli/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "cli/document.hpp"
#include "kgraph/classify.hpp"
#include "kgraph/families.hpp"
#include "kgraph/lattice.hpp"

namespace kg::cli {

using nlohmann::json;

Bounds parse_bounds(const std::string& spec, Bounds b) {
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("bound '" + item + "' is not key=value");
    std::string key = item.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    std::int64_t value = 0;
    try {
      value = std::stoll(item.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw ParseError("bound '" + item + "' has a non-integer value");
    }
    if (value < 0) throw ParseError("bound '" + key + "' must be nonnegative");
    if (key == "push") b.push = value;
    else if (key == "rewrite") b.rewrite_depth = value;
    else if (key == "support") b.support = static_cast<int>(value);
    else if (key == "coeff") b.coeff = static_cast<std::uint64_t>(value);
    else if (key == "box") b.box = value;
    else if (key == "depth") b.depth = value;
    else throw ParseError("unknown bound '" + key + "'");
  }
  return b;
}

namespace {

struct Options {
  std::string format = "text";
  std::string output;
  bool strict = false;
  std::int64_t bound = -1;
  std::int64_t depth = -1;
  std::string mode = "auto";
};

bool structured(const Options& o) { return o.format == "structured"; }

Bounds effective_bounds(const Options& o) {
  Bounds b;
  if (const char* env = std::getenv(bounds_env)) b = parse_bounds(env, b);
  if (o.bound >= 0) b.push = o.bound;
  if (o.depth >= 0) b.depth = o.depth;
  return b;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A path to a graph document, or the name of a built-in fixture.
KGraph load_unvalidated(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    auto all = fixtures();
    if (auto it = all.find(path); it != all.end()) return it->second;
  }
  return to_graph(parse_graph_document(read_file(path)));
}

KGraph load(const std::string& path) {
  auto g = load_unvalidated(path);
  auto report = validate(g);
  if (!report.valid) {
    std::string msg = "graph is not valid";
    if (!report.problems.empty()) msg += ": " + report.problems.front();
    throw ValidationError(msg);
  }
  return validated(std::move(g));
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + o.output + "'");
  f << text;
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Yes: return Ok;
    case Verdict::No: return AnswerNo;
    case Verdict::Unknown: break;
  }
  return AnswerUnknown;
}

std::string tri_text(const Tri& t) {
  std::string s(to_string(t.verdict));
  s += " (" + std::string(to_string(t.cert.kind));
  if (t.bounded) s += ", bounded";
  s += ")";
  return s;
}

json tri_json(const Tri& t) {
  return {{"verdict", std::string(to_string(t.verdict))}, {"bounded", t.bounded}, {"certificate", to_json(t.cert)}};
}

std::string set_text(const KGraph& g, const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (auto v : s) {
    if (!first) out += ",";
    out += g.vertex_name(v);
    first = false;
  }
  return out + "}";
}

json set_json(const KGraph& g, const VertexSet& s) {
  json a = json::array();
  for (auto v : s) a.push_back(g.vertex_name(v));
  return a;
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path, const Options& o, std::ostream& out) {
  auto g = load_unvalidated(path);
  auto r = validate(g);
  if (structured(o)) {
    json j{{"valid", r.valid}, {"has_sources", r.has_sources}, {"problems", r.problems},
           {"hexagon_checked", r.hexagon_checked}, {"hexagon_ok", r.hexagon_ok},
           {"hexagon_triples", r.hexagon_triples}};
    emit(o, out, j.dump(2) + "\n");
  } else {
    std::string s = r.valid ? "valid\n" : "invalid\n";
    for (const auto& p : r.problems) s += "  " + p + "\n";
    s += std::string("sources: ") + (r.has_sources ? "yes" : "no") + "\n";
    if (r.hexagon_checked) s += "hexagon triples checked: " + std::to_string(r.hexagon_triples) + "\n";
    emit(o, out, s);
  }
  return r.valid ? Ok : Invalid;
}

int cmd_compare(bool order, const std::string& path, const std::string& lhs, const std::string& rhs,
                const Options& o, std::ostream& out) {
  auto g = load(path);
  auto b = effective_bounds(o);
  auto a = parse_element(g, lhs);
  auto c = parse_element(g, rhs);
  EqMode mode;
  if (o.mode == "auto") mode = EqMode::automatic(b.push);
  else if (o.mode == "exact") mode = EqMode::exact();
  else if (o.mode == "rewrite") mode = EqMode::rewrite(o.bound >= 0 ? o.bound : b.rewrite_depth);
  else throw ParseError("unknown mode '" + o.mode + "'");
  Tri t = order ? t_leq(g, a, c, mode) : t_equal(g, a, c, mode);
  if (structured(o)) {
    json j = tri_json(t);
    j["lhs"] = format_element(g, a);
    j["rhs"] = format_element(g, c);
    emit(o, out, j.dump(2) + "\n");
  } else {
    emit(o, out, tri_text(t) + "\n");
  }
  return verdict_code(t.verdict);
}

int cmd_classify(const std::string& path, const std::vector<std::string>& requested, const Options& o,
                 std::ostream& out) {
  auto g = load(path);
  auto b = effective_bounds(o);
  auto start = std::chrono::steady_clock::now();
  auto r = kp_report(g, b);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  auto doc = make_report(g, r, path);
  doc.timings["kp_report"] = seconds;
  if (!requested.empty()) {
    std::map<std::string, PropertyEntry> kept;
    for (const auto& name : requested) {
      auto it = doc.properties.find(name);
      if (it == doc.properties.end()) throw ParseError("unknown property '" + name + "'");
      kept.insert(*it);
    }
    doc.properties = std::move(kept);
  }
  if (structured(o)) {
    emit(o, out, serialize(doc));
  } else {
    std::string s;
    for (const auto& [name, p] : doc.properties) {
      s += name + ": " + std::string(to_string(p.verdict)) + " (" + std::string(to_string(p.cert.kind));
      if (p.bounded) s += ", bounded";
      s += ")\n";
    }
    for (const auto& [name, items] : doc.sets) {
      s += name + ":";
      for (const auto& i : items) s += " " + i;
      s += "\n";
    }
    emit(o, out, s);
  }
  if (o.strict)
    for (const auto& [name, p] : doc.properties)
      if (p.verdict == Verdict::Unknown) return StrictUnknown;
  return Ok;
}

FamilySpec family_spec(const std::vector<std::string>& words) {
  if (words.empty()) throw ParseError("gen needs a family name");
  FamilySpec spec{words[0], {}};
  std::vector<std::string> rest(words.begin() + 1, words.end());
  if (spec.name == "pullback") {
    if (rest.size() != 1) throw ParseError("pullback takes C<n> or A2");
    const auto& e = rest[0];
    if (e == "A2") return {"pullback_arrow", {}};
    if (e.size() > 1 && e[0] == 'C') {
      try {
        return {"pullback_cycle", {std::stoll(e.substr(1))}};
      } catch (const std::logic_error&) {
      }
    }
    throw ParseError("unknown pullback base '" + e + "'");
  }
  if (spec.name == "A2") return {"pullback_arrow", {}};
  for (const auto& w : rest) {
    try {
      std::size_t used = 0;
      spec.params.push_back(std::stoll(w, &used));
      if (used != w.size()) throw std::invalid_argument(w);
    } catch (const std::logic_error&) {
      throw ParseError("parameter '" + w + "' is not an integer");
    }
  }
  return spec;
}

int cmd_gen(const std::vector<std::string>& words, const Options& o, std::ostream& out) {
  auto spec = family_spec(words);
  const auto names = family_names();
  if (std::find(names.begin(), names.end(), spec.name) == names.end())
    throw ParseError("unknown family '" + spec.name + "'");
  try {
    emit(o, out, serialize(to_document(generate(spec))));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
  return Ok;
}

std::string dot_quote(const std::string& s) {
  std::string r = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r + "\"";
}

int cmd_export_dot(const std::string& path, std::ostream& out, const Options& o) {
  auto g = load_unvalidated(path);
  static const char* palette[] = {"blue", "red", "darkgreen", "orange", "purple", "brown"};
  std::string s = "digraph kgraph {\n";
  for (const auto& v : g.vertex_names()) s += "  " + dot_quote(v) + ";\n";
  for (const auto& e : g.skeleton().edges)
    s += "  " + dot_quote(g.vertex_name(e.source)) + " -> " + dot_quote(g.vertex_name(e.range)) +
         " [label=" + dot_quote(e.id) + ", color=" + palette[(e.color - 1) % 6] +
         ", colorindex=" + std::to_string(e.color) + "];\n";
  s += "}\n";
  emit(o, out, s);
  return Ok;
}

int cmd_lattice(const std::string& path, const Options& o, std::ostream& out) {
  auto g = load(path);
  auto l = all_hs_subsets(g);
  if (structured(o)) {
    json sets = json::array();
    for (const auto& h : l.sets) sets.push_back(set_json(g, h));
    emit(o, out, json{{"sets", sets}, {"meet", l.meet}, {"join", l.join}}.dump(2) + "\n");
  } else {
    std::string s;
    for (const auto& h : l.sets) s += set_text(g, h) + "\n";
    emit(o, out, s);
  }
  return Ok;
}

int cmd_closure(const std::string& path, const std::vector<std::string>& names, const Options& o,
                std::ostream& out) {
  auto g = load(path);
  VertexSet x;
  for (const auto& n : names) {
    auto v = g.find_vertex(n);
    if (!v) throw ParseError("unknown vertex '" + n + "'");
    x.insert(*v);
  }
  auto h = saturated_hereditary_closure(g, x);
  if (structured(o))
    emit(o, out, json{{"closure", set_json(g, h.vertices)}}.dump(2) + "\n");
  else
    emit(o, out, set_text(g, h.vertices) + "\n");
  return Ok;
}

int cmd_linepoints(const std::string& target, std::int64_t sample_size, const Options& o, std::ostream& out) {
  auto b = effective_bounds(o);
  std::optional<LazyKGraph> lazy;
  std::vector<LazyVertex> sample;
  if (target == "grid" || target == "delta") {
    lazy.emplace(target == "grid" ? grid(2) : delta_k(2));
    sample = grid_box(2, sample_size < 0 ? 1 : sample_size);
  } else if (target == "bratteli") {
    lazy.emplace(rank2_bratteli());
    sample = bratteli_vertices(static_cast<int>(sample_size < 0 ? 4 : sample_size));
  }
  if (lazy) {
    auto lp = line_points(*lazy, sample, b);
    if (structured(o)) {
      json pts = json::array();
      for (const auto& p : lp.points) pts.push_back(lazy->vertex_name(p));
      json verdicts = json::object();
      for (const auto& [v, t] : lp.verdicts) verdicts[lazy->vertex_name(v)] = tri_json(t);
      emit(o, out,
           json{{"graph", target}, {"depth", b.depth}, {"sampled", sample.size()}, {"linePoints", pts},
                {"verdicts", verdicts}}
                   .dump(2) +
               "\n");
    } else {
      std::string s = "sampled " + std::to_string(sample.size()) + " vertices at depth " + std::to_string(b.depth) +
                      "; line points:";
      for (const auto& p : lp.points) s += " " + lazy->vertex_name(p);
      emit(o, out, s + "\n");
    }
    return Ok;
  }
  auto g = load(target);
  auto lp = line_points(g, b);
  if (structured(o)) {
    json verdicts = json::object();
    for (const auto& [v, t] : lp.verdicts) verdicts[g.vertex_name(v)] = tri_json(t);
    emit(o, out,
         json{{"linePoints", set_json(g, VertexSet(lp.points.begin(), lp.points.end()))}, {"verdicts", verdicts}}
                 .dump(2) +
             "\n");
  } else {
    emit(o, out, set_text(g, VertexSet(lp.points.begin(), lp.points.end())) + "\n");
  }
  return Ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-graph monoids and Kumjian-Pask classification", "kgraph"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("-o,--output", o.output, "write to this file instead of standard output");
    sub->add_option("--bound", o.bound, "pushforward bound (rewrite depth in rewrite mode)");
    sub->add_option("--depth", o.depth, "lazy exploration depth");
  };

  std::string path, lhs, rhs;
  std::vector<std::string> words, properties;
  std::int64_t sample = -1;

  auto* validate_cmd = app.add_subcommand("validate", "check a graph document");
  validate_cmd->add_option("path", path)->required();
  common(validate_cmd);

  auto* eq_cmd = app.add_subcommand("eq", "decide a = b in the talented monoid");
  auto* leq_cmd = app.add_subcommand("leq", "decide a <= b in the talented monoid");
  for (auto* c : {eq_cmd, leq_cmd}) {
    c->add_option("path", path)->required();
    c->add_option("lhs", lhs)->required();
    c->add_option("rhs", rhs)->required();
    c->add_option("--mode", o.mode, "auto, exact or rewrite")->check(CLI::IsMember({"auto", "exact", "rewrite"}));
    common(c);
  }

  auto* classify_cmd = app.add_subcommand("classify", "report the classification properties");
  classify_cmd->add_option("path", path)->required();
  classify_cmd->add_option("--property", properties, "restrict the report (repeatable)");
  classify_cmd->add_flag("--strict", o.strict, "exit 5 when a reported property is Unknown");
  common(classify_cmd);

  auto* gen_cmd = app.add_subcommand("gen", "write a family member as a graph document");
  gen_cmd->add_option("family", words, "family name and parameters")->required();
  common(gen_cmd);

  auto* dot_cmd = app.add_subcommand("export-dot", "write a DOT digraph");
  dot_cmd->add_option("path", path)->required();
  common(dot_cmd);

  auto* lattice_cmd = app.add_subcommand("lattice", "list the hereditary saturated subsets");
  lattice_cmd->add_option("path", path)->required();
  common(lattice_cmd);

  auto* closure_cmd = app.add_subcommand("closure", "hereditary saturated closure of vertices");
  closure_cmd->add_option("path", path)->required();
  closure_cmd->add_option("vertices", words)->required();
  common(closure_cmd);

  auto* lp_cmd = app.add_subcommand("linepoints", "line points of a graph or of grid, delta, bratteli");
  lp_cmd->add_option("path", path)->required();
  lp_cmd->add_option("--sample", sample, "box radius (grid, delta) or level count (bratteli)");
  common(lp_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return ParseFailure;
  }

  try {
    if (*validate_cmd) return cmd_validate(path, o, out);
    if (*eq_cmd) return cmd_compare(false, path, lhs, rhs, o, out);
    if (*leq_cmd) return cmd_compare(true, path, lhs, rhs, o, out);
    if (*classify_cmd) return cmd_classify(path, properties, o, out);
    if (*gen_cmd) return cmd_gen(words, o, out);
    if (*dot_cmd) return cmd_export_dot(path, out, o);
    if (*lattice_cmd) return cmd_lattice(path, o, out);
    if (*closure_cmd) return cmd_closure(path, words, o, out);
    if (*lp_cmd) return cmd_linepoints(path, sample, o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return ParseFailure;
  } catch (const StructuralError& e) {
    err << "structural error: " << e.what() << "\n";
    return ParseFailure;
  } catch (const ValidationError& e) {
    err << "invalid: " << e.what() << "\n";
    return Invalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return ParseFailure;
  }
  return ParseFailure;
}

}  // namespace kg::cli
