#include "support/properties.hpp"

#include <random>
#include <set>
#include <sstream>

#include "kgraph/lattice.hpp"
#include "kgraph/monoid.hpp"
#include "kgraph/path.hpp"
#include "kgraph/replay.hpp"
#include "support/oracles.hpp"
#include "support/random_graphs.hpp"

namespace kgtest {

using namespace kg;

void PropertyCount::record(bool ok, const std::string& what) {
  ++checked;
  if (ok) return;
  ++failed;
  if (failures.size() < 5) failures.push_back(what);
}

bool PropertyTally::clean() const {
  for (const auto* c : {&equality, &cancellation, &conicality, &action_order, &refinement, &closure, &rho_eta,
                        &factor_compose, &color_orders})
    if (c->failed || c->checked == 0) return false;
  return true;
}

std::string PropertyTally::summary() const {
  std::ostringstream os;
  auto line = [&](const char* name, const PropertyCount& c) {
    os << name << " " << c.checked - c.failed << "/" << c.checked;
    for (const auto& f : c.failures) os << "\n    " << f;
    os << "\n";
  };
  os << "graphs " << graphs << ", definite equality verdicts " << equality_definite << "\n";
  line("equality", equality);
  line("cancellation", cancellation);
  line("conicality", conicality);
  line("action_order", action_order);
  line("refinement", refinement);
  line("closure", closure);
  line("rho_eta", rho_eta);
  line("factor_compose", factor_compose);
  line("color_orders", color_orders);
  return os.str();
}

namespace {

std::string describe(const KGraph& g, const TElement& a) {
  std::string s;
  for (const auto& [t, m] : a.terms()) s += (s.empty() ? "" : "+") + g.vertex_name(t.vertex) + t.offset.str() + "*" + std::to_string(m);
  return s.empty() ? "0" : s;
}

/// One rewriting move on a random term: (v, n) becomes its color-i sources at n + e_i.
TElement expand_once(std::mt19937_64& rng, const KGraph& g, const TElement& a) {
  std::vector<TGen> gens;
  for (const auto& [t, m] : a.terms()) gens.push_back(t);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> color(1, g.rank());
  const auto t = gens[pick(rng)];
  const int c = color(rng);
  TElement out = a;
  out.remove(t, 1);
  auto n = t.offset + Offset::unit(t.offset.size(), c);
  for (auto w : g.sources(t.vertex, c)) out.add(TGen{w, n});
  return out;
}

/// Splits the full color-1 expansion of x into two random parts.
std::pair<TElement, TElement> random_split(std::mt19937_64& rng, const KGraph& g, const TElement& x) {
  TElement c, d;
  std::bernoulli_distribution coin(0.5);
  for (const auto& [t, m] : x.terms()) {
    auto n = t.offset + Offset::unit(t.offset.size(), 1);
    for (std::uint64_t r = 0; r < m; ++r)
      for (auto w : g.sources(t.vertex, 1)) (coin(rng) ? c : d).add(TGen{w, n});
  }
  return {c, d};
}

void check_equality(std::mt19937_64& rng, const KGraph& g, PropertyTally& tally) {
  constexpr std::int64_t oracle_depth = 16;
  std::vector<std::pair<TElement, TElement>> pairs;
  for (int i = 0; i < 6; ++i) pairs.emplace_back(random_element(rng, g), random_element(rng, g));
  for (int i = 0; i < 3; ++i) {
    auto a = random_element(rng, g);
    auto b = a;
    for (int s = 0; s < 3; ++s) b = expand_once(rng, g, b);
    pairs.emplace_back(a, b);
  }
  {
    auto a = random_element(rng, g);
    pairs.emplace_back(a, act(Offset{1, -1}, a));
    pairs.emplace_back(a, act(Offset{1, 0}, a));
  }
  for (const auto& [a, b] : pairs) {
    auto t = t_equal(g, a, b);
    if (!t.definite()) continue;
    ++tally.equality_definite;
    auto o = oracle_equal(g, a, b, oracle_depth);
    bool ok = t.is_yes() ? o.has_value() : !o.has_value();
    tally.equality.record(ok, describe(g, a) + " vs " + describe(g, b) + ": library " +
                                  std::string(to_string(t.verdict)));
    tally.equality.record(replay(g, t), "certificate " + std::string(to_string(t.cert.kind)) + " for " +
                                            describe(g, a) + " vs " + describe(g, b) + " does not replay");
  }
}

void check_monoid_laws(std::mt19937_64& rng, const KGraph& g, PropertyTally& tally) {
  for (int i = 0; i < 4; ++i) {
    auto a = random_element(rng, g), b = random_element(rng, g), c = random_element(rng, g);
    if (i % 2 == 1) b = expand_once(rng, g, a);  // an equal pair
    auto lhs = t_equal(g, a + c, b + c);
    auto rhs = t_equal(g, a, b);
    if (lhs.definite() && rhs.definite())
      tally.cancellation.record(lhs.verdict == rhs.verdict,
                                describe(g, a) + ", " + describe(g, b) + ", " + describe(g, c));

    auto z = t_equal(g, a + b, TElement{});
    tally.conicality.record(z.is_no(), describe(g, a + b) + " compared with 0");
    tally.conicality.record(t_leq(g, TElement{}, a).is_yes(), "0 <= " + describe(g, a));

    auto le = t_leq(g, a, a + c);
    tally.action_order.record(le.is_yes(), describe(g, a) + " <= itself plus " + describe(g, c));
    for (const auto& n : {Offset{1, 0}, Offset{0, -1}, Offset{2, -1}}) {
      auto shifted = t_leq(g, act(n, a), act(n, a + c));
      tally.action_order.record(shifted.is_yes(), "shift " + n.str() + " of " + describe(g, a));
      if (rhs.is_yes()) {
        auto e = t_equal(g, act(n, a), act(n, b));
        tally.action_order.record(!e.is_no(), "shift " + n.str() + " of equal pair " + describe(g, a));
      }
    }
  }
}

void check_refinement(std::mt19937_64& rng, const KGraph& g, PropertyTally& tally) {
  for (int i = 0; i < 3; ++i) {
    auto a = random_element(rng, g), b = random_element(rng, g);
    auto [c, d] = random_split(rng, g, a + b);
    if (!t_equal(g, a + b, c + d).is_yes()) {
      tally.refinement.record(false, "constructed equal sums not detected: " + describe(g, a + b));
      continue;
    }
    auto r = refine(g, a, b, c, d);
    if (!r) {
      tally.refinement.record(false, "no refinement for " + describe(g, a) + " + " + describe(g, b));
      continue;
    }
    const auto& z = *r;
    bool ok = oracle_equal(g, a, z[0] + z[1], 16) && oracle_equal(g, c, z[0] + z[2], 16) &&
              oracle_equal(g, b, z[2] + z[3], 16) && oracle_equal(g, d, z[1] + z[3], 16);
    tally.refinement.record(ok, "refinement of " + describe(g, a) + " + " + describe(g, b) + " does not recompose");
  }
}

void check_lattice(const KGraph& g, PropertyTally& tally) {
  const auto n = g.vertex_count();
  auto hs = brute_hs_subsets(g);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    VertexSet x;
    for (VertexIndex v = 0; v < n; ++v)
      if (mask >> v & 1u) x.insert(v);
    auto lib = saturated_hereditary_closure(g, x);
    tally.closure.record(lib.vertices == brute_closure(hs, x, n), "closure of mask " + std::to_string(mask));
  }
  auto listing = all_hs_subsets(g);
  tally.closure.record(std::set<VertexSet>(listing.sets.begin(), listing.sets.end()) ==
                           std::set<VertexSet>(hs.begin(), hs.end()),
                       "lattice listing differs from brute force");
  for (const auto& h : listing.sets) {
    auto desc = rho(g, h);
    tally.rho_eta.record(eta(g, desc) == h, "eta(rho(H)) differs for |H| = " + std::to_string(h.size()));
  }
}

void check_paths(std::mt19937_64& rng, const KGraph& g, PropertyTally& tally) {
  for (const auto& n : degrees_up_to(Offset{3, 3})) {
    std::vector<int> interleaved, reversed_blocks;
    for (std::int64_t s = 0; s < n[1]; ++s) reversed_blocks.push_back(2);
    for (std::int64_t s = 0; s < n[0]; ++s) reversed_blocks.push_back(1);
    for (std::int64_t s = 0; s < std::max(n[0], n[1]); ++s) {
      if (s < n[1]) interleaved.push_back(2);
      if (s < n[0]) interleaved.push_back(1);
    }
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      auto paths = enumerate_paths(g, v, n);
      std::set<Path> normal(paths.begin(), paths.end());
      BigInt expected = 0;
      for (const auto& x : path_counts(g, v, n)) expected += x;
      bool counts = normal.size() == paths.size() && BigInt(paths.size()) == expected;
      for (const auto* order : {&interleaved, &reversed_blocks}) {
        auto other = enumerate_paths_in_order(g, v, *order);
        counts = counts && std::set<Path>(other.begin(), other.end()) == normal && other.size() == paths.size();
      }
      tally.color_orders.record(counts, "vertex " + g.vertex_name(v) + " degree " + n.str());

      std::vector<Path> sample = paths;
      std::shuffle(sample.begin(), sample.end(), rng);
      if (sample.size() > 12) sample.resize(12);
      for (const auto& p : sample)
        for (const auto& m : degrees_up_to(n)) {
          auto [head, tail] = factor(g, p, m);
          bool ok = head.degree == m && tail.degree == n - m && compose(g, head, tail) == p &&
                    head.range == p.range && source(g, tail) == source(g, p);
          tally.factor_compose.record(ok, path_str(g, p) + " at " + m.str());
        }
    }
  }
}

}  // namespace

PropertyTally run_property_suite(std::uint64_t seed, std::size_t graphs) {
  PropertyTally tally;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < graphs; ++i) {
    auto g = random_two_graph(rng);
    ++tally.graphs;
    check_equality(rng, g, tally);
    check_monoid_laws(rng, g, tally);
    check_refinement(rng, g, tally);
    check_lattice(g, tally);
    check_paths(rng, g, tally);
  }
  return tally;
}

}  // namespace kgtest
