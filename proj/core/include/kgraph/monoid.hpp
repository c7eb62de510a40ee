#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "kgraph/element.hpp"
#include "kgraph/graph.hpp"
#include "kgraph/matrix.hpp"
#include "kgraph/rewrite.hpp"
#include "kgraph/tri.hpp"

namespace kg {

/// Σ_v vector(v)·v(level).
struct LevelForm {
  Offset level;
  BigVector vector;
  friend bool operator==(const LevelForm&, const LevelForm&) = default;
};

struct EqMode {
  enum class Kind { Auto, Exact, Bounded, Rewrite };
  Kind kind = Kind::Auto;
  std::int64_t max_push = 16;  // bound on |m|_1 for pushforwards

  static EqMode automatic(std::int64_t max_push = 16) { return {Kind::Auto, max_push}; }
  static EqMode exact() { return {Kind::Exact, 0}; }
  static EqMode bounded(std::int64_t max_push) { return {Kind::Bounded, max_push}; }
  static EqMode rewrite(std::int64_t depth = 8) { return {Kind::Rewrite, depth}; }
};

/// Search limits shared by the monoid and classification procedures.
struct Bounds {
  std::int64_t push = 16;          // |m|_1 for equality pushforwards
  std::int64_t rewrite_depth = 8;  // steps for rewriting searches
  int support = 2;                 // periodic search: terms per element
  std::uint64_t coeff = 4;         // periodic search: coefficient bound
  std::int64_t box = 4;            // offsets and periods in [-box, box]^k
  std::int64_t depth = 20;         // lazy exploration depth
};

/// Cached coordinate matrices and pushforwards for one finite graph.
class LevelEngine {
public:
  explicit LevelEngine(const KGraph& g);

  const KGraph& graph() const { return *g_; }
  const BigMatrix& power(const Degree& m);
  /// Row v of A_m as a level vector contribution.
  BigVector push(const TElement& a, const Offset& t);
  BigVector advance(const BigVector& x, const Degree& m) { return power(m).left_apply(x); }
  bool exact_available() const { return exact_; }
  const std::vector<BigInt>& determinants() const { return dets_; }
  /// Whether the edge matrices pairwise commute.
  bool commuting() const { return commuting_; }
  /// s with s_i the index where the ranks of the powers of A_{e_i} stabilize:
  /// for commuting matrices, A_m z = 0 for some m iff A_s z = 0.
  const Degree& stabilization();

private:
  const KGraph* g_;
  std::vector<BigMatrix> gens_;
  std::map<Degree, BigMatrix> cache_;
  std::vector<BigInt> dets_;
  std::optional<Degree> stab_;
  bool exact_ = false;
  bool commuting_ = true;
};

/// Per-color rank stabilization index (see LevelEngine::stabilization).
Degree kernel_stabilization(const KGraph& g);

/// Smallest level dominating every offset of the elements (zero offset when empty).
Offset common_level(std::size_t k, const std::vector<const TElement*>& elems);

LevelForm push_to_level(const KGraph& g, const TElement& a, const Offset& t);

/// True when the graph has no sources and every det A_{e_i} is nonzero.
bool exact_mode_available(const KGraph& g);

Tri t_equal(const KGraph& g, const TElement& a, const TElement& b, EqMode mode = {});
Tri t_leq(const KGraph& g, const TElement& a, const TElement& b, EqMode mode = {});

TElement act(const Offset& n, const TElement& a);
MElement forget(const TElement& a);
Tri m_congruent(const KGraph& g, const MElement& x, const MElement& y, std::int64_t bound);
SkewElement to_skew(const TElement& a);

Tri is_atom(const KGraph& g, const TElement& a);

struct AtomsDescription {
  std::vector<VertexIndex> leaves;  // atoms are exactly v(n) for these v, n in Z^k
};
AtomsDescription atoms(const KGraph& g);

Tri is_atomic(const KGraph& g);

/// Decomposition into atoms (leaf generators) found by pushing each term until
/// all its sources are leaves; nullopt when none exists within the bound.
std::optional<std::vector<TGen>> factor_into_atoms(const KGraph& g, const TElement& a, std::int64_t bound);

struct PeriodicWitness {
  TElement element;
  Offset period;
  Tri equality;  // t_equal(act(period, element), element)
};

std::optional<PeriodicWitness> find_periodic_element(const KGraph& g, const Bounds& bounds = {});

/// For each vertex v, the first period n in the search box with v(n) = v(0)
/// (level pushforwards, or rewriting when the graph has sources).
std::vector<std::pair<VertexIndex, Offset>> periodic_generators(const KGraph& g, const Bounds& bounds = {});

/// Leaf orbit n -> x(n) (source of the unique path of degree n) searched for a
/// collision among degrees with |n|_1 <= limit.
struct OrbitCollision {
  Degree first, second;
  Offset period;  // normalized second - first
};
std::optional<OrbitCollision> leaf_orbit_collision(const KGraph& g, VertexIndex leaf, std::int64_t limit);

/// Single-vertex rule: counts a_i = |vΛ^{e_i}|. Returns a nonzero integer
/// relation x - y between exponent vectors when the counts are dependent or
/// some a_i = 1; nullopt when they are multiplicatively independent.
std::optional<Offset> multiplicative_relation(const std::vector<std::int64_t>& counts);

Tri acts_freely(const KGraph& g, const Bounds& bounds = {});

std::optional<std::array<TElement, 4>> refine(const KGraph& g, const TElement& a, const TElement& b,
                                              const TElement& c, const TElement& d, EqMode mode = {});

// ---------------------------------------------------------------------------
// Lazy graphs: bounded procedures over sparse level vectors.

using SparseLevel = std::map<LazyVertex, std::uint64_t>;

class LazyLevelEngine {
public:
  explicit LazyLevelEngine(const LazyKGraph& g) : g_(&g) {}
  const LazyKGraph& graph() const { return *g_; }
  /// Pushforward of one generator by degree m; nullopt when some vertex along
  /// the way is a source or multiplicities overflow.
  std::optional<SparseLevel> push_generator(const LazyVertex& v, const Degree& m);
  std::optional<SparseLevel> push(const LazyTElement& a, const Offset& t);

private:
  const LazyKGraph* g_;
  std::map<std::pair<LazyVertex, Degree>, std::optional<SparseLevel>> cache_;
};

/// Bounded equality on a lazy graph: Yes with the level witness, else Unknown.
Tri t_equal(const LazyKGraph& g, const LazyTElement& a, const LazyTElement& b, std::int64_t max_push,
            LazyLevelEngine* engine = nullptr);

LazyTElement act(const Offset& n, const LazyTElement& a);

/// Bounded atomicity on a sample: Yes when the sampled vertices that are
/// leaves to `depth` close up, within the sample, to the whole sample.
/// Otherwise Unknown; the verdict says nothing about unsampled vertices.
Tri is_atomic(const LazyKGraph& g, const std::vector<LazyVertex>& sample, std::int64_t depth);

std::optional<std::pair<LazyTElement, Offset>> find_periodic_element(const LazyKGraph& g,
                                                                     const std::vector<LazyVertex>& vertices,
                                                                     const Bounds& bounds = {});

/// Leaf orbit of a lazy vertex explored up to |n|_1 <= depth.
std::optional<OrbitCollision> leaf_orbit_collision(const LazyKGraph& g, const LazyVertex& leaf,
                                                   std::int64_t depth);
/// Orbit vertices {x(n) : |n|_1 <= depth} of a lazy leaf.
std::set<LazyVertex> leaf_orbit(const LazyKGraph& g, const LazyVertex& leaf, std::int64_t depth);

}  // namespace kg
