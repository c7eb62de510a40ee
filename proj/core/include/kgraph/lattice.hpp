#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "kgraph/element.hpp"
#include "kgraph/graph.hpp"
#include "kgraph/tri.hpp"

namespace kg {

class ResourceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

using VertexSet = std::set<VertexIndex>;

/// n x n Boolean matrix, row-major.
struct BoolMatrix {
  std::size_t n = 0;
  std::vector<std::uint8_t> bits;

  BoolMatrix() = default;
  explicit BoolMatrix(std::size_t size) : n(size), bits(size * size, 0) {}
  static BoolMatrix identity(std::size_t size);
  bool operator()(std::size_t i, std::size_t j) const { return bits[i * n + j] != 0; }
  void set(std::size_t i, std::size_t j) { bits[i * n + j] = 1; }
  BoolMatrix operator*(const BoolMatrix& o) const;
  /// {w : M(v, w)}.
  VertexSet row(std::size_t v) const;
  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;
  friend auto operator<=>(const BoolMatrix&, const BoolMatrix&) = default;
};

BoolMatrix support_matrix(const KGraph& g, const Degree& n);

/// The semigroup generated by the supports R_{e_i} of the edge matrices, with
/// a degree witnessing each element. The identity (degree 0) is included.
class BooleanReach {
public:
  struct Element {
    BoolMatrix matrix;
    Degree degree;
  };

  explicit BooleanReach(const KGraph& g, std::size_t max_elements = 200000);
  const std::vector<Element>& elements() const { return elements_; }
  const BoolMatrix& generator(int color) const { return gens_.at(static_cast<std::size_t>(color - 1)); }

private:
  std::vector<BoolMatrix> gens_;
  std::vector<Element> elements_;
};

struct HSSubset {
  VertexSet vertices;
  bool hereditary = false;
  bool saturated = false;
  friend bool operator==(const HSSubset&, const HSSubset&) = default;
};

VertexSet hereditary_closure(const KGraph& g, const VertexSet& x);

/// Least hereditary saturated superset; throws PreconditionError with sources.
HSSubset saturated_hereditary_closure(const KGraph& g, const VertexSet& x);
HSSubset saturated_hereditary_closure(const KGraph& g, const VertexSet& x, const BooleanReach& reach);

struct LatticeListing {
  std::vector<VertexSet> sets;  // sorted by size, then lexicographically
  std::vector<std::vector<std::size_t>> meet, join;
  std::size_t index_of(const VertexSet& h) const;
};

LatticeListing all_hs_subsets(const KGraph& g, std::size_t size_limit = 16);

/// Yes iff some pushforward of a's level vector is supported in H.
Tri ideal_membership(const KGraph& g, const TElement& a, const VertexSet& h);

struct OrderIdealDesc {
  HSSubset generator;
};

OrderIdealDesc rho(const KGraph& g, const VertexSet& h);
VertexSet eta(const KGraph& g, const OrderIdealDesc& j);

/// Maximal-tail test on the complement of a proper hereditary saturated H.
bool is_prime_ideal(const KGraph& g, const VertexSet& h);

/// Image in T_{Λ/H}, with vertices renumbered as in quotient_graph.
TElement quotient_monoid_map(const KGraph& g, const VertexSet& h, const TElement& a);

// ---------------------------------------------------------------------------
// Lazy graphs: closures inside a finite vertex sample.

using LazyVertexSet = std::set<LazyVertex>;

/// Hereditary and saturation steps restricted to `sample`; sources outside
/// the sample count as outside the set, so the result under-approximates the
/// true closure intersected with the sample.
LazyVertexSet truncated_closure(const LazyKGraph& g, const LazyVertexSet& x, const LazyVertexSet& sample);

}  // namespace kg
