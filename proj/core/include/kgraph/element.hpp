#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "kgraph/offset.hpp"

namespace kg {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;
/// Vertex identifier of a lazily enumerated graph.
using LazyVertex = std::vector<std::int64_t>;

/// Finite multiset over Gen; multiplicities are strictly positive.
template <class Gen>
class FreeElement {
public:
  using generator_type = Gen;
  using map_type = std::map<Gen, std::uint64_t>;

  FreeElement() = default;
  FreeElement(const Gen& g, std::uint64_t n = 1) { add(g, n); }

  void add(const Gen& g, std::uint64_t n = 1) {
    if (n == 0) return;
    auto& slot = terms_[g];
    if (slot + n < slot) throw std::overflow_error("multiplicity overflow");
    slot += n;
  }

  /// Removes n copies of g; returns false (and leaves *this intact) when fewer exist.
  bool remove(const Gen& g, std::uint64_t n = 1) {
    if (n == 0) return true;
    auto it = terms_.find(g);
    if (it == terms_.end() || it->second < n) return false;
    it->second -= n;
    if (it->second == 0) terms_.erase(it);
    return true;
  }

  std::uint64_t count(const Gen& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? 0 : it->second;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }
  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& [g, n] : terms_) t += n;
    return t;
  }
  const map_type& terms() const { return terms_; }

  /// Multiset inclusion.
  bool leq(const FreeElement& o) const {
    for (const auto& [g, n] : terms_)
      if (o.count(g) < n) return false;
    return true;
  }

  FreeElement& operator+=(const FreeElement& o) {
    for (const auto& [g, n] : o.terms_) add(g, n);
    return *this;
  }
  friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }

  FreeElement scaled(std::uint64_t n) const {
    FreeElement r;
    for (const auto& [g, m] : terms_) r.add(g, m * n);
    return r;
  }

  friend bool operator==(const FreeElement&, const FreeElement&) = default;
  friend auto operator<=>(const FreeElement& a, const FreeElement& b) {
    return a.terms_ <=> b.terms_;
  }

private:
  map_type terms_;
};

/// Generator v(n) of the talented monoid, equivalently the skew vertex (v, n).
struct TGen {
  VertexIndex vertex = 0;
  Offset offset;
  friend bool operator==(const TGen&, const TGen&) = default;
  friend auto operator<=>(const TGen&, const TGen&) = default;
};

struct LazyTGen {
  LazyVertex vertex;
  Offset offset;
  friend bool operator==(const LazyTGen&, const LazyTGen&) = default;
  friend auto operator<=>(const LazyTGen&, const LazyTGen&) = default;
};

using TElement = FreeElement<TGen>;
using MElement = FreeElement<VertexIndex>;
using SkewElement = FreeElement<TGen>;
using LazyTElement = FreeElement<LazyTGen>;

inline TElement gen(VertexIndex v, Offset n, std::uint64_t mult = 1) {
  return TElement(TGen{v, std::move(n)}, mult);
}

}  // namespace kg
