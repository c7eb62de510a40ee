#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace kg {

/// A vector in Z^k. Degrees are the offsets with nonnegative entries.
class Offset {
public:
  Offset() = default;
  explicit Offset(std::size_t k) : c_(k, 0) {}
  Offset(std::initializer_list<std::int64_t> xs) : c_(xs) {}
  explicit Offset(std::vector<std::int64_t> xs) : c_(std::move(xs)) {}

  static Offset zero(std::size_t k) { return Offset(k); }
  /// e_i with i in 1..k.
  static Offset unit(std::size_t k, int i);
  static Offset constant(std::size_t k, std::int64_t value);

  std::size_t size() const { return c_.size(); }
  std::int64_t operator[](std::size_t i) const { return c_[i]; }
  std::int64_t& operator[](std::size_t i) { return c_[i]; }
  const std::vector<std::int64_t>& components() const { return c_; }

  bool is_zero() const;
  bool is_degree() const;  // all components >= 0
  std::int64_t l1() const;

  Offset& operator+=(const Offset& o);
  Offset& operator-=(const Offset& o);
  friend Offset operator+(Offset a, const Offset& b) { return a += b; }
  friend Offset operator-(Offset a, const Offset& b) { return a -= b; }
  Offset operator-() const;

  /// Componentwise order.
  bool leq(const Offset& o) const;

  friend bool operator==(const Offset&, const Offset&) = default;
  friend std::strong_ordering operator<=>(const Offset& a, const Offset& b) {
    return a.c_ <=> b.c_;
  }

  std::string str() const;

private:
  std::vector<std::int64_t> c_;
};

/// Degrees are offsets in N^k; the alias keeps signatures readable.
using Degree = Offset;

Offset join(const Offset& a, const Offset& b);
Offset meet(const Offset& a, const Offset& b);

/// Every degree m with 0 <= m <= bound, ordered by total degree and then
/// with higher early components first (e_1 before e_2).
std::vector<Degree> degrees_up_to(const Degree& bound);

/// Nonzero offsets in [-r, r]^k whose first nonzero entry is positive,
/// ordered like degrees_up_to.
std::vector<Offset> normalized_periods(std::size_t k, std::int64_t r);

/// Flips the sign so that the first nonzero entry is positive.
Offset normalize_sign(const Offset& n);

}  // namespace kg
