#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kg {

using BigInt = boost::multiprecision::cpp_int;
using BigVector = std::vector<BigInt>;

/// Dense square matrix of arbitrary-precision integers.
class BigMatrix {
public:
  BigMatrix() = default;
  explicit BigMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static BigMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  BigMatrix operator*(const BigMatrix& o) const;
  friend bool operator==(const BigMatrix&, const BigMatrix&) = default;

  /// Row vector times matrix: y(w) = sum_v x(v) M(v, w).
  BigVector left_apply(const BigVector& x) const;
  BigInt determinant() const;
  /// Rank over the rationals.
  std::size_t rank() const;
  /// Boolean support: entry true iff nonzero.
  std::vector<bool> support() const;

private:
  std::size_t n_ = 0;
  std::vector<BigInt> a_;
};

}  // namespace kg
