#include "kgraph/matrix.hpp"

#include <stdexcept>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace kg {

BigMatrix BigMatrix::identity(std::size_t n) {
  BigMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

BigMatrix BigMatrix::operator*(const BigMatrix& o) const {
  if (o.n_ != n_) throw std::invalid_argument("matrix size mismatch");
  BigMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t l = 0; l < n_; ++l) {
      const BigInt& x = (*this)(i, l);
      if (x == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) r(i, j) += x * o(l, j);
    }
  return r;
}

BigVector BigMatrix::left_apply(const BigVector& x) const {
  if (x.size() != n_) throw std::invalid_argument("vector size mismatch");
  BigVector y(n_);
  for (std::size_t v = 0; v < n_; ++v) {
    if (x[v] == 0) continue;
    for (std::size_t w = 0; w < n_; ++w) y[w] += x[v] * (*this)(v, w);
  }
  return y;
}

// Fraction-free Bareiss elimination.
BigInt BigMatrix::determinant() const {
  if (n_ == 0) return 1;
  std::vector<BigInt> m = a_;
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return m[i * n_ + j]; };
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n_; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n_ && at(p, k) == 0) ++p;
      if (p == n_) return 0;
      for (std::size_t j = 0; j < n_; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n_; ++i)
      for (std::size_t j = k + 1; j < n_; ++j)
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  return sign * at(n_ - 1, n_ - 1);
}

std::size_t BigMatrix::rank() const {
  using Q = boost::multiprecision::cpp_rational;
  std::vector<Q> m(a_.begin(), a_.end());
  auto at = [&](std::size_t i, std::size_t j) -> Q& { return m[i * n_ + j]; };
  std::size_t r = 0;
  for (std::size_t c = 0; c < n_ && r < n_; ++c) {
    std::size_t p = r;
    while (p < n_ && at(p, c) == 0) ++p;
    if (p == n_) continue;
    if (p != r)
      for (std::size_t j = 0; j < n_; ++j) std::swap(at(r, j), at(p, j));
    for (std::size_t i = r + 1; i < n_; ++i) {
      if (at(i, c) == 0) continue;
      Q f = at(i, c) / at(r, c);
      for (std::size_t j = c; j < n_; ++j) at(i, j) -= f * at(r, j);
    }
    ++r;
  }
  return r;
}

std::vector<bool> BigMatrix::support() const {
  std::vector<bool> s(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) s[i] = a_[i] != 0;
  return s;
}

}  // namespace kg
