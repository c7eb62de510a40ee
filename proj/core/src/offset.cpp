#include "kgraph/offset.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kg {

Offset Offset::unit(std::size_t k, int i) {
  if (i < 1 || static_cast<std::size_t>(i) > k)
    throw std::out_of_range("unit offset color out of range");
  Offset o(k);
  o.c_[i - 1] = 1;
  return o;
}

Offset Offset::constant(std::size_t k, std::int64_t value) {
  return Offset(std::vector<std::int64_t>(k, value));
}

bool Offset::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](auto x) { return x == 0; });
}

bool Offset::is_degree() const {
  return std::all_of(c_.begin(), c_.end(), [](auto x) { return x >= 0; });
}

std::int64_t Offset::l1() const {
  std::int64_t s = 0;
  for (auto x : c_) s += x < 0 ? -x : x;
  return s;
}

Offset& Offset::operator+=(const Offset& o) {
  if (o.size() != size()) throw std::invalid_argument("offset rank mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Offset& Offset::operator-=(const Offset& o) {
  if (o.size() != size()) throw std::invalid_argument("offset rank mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Offset Offset::operator-() const {
  Offset r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

bool Offset::leq(const Offset& o) const {
  if (o.size() != size()) throw std::invalid_argument("offset rank mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] > o.c_[i]) return false;
  return true;
}

std::string Offset::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ',';
    os << c_[i];
  }
  os << ')';
  return os.str();
}

Offset join(const Offset& a, const Offset& b) {
  if (a.size() != b.size()) throw std::invalid_argument("offset rank mismatch");
  Offset r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Offset meet(const Offset& a, const Offset& b) {
  if (a.size() != b.size()) throw std::invalid_argument("offset rank mismatch");
  Offset r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

namespace {

// Orders by total degree, then reverse lexicographic on components.
bool graded_before(const Offset& a, const Offset& b) {
  auto la = a.l1(), lb = b.l1();
  if (la != lb) return la < lb;
  return b < a;
}

}  // namespace

std::vector<Degree> degrees_up_to(const Degree& bound) {
  std::vector<Degree> out;
  Degree cur(bound.size());
  const std::size_t k = bound.size();
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    while (i < k && cur[i] == bound[i]) cur[i++] = 0;
    if (i == k) break;
    ++cur[i];
  }
  std::sort(out.begin(), out.end(), graded_before);
  return out;
}

Offset normalize_sign(const Offset& n) {
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] > 0) return n;
    if (n[i] < 0) return -n;
  }
  return n;
}

std::vector<Offset> normalized_periods(std::size_t k, std::int64_t r) {
  std::vector<Offset> out;
  Offset cur = Offset::constant(k, -r);
  while (true) {
    if (!cur.is_zero() && normalize_sign(cur) == cur) out.push_back(cur);
    std::size_t i = 0;
    while (i < k && cur[i] == r) cur[i++] = -r;
    if (i == k) break;
    ++cur[i];
  }
  std::sort(out.begin(), out.end(), graded_before);
  return out;
}

}  // namespace kg
