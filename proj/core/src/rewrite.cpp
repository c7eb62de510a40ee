#include "kgraph/rewrite.hpp"

namespace kg {

std::vector<std::pair<VertexIndex, int>> GraphMonoidSystem::preimages(VertexIndex v) const {
  std::set<std::pair<VertexIndex, int>> out;
  for (auto e : g_->edges_from(v)) out.emplace(g_->edge(e).range, g_->edge(e).color);
  return {out.begin(), out.end()};
}

std::vector<TGen> SkewSystem::expand(const TGen& x, int color) const {
  std::vector<TGen> out;
  for (auto e : g_->edges_into(x.vertex, color)) {
    TGen s{g_->edge(e).source, x.offset};
    s.offset[color - 1] += 1;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::pair<TGen, int>> SkewSystem::preimages(const TGen& x) const {
  std::set<std::pair<TGen, int>> out;
  for (auto e : g_->edges_from(x.vertex)) {
    const auto& ed = g_->edge(e);
    TGen r{ed.range, x.offset};
    r.offset[ed.color - 1] -= 1;
    out.emplace(std::move(r), ed.color);
  }
  return {out.begin(), out.end()};
}

namespace {

__extension__ typedef __int128 i128;

const std::int64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 2147483647};

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>((static_cast<i128>(a) * b) % p);
}

std::int64_t powmod(std::int64_t a, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::int64_t norm(std::int64_t x, std::int64_t p) { return ((x % p) + p) % p; }

/// Rows of the invariant equations: phi(v) - sum_w A_i(v, w) phi(w) = 0.
std::vector<std::vector<std::int64_t>> constraint_rows(const KGraph& g, std::int64_t p) {
  std::vector<std::vector<std::int64_t>> rows;
  const auto n = g.vertex_count();
  for (VertexIndex v = 0; v < n; ++v)
    for (int i = 1; i <= g.rank(); ++i) {
      const auto& in = g.edges_into(v, i);
      if (in.empty()) continue;
      std::vector<std::int64_t> row(n, 0);
      row[v] = 1;
      for (auto e : in) row[g.edge(e).source] = norm(row[g.edge(e).source] - 1, p);
      rows.push_back(std::move(row));
    }
  return rows;
}

std::vector<std::vector<std::int64_t>> nullspace(std::vector<std::vector<std::int64_t>> rows,
                                                 std::size_t n, std::int64_t p) {
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    auto inv = powmod(rows[r][c], p - 2, p);
    for (auto& x : rows[r]) x = mulmod(x, inv, p);
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == r || rows[o][c] == 0) continue;
      auto f = rows[o][c];
      for (std::size_t j = 0; j < n; ++j) rows[o][j] = norm(rows[o][j] - mulmod(f, rows[r][j], p), p);
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::int64_t> vec(n, 0);
    vec[f] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      vec[static_cast<std::size_t>(pivot_col[i])] = norm(-rows[i][f], p);
    basis.push_back(std::move(vec));
  }
  return basis;
}

std::int64_t evaluate(const std::vector<std::int64_t>& phi, const MElement& x, std::int64_t p) {
  std::int64_t s = 0;
  for (const auto& [v, n] : x.terms())
    s = norm(s + mulmod(phi.at(v), static_cast<std::int64_t>(n % static_cast<std::uint64_t>(p)), p), p);
  return s;
}

MElement as_m(const TElement& t) {
  MElement m;
  for (const auto& [g, n] : t.terms()) m.add(g.vertex, n);
  return m;
}

}  // namespace

std::optional<Certificate> separating_invariant(const KGraph& g, const MElement& a, const MElement& b) {
  const auto n = g.vertex_count();
  for (auto p : kPrimes) {
    for (const auto& phi : nullspace(constraint_rows(g, p), n, p)) {
      if (evaluate(phi, a, p) == evaluate(phi, b, p)) continue;
      Certificate c;
      c.kind = CertKind::LinearInvariant;
      for (const auto& [v, m] : a.terms()) c.a.add(TGen{v, Offset()}, m);
      for (const auto& [v, m] : b.terms()) c.b.add(TGen{v, Offset()}, m);
      c.numbers.push_back(p);
      c.numbers.insert(c.numbers.end(), phi.begin(), phi.end());
      c.detail = "additive invariant modulo " + std::to_string(p) + " separates the elements";
      return c;
    }
  }
  return std::nullopt;
}

bool check_invariant(const KGraph& g, const Certificate& c) {
  if (c.kind != CertKind::LinearInvariant || c.numbers.size() != g.vertex_count() + 1) return false;
  const auto p = c.numbers[0];
  if (p < 2) return false;
  std::vector<std::int64_t> phi(c.numbers.begin() + 1, c.numbers.end());
  for (const auto& row : constraint_rows(g, p)) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < row.size(); ++j) s = norm(s + mulmod(row[j], norm(phi[j], p), p), p);
    if (s != 0) return false;
  }
  return evaluate(phi, as_m(c.a), p) != evaluate(phi, as_m(c.b), p);
}

}  // namespace kg
