#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kgtest {

struct PropertyCount {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;  // first few, for diagnostics

  void record(bool ok, const std::string& what);
};

/// Randomized invariants over random 2-graphs without sources.
struct PropertyTally {
  std::size_t graphs = 0;
  PropertyCount equality;         // t_equal against the rewrite oracle
  std::size_t equality_definite = 0;
  PropertyCount cancellation;     // a + c = b + c iff a = b
  PropertyCount conicality;       // a + b = 0 only for a = b = 0
  PropertyCount action_order;     // a <= b implies n.a <= n.b
  PropertyCount refinement;       // a + b = c + d refines
  PropertyCount closure;          // saturated hereditary closure against brute force
  PropertyCount rho_eta;          // eta(rho(H)) = H
  PropertyCount factor_compose;   // compose(factor(p, m)) = p
  PropertyCount color_orders;     // normal form enumeration against other color orders

  bool clean() const;
  std::string summary() const;
};

PropertyTally run_property_suite(std::uint64_t seed, std::size_t graphs);

}  // namespace kgtest
