#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kgraph/element.hpp"
#include "kgraph/offset.hpp"

namespace kg {

enum class Verdict { Yes, No, Unknown };

std::string_view to_string(Verdict v);

enum class CertKind {
  None,
  // rewriting
  Reflexive,
  Derivation,
  ZeroSeparated,
  LinearInvariant,
  FiniteReducts,
  // level forms
  LevelEquality,
  InjectiveMatrices,
  KernelStabilized,
  LevelDominance,
  ConicalZero,
  // atoms and leaves
  LeafGenerator,
  BranchingVertex,
  NotSingleGenerator,
  ZeroElement,
  LeafClosure,
  ClosureGap,
  // action
  MultiplicativeIndependence,
  PeriodicElement,
  PeriodicAtom,
  FreeAction,
  InjectiveOrbit,
  LinePointReach,
  LinePointMissing,
  // lattice and classification
  TrivialLattice,
  ProperHS,
  SupportInside,
  SupportEscapes,
  Composite,
  Quotient,  // parts[0] holds on the quotient by sets[0]
  // bounded and refused
  BoundedEvidence,
  BoundExhausted,
  Unsupported,
};

std::string_view to_string(CertKind k);

/// One rewriting move of a derivation: `times` occurrences of `gen` expanded
/// by `color` (or, when inverse, collapsed back into `gen`).
struct ChainLink {
  TGen gen;
  int color = 0;
  std::uint64_t times = 1;
  bool inverse = false;
  friend bool operator==(const ChainLink&, const ChainLink&) = default;
};

/// Witness payload. Which fields are meaningful depends on `kind`; the replay
/// functions document the expectations per kind.
struct Certificate {
  CertKind kind = CertKind::None;
  std::string detail;
  TElement a, b;
  LazyTElement lazy_a, lazy_b;
  Offset level;
  Offset period;
  Degree push;
  Degree push2;
  std::vector<VertexIndex> vertices;
  std::vector<LazyVertex> lazy_vertices;
  std::vector<ChainLink> chain;
  std::vector<std::int64_t> numbers;
  std::vector<std::vector<VertexIndex>> sets;
  std::vector<Certificate> parts;
  std::int64_t bound = 0;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// A certified three-valued result. `bounded` marks verdicts that only hold
/// relative to a truncation or depth recorded in the certificate.
struct Tri {
  Verdict verdict = Verdict::Unknown;
  Certificate cert;
  bool bounded = false;

  static Tri yes(Certificate c, bool bounded = false) { return {Verdict::Yes, std::move(c), bounded}; }
  static Tri no(Certificate c, bool bounded = false) { return {Verdict::No, std::move(c), bounded}; }
  static Tri unknown(Certificate c) { return {Verdict::Unknown, std::move(c), false}; }
  static Tri exhausted(std::int64_t bound, std::string detail = {});
  static Tri unsupported(std::string detail);

  bool is_yes() const { return verdict == Verdict::Yes; }
  bool is_no() const { return verdict == Verdict::No; }
  bool is_unknown() const { return verdict == Verdict::Unknown; }
  bool definite() const { return verdict != Verdict::Unknown; }
};

/// Three-valued conjunction: No dominates, then Unknown.
Tri tri_and(const std::vector<Tri>& parts, std::string detail = {});

}  // namespace kg
