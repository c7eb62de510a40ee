#include "kgraph/tri.hpp"

namespace kg {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "Yes";
    case Verdict::No: return "No";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

std::string_view to_string(CertKind k) {
  switch (k) {
    case CertKind::None: return "None";
    case CertKind::Reflexive: return "Reflexive";
    case CertKind::Derivation: return "Derivation";
    case CertKind::ZeroSeparated: return "ZeroSeparated";
    case CertKind::LinearInvariant: return "LinearInvariant";
    case CertKind::FiniteReducts: return "FiniteReducts";
    case CertKind::LevelEquality: return "LevelEquality";
    case CertKind::InjectiveMatrices: return "InjectiveMatrices";
    case CertKind::KernelStabilized: return "KernelStabilized";
    case CertKind::LevelDominance: return "LevelDominance";
    case CertKind::ConicalZero: return "ConicalZero";
    case CertKind::LeafGenerator: return "LeafGenerator";
    case CertKind::BranchingVertex: return "BranchingVertex";
    case CertKind::NotSingleGenerator: return "NotSingleGenerator";
    case CertKind::ZeroElement: return "ZeroElement";
    case CertKind::LeafClosure: return "LeafClosure";
    case CertKind::ClosureGap: return "ClosureGap";
    case CertKind::MultiplicativeIndependence: return "MultiplicativeIndependence";
    case CertKind::PeriodicElement: return "PeriodicElement";
    case CertKind::PeriodicAtom: return "PeriodicAtom";
    case CertKind::FreeAction: return "FreeAction";
    case CertKind::InjectiveOrbit: return "InjectiveOrbit";
    case CertKind::LinePointReach: return "LinePointReach";
    case CertKind::LinePointMissing: return "LinePointMissing";
    case CertKind::TrivialLattice: return "TrivialLattice";
    case CertKind::ProperHS: return "ProperHS";
    case CertKind::SupportInside: return "SupportInside";
    case CertKind::SupportEscapes: return "SupportEscapes";
    case CertKind::Composite: return "Composite";
    case CertKind::Quotient: return "Quotient";
    case CertKind::BoundedEvidence: return "BoundedEvidence";
    case CertKind::BoundExhausted: return "BoundExhausted";
    case CertKind::Unsupported: return "Unsupported";
  }
  return "?";
}

Tri Tri::exhausted(std::int64_t bound, std::string detail) {
  Certificate c;
  c.kind = CertKind::BoundExhausted;
  c.bound = bound;
  c.detail = std::move(detail);
  return unknown(std::move(c));
}

Tri Tri::unsupported(std::string detail) {
  Certificate c;
  c.kind = CertKind::Unsupported;
  c.detail = std::move(detail);
  return unknown(std::move(c));
}

Tri tri_and(const std::vector<Tri>& parts, std::string detail) {
  Certificate c;
  c.kind = CertKind::Composite;
  c.detail = std::move(detail);
  bool unknown = false, bounded = false;
  for (const auto& p : parts) {
    if (p.is_no()) {
      Certificate only;
      only.kind = CertKind::Composite;
      only.detail = c.detail;
      only.parts.push_back(p.cert);
      return Tri::no(std::move(only), p.bounded);
    }
    if (p.is_unknown()) unknown = true;
    bounded = bounded || p.bounded;
    c.parts.push_back(p.cert);
  }
  if (unknown) return Tri::unknown(std::move(c));
  return Tri::yes(std::move(c), bounded);
}

}  // namespace kg
