#pragma once

#include "kgraph/graph.hpp"
#include "kgraph/tri.hpp"

namespace kg {

/// Re-verifies the claim a certificate makes, using only primitive
/// operations on the graph. Kinds that claim nothing (bound exhausted,
/// unsupported) return false.
bool replay(const KGraph& g, const Certificate& c);
bool replay(const LazyKGraph& g, const Certificate& c);

/// Checks that the certificate kind supports the verdict and replays it.
/// Unknown verdicts are not replayable and return false.
bool replay(const KGraph& g, const Tri& t);
bool replay(const LazyKGraph& g, const Tri& t);

/// Verdict a certificate kind supports: Yes, No, or Unknown when either.
Verdict claimed_verdict(CertKind k);

}  // namespace kg
