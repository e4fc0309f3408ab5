#pragma once

namespace gksum {

// Desk-scale guardrails for intermediate polynomial arithmetic.  Exceeding
// either cap raises ResourceLimitError rather than grinding on.
inline constexpr int kMaxPolyDegree = 64;
inline constexpr unsigned kMaxCoeffBits = 16384;

// Bound on divisor-enumeration work in integer root finding.
inline constexpr long kMaxRootSearchSteps = 1L << 20;

} // namespace gksum
