#pragma once

#include <vector>

#include "pxchain/types.hpp"

namespace pxchain {

/// Contiguous site region, 1-indexed, length `len` starting at `first`.
/// On a ring the region may wrap past site L (one arc, two cuts).
struct SiteRegion {
  int first = 1;
  int len = 1;
};

/// Von Neumann entanglement entropy (nats) of the region against its
/// complement. Computed from the singular values of the amplitude matrix
/// reshaped by the cut; squared Schmidt values below 1e-14 are dropped
/// before the log. The input must be normalized to within 1e-10.
double entanglement_entropy(const StateVector& v, const SiteRegion& region);

/// Squared Schmidt values (descending) of the bipartition.
std::vector<double> schmidt_spectrum(const StateVector& v, const SiteRegion& region);

}  // namespace pxchain
