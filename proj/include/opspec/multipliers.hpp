#pragma once

#include <complex>
#include <cstdint>

#include "opspec/rational.hpp"
#include "opspec/region.hpp"

namespace opspec {

// Deterministic countable dense enumeration (m_n) of a nonempty region.
//
// Index n round-robins across primitives; within each primitive a dense
// rational scheme produces points with exact rational coordinates that lie in
// the set exactly (membership is an identity, not an approximation):
//
//   point     constant
//   segment   a + q*(b-a) over the unit fractions
//   rect      corner-anchored (i/L, j/L) level grids
//   disk      concentric level rings, ring points from unit_circle_point
//   annulus   same rings between the two radii
//   half      boundary anchor + s*normal + t*tangent, s >= 0; odd sub-indices
//             refine locally, even sub-indices stride outward quadratically
//   plane     rational pairs; same local/outward interleaving
//
// The outward stride makes unboundedness witnesses reachable within a small
// enumeration budget (magnitude ~ (k/3)^2 at sub-index k).
class MultiplierSequence {
  public:
    explicit MultiplierSequence(RegionSpec spec);  // throws EmptyRegionError

    // m_n, 1-based. Pure in (spec, n).
    RationalComplex at_exact(std::uint64_t n) const;
    std::complex<double> at(std::uint64_t n) const;

    const RegionSpec& spec() const { return spec_; }

  private:
    RegionSpec spec_;
};

struct CoveringRadiusReport {
    std::uint64_t prefix_length;  // N
    Window window;
    double radius_estimate;  // max over sampled z in (region ∩ window) of min_{n<=N} |m_n - z|
    int sample_count;
};

// Density certificate for the prefix m_1..m_N, estimated over `samples`
// region points kept inside `window` (plus window points projected onto the
// region). Throws EmptyIntersectionError when nothing lands in the window.
CoveringRadiusReport covering_radius(const MultiplierSequence& seq, std::uint64_t N,
                                     const Window& window, int samples, std::uint64_t seed);

}  // namespace opspec
