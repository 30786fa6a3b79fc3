#pragma once

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include "opspec/errors.hpp"

namespace opspec {

using Complex = std::complex<double>;

// Closed geometric primitives. Each one is a nonempty closed subset of C;
// a region is a finite union of them. Parameters are validated when a
// RegionSpec is assembled.

struct PointPrim {
    Complex z;
};

struct SegmentPrim {
    Complex a;
    Complex b;
};

struct DiskPrim {
    Complex center;
    double radius;
};

// Axis-aligned, corner = lower-left.
struct RectPrim {
    Complex corner;
    double width;
    double height;
};

struct AnnulusPrim {
    Complex center;
    double r_inner;
    double r_outer;
};

// { z : Re(conj(normal) * z) >= offset }. Stored with |normal| = 1; non-unit
// input is normalized together with the offset, which preserves the set.
struct HalfPlanePrim {
    Complex normal;
    double offset;
};

struct FullPlanePrim {};

using Primitive = std::variant<PointPrim, SegmentPrim, DiskPrim, RectPrim,
                               AnnulusPrim, HalfPlanePrim, FullPlanePrim>;

const char* primitive_name(const Primitive& p);

/// Finite union of closed primitives; an empty list is the empty set.
class RegionSpec {
  public:
    RegionSpec() = default;
    explicit RegionSpec(std::vector<Primitive> primitives);

    bool is_empty() const { return primitives_.empty(); }
    std::size_t size() const { return primitives_.size(); }
    const Primitive& at(std::size_t i) const { return primitives_.at(i); }
    const std::vector<Primitive>& primitives() const { return primitives_; }

  private:
    std::vector<Primitive> primitives_;
};

struct Window {
    double x0, x1, y0, y1;

    bool contains(Complex z) const {
        return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
    }
};

// Exact Euclidean distance to the union; +inf for the empty region.
double distance(const RegionSpec& spec, Complex z);
double distance(const Primitive& prim, Complex z);

bool contains(const RegionSpec& spec, Complex z, double tol);

// A point of the region realizing distance(spec, z). Ties across primitives
// go to the lowest primitive index. Within a primitive the projection is
// unique except for center-degenerate cases (annulus center, point queries on
// a circle's axis of symmetry), which resolve to the positive-real direction.
Complex nearest_point(const RegionSpec& spec, Complex z);
Complex nearest_point(const Primitive& prim, Complex z);

struct RegionBounds {
    bool bounded;
    double enclosing_radius;  // +inf when unbounded, 0 for the empty region
};

RegionBounds bounds(const RegionSpec& spec);

// Deterministic pseudo-random points of the region (distance 0 up to
// rounding). Throws EmptyRegionError on the empty region.
std::vector<Complex> sample_points(const RegionSpec& spec, int count, std::uint64_t seed);

}  // namespace opspec
