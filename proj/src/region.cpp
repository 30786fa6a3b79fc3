#include "opspec/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace opspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void validate(const Primitive& prim, std::size_t index) {
    auto fail = [index](const std::string& msg) {
        throw std::invalid_argument("primitive " + std::to_string(index) + ": " + msg);
    };
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PointPrim>) {
                if (!finite(p.z)) fail("point is not finite");
            } else if constexpr (std::is_same_v<T, SegmentPrim>) {
                if (!finite(p.a) || !finite(p.b)) fail("segment endpoint is not finite");
            } else if constexpr (std::is_same_v<T, DiskPrim>) {
                if (!finite(p.center) || !std::isfinite(p.radius)) fail("disk is not finite");
                if (p.radius < 0) fail("disk radius is negative");
            } else if constexpr (std::is_same_v<T, RectPrim>) {
                if (!finite(p.corner) || !std::isfinite(p.width) || !std::isfinite(p.height))
                    fail("rect is not finite");
                if (p.width < 0 || p.height < 0) fail("rect has negative extent");
            } else if constexpr (std::is_same_v<T, AnnulusPrim>) {
                if (!finite(p.center) || !std::isfinite(p.r_inner) || !std::isfinite(p.r_outer))
                    fail("annulus is not finite");
                if (p.r_inner < 0) fail("annulus inner radius is negative");
                if (p.r_inner > p.r_outer) fail("annulus has r_inner > r_outer");
            } else if constexpr (std::is_same_v<T, HalfPlanePrim>) {
                if (!finite(p.normal) || !std::isfinite(p.offset)) fail("half-plane is not finite");
                if (std::abs(p.normal) == 0) fail("half-plane normal is zero");
            }
        },
        prim);
}

Primitive normalized(Primitive prim) {
    if (auto* hp = std::get_if<HalfPlanePrim>(&prim)) {
        const double n = std::abs(hp->normal);
        hp->normal /= n;
        hp->offset /= n;
    }
    return prim;
}

double dist_point(const PointPrim& p, Complex z) { return std::abs(z - p.z); }

// Projection parameter clamped to [0,1]; degenerate segments act as points.
double segment_param(const SegmentPrim& s, Complex z) {
    const Complex d = s.b - s.a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return 0.0;
    const double t = ((z.real() - s.a.real()) * d.real() + (z.imag() - s.a.imag()) * d.imag()) / len2;
    return std::clamp(t, 0.0, 1.0);
}

double dist_segment(const SegmentPrim& s, Complex z) {
    return std::abs(z - (s.a + segment_param(s, z) * (s.b - s.a)));
}

double dist_disk(const DiskPrim& d, Complex z) {
    return std::max(0.0, std::abs(z - d.center) - d.radius);
}

double dist_rect(const RectPrim& r, Complex z) {
    const double dx = std::max({r.corner.real() - z.real(), 0.0, z.real() - (r.corner.real() + r.width)});
    const double dy = std::max({r.corner.imag() - z.imag(), 0.0, z.imag() - (r.corner.imag() + r.height)});
    return std::hypot(dx, dy);
}

double dist_annulus(const AnnulusPrim& a, Complex z) {
    const double d = std::abs(z - a.center);
    if (d < a.r_inner) return a.r_inner - d;
    if (d > a.r_outer) return d - a.r_outer;
    return 0.0;
}

// Signed coordinate along the inward normal, relative to the boundary line.
double half_plane_slack(const HalfPlanePrim& h, Complex z) {
    return z.real() * h.normal.real() + z.imag() * h.normal.imag() - h.offset;
}

double dist_half_plane(const HalfPlanePrim& h, Complex z) {
    return std::max(0.0, -half_plane_slack(h, z));
}

Complex nearest_point_impl(const Primitive& prim, Complex z) {
    return std::visit(
        [&](const auto& p) -> Complex {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PointPrim>) {
                return p.z;
            } else if constexpr (std::is_same_v<T, SegmentPrim>) {
                return p.a + segment_param(p, z) * (p.b - p.a);
            } else if constexpr (std::is_same_v<T, DiskPrim>) {
                const Complex rel = z - p.center;
                const double d = std::abs(rel);
                if (d <= p.radius) return z;
                return p.center + rel * (p.radius / d);
            } else if constexpr (std::is_same_v<T, RectPrim>) {
                const double x = std::clamp(z.real(), p.corner.real(), p.corner.real() + p.width);
                const double y = std::clamp(z.imag(), p.corner.imag(), p.corner.imag() + p.height);
                return {x, y};
            } else if constexpr (std::is_same_v<T, AnnulusPrim>) {
                const Complex rel = z - p.center;
                const double d = std::abs(rel);
                if (d >= p.r_inner && d <= p.r_outer) return z;
                // Center query: every inner-circle point ties; use direction +1.
                const Complex dir = (d == 0.0) ? Complex(1.0, 0.0) : rel / d;
                const double r = (d < p.r_inner) ? p.r_inner : p.r_outer;
                return p.center + r * dir;
            } else if constexpr (std::is_same_v<T, HalfPlanePrim>) {
                const double slack = half_plane_slack(p, z);
                if (slack >= 0) return z;
                return z - slack * p.normal;
            } else {
                return z;  // full plane
            }
        },
        prim);
}

struct PrimitiveBounds {
    bool bounded;
    double radius;
};

PrimitiveBounds primitive_bounds(const Primitive& prim) {
    return std::visit(
        [](const auto& p) -> PrimitiveBounds {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PointPrim>) {
                return {true, std::abs(p.z)};
            } else if constexpr (std::is_same_v<T, SegmentPrim>) {
                return {true, std::max(std::abs(p.a), std::abs(p.b))};
            } else if constexpr (std::is_same_v<T, DiskPrim>) {
                return {true, std::abs(p.center) + p.radius};
            } else if constexpr (std::is_same_v<T, RectPrim>) {
                double r = 0;
                for (int i = 0; i < 4; ++i) {
                    const Complex corner = p.corner + Complex((i & 1) ? p.width : 0.0,
                                                              (i & 2) ? p.height : 0.0);
                    r = std::max(r, std::abs(corner));
                }
                return {true, r};
            } else if constexpr (std::is_same_v<T, AnnulusPrim>) {
                return {true, std::abs(p.center) + p.r_outer};
            } else {
                return {false, kInf};
            }
        },
        prim);
}

// 53-bit uniform in [0,1).
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Complex sample_primitive(const Primitive& prim, std::mt19937_64& rng) {
    return std::visit(
        [&](const auto& p) -> Complex {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PointPrim>) {
                return p.z;
            } else if constexpr (std::is_same_v<T, SegmentPrim>) {
                return p.a + uniform01(rng) * (p.b - p.a);
            } else if constexpr (std::is_same_v<T, DiskPrim>) {
                const double r = p.radius * std::sqrt(uniform01(rng));
                const double phi = 2.0 * M_PI * uniform01(rng);
                return p.center + std::polar(r, phi);
            } else if constexpr (std::is_same_v<T, RectPrim>) {
                return p.corner + Complex(uniform01(rng) * p.width, uniform01(rng) * p.height);
            } else if constexpr (std::is_same_v<T, AnnulusPrim>) {
                // Area-uniform radius between the two circles.
                const double r2 = p.r_inner * p.r_inner +
                                  uniform01(rng) * (p.r_outer * p.r_outer - p.r_inner * p.r_inner);
                const double phi = 2.0 * M_PI * uniform01(rng);
                return p.center + std::polar(std::sqrt(r2), phi);
            } else if constexpr (std::is_same_v<T, HalfPlanePrim>) {
                // Cauchy-tailed spread along the boundary, exponential-ish inward.
                double in, along;
                do {
                    in = 2.0 * std::tan(0.5 * M_PI * uniform01(rng));
                    along = 4.0 * std::tan(M_PI * (uniform01(rng) - 0.5));
                } while (!std::isfinite(in) || !std::isfinite(along));
                const Complex boundary = p.offset * p.normal;
                const Complex tangent(-p.normal.imag(), p.normal.real());
                return boundary + in * p.normal + along * tangent;
            } else {
                double x, y;
                do {
                    x = 4.0 * std::tan(M_PI * (uniform01(rng) - 0.5));
                    y = 4.0 * std::tan(M_PI * (uniform01(rng) - 0.5));
                } while (!std::isfinite(x) || !std::isfinite(y));
                return {x, y};
            }
        },
        prim);
}

}  // namespace

const char* primitive_name(const Primitive& p) {
    switch (p.index()) {
        case 0: return "point";
        case 1: return "segment";
        case 2: return "disk";
        case 3: return "rect";
        case 4: return "annulus";
        case 5: return "half_plane";
        default: return "full_plane";
    }
}

RegionSpec::RegionSpec(std::vector<Primitive> primitives) : primitives_(std::move(primitives)) {
    for (std::size_t i = 0; i < primitives_.size(); ++i) {
        validate(primitives_[i], i);
        primitives_[i] = normalized(primitives_[i]);
    }
}

double distance(const Primitive& prim, Complex z) {
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PointPrim>) return dist_point(p, z);
            else if constexpr (std::is_same_v<T, SegmentPrim>) return dist_segment(p, z);
            else if constexpr (std::is_same_v<T, DiskPrim>) return dist_disk(p, z);
            else if constexpr (std::is_same_v<T, RectPrim>) return dist_rect(p, z);
            else if constexpr (std::is_same_v<T, AnnulusPrim>) return dist_annulus(p, z);
            else if constexpr (std::is_same_v<T, HalfPlanePrim>) return dist_half_plane(p, z);
            else return 0.0;
        },
        prim);
}

double distance(const RegionSpec& spec, Complex z) {
    double best = kInf;
    for (const auto& prim : spec.primitives()) {
        best = std::min(best, distance(prim, z));
        if (best == 0.0) break;
    }
    return best;
}

bool contains(const RegionSpec& spec, Complex z, double tol) {
    if (!std::isfinite(tol)) throw std::invalid_argument("contains: tol is not finite");
    return distance(spec, z) <= tol;
}

Complex nearest_point(const Primitive& prim, Complex z) { return nearest_point_impl(prim, z); }

Complex nearest_point(const RegionSpec& spec, Complex z) {
    if (spec.is_empty()) throw EmptyRegionError();
    double best = kInf;
    Complex best_point{};
    for (const auto& prim : spec.primitives()) {
        const double d = distance(prim, z);
        if (d < best) {
            best = d;
            best_point = nearest_point_impl(prim, z);
        }
    }
    return best_point;
}

RegionBounds bounds(const RegionSpec& spec) {
    RegionBounds out{true, 0.0};
    for (const auto& prim : spec.primitives()) {
        const auto pb = primitive_bounds(prim);
        if (!pb.bounded) return {false, kInf};
        out.enclosing_radius = std::max(out.enclosing_radius, pb.radius);
    }
    return out;
}

std::vector<Complex> sample_points(const RegionSpec& spec, int count, std::uint64_t seed) {
    if (spec.is_empty()) throw EmptyRegionError();
    if (count < 1) throw std::invalid_argument("sample_points: count must be >= 1");

    std::mt19937_64 rng(seed);
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const auto pick = static_cast<std::size_t>(rng() % spec.size());
        out.push_back(sample_primitive(spec.at(pick), rng));
    }
    return out;
}

}  // namespace opspec
