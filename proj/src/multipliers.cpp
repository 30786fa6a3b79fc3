#include "opspec/multipliers.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

#include "opspec/enumeration.hpp"

namespace opspec {

namespace {

// --------------------------------------------------------------------------
// Per-primitive exact enumerations, sub-index k >= 1.
// --------------------------------------------------------------------------

RationalComplex enum_point(const PointPrim& p, std::uint64_t) {
    return rational_complex_from(p.z);
}

RationalComplex enum_segment(const SegmentPrim& s, std::uint64_t k) {
    const Rational q = unit_fraction(k);
    const RationalComplex a = rational_complex_from(s.a);
    const RationalComplex b = rational_complex_from(s.b);
    return a + q * (b - a);
}

// Level L holds the (L+1) x (L+1) grid of coordinate fractions i/L, j/L.
RationalComplex enum_rect(const RectPrim& r, std::uint64_t k) {
    std::uint64_t level = 1;
    std::uint64_t rest = k - 1;
    while (rest >= (level + 1) * (level + 1)) {
        rest -= (level + 1) * (level + 1);
        ++level;
    }
    const std::uint64_t i = rest / (level + 1);
    const std::uint64_t j = rest % (level + 1);
    const RationalComplex corner = rational_complex_from(r.corner);
    const Rational w = rational_from_double(r.width);
    const Rational h = rational_from_double(r.height);
    return corner + RationalComplex{Rational(BigInt(i), BigInt(level)) * w,
                                    Rational(BigInt(j), BigInt(level)) * h};
}

// Level L: a center point plus rings at radius fractions j/L with 6j points
// each, spacing ~ radius/L in both directions. Level size 1 + 3L(L+1).
RationalComplex enum_disk(const DiskPrim& d, std::uint64_t k) {
    std::uint64_t level = 1;
    std::uint64_t rest = k - 1;
    while (rest >= 1 + 3 * level * (level + 1)) {
        rest -= 1 + 3 * level * (level + 1);
        ++level;
    }
    const RationalComplex center = rational_complex_from(d.center);
    if (rest == 0) return center;
    rest -= 1;
    std::uint64_t ring = 1;
    while (rest >= 6 * ring) {
        rest -= 6 * ring;
        ++ring;
    }
    const Rational u(BigInt(rest), BigInt(6 * ring));
    const Rational rho = Rational(BigInt(ring), BigInt(level)) * rational_from_double(d.radius);
    return center + rho * unit_circle_point(u);
}

// Level L: rings j = 0..L at radius r_inner + (j/L)(r_outer - r_inner), each
// with 6L points. Level size 6L(L+1).
RationalComplex enum_annulus(const AnnulusPrim& a, std::uint64_t k) {
    std::uint64_t level = 1;
    std::uint64_t rest = k - 1;
    while (rest >= 6 * level * (level + 1)) {
        rest -= 6 * level * (level + 1);
        ++level;
    }
    const std::uint64_t ring = rest / (6 * level);
    const std::uint64_t pos = rest % (6 * level);
    const Rational u(BigInt(pos), BigInt(6 * level));
    const Rational r1 = rational_from_double(a.r_inner);
    const Rational r2 = rational_from_double(a.r_outer);
    const Rational rho = r1 + Rational(BigInt(ring), BigInt(level)) * (r2 - r1);
    return rational_complex_from(a.center) + rho * unit_circle_point(u);
}

// Level grid over [lo, hi] x [-hi, hi] in units of 1/L: level L has spacing
// 1/L and extent L, so prefixes refine locally while growing outward. The
// half-plane uses lo = 0 (inward coordinate), the full plane lo = -hi.
struct GridCell {
    std::int64_t i;
    std::int64_t j;
    std::uint64_t level;
};

GridCell level_grid_cell(std::uint64_t k, bool signed_first) {
    std::uint64_t level = 1;
    std::uint64_t rest = k - 1;
    for (;;) {
        const std::uint64_t side = 2 * level * level + 1;
        const std::uint64_t first = signed_first ? side : level * level + 1;
        const std::uint64_t count = first * side;
        if (rest < count) {
            const std::uint64_t a = rest / side;
            const std::uint64_t b = rest % side;
            const std::int64_t half = static_cast<std::int64_t>(level * level);
            const std::int64_t i =
                signed_first ? static_cast<std::int64_t>(a) - half : static_cast<std::int64_t>(a);
            return {i, static_cast<std::int64_t>(b) - half, level};
        }
        rest -= count;
        ++level;
    }
}

// Exact frame for a half-plane: anchor on the boundary line plus rational
// multiples of the normal (inward, s >= 0) and tangent directions. The
// functional Re(conj(normal) z) evaluates to offset + s*|normal|^2 exactly,
// so membership never depends on floating rounding.
RationalComplex enum_half_plane(const HalfPlanePrim& h, std::uint64_t k) {
    const Rational nx = rational_from_double(h.normal.real());
    const Rational ny = rational_from_double(h.normal.imag());
    const Rational s2 = nx * nx + ny * ny;
    const Rational c = rational_from_double(h.offset);
    const RationalComplex anchor{c / s2 * nx, c / s2 * ny};

    Rational along_normal, along_tangent;
    if (k % 2 == 1) {
        const GridCell cell = level_grid_cell((k + 1) / 2, /*signed_first=*/false);
        along_normal = Rational(BigInt(cell.i), BigInt(cell.level));
        along_tangent = Rational(BigInt(cell.j), BigInt(cell.level));
    } else {
        // Outward stride: quadratic magnitude growth, cycling inward and both
        // boundary directions. Tangent strides keep a small inward component
        // so the value rounded to double still lies in the set.
        const std::uint64_t m = k / 2;
        const Rational g(BigInt((m / 3 + 1) * (m / 3 + 1)));
        const Rational inward_margin = g / Rational(BigInt(1) << 30);
        switch (m % 3) {
            case 0: along_normal = g; break;
            case 1:
                along_normal = inward_margin;
                along_tangent = g;
                break;
            default:
                along_normal = inward_margin;
                along_tangent = -g;
                break;
        }
    }
    return anchor + along_normal * RationalComplex{nx, ny} +
           along_tangent * RationalComplex{-ny, nx};
}

RationalComplex enum_full_plane(std::uint64_t k) {
    if (k % 2 == 1) {
        const GridCell cell = level_grid_cell((k + 1) / 2, /*signed_first=*/true);
        return {Rational(BigInt(cell.i), BigInt(cell.level)),
                Rational(BigInt(cell.j), BigInt(cell.level))};
    }
    static constexpr int compass[8][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1},
                                          {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
    const std::uint64_t m = k / 2;
    const auto* dir = compass[m % 8];
    const Rational g(BigInt((m / 8 + 1) * (m / 8 + 1)));
    return {g * Rational(dir[0]), g * Rational(dir[1])};
}

RationalComplex enumerate_primitive(const Primitive& prim, std::uint64_t k) {
    return std::visit(
        [k](const auto& p) -> RationalComplex {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PointPrim>) return enum_point(p, k);
            else if constexpr (std::is_same_v<T, SegmentPrim>) return enum_segment(p, k);
            else if constexpr (std::is_same_v<T, DiskPrim>) return enum_disk(p, k);
            else if constexpr (std::is_same_v<T, RectPrim>) return enum_rect(p, k);
            else if constexpr (std::is_same_v<T, AnnulusPrim>) return enum_annulus(p, k);
            else if constexpr (std::is_same_v<T, HalfPlanePrim>) return enum_half_plane(p, k);
            else return enum_full_plane(k);
        },
        prim);
}

}  // namespace

MultiplierSequence::MultiplierSequence(RegionSpec spec) : spec_(std::move(spec)) {
    if (spec_.is_empty()) {
        throw EmptyRegionError("multiplier sequence requires a nonempty region");
    }
}

RationalComplex MultiplierSequence::at_exact(std::uint64_t n) const {
    if (n == 0) throw std::invalid_argument("multiplier index is 1-based");
    const std::uint64_t p = (n - 1) % spec_.size();
    const std::uint64_t k = (n - 1) / spec_.size() + 1;
    return enumerate_primitive(spec_.at(p), k);
}

std::complex<double> MultiplierSequence::at(std::uint64_t n) const {
    return to_complex(at_exact(n));
}

CoveringRadiusReport covering_radius(const MultiplierSequence& seq, std::uint64_t N,
                                     const Window& window, int samples, std::uint64_t seed) {
    if (N == 0) throw std::invalid_argument("covering_radius: N must be >= 1");
    if (samples < 1) throw std::invalid_argument("covering_radius: samples must be >= 1");

    // Region samples kept inside the window, topped up with window points
    // projected onto the region (sharper near the boundary).
    std::vector<Complex> targets;
    targets.reserve(static_cast<std::size_t>(samples));
    const auto raw = sample_points(seq.spec(), samples, seed);
    for (const auto& z : raw) {
        if (window.contains(z)) targets.push_back(z);
    }
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    auto uniform01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < samples; ++i) {
        const Complex probe(window.x0 + uniform01() * (window.x1 - window.x0),
                            window.y0 + uniform01() * (window.y1 - window.y0));
        const Complex proj = nearest_point(seq.spec(), probe);
        if (window.contains(proj)) targets.push_back(proj);
    }
    if (targets.empty()) {
        throw EmptyIntersectionError("covering_radius: no region sample lies in the window");
    }

    std::vector<Complex> prefix(N);
    for (std::uint64_t n = 1; n <= N; ++n) prefix[n - 1] = seq.at(n);

    double radius = 0.0;
    for (const auto& z : targets) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& m : prefix) {
            best = std::min(best, std::abs(z - m));
            if (best == 0.0) break;
        }
        radius = std::max(radius, best);
    }
    return {N, window, radius, static_cast<int>(targets.size())};
}

}  // namespace opspec
