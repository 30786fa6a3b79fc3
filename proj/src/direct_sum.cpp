#include "opspec/direct_sum.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace opspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double PairVector::norm(SumNorm sum_norm) const {
    const double nx = x.norm();
    const double ny = y.norm();
    return sum_norm == SumNorm::OneSum ? nx + ny : std::sqrt(nx * nx + ny * ny);
}

DirectSumOperator::DirectSumOperator(const RegionSpec& spec, std::uint64_t truncation,
                                     VolterraConfig d_config, SumNorm sum_norm)
    : spec_(spec), d_part_(d_config), sum_norm_(sum_norm) {
    const bool norm_matches = (sum_norm == SumNorm::OneSum && d_config.p == 1) ||
                              (sum_norm == SumNorm::TwoSum && d_config.p == 2);
    if (!norm_matches) {
        throw std::invalid_argument(
            "supported configurations are OneSum with p=1 and TwoSum with p=2");
    }
    if (!spec_.is_empty()) {
        m_part_.emplace(MultiplierSequence(spec_), truncation);
    }
}

PairVector apply(const DirectSumOperator& A, const PairVector& v) {
    SparseVector mx = A.diagonal_block() ? apply(*A.diagonal_block(), v.x) : SparseVector{};
    if (!A.diagonal_block() && !v.x.empty()) {
        throw std::invalid_argument("empty region: the l2 component must be zero");
    }
    return {std::move(mx), differentiate(v.y)};
}

PairVector resolvent_apply(const DirectSumOperator& A, std::complex<double> lambda,
                           const PairVector& w) {
    SparseVector rx =
        A.diagonal_block() ? resolvent_apply(*A.diagonal_block(), lambda, w.x) : SparseVector{};
    if (!A.diagonal_block() && !w.x.empty()) {
        throw std::invalid_argument("empty region: the l2 component must be zero");
    }
    return {std::move(rx), resolvent_apply(lambda, w.y)};
}

SumResolventNorm resolvent_norm(const DirectSumOperator& A, std::complex<double> lambda) {
    const auto volterra =
        resolvent_norm_estimate(lambda, A.volterra_config().n_cells, A.volterra_config().p);
    if (!A.diagonal_block()) {
        return {volterra.norm_estimate, volterra.norm_estimate, volterra};
    }
    const auto diag = resolvent_norm(*A.diagonal_block(), lambda);
    // Block-diagonal operator norm is the max of the block norms under both
    // supported sum norms.
    return {std::max(diag.truncated, volterra.norm_estimate),
            std::max(diag.exact_limit, volterra.norm_estimate), volterra};
}

namespace {

SpectralReportA report_from(const DirectSumOperator& A, std::complex<double> lambda,
                            const SpectrumClass& cls) {
    SpectralReportA out{};
    out.lambda = lambda;
    out.kind = cls.kind;
    out.dist = cls.dist;
    out.point_witness = cls.witness_index;
    out.exact_match = cls.exact_match;

    const auto volterra =
        resolvent_norm_estimate(lambda, A.volterra_config().n_cells, A.volterra_config().p);
    out.volterra_norm = volterra.norm_estimate;
    if (cls.kind == SpectrumClass::Kind::ResolventSet) {
        out.resolvent_norm_truncated = std::max(cls.resolvent_norm_truncated, volterra.norm_estimate);
        out.resolvent_norm_exact = std::max(cls.resolvent_norm_exact, volterra.norm_estimate);
    } else {
        // On the spectrum the exact-limit norm is infinite; the truncated one
        // reflects the nearest enumerated multiplier.
        out.resolvent_norm_exact = kInf;
        out.resolvent_norm_truncated =
            cls.nearest_residual == 0.0
                ? kInf
                : std::max(1.0 / cls.nearest_residual, volterra.norm_estimate);
        out.certificate_index = cls.nearest_index;
        out.certificate_residual = cls.nearest_residual;
    }
    return out;
}

SpectralReportA resolvent_only_report(const DirectSumOperator& A, std::complex<double> lambda) {
    const auto volterra =
        resolvent_norm_estimate(lambda, A.volterra_config().n_cells, A.volterra_config().p);
    SpectralReportA out{};
    out.lambda = lambda;
    out.kind = SpectrumClass::Kind::ResolventSet;
    out.dist = kInf;
    out.volterra_norm = volterra.norm_estimate;
    out.resolvent_norm_truncated = volterra.norm_estimate;
    out.resolvent_norm_exact = volterra.norm_estimate;
    return out;
}

}  // namespace

SpectralReportA classify(const DirectSumOperator& A, std::complex<double> lambda, double tol) {
    if (!A.diagonal_block()) return resolvent_only_report(A, lambda);
    return report_from(A, lambda, classify(*A.diagonal_block(), lambda, tol));
}

SpectralReportA classify_exact(const DirectSumOperator& A, const RationalComplex& lambda,
                               double tol) {
    if (!A.diagonal_block()) return resolvent_only_report(A, to_complex(lambda));
    return report_from(A, to_complex(lambda), classify_exact(*A.diagonal_block(), lambda, tol));
}

std::vector<SpectralReportA> spectrum_report(const DirectSumOperator& A, const Window& window,
                                             int nx, int ny, double tol) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("spectrum_report: grid must be >= 2x2");
    std::vector<SpectralReportA> out;
    out.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
    for (int iy = 0; iy < ny; ++iy) {
        const double im = window.y0 + (window.y1 - window.y0) * iy / (ny - 1);
        for (int ix = 0; ix < nx; ++ix) {
            const double re = window.x0 + (window.x1 - window.x0) * ix / (nx - 1);
            out.push_back(classify(A, {re, im}, tol));
        }
    }
    return out;
}

}  // namespace opspec
