#include "opspec/diagonal_op.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace opspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool within_one_ulp(double a, double b) {
    if (a == b) return true;
    return std::nextafter(a, b) == b;
}

bool complex_within_one_ulp(std::complex<double> a, std::complex<double> b) {
    return within_one_ulp(a.real(), b.real()) && within_one_ulp(a.imag(), b.imag());
}

}  // namespace

SparseVector::SparseVector(std::vector<Entry> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    std::vector<Entry> merged;
    merged.reserve(entries_.size());
    for (const auto& e : entries_) {
        if (e.first == 0) throw std::invalid_argument("sparse vector indices are 1-based");
        if (!merged.empty() && merged.back().first == e.first) {
            merged.back().second += e.second;
        } else {
            merged.push_back(e);
        }
    }
    std::erase_if(merged, [](const Entry& e) { return e.second == std::complex<double>(0.0); });
    entries_ = std::move(merged);
}

double SparseVector::norm() const {
    double sum = 0.0;
    for (const auto& [idx, c] : entries_) sum += std::norm(c);
    return std::sqrt(sum);
}

SparseVector operator-(const SparseVector& a, const SparseVector& b) {
    std::vector<SparseVector::Entry> out(a.entries());
    out.reserve(out.size() + b.entries().size());
    for (const auto& [idx, c] : b.entries()) out.emplace_back(idx, -c);
    return SparseVector(std::move(out));
}

TruncatedDiagonal::TruncatedDiagonal(MultiplierSequence seq, std::uint64_t truncation)
    : seq_(std::move(seq)) {
    if (truncation < 1) throw std::invalid_argument("truncation level must be >= 1");
    floats_.reserve(truncation);
    exacts_.reserve(truncation);
    for (std::uint64_t n = 1; n <= truncation; ++n) {
        exacts_.push_back(seq_.at_exact(n));
        floats_.push_back(to_complex(exacts_.back()));
    }
}

SparseVector apply(const TruncatedDiagonal& op, const SparseVector& x) {
    std::vector<SparseVector::Entry> out;
    out.reserve(x.entries().size());
    for (const auto& [idx, c] : x.entries()) {
        if (idx > op.truncation()) throw IndexBeyondTruncationError(idx, op.truncation());
        out.emplace_back(idx, op.multiplier(idx) * c);
    }
    return SparseVector(std::move(out));
}

SparseVector resolvent_apply(const TruncatedDiagonal& op, std::complex<double> lambda,
                             const SparseVector& x) {
    std::vector<SparseVector::Entry> out;
    out.reserve(x.entries().size());
    for (const auto& [idx, c] : x.entries()) {
        if (idx > op.truncation()) throw IndexBeyondTruncationError(idx, op.truncation());
        const std::complex<double> gap = op.multiplier(idx) - lambda;
        if (gap == std::complex<double>(0.0)) throw SingularEntryError(idx);
        out.emplace_back(idx, c / gap);
    }
    return SparseVector(std::move(out));
}

DiagonalResolventNorm resolvent_norm(const TruncatedDiagonal& op, std::complex<double> lambda) {
    double min_gap = kInf;
    for (std::uint64_t n = 1; n <= op.truncation(); ++n) {
        min_gap = std::min(min_gap, std::abs(op.multiplier(n) - lambda));
    }
    const double dist = distance(op.spec(), lambda);
    const double truncated = (min_gap == 0.0) ? kInf : 1.0 / min_gap;
    const double exact = (dist == 0.0) ? kInf : 1.0 / dist;  // 1/inf = 0 for empty regions
    return {truncated, exact};
}

namespace {

SpectrumClass classify_common(const TruncatedDiagonal& op, std::complex<double> lambda,
                              double tol, std::optional<std::uint64_t> exact_witness) {
    SpectrumClass out{};
    out.dist = distance(op.spec(), lambda);

    // Nearest enumerated multiplier doubles as the Weyl certificate.
    double best = kInf;
    std::uint64_t best_index = 1;
    for (std::uint64_t n = 1; n <= op.truncation(); ++n) {
        const double gap = std::abs(op.multiplier(n) - lambda);
        if (gap < best) {
            best = gap;
            best_index = n;
        }
    }
    out.nearest_index = best_index;
    out.nearest_residual = best;

    if (exact_witness) {
        out.kind = SpectrumClass::Kind::Point;
        out.witness_index = exact_witness;
        out.exact_match = true;
        return out;
    }

    // Float path: a 1-ulp hit on a cached multiplier counts as a point-class
    // answer, flagged as truncation-limited rather than exact.
    for (std::uint64_t n = 1; n <= op.truncation(); ++n) {
        if (complex_within_one_ulp(op.multiplier(n), lambda)) {
            out.kind = SpectrumClass::Kind::Point;
            out.witness_index = n;
            out.exact_match = false;
            return out;
        }
    }

    if (out.dist <= tol) {
        out.kind = SpectrumClass::Kind::Continuous;
        return out;
    }

    out.kind = SpectrumClass::Kind::ResolventSet;
    const auto norms = resolvent_norm(op, lambda);
    out.resolvent_norm_truncated = norms.truncated;
    out.resolvent_norm_exact = norms.exact_limit;
    return out;
}

}  // namespace

SpectrumClass classify(const TruncatedDiagonal& op, std::complex<double> lambda, double tol) {
    return classify_common(op, lambda, tol, std::nullopt);
}

SpectrumClass classify_exact(const TruncatedDiagonal& op, const RationalComplex& lambda,
                             double tol) {
    std::optional<std::uint64_t> witness;
    for (std::uint64_t n = 1; n <= op.truncation(); ++n) {
        if (op.multiplier_exact(n) == lambda) {
            witness = n;
            break;
        }
    }
    const std::complex<double> lf = to_complex(lambda);
    if (witness) return classify_common(op, lf, tol, witness);

    // Exactly off the enumerated set: lambda is never an eigenvalue, however
    // close the floats get.
    SpectrumClass out = classify_common(op, lf, tol, std::nullopt);
    if (out.kind == SpectrumClass::Kind::Point) {
        out.kind = SpectrumClass::Kind::Continuous;
        out.witness_index.reset();
        out.exact_match = false;
    }
    return out;
}

ApproxEigenvector approx_eigenvector(const TruncatedDiagonal& op, std::complex<double> lambda) {
    double best = kInf;
    std::uint64_t best_index = 1;
    for (std::uint64_t n = 1; n <= op.truncation(); ++n) {
        const double gap = std::abs(op.multiplier(n) - lambda);
        if (gap < best) {
            best = gap;
            best_index = n;
        }
    }
    return {SparseVector::basis(best_index), best_index, best};
}

std::variant<MagnitudeWitness, BoundedCertificate> unboundedness_witness(
    const TruncatedDiagonal& op, double K, std::uint64_t budget) {
    if (!(K > 0)) throw std::invalid_argument("unboundedness_witness: K must be positive");

    const auto region_bounds = bounds(op.spec());
    if (region_bounds.bounded) {
        return BoundedCertificate{region_bounds.enclosing_radius};
    }
    for (std::uint64_t n = 1; n <= budget; ++n) {
        const double magnitude = std::abs(op.sequence().at(n));
        if (magnitude > K) {
            return MagnitudeWitness{SparseVector::basis(n), n, magnitude};
        }
    }
    throw SearchBudgetExhaustedError(budget, K);
}

}  // namespace opspec
