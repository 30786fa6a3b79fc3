#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "opspec/multipliers.hpp"

namespace opspec {

// Finitely supported l2 vector; indices 1-based and strictly increasing.
// Finitely supported vectors always lie in the operator domain.
class SparseVector {
  public:
    using Entry = std::pair<std::uint64_t, std::complex<double>>;

    SparseVector() = default;
    explicit SparseVector(std::vector<Entry> entries);  // sorts, merges, drops zeros
    SparseVector(std::initializer_list<Entry> entries)
        : SparseVector(std::vector<Entry>(entries)) {}

    static SparseVector basis(std::uint64_t index) {
        return SparseVector(std::vector<Entry>{{index, {1.0, 0.0}}});
    }

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::uint64_t max_index() const { return entries_.empty() ? 0 : entries_.back().first; }
    double norm() const;  // l2

    friend bool operator==(const SparseVector&, const SparseVector&) = default;

  private:
    std::vector<Entry> entries_;
};

SparseVector operator-(const SparseVector& a, const SparseVector& b);

// Spectral classification of a query point. The residual class of the theory
// is empty for this operator family, so the type cannot express it.
struct SpectrumClass {
    enum class Kind { Point, Continuous, ResolventSet };

    Kind kind;
    double dist;  // distance(spec, lambda)

    // Point: matching multiplier index; exact_match false means the float
    // path matched within 1 ulp only (truncation-limited answer).
    std::optional<std::uint64_t> witness_index;
    bool exact_match = false;

    // Nearest enumerated multiplier, a Weyl-vector certificate for
    // Point/Continuous and context for ResolventSet.
    std::uint64_t nearest_index = 0;
    double nearest_residual = 0.0;

    // ResolventSet: truncated and exact-limit resolvent norms.
    double resolvent_norm_truncated = 0.0;
    double resolvent_norm_exact = 0.0;
};

/// First-N realization of the multiplication operator x_n -> m_n x_n.
class TruncatedDiagonal {
  public:
    TruncatedDiagonal(MultiplierSequence seq, std::uint64_t truncation);

    std::uint64_t truncation() const { return floats_.size(); }
    std::complex<double> multiplier(std::uint64_t n) const { return floats_.at(n - 1); }
    const RationalComplex& multiplier_exact(std::uint64_t n) const { return exacts_.at(n - 1); }
    const MultiplierSequence& sequence() const { return seq_; }
    const RegionSpec& spec() const { return seq_.spec(); }

  private:
    MultiplierSequence seq_;
    std::vector<std::complex<double>> floats_;
    std::vector<RationalComplex> exacts_;
};

// (m_n x_n). Throws IndexBeyondTruncationError when x is supported past N.
SparseVector apply(const TruncatedDiagonal& op, const SparseVector& x);

// (x_n / (m_n - lambda)). Throws SingularEntryError on an exact eigenvalue
// hit at a support index.
SparseVector resolvent_apply(const TruncatedDiagonal& op, std::complex<double> lambda,
                             const SparseVector& x);

struct DiagonalResolventNorm {
    double truncated;   // max_{n<=N} 1/|m_n - lambda|, +inf on an exact hit
    double exact_limit; // 1/distance(spec, lambda), with 1/0 = +inf and 1/inf = 0
};

DiagonalResolventNorm resolvent_norm(const TruncatedDiagonal& op, std::complex<double> lambda);

SpectrumClass classify(const TruncatedDiagonal& op, std::complex<double> lambda, double tol);
SpectrumClass classify_exact(const TruncatedDiagonal& op, const RationalComplex& lambda,
                             double tol);

struct ApproxEigenvector {
    SparseVector vector;     // e_k, k = argmin_{n<=N} |m_n - lambda|
    std::uint64_t index;
    double residual;         // |m_k - lambda| = ||(M - lambda) e_k||
};

ApproxEigenvector approx_eigenvector(const TruncatedDiagonal& op, std::complex<double> lambda);

struct MagnitudeWitness {
    SparseVector vector;  // e_n with |m_n| > K
    std::uint64_t index;
    double ratio;         // ||M e_n|| / ||e_n|| = |m_n|
};

struct BoundedCertificate {
    double enclosing_radius;  // sup_n |m_n| <= enclosing_radius
};

// For an unbounded region, a basis vector whose Rayleigh ratio exceeds K
// (searched within `budget` enumeration steps, SearchBudgetExhaustedError
// beyond); for a bounded region, the norm bound certificate.
std::variant<MagnitudeWitness, BoundedCertificate> unboundedness_witness(
    const TruncatedDiagonal& op, double K, std::uint64_t budget = 1000000);

}  // namespace opspec
