#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "opspec/diagonal_op.hpp"
#include "opspec/volterra_op.hpp"

namespace opspec {

// ||(x,y)|| = ||x|| + ||y||  (OneSum, with p = 1 on the grid side) or the
// Hilbert 2-sum sqrt(||x||^2 + ||y||^2) (TwoSum, requires p = 2).
enum class SumNorm { OneSum, TwoSum };

struct VolterraConfig {
    int n_cells = 256;
    int p = 2;
};

struct PairVector {
    SparseVector x;
    GridFunction y;

    double norm(SumNorm sum_norm) const;
};

// The block-diagonal operator with the diagonal multiplication block carrying
// an arbitrary prescribed spectrum and the differentiation block carrying
// none. An empty region drops the diagonal block entirely (the operator is
// the differentiation block alone), which realizes the empty spectrum.
class DirectSumOperator {
  public:
    DirectSumOperator(const RegionSpec& spec, std::uint64_t truncation, VolterraConfig d_config,
                      SumNorm sum_norm);

    const std::optional<TruncatedDiagonal>& diagonal_block() const { return m_part_; }
    const VolterraConfig& volterra_config() const { return d_part_; }
    SumNorm sum_norm() const { return sum_norm_; }
    const RegionSpec& spec() const { return spec_; }

    GridFunction zero_grid() const { return GridFunction(d_part_.n_cells, d_part_.p); }

  private:
    RegionSpec spec_;
    std::optional<TruncatedDiagonal> m_part_;
    VolterraConfig d_part_;
    SumNorm sum_norm_;
};

// (M x, D y). DomainViolationError / IndexBeyondTruncationError from the blocks.
PairVector apply(const DirectSumOperator& A, const PairVector& v);

// (R(lambda,M) x, R(lambda,D) y); SingularEntryError from the diagonal block.
PairVector resolvent_apply(const DirectSumOperator& A, std::complex<double> lambda,
                           const PairVector& w);

struct SumResolventNorm {
    double truncated;    // max(diagonal truncated norm, Volterra estimate)
    double exact_limit;  // max(1/dist(lambda, region), Volterra estimate)
    ResolventEstimate volterra;
};

SumResolventNorm resolvent_norm(const DirectSumOperator& A, std::complex<double> lambda);

struct SpectralReportA {
    std::complex<double> lambda;
    SpectrumClass::Kind kind;
    double dist;
    double resolvent_norm_truncated;
    double resolvent_norm_exact;
    double volterra_norm = 0.0;  // the D-block estimate folded into the norms
    // Pair certificate (e_k, 0) for Point/Continuous classes.
    std::optional<std::uint64_t> certificate_index;
    double certificate_residual = 0.0;
    std::optional<std::uint64_t> point_witness;
    bool exact_match = false;
};

SpectralReportA classify(const DirectSumOperator& A, std::complex<double> lambda, double tol);
SpectralReportA classify_exact(const DirectSumOperator& A, const RationalComplex& lambda,
                               double tol);

// Row-major classification table over a grid of nx * ny nodes.
std::vector<SpectralReportA> spectrum_report(const DirectSumOperator& A, const Window& window,
                                             int nx, int ny, double tol);

}  // namespace opspec
