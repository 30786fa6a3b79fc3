#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opspec/direct_sum.hpp"

namespace opspec {

struct SweepConfig {
    Window window;
    int nx = 41;
    int ny = 41;
    std::uint64_t truncation = 4096;
    int n_cells = 256;
    int p = 2;
    SumNorm sum_norm = SumNorm::TwoSum;
    std::vector<double> epsilons;  // strictly decreasing level-set thresholds
    std::uint64_t seed = 1;
    double tol = 1e-9;
};

struct SweepNode {
    std::complex<double> lambda;
    double s_truncated;  // 1 / ||R(lambda,A)|| with the truncated diagonal norm
    double s_exact;      // min(dist(lambda, region), 1 / volterra estimate)
    SpectrumClass::Kind kind;
    std::string error;  // nonempty when evaluation failed; the sweep continues
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepNode> nodes;  // row-major
    double covering_radius = 0.0;  // 0 for the empty region
    double max_gap_resolvent_nodes = 0.0;  // max |s_truncated - s_exact| where dist > covering radius
    std::vector<std::size_t> epsilon_sublevel_counts;  // |{nodes : s_truncated < eps}| per epsilon
    std::size_t count_point = 0;
    std::size_t count_continuous = 0;
    std::size_t count_resolvent = 0;
};

// Deterministic grid portrait of s(lambda) = 1/||R(lambda,A)||. Per-node
// failures are recorded inline and never abort the sweep.
SweepResult sweep(const RegionSpec& spec, const SweepConfig& cfg);

enum class CheckStatus { Pass, Fail, Skip };

struct CheckResult {
    std::string name;
    CheckStatus status;
    std::string detail;
};

struct VerifyReport {
    std::string profile;
    std::vector<CheckResult> checks;

    bool all_passed() const {
        for (const auto& c : checks) {
            if (c.status == CheckStatus::Fail) return false;
        }
        return true;
    }
};

// Runs the whole invariant battery against an arbitrary region spec.
// profile "quick" shrinks sample counts; "full" runs the documented sizes.
// Checks that do not apply (e.g. multiplier checks on an empty region)
// report Skip with a reason. Failures are data, not exceptions.
VerifyReport verify_all(const RegionSpec& spec, const std::string& profile);

}  // namespace opspec
