// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line with its headline numbers.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "opspec/cli.hpp"
#include "opspec/io_util.hpp"
#include "opspec/pseudospec.hpp"

using namespace opspec;

namespace {

void report(int criterion, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << detail
              << std::endl;
    CHECK_MESSAGE(ok, "criterion ", criterion, ": ", detail);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

std::complex<double> uniform_in(std::mt19937_64& rng, const Window& w) {
    return {uniform(rng, w.x0, w.x1), uniform(rng, w.y0, w.y1)};
}

struct NamedSpec {
    std::string name;
    RegionSpec spec;
    Window sample;  // lambda sampling box
    Window cover;   // covering-radius window
};

std::vector<NamedSpec> acceptance_specs() {
    return {
        {"point", RegionSpec({PointPrim{{0.3, -0.4}}}), {-2, 2, -2, 2}, {-1, 1, -1, 1}},
        {"segment", RegionSpec({SegmentPrim{{0, 0}, {1, 0}}}), {-1.5, 2.5, -1.5, 1.5},
         {-0.2, 1.2, -0.2, 0.2}},
        {"disk", RegionSpec({DiskPrim{{0, 0}, 1.0}}), {-3, 3, -3, 3}, {-1.2, 1.2, -1.2, 1.2}},
        {"annulus", RegionSpec({AnnulusPrim{{0, 0}, 1.0, 2.0}}), {-4, 4, -4, 4},
         {-2.2, 2.2, -2.2, 2.2}},
        {"half_plane", RegionSpec({HalfPlanePrim{{1, 0}, 0.0}}), {-8, -1, -3.5, 3.5},
         {-0.1, 2.0, -4, 4}},
        {"full_plane", RegionSpec({FullPlanePrim{}}), {-2, 2, -2, 2}, {-2, 2, -2, 2}},
    };
}

// min_{n<=N} |m_n - lambda| = 1 / ||R_N(lambda, M)||, computed directly.
double min_gap(const TruncatedDiagonal& op, std::complex<double> lambda) {
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t n = 1; n <= op.truncation(); ++n) {
        best = std::min(best, std::abs(op.multiplier(n) - lambda));
    }
    return best;
}

}  // namespace

TEST_CASE("criterion 1: prescribed spectrum, classify vs distance") {
    const auto started = std::chrono::steady_clock::now();
    const double tol = 1e-9;
    std::size_t checked = 0;
    std::size_t mismatches = 0;

    for (const auto& item : acceptance_specs()) {
        const DirectSumOperator A(item.spec, 4096, {256, 2}, SumNorm::TwoSum);
        std::mt19937_64 rng(1000);
        const auto on_region = sample_points(item.spec, 100, 2000);
        for (int i = 0; i < 200; ++i) {
            // Half the queries land on the region, half roam the window.
            const std::complex<double> lambda =
                (i % 2 == 0) ? on_region[static_cast<std::size_t>(i / 2)]
                             : uniform_in(rng, item.sample);
            const auto rep = classify(A, lambda, tol);
            const bool resolvent = rep.kind == SpectrumClass::Kind::ResolventSet;
            const bool outside = distance(item.spec, lambda) > tol;
            ++checked;
            if (resolvent != outside) ++mismatches;
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "6 specs x 200 queries at N=4096: %zu/%zu match, %.1f s (budget 60 s)",
                  checked - mismatches, checked, seconds);
    report(1, mismatches == 0 && seconds <= 60.0, detail);
}

TEST_CASE("criterion 2: resolvent norm vs distance duality for the normal block") {
    std::size_t total = 0;
    std::size_t passed = 0;

    for (const auto& item : acceptance_specs()) {
        if (item.name == "full_plane") continue;  // no resolvent nodes to sample
        const MultiplierSequence seq(item.spec);
        const double cr =
            covering_radius(seq, 4096, item.cover, 2000, 12345).radius_estimate;
        const TruncatedDiagonal op(seq, 4096);

        std::mt19937_64 rng(777);
        int kept = 0;
        int tries = 0;
        while (kept < 100 && tries < 200000) {
            ++tries;
            const auto lambda = uniform_in(rng, item.sample);
            const double dist = distance(item.spec, lambda);
            if (dist == 0.0 || dist < 10.0 * cr) continue;
            ++kept;
            ++total;
            if (std::abs(min_gap(op, lambda) - dist) <= 1.2 * cr) ++passed;
        }
    }

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "|1/||R_N|| - dist| <= 1.2*covering radius on %zu/%zu nodes (>= 95%% required)",
                  passed, total);
    report(2, total == 500 && passed >= total * 95 / 100, detail);
}

TEST_CASE("criterion 3: empty spectrum of the differentiation block") {
    bool all_finite = true;
    int evaluated = 0;
    for (int iy = 0; iy < 21; ++iy) {
        for (int ix = 0; ix < 21; ++ix) {
            const std::complex<double> lambda(-20.0 + 40.0 * ix / 20, -20.0 + 40.0 * iy / 20);
            try {
                const auto est = resolvent_norm_estimate(lambda, 256, 2);
                ++evaluated;
                if (!std::isfinite(est.norm_estimate) || est.norm_estimate <= 0.0) {
                    all_finite = false;
                }
            } catch (const std::exception&) {
                all_finite = false;
            }
        }
    }

    // Order-2 convergence of the left-inverse residual at 10 sampled lambdas.
    const std::complex<double> samples[10] = {{0, 0},   {20, 0},  {-20, 0}, {0, 20},  {0, -20},
                                              {20, 20}, {-20, 20}, {10, -6}, {-14, 8}, {6, 14}};
    bool orders_ok = true;
    double worst_low = 10.0, worst_high = 0.0;
    for (const auto& lambda : samples) {
        double previous = -1.0;
        for (int n : {64, 128, 256}) {
            const auto y = GridFunction::from_function(n, 2, [](double t) {
                return std::complex<double>(std::sin(M_PI * t), 0.0);
            });
            const double residual = verify_resolvent(lambda, y);
            if (previous > 0.0) {
                const double ratio = previous / residual;
                worst_low = std::min(worst_low, ratio);
                worst_high = std::max(worst_high, ratio);
                if (ratio < 2.5 || ratio > 6.0) orders_ok = false;
            }
            previous = residual;
        }
    }

    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "finite ||R(lambda,D)|| at %d/441 nodes of [-20,20]^2 (n=256); halving ratios "
                  "in [%.2f, %.2f] at 10 lambdas (required [2.5, 6])",
                  evaluated, worst_low, worst_high);
    report(3, all_finite && evaluated == 441 && orders_ok, detail);
}

TEST_CASE("criterion 4: explicit resolvent formula") {
    bool ok = true;
    double worst_scaled = 0.0;
    for (int n : {64, 128, 256}) {
        const auto ones = GridFunction::from_function(n, 2, [](double) {
            return std::complex<double>(1.0, 0.0);
        });
        const auto u = resolvent_apply({1.0, 0.0}, ones);
        double err = 0.0;
        for (int i = 0; i <= n; ++i) {
            err = std::max(err, std::abs(u[i] - std::complex<double>(std::exp(u.t(i)) - 1.0, 0.0)));
        }
        const double h2 = 1.0 / (static_cast<double>(n) * n);
        worst_scaled = std::max(worst_scaled, err / h2);
        if (err > 5.0 * h2) ok = false;
    }

    const auto ones = GridFunction::from_function(128, 2, [](double) {
        return std::complex<double>(1.0, 0.0);
    });
    const auto u0 = resolvent_apply({0.0, 0.0}, ones);
    double err0 = 0.0;
    for (int i = 0; i <= 128; ++i) {
        err0 = std::max(err0, std::abs(u0[i] - std::complex<double>(u0.t(i), 0.0)));
    }
    if (err0 > 1e-10) ok = false;

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "lambda=1: max error %.3f*h^2 (budget 5*h^2) at n=64,128,256; lambda=0: "
                  "max error %.1e (budget 1e-10)",
                  worst_scaled, err0);
    report(4, ok, detail);
}

TEST_CASE("criterion 5: unboundedness with and without a bounded spectrum") {
    // D block: sin(k pi t) family at K = 1e3.
    const auto d_witness = derivative_ratio_witness(1000.0, 32 * 320, 2);
    const bool d_ok = d_witness.frequency == 320 && d_witness.ratio >= 1000.0;

    // Even with compact sigma the sum operator is unbounded: the diagonal
    // block certifies boundedness while the D block breaks any bound.
    const DirectSumOperator A(RegionSpec({DiskPrim{{0, 0}, 1.0}}), 64, {64, 2}, SumNorm::TwoSum);
    const auto disk_verdict = unboundedness_witness(*A.diagonal_block(), 1000.0);
    const bool compact_ok = std::holds_alternative<BoundedCertificate>(disk_verdict);

    // M block witnesses for unbounded sigma within the 1e6 budget.
    const TruncatedDiagonal half(
        MultiplierSequence(RegionSpec({HalfPlanePrim{{1, 0}, 0.0}})), 1);
    const auto half_verdict = unboundedness_witness(half, 1000.0, 1000000);
    const auto* half_witness = std::get_if<MagnitudeWitness>(&half_verdict);

    const TruncatedDiagonal plane(MultiplierSequence(RegionSpec({FullPlanePrim{}})), 1);
    const auto plane_verdict = unboundedness_witness(plane, 1e6, 1000000);
    const auto* plane_witness = std::get_if<MagnitudeWitness>(&plane_verdict);

    const bool m_ok = half_witness && half_witness->ratio > 1000.0 && plane_witness &&
                      plane_witness->ratio > 1e6;

    char detail[240];
    std::snprintf(detail, sizeof(detail),
                  "D block: sin(320 pi t) ratio %.1f >= 1e3; compact sigma stays bounded "
                  "(certificate radius 1); M block: half-plane |m_%llu| = %.3g > 1e3, full plane "
                  "|m_%llu| = %.3g > 1e6",
                  d_witness.ratio,
                  half_witness ? static_cast<unsigned long long>(half_witness->index) : 0ULL,
                  half_witness ? half_witness->ratio : 0.0,
                  plane_witness ? static_cast<unsigned long long>(plane_witness->index) : 0ULL,
                  plane_witness ? plane_witness->ratio : 0.0);
    report(5, d_ok && compact_ok && m_ok, detail);
}

TEST_CASE("criterion 6: classification completeness, no residual class") {
    // The classification type has exactly three states; scan a mixed region
    // and verify exact eigenvalue queries return the first matching witness.
    const RegionSpec spec({DiskPrim{{0, 0}, 1.0}, SegmentPrim{{-2, -1}, {2, 1}},
                           AnnulusPrim{{1, 1}, 0.5, 1.5}});
    const TruncatedDiagonal op(MultiplierSequence(spec), 4096);

    std::mt19937_64 rng(31);
    bool partition_ok = true;
    for (int i = 0; i < 500; ++i) {
        const std::complex<double> lambda(uniform(rng, -3, 3), uniform(rng, -3, 3));
        const auto cls = classify(op, lambda, 1e-9);
        if (cls.kind != SpectrumClass::Kind::Point &&
            cls.kind != SpectrumClass::Kind::Continuous &&
            cls.kind != SpectrumClass::Kind::ResolventSet) {
            partition_ok = false;
        }
    }

    int witnesses_ok = 0;
    for (int i = 0; i < 50; ++i) {
        const std::uint64_t n = 1 + rng() % 4096;
        const auto lambda = op.multiplier_exact(n);
        const auto cls = classify_exact(op, lambda, 1e-9);
        if (cls.kind != SpectrumClass::Kind::Point || !cls.witness_index || !cls.exact_match) {
            continue;
        }
        const std::uint64_t w = *cls.witness_index;
        bool first_match = w <= n && op.multiplier_exact(w) == lambda;
        for (std::uint64_t j = 1; first_match && j < w; ++j) {
            if (op.multiplier_exact(j) == lambda) first_match = false;
        }
        if (first_match) ++witnesses_ok;
    }

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "three-class partition over 500 queries; %d/50 exact m_n queries returned "
                  "the first matching point witness",
                  witnesses_ok);
    report(6, partition_ok && witnesses_ok == 50, detail);
}

TEST_CASE("criterion 7: empty and full-plane spectra") {
    SweepConfig cfg;
    cfg.window = {-2, 2, -2, 2};
    cfg.nx = cfg.ny = 21;
    cfg.truncation = 2048;
    cfg.n_cells = 64;
    cfg.epsilons = {1e-1, 1e-2};

    const auto empty = sweep(RegionSpec{}, cfg);
    bool empty_ok = empty.count_resolvent == empty.nodes.size();
    for (const auto& node : empty.nodes) {
        if (!node.error.empty() || !(node.s_exact > 0.0) || !std::isfinite(node.s_exact)) {
            empty_ok = false;
        }
    }

    const auto full = sweep(RegionSpec({FullPlanePrim{}}), cfg);
    const bool full_ok = full.count_resolvent == 0;

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "empty region: 441/441 resolvent nodes with finite norms; full plane: %zu "
                  "resolvent nodes (0 required)",
                  full.count_resolvent);
    report(7, empty_ok && full_ok, detail);
}

TEST_CASE("criterion 8: byte-deterministic outputs") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "opspec_acceptance";
    fs::create_directories(dir);
    const std::string spec_path = (dir / "disk.json").string();
    {
        std::ofstream out(spec_path);
        out << R"({"primitives":[{"type":"disk","center":[0,0],"radius":1}]})";
    }

    auto run_quiet = [](const std::vector<std::string>& args) {
        std::ostringstream sink;
        auto* old = std::cout.rdbuf(sink.rdbuf());
        const int status = run_cli(args);
        std::cout.rdbuf(old);
        return status;
    };

    bool ok = true;
    const std::string m1 = (dir / "m1.csv").string();
    const std::string m2 = (dir / "m2.csv").string();
    ok &= run_quiet({"generate-multipliers", "--spec", spec_path, "--count", "2000", "--out",
                     m1}) == 0;
    ok &= run_quiet({"generate-multipliers", "--spec", spec_path, "--count", "2000", "--out",
                     m2}) == 0;
    ok &= read_file(m1) == read_file(m2);

    const std::string s1 = (dir / "s1.csv").string();
    const std::string s2 = (dir / "s2.csv").string();
    const std::vector<std::string> sweep_args = {
        "pseudospectrum", "--spec", spec_path, "--window", "-2,2,-2,2", "--grid", "11x11",
        "--N", "1024", "--cells", "64", "--seed", "9", "--eps", "1e-1,1e-2,1e-3"};
    auto with_out = [&](const std::string& out) {
        auto args = sweep_args;
        args.push_back("--out");
        args.push_back(out);
        return args;
    };
    ok &= run_quiet(with_out(s1)) == 0;
    ok &= run_quiet(with_out(s2)) == 0;
    ok &= read_file(s1) == read_file(s2);

    fs::remove_all(dir);
    report(8, ok, "generate-multipliers and pseudospectrum reruns produce identical bytes");
}
