#include "opspec/pseudospec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace opspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::complex<double> uniform_in(const Window& w, std::mt19937_64& rng) {
    return {w.x0 + uniform01(rng) * (w.x1 - w.x0), w.y0 + uniform01(rng) * (w.y1 - w.y0)};
}

std::string fmt_complex(std::complex<double> z) {
    std::ostringstream os;
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

}  // namespace

SweepResult sweep(const RegionSpec& spec, const SweepConfig& cfg) {
    if (cfg.nx < 2 || cfg.ny < 2) throw std::invalid_argument("sweep: grid must be >= 2x2");
    for (std::size_t i = 1; i < cfg.epsilons.size(); ++i) {
        if (!(cfg.epsilons[i] < cfg.epsilons[i - 1])) {
            throw std::invalid_argument("sweep: epsilons must be strictly decreasing");
        }
    }

    const DirectSumOperator A(spec, cfg.truncation, {cfg.n_cells, cfg.p}, cfg.sum_norm);

    SweepResult result;
    result.config = cfg;

    if (!spec.is_empty()) {
        try {
            result.covering_radius =
                covering_radius(MultiplierSequence(spec), cfg.truncation, cfg.window, 2000, cfg.seed)
                    .radius_estimate;
        } catch (const EmptyIntersectionError&) {
            result.covering_radius = 0.0;  // window misses the region entirely
        }
    }

    result.nodes.reserve(static_cast<std::size_t>(cfg.nx) * static_cast<std::size_t>(cfg.ny));
    for (int iy = 0; iy < cfg.ny; ++iy) {
        const double im = cfg.window.y0 + (cfg.window.y1 - cfg.window.y0) * iy / (cfg.ny - 1);
        for (int ix = 0; ix < cfg.nx; ++ix) {
            const double re = cfg.window.x0 + (cfg.window.x1 - cfg.window.x0) * ix / (cfg.nx - 1);
            const std::complex<double> lambda(re, im);
            SweepNode node{lambda, 0.0, 0.0, SpectrumClass::Kind::ResolventSet, ""};
            try {
                const auto report = classify(A, lambda, cfg.tol);
                node.kind = report.kind;
                node.s_truncated = report.resolvent_norm_truncated == kInf
                                       ? 0.0
                                       : 1.0 / report.resolvent_norm_truncated;
                const double dist = report.dist;
                const double volterra_cap =
                    report.volterra_norm > 0 ? 1.0 / report.volterra_norm : kInf;
                node.s_exact = std::min(dist, volterra_cap);

                switch (report.kind) {
                    case SpectrumClass::Kind::Point: ++result.count_point; break;
                    case SpectrumClass::Kind::Continuous: ++result.count_continuous; break;
                    case SpectrumClass::Kind::ResolventSet: ++result.count_resolvent; break;
                }
                if (dist > result.covering_radius) {
                    result.max_gap_resolvent_nodes = std::max(
                        result.max_gap_resolvent_nodes, std::abs(node.s_truncated - node.s_exact));
                }
            } catch (const std::exception& e) {
                node.error = std::string("node ") + fmt_complex(lambda) + ": " + e.what();
            }
            result.nodes.push_back(std::move(node));
        }
    }

    result.epsilon_sublevel_counts.assign(cfg.epsilons.size(), 0);
    for (std::size_t k = 0; k < cfg.epsilons.size(); ++k) {
        for (const auto& node : result.nodes) {
            if (node.error.empty() && node.s_truncated < cfg.epsilons[k]) {
                ++result.epsilon_sublevel_counts[k];
            }
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Verification battery
// ---------------------------------------------------------------------------

namespace {

struct Budget {
    int region_samples;
    std::uint64_t membership_prefix;
    std::uint64_t covering_max;
    int roundtrip_trials;
    int classify_trials;
    int volterra_grid;  // per axis
    double volterra_span;
    int volterra_order_lambdas;
    double unbounded_K;
    std::uint64_t truncation;
};

Budget budget_for(const std::string& profile) {
    if (profile == "quick") {
        return {.region_samples = 200,
                .membership_prefix = 500,
                .covering_max = 1024,
                .roundtrip_trials = 20,
                .classify_trials = 200,
                .volterra_grid = 3,
                .volterra_span = 5.0,
                .volterra_order_lambdas = 2,
                .unbounded_K = 100.0,
                .truncation = 1024};
    }
    if (profile == "full") {
        return {.region_samples = 2000,
                .membership_prefix = 10000,
                .covering_max = 4096,
                .roundtrip_trials = 100,
                .classify_trials = 1000,
                .volterra_grid = 21,
                .volterra_span = 20.0,
                .volterra_order_lambdas = 10,
                .unbounded_K = 1000.0,
                .truncation = 4096};
    }
    throw std::invalid_argument("unknown profile '" + profile + "' (use quick or full)");
}

Window test_window(const RegionSpec& spec) {
    const auto b = bounds(spec);
    const double r = b.bounded ? std::max(1.0, b.enclosing_radius) + 1.0 : 4.0;
    return {-r, r, -r, r};
}

using CheckFn = std::function<void(std::vector<std::string>&)>;

struct Skip {
    std::string reason;
};

void run_check(VerifyReport& report, const std::string& name, const CheckFn& fn) {
    std::vector<std::string> failures;
    try {
        fn(failures);
    } catch (const Skip& s) {
        report.checks.push_back({name, CheckStatus::Skip, s.reason});
        return;
    } catch (const std::exception& e) {
        failures.push_back(std::string("exception: ") + e.what());
    }
    if (failures.empty()) {
        report.checks.push_back({name, CheckStatus::Pass, ""});
    } else {
        std::string detail = failures.front();
        if (failures.size() > 1) {
            detail += " (+" + std::to_string(failures.size() - 1) + " more)";
        }
        report.checks.push_back({name, CheckStatus::Fail, detail});
    }
}

void require_nonempty(const RegionSpec& spec) {
    if (spec.is_empty()) throw Skip{"empty region: no multiplier sequence exists"};
}

}  // namespace

VerifyReport verify_all(const RegionSpec& spec, const std::string& profile) {
    const Budget budget = budget_for(profile);
    VerifyReport report;
    report.profile = profile;

    const Window window = test_window(spec);
    const std::uint64_t seed = 20240901;

    run_check(report, "region.lipschitz", [&](std::vector<std::string>& bad) {
        if (spec.is_empty()) throw Skip{"empty region: distance is identically +inf"};
        std::mt19937_64 rng(seed);
        for (int i = 0; i < budget.region_samples; ++i) {
            const auto z1 = uniform_in(window, rng);
            const auto z2 = uniform_in(window, rng);
            const double lhs = std::abs(distance(spec, z1) - distance(spec, z2));
            if (lhs > std::abs(z1 - z2) + 1e-12) {
                bad.push_back("Lipschitz violated at " + fmt_complex(z1) + ", " + fmt_complex(z2));
            }
        }
    });

    run_check(report, "region.nearest_point_consistency", [&](std::vector<std::string>& bad) {
        require_nonempty(spec);
        std::mt19937_64 rng(seed + 1);
        for (int i = 0; i < budget.region_samples; ++i) {
            const auto z = uniform_in(window, rng);
            const double d = distance(spec, z);
            const double via_nearest = std::abs(z - nearest_point(spec, z));
            if (std::abs(d - via_nearest) > 1e-12 * std::max(1.0, d)) {
                bad.push_back("distance mismatch at " + fmt_complex(z));
            }
        }
    });

    run_check(report, "region.sample_membership", [&](std::vector<std::string>& bad) {
        require_nonempty(spec);
        for (const auto& z : sample_points(spec, budget.region_samples, seed + 2)) {
            if (distance(spec, z) > 1e-12) {
                bad.push_back("sample off the region at " + fmt_complex(z));
            }
        }
    });

    run_check(report, "region.union_monotonicity", [&](std::vector<std::string>& bad) {
        if (spec.size() < 2) throw Skip{"fewer than two primitives"};
        std::vector<Primitive> prefix(spec.primitives().begin(), spec.primitives().end() - 1);
        const RegionSpec smaller(std::move(prefix));
        std::mt19937_64 rng(seed + 3);
        for (int i = 0; i < budget.region_samples; ++i) {
            const auto z = uniform_in(window, rng);
            if (distance(spec, z) > distance(smaller, z) + 1e-12) {
                bad.push_back("adding a primitive increased distance at " + fmt_complex(z));
            }
        }
    });

    run_check(report, "multipliers.membership", [&](std::vector<std::string>& bad) {
        require_nonempty(spec);
        const MultiplierSequence seq(spec);
        for (std::uint64_t n = 1; n <= budget.membership_prefix; ++n) {
            const double d = distance(spec, seq.at(n));
            if (d > 1e-12) {
                bad.push_back("m_" + std::to_string(n) + " at distance " + std::to_string(d));
                if (bad.size() > 4) return;
            }
        }
    });

    run_check(report, "multipliers.covering_monotone", [&](std::vector<std::string>& bad) {
        require_nonempty(spec);
        const MultiplierSequence seq(spec);
        double previous = kInf;
        for (std::uint64_t N = 64; N <= budget.covering_max; N *= 4) {
            const auto rep = covering_radius(seq, N, window, 400, seed + 4);
            if (rep.radius_estimate > previous + 1e-15) {
                bad.push_back("covering radius grew at N = " + std::to_string(N));
            }
            previous = rep.radius_estimate;
        }
    });

    run_check(report, "multipliers.determinism", [&](std::vector<std::string>& bad) {
        require_nonempty(spec);
        const MultiplierSequence a(spec);
        const MultiplierSequence b(spec);
        for (std::uint64_t n = 1; n <= 200; ++n) {
            if (a.at_exact(n) != b.at_exact(n) || a.at(n) != b.at(n)) {
                bad.push_back("enumeration differs at n = " + std::to_string(n));
            }
        }
    });

    run_check(report, "diagonal.resolvent_roundtrip", [&](std::vector<std::string>& bad) {
        require_nonempty(spec);
        const TruncatedDiagonal op(MultiplierSequence(spec), 256);
        std::mt19937_64 rng(seed + 5);
        for (int trial = 0; trial < budget.roundtrip_trials; ++trial) {
            const auto lambda = uniform_in(window, rng);
            std::vector<SparseVector::Entry> entries;
            for (int j = 0; j < 5; ++j) {
                entries.emplace_back(1 + rng() % 256,
                                     std::complex<double>(uniform01(rng) - 0.5, uniform01(rng) - 0.5));
            }
            const SparseVector x(std::move(entries));
            try {
                const auto r = resolvent_apply(op, lambda, x);
                const auto back = apply(op, r) - SparseVector([&] {
                                      std::vector<SparseVector::Entry> scaled;
                                      for (const auto& [idx, c] : r.entries())
                                          scaled.emplace_back(idx, lambda * c);
                                      return scaled;
                                  }());
                if ((back - x).norm() > 1e-12 * std::max(1.0, x.norm())) {
                    bad.push_back("roundtrip residual too large at lambda = " + fmt_complex(lambda));
                }
            } catch (const SingularEntryError&) {
                // exact eigenvalue hit: legitimately outside the resolvent contract
            }
        }
    });

    run_check(report, "diagonal.classify_consistency", [&](std::vector<std::string>& bad) {
        require_nonempty(spec);
        const TruncatedDiagonal op(MultiplierSequence(spec), budget.truncation);
        std::mt19937_64 rng(seed + 6);
        const double tol = 1e-9;
        for (int i = 0; i < budget.classify_trials; ++i) {
            const auto lambda = uniform_in(window, rng);
            const auto cls = classify(op, lambda, tol);
            const bool resolvent = cls.kind == SpectrumClass::Kind::ResolventSet;
            const bool outside = distance(spec, lambda) > tol;
            if (resolvent != outside) {
                bad.push_back("classification/distance mismatch at " + fmt_complex(lambda));
            }
        }
    });

    run_check(report, "diagonal.truncated_norm_bounds", [&](std::vector<std::string>& bad) {
        require_nonempty(spec);
        const MultiplierSequence seq(spec);
        std::mt19937_64 rng(seed + 7);
        const TruncatedDiagonal coarse(seq, 128);
        const TruncatedDiagonal fine(seq, 1024);
        for (int i = 0; i < 25; ++i) {
            const auto lambda = uniform_in(window, rng);
            const auto low = resolvent_norm(coarse, lambda);
            const auto high = resolvent_norm(fine, lambda);
            if (low.truncated > high.truncated * (1 + 1e-12)) {
                bad.push_back("truncated norm decreased in N at " + fmt_complex(lambda));
            }
            if (high.truncated > high.exact_limit * (1 + 1e-9)) {
                bad.push_back("truncated norm exceeds exact limit at " + fmt_complex(lambda));
            }
        }
    });

    run_check(report, "diagonal.boundedness", [&](std::vector<std::string>& bad) {
        require_nonempty(spec);
        const TruncatedDiagonal op(MultiplierSequence(spec), budget.truncation);
        const auto verdict = unboundedness_witness(op, budget.unbounded_K);
        if (const auto* cert = std::get_if<BoundedCertificate>(&verdict)) {
            for (std::uint64_t n = 1; n <= op.truncation(); ++n) {
                if (std::abs(op.multiplier(n)) > cert->enclosing_radius + 1e-9) {
                    bad.push_back("multiplier magnitude exceeds the bounded certificate");
                    return;
                }
            }
        } else {
            const auto& witness = std::get<MagnitudeWitness>(verdict);
            if (!(witness.ratio > budget.unbounded_K)) {
                bad.push_back("witness ratio does not exceed K");
            }
        }
    });

    run_check(report, "volterra.everywhere_defined", [&](std::vector<std::string>& bad) {
        const int g = budget.volterra_grid;
        for (int iy = 0; iy < g; ++iy) {
            for (int ix = 0; ix < g; ++ix) {
                const std::complex<double> lambda(
                    -budget.volterra_span + 2 * budget.volterra_span * ix / (g - 1),
                    -budget.volterra_span + 2 * budget.volterra_span * iy / (g - 1));
                const auto est = resolvent_norm_estimate(lambda, 256, 2);
                if (!std::isfinite(est.norm_estimate) || est.norm_estimate <= 0) {
                    bad.push_back("non-finite estimate at " + fmt_complex(lambda));
                }
            }
        }
    });

    run_check(report, "volterra.convergence_order", [&](std::vector<std::string>& bad) {
        std::mt19937_64 rng(seed + 8);
        const Window lam_window{-budget.volterra_span, budget.volterra_span,
                                -budget.volterra_span, budget.volterra_span};
        for (int i = 0; i < budget.volterra_order_lambdas; ++i) {
            const auto lambda = uniform_in(lam_window, rng);
            double previous = -1.0;
            for (int n = 64; n <= 128; n *= 2) {
                const auto y = GridFunction::from_function(n, 2, [](double t) {
                    return std::complex<double>(std::sin(M_PI * t), 0.0);
                });
                const double res = verify_resolvent(lambda, y);
                if (previous > 0) {
                    const double ratio = previous / res;
                    if (ratio < 2.5 || ratio > 6.0) {
                        bad.push_back("halving ratio " + std::to_string(ratio) + " at " +
                                      fmt_complex(lambda));
                    }
                }
                previous = res;
            }
        }
    });

    run_check(report, "volterra.resolvent_formula", [&](std::vector<std::string>& bad) {
        const auto ones = GridFunction::from_function(128, 2, [](double) {
            return std::complex<double>(1.0, 0.0);
        });
        const auto u0 = resolvent_apply({0.0, 0.0}, ones);
        const auto u1 = resolvent_apply({1.0, 0.0}, ones);
        const double h = ones.h();
        for (int i = 0; i <= ones.cells(); ++i) {
            if (std::abs(u0[i] - std::complex<double>(u0.t(i), 0.0)) > 1e-10) {
                bad.push_back("integration of 1 deviates from t");
                break;
            }
            if (std::abs(u1[i] - std::complex<double>(std::exp(u1.t(i)) - 1.0, 0.0)) > 5 * h * h) {
                bad.push_back("lambda=1 resolvent deviates from e^t - 1");
                break;
            }
        }
        if (u1[0] != std::complex<double>(0.0, 0.0)) bad.push_back("u(0) != 0");
    });

    run_check(report, "volterra.unboundedness", [&](std::vector<std::string>& bad) {
        const int k = static_cast<int>(std::ceil(budget.unbounded_K / M_PI)) + 1;
        const auto witness = derivative_ratio_witness(budget.unbounded_K, 32 * k, 2);
        if (!(witness.ratio > budget.unbounded_K)) {
            bad.push_back("derivative ratio " + std::to_string(witness.ratio) +
                          " does not exceed K");
        }
    });

    run_check(report, "direct_sum.resolvent_roundtrip", [&](std::vector<std::string>& bad) {
        const SumNorm sum_norm = SumNorm::TwoSum;
        const DirectSumOperator A(spec, 256, {128, 2}, sum_norm);
        std::mt19937_64 rng(seed + 9);
        for (int trial = 0; trial < 5; ++trial) {
            const auto lambda = uniform_in(window, rng);
            SparseVector x;
            if (!spec.is_empty()) {
                std::vector<SparseVector::Entry> entries;
                for (int j = 0; j < 4; ++j) {
                    entries.emplace_back(1 + rng() % 256,
                                         std::complex<double>(uniform01(rng) - 0.5,
                                                              uniform01(rng) - 0.5));
                }
                x = SparseVector(std::move(entries));
            }
            const auto y = GridFunction::from_function(128, 2, [](double t) {
                return std::complex<double>(std::cos(2.0 * t), 0.3 * t);
            });
            const PairVector w{x, y};
            try {
                const auto r = resolvent_apply(A, lambda, w);
                const auto Ar = apply(A, r);
                const GridFunction grid_back = Ar.y - lambda * r.y - w.y;
                double grid_residual = 0.0;
                for (int i = 1; i < grid_back.cells(); ++i) {
                    grid_residual = std::max(grid_residual, std::abs(grid_back[i]));
                }
                const double h = y.h();
                const double lam_scale = std::max(1.0, std::pow(std::abs(lambda), 3));
                if (grid_residual > std::max(1e-10, 20.0 * lam_scale * h * h)) {
                    bad.push_back("grid residual " + std::to_string(grid_residual) + " at " +
                                  fmt_complex(lambda));
                }
                if (!spec.is_empty()) {
                    std::vector<SparseVector::Entry> scaled;
                    for (const auto& [idx, c] : r.x.entries()) scaled.emplace_back(idx, lambda * c);
                    const auto back = Ar.x - SparseVector(std::move(scaled));
                    if ((back - w.x).norm() > 1e-10 * std::max(1.0, w.x.norm())) {
                        bad.push_back("sparse residual at " + fmt_complex(lambda));
                    }
                }
            } catch (const SingularEntryError&) {
            }
        }
    });

    run_check(report, "direct_sum.spectrum_equality", [&](std::vector<std::string>& bad) {
        const DirectSumOperator A(spec, budget.truncation, {64, 2}, SumNorm::TwoSum);
        std::mt19937_64 rng(seed + 10);
        const double tol = 1e-9;
        const int trials = std::max(50, budget.classify_trials / 4);
        for (int i = 0; i < trials; ++i) {
            const auto lambda = uniform_in(window, rng);
            const auto rep = classify(A, lambda, tol);
            const bool resolvent = rep.kind == SpectrumClass::Kind::ResolventSet;
            const bool outside = spec.is_empty() || distance(spec, lambda) > tol;
            if (resolvent != outside) {
                bad.push_back("spectrum mismatch at " + fmt_complex(lambda));
            }
        }
    });

    run_check(report, "pseudospec.sweep_invariants", [&](std::vector<std::string>& bad) {
        SweepConfig cfg;
        cfg.window = window;
        cfg.nx = cfg.ny = 9;
        cfg.truncation = std::min<std::uint64_t>(budget.truncation, 2048);
        cfg.n_cells = 64;
        cfg.epsilons = {1e-1, 1e-2, 1e-3};
        const auto result = sweep(spec, cfg);
        const auto rerun = sweep(spec, cfg);
        for (std::size_t i = 0; i < result.nodes.size(); ++i) {
            if (result.nodes[i].s_truncated != rerun.nodes[i].s_truncated) {
                bad.push_back("sweep is not deterministic");
                break;
            }
            if (result.nodes[i].error.empty() && result.nodes[i].s_truncated < 0) {
                bad.push_back("negative s value");
                break;
            }
        }
        for (std::size_t k = 1; k < result.epsilon_sublevel_counts.size(); ++k) {
            if (result.epsilon_sublevel_counts[k] > result.epsilon_sublevel_counts[k - 1]) {
                bad.push_back("epsilon sublevel sets are not nested");
            }
        }
    });

    return report;
}

}  // namespace opspec
