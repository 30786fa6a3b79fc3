#include "opspec/cli.hpp"

#include <cmath>
#include <complex>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "opspec/io_util.hpp"
#include "opspec/pseudospec.hpp"
#include "opspec/region_io.hpp"

namespace opspec {

namespace {

using nlohmann::json;

const char* kind_name(SpectrumClass::Kind kind) {
    switch (kind) {
        case SpectrumClass::Kind::Point: return "point";
        case SpectrumClass::Kind::Continuous: return "continuous";
        default: return "resolvent";
    }
}

Window parse_window(const std::string& text) {
    std::istringstream in(text);
    Window w{};
    char c1, c2, c3;
    if (!(in >> w.x0 >> c1 >> w.x1 >> c2 >> w.y0 >> c3 >> w.y1) || c1 != ',' || c2 != ',' ||
        c3 != ',' || !(in >> std::ws).eof() || w.x0 >= w.x1 || w.y0 >= w.y1) {
        throw CLI::ValidationError("--window", "expected x0,x1,y0,y1 with x0<x1, y0<y1");
    }
    return w;
}

std::pair<int, int> parse_grid(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos) throw CLI::ValidationError("--grid", "expected NxM");
    try {
        const int nx = std::stoi(text.substr(0, x));
        const int ny = std::stoi(text.substr(x + 1));
        if (nx < 2 || ny < 2) throw CLI::ValidationError("--grid", "grid must be at least 2x2");
        return {nx, ny};
    } catch (const CLI::ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw CLI::ValidationError("--grid", "expected NxM");
    }
}

RationalComplex parse_exact_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw CLI::ValidationError("--exact", "expected num/den,num/den");
    }
    try {
        return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("--exact", e.what());
    }
}

double finite_or_zero(double v) { return std::isfinite(v) ? v : 0.0; }

json norm_json(double truncated, double exact) {
    return {{"truncated", std::isfinite(truncated) ? json(truncated) : json("inf")},
            {"exact_limit", std::isfinite(exact) ? json(exact) : json("inf")}};
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

int cmd_generate_multipliers(const std::string& spec_path, std::uint64_t count,
                             const std::string& out_path) {
    const RegionSpec spec = parse_region_file(spec_path);
    const MultiplierSequence seq(spec);

    std::ostringstream csv;
    csv << "n,re,im,exact_num_re,exact_den_re,exact_num_im,exact_den_im\n";
    for (std::uint64_t n = 1; n <= count; ++n) {
        const RationalComplex exact = seq.at_exact(n);
        const std::complex<double> z = to_complex(exact);
        csv << n << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << ','
            << numerator(exact.re).str() << ',' << denominator(exact.re).str() << ','
            << numerator(exact.im).str() << ',' << denominator(exact.im).str() << '\n';
    }
    write_file_atomic(out_path, csv.str());
    std::cout << "wrote " << count << " multipliers to " << out_path << "\n";
    return 0;
}

int cmd_classify(const std::string& spec_path, const std::string& lambda_text,
                 const std::string& exact_text, std::uint64_t truncation, int cells, double tol) {
    const RegionSpec spec = parse_region_file(spec_path);
    const DirectSumOperator A(spec, std::max<std::uint64_t>(truncation, 1), {cells, 2},
                              SumNorm::TwoSum);

    SpectralReportA report{};
    if (!exact_text.empty()) {
        report = classify_exact(A, parse_exact_pair(exact_text), tol);
    } else {
        report = classify(A, parse_complex_pair(lambda_text), tol);
    }

    json out;
    out["lambda"] = {report.lambda.real(), report.lambda.imag()};
    out["class"] = kind_name(report.kind);
    out["dist"] = std::isfinite(report.dist) ? json(report.dist) : json("inf");
    out["resolvent_norm"] = norm_json(report.resolvent_norm_truncated, report.resolvent_norm_exact);
    if (report.point_witness) {
        out["witness"] = *report.point_witness;
        out["exact_match"] = report.exact_match;
    } else {
        out["witness"] = nullptr;
    }
    if (report.certificate_index) {
        out["certificate"] = {{"index", *report.certificate_index},
                              {"residual", report.certificate_residual}};
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_volterra_norm(const std::string& lambda_text, int cells, int p) {
    const auto lambda = parse_complex_pair(lambda_text);
    const auto est = resolvent_norm_estimate(lambda, cells, p);
    json out;
    out["lambda"] = {est.lambda.real(), est.lambda.imag()};
    out["n_cells"] = est.n_cells;
    out["norm_estimate"] = est.norm_estimate;
    out["method"] = est.method;
    out["iterations"] = est.iterations;
    out["residual_tolerance"] = est.residual_tolerance;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_spectrum_report(const std::string& spec_path, const Window& window, int nx, int ny,
                        std::uint64_t truncation, int cells, double tol,
                        const std::string& out_path) {
    const RegionSpec spec = parse_region_file(spec_path);
    const DirectSumOperator A(spec, truncation, {cells, 2}, SumNorm::TwoSum);
    const auto table = spectrum_report(A, window, nx, ny, tol);

    std::ostringstream csv;
    csv << "re,im,class,dist,inv_norm_truncated,inv_norm_exact\n";
    std::size_t on_spectrum = 0;
    for (const auto& row : table) {
        if (row.kind != SpectrumClass::Kind::ResolventSet) ++on_spectrum;
        const double inv_trunc = row.resolvent_norm_truncated > 0
                                     ? finite_or_zero(1.0 / row.resolvent_norm_truncated)
                                     : std::numeric_limits<double>::infinity();
        const double inv_exact = row.resolvent_norm_exact > 0
                                     ? finite_or_zero(1.0 / row.resolvent_norm_exact)
                                     : std::numeric_limits<double>::infinity();
        csv << format_double(row.lambda.real()) << ',' << format_double(row.lambda.imag()) << ','
            << kind_name(row.kind) << ',' << format_double(row.dist) << ','
            << format_double(inv_trunc) << ',' << format_double(inv_exact) << '\n';
    }
    write_file_atomic(out_path, csv.str());
    std::cout << "classified " << table.size() << " nodes (" << on_spectrum
              << " on the spectrum) -> " << out_path << "\n";
    return 0;
}

int cmd_pseudospectrum(const std::string& spec_path, SweepConfig cfg, const std::string& out_path) {
    const RegionSpec spec = parse_region_file(spec_path);
    const auto result = sweep(spec, cfg);

    std::ostringstream csv;
    csv << "re,im,s_truncated,s_exact,class,eps_level\n";
    for (const auto& node : result.nodes) {
        int level = 0;
        for (const double eps : cfg.epsilons) {
            if (node.error.empty() && node.s_truncated < eps) ++level;
        }
        csv << format_double(node.lambda.real()) << ',' << format_double(node.lambda.imag()) << ','
            << format_double(node.s_truncated) << ',' << format_double(node.s_exact) << ','
            << (node.error.empty() ? kind_name(node.kind) : "error") << ',' << level << '\n';
    }
    write_file_atomic(out_path, csv.str());
    std::cout << "swept " << result.nodes.size() << " nodes, covering radius "
              << format_double(result.covering_radius) << ", max resolvent gap "
              << format_double(result.max_gap_resolvent_nodes) << " -> " << out_path << "\n";
    return 0;
}

int cmd_verify(const std::string& spec_path, const std::string& profile,
               const std::string& out_path) {
    const RegionSpec spec = parse_region_file(spec_path);
    const auto report = verify_all(spec, profile);

    json checks = json::array();
    for (const auto& c : report.checks) {
        const char* status = c.status == CheckStatus::Pass   ? "pass"
                             : c.status == CheckStatus::Fail ? "fail"
                                                             : "skip";
        checks.push_back({{"name", c.name}, {"status", status}, {"detail", c.detail}});
    }
    json out;
    out["profile"] = report.profile;
    out["region"] = region_to_json(spec);
    out["checks"] = std::move(checks);
    out["passed"] = report.all_passed();
    if (!out_path.empty()) {
        write_file_atomic(out_path, out.dump(2) + "\n");
    }

    std::size_t passed = 0, failed = 0, skipped = 0;
    for (const auto& c : report.checks) {
        if (c.status == CheckStatus::Pass) ++passed;
        else if (c.status == CheckStatus::Fail) ++failed;
        else ++skipped;
    }
    std::cout << "verify " << profile << ": " << passed << " passed, " << failed << " failed, "
              << skipped << " skipped";
    if (!out_path.empty()) std::cout << " -> " << out_path;
    std::cout << "\n";
    for (const auto& c : report.checks) {
        if (c.status == CheckStatus::Fail) {
            std::cout << "  FAIL " << c.name << ": " << c.detail << "\n";
        }
    }
    return report.all_passed() ? 0 : 1;
}

int cmd_certificate(const std::string& spec_path, const std::string& lambda_text,
                    std::uint64_t truncation, int cells, double unbounded_K) {
    const RegionSpec spec = parse_region_file(spec_path);
    json out;

    if (!lambda_text.empty()) {
        if (spec.is_empty()) {
            throw OpspecError("approximate eigenvectors need a nonempty region");
        }
        const auto lambda = parse_complex_pair(lambda_text);
        const TruncatedDiagonal op(MultiplierSequence(spec), truncation);
        const auto cert = approx_eigenvector(op, lambda);
        out["lambda"] = {lambda.real(), lambda.imag()};
        out["dist"] = distance(spec, lambda);
        out["approx_eigenvector"] = {{"index", cert.index}, {"residual", cert.residual}};
        const auto norms = resolvent_norm(op, lambda);
        out["resolvent_norm"] = norm_json(norms.truncated, norms.exact_limit);
    }

    if (unbounded_K > 0) {
        json ub;
        if (!spec.is_empty()) {
            const TruncatedDiagonal op(MultiplierSequence(spec), 1);
            const auto verdict = unboundedness_witness(op, unbounded_K);
            if (const auto* witness = std::get_if<MagnitudeWitness>(&verdict)) {
                ub["m_block"] = {{"index", witness->index}, {"ratio", witness->ratio}};
            } else {
                ub["m_block"] = {
                    {"bounded_radius", std::get<BoundedCertificate>(verdict).enclosing_radius}};
            }
        }
        const int k = static_cast<int>(std::ceil(unbounded_K / M_PI)) + 1;
        const auto witness = derivative_ratio_witness(unbounded_K, std::max(cells, 32 * k), 2);
        ub["d_block"] = {{"frequency", witness.frequency}, {"ratio", witness.ratio}};
        out["unboundedness"] = std::move(ub);
    }

    if (out.empty()) {
        throw CLI::ValidationError("certificate", "provide --lambda and/or --unbounded");
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"prescribed-spectrum operator toolkit"};
    app.require_subcommand(1);

    // generate-multipliers
    std::string gm_spec, gm_out;
    std::uint64_t gm_count = 4096;
    auto* gm = app.add_subcommand("generate-multipliers",
                                  "emit the dense multiplier enumeration as CSV");
    gm->add_option("--spec", gm_spec, "region JSON file")->required();
    gm->add_option("--count", gm_count, "number of multipliers")->check(CLI::PositiveNumber);
    gm->add_option("--out", gm_out, "output CSV path")->required();

    // classify
    std::string cl_spec, cl_lambda, cl_exact;
    std::uint64_t cl_N = 4096;
    int cl_cells = 256;
    double cl_tol = 1e-9;
    auto* cl = app.add_subcommand("classify", "classify a spectral query point");
    cl->add_option("--spec", cl_spec, "region JSON file")->required();
    cl->add_option("--lambda", cl_lambda, "query point re,im");
    cl->add_option("--exact", cl_exact, "exact rational query num/den,num/den");
    cl->add_option("--N", cl_N, "truncation level (default 4096)");
    cl->add_option("--cells", cl_cells, "grid cells for the differentiation block (default 256)");
    cl->add_option("--tol", cl_tol, "membership tolerance (default 1e-9)");

    // volterra-norm
    std::string vn_lambda;
    int vn_cells = 256;
    int vn_p = 2;
    auto* vn = app.add_subcommand("volterra-norm", "resolvent norm estimate of the differentiation block");
    vn->add_option("--lambda", vn_lambda, "query point re,im")->required();
    vn->add_option("--cells", vn_cells, "grid cells (default 256)");
    vn->add_option("--p", vn_p, "norm exponent 1 or 2 (default 2)")->check(CLI::IsMember({1, 2}));

    // spectrum-report
    std::string sr_spec, sr_window, sr_grid = "101x101", sr_out;
    std::uint64_t sr_N = 4096;
    int sr_cells = 256;
    double sr_tol = 1e-9;
    auto* sr = app.add_subcommand("spectrum-report", "classification table over a complex window");
    sr->add_option("--spec", sr_spec, "region JSON file")->required();
    sr->add_option("--window", sr_window, "window x0,x1,y0,y1")->required();
    sr->add_option("--grid", sr_grid, "grid NxM (default 101x101)");
    sr->add_option("--N", sr_N, "truncation level (default 4096)");
    sr->add_option("--cells", sr_cells, "grid cells (default 256)");
    sr->add_option("--tol", sr_tol, "membership tolerance (default 1e-9)");
    sr->add_option("--out", sr_out, "output CSV path")->required();

    // pseudospectrum
    std::string ps_spec, ps_window, ps_grid = "41x41", ps_out, ps_eps = "1e-1,1e-2,1e-3";
    std::uint64_t ps_N = 4096, ps_seed = 1;
    int ps_cells = 256;
    auto* ps = app.add_subcommand("pseudospectrum", "sweep s(lambda) = 1/||R(lambda,A)||");
    ps->add_option("--spec", ps_spec, "region JSON file")->required();
    ps->add_option("--window", ps_window, "window x0,x1,y0,y1")->required();
    ps->add_option("--grid", ps_grid, "grid NxM (default 41x41)");
    ps->add_option("--eps", ps_eps, "decreasing level-set thresholds (default 1e-1,1e-2,1e-3)");
    ps->add_option("--N", ps_N, "truncation level (default 4096)");
    ps->add_option("--cells", ps_cells, "grid cells (default 256)");
    ps->add_option("--seed", ps_seed, "seed for the covering-radius estimate");
    ps->add_option("--out", ps_out, "output CSV path")->required();

    // verify
    std::string vf_spec, vf_profile = "quick", vf_out;
    auto* vf = app.add_subcommand("verify", "run the invariant battery against a region");
    vf->add_option("--spec", vf_spec, "region JSON file")->required();
    vf->add_option("--profile", vf_profile, "quick or full (default quick)")
        ->check(CLI::IsMember({"quick", "full"}));
    vf->add_option("--out", vf_out, "machine-readable report JSON");

    // certificate
    std::string ct_spec, ct_lambda;
    std::uint64_t ct_N = 4096;
    int ct_cells = 256;
    double ct_K = 0.0;
    auto* ct = app.add_subcommand("certificate",
                                  "approximate-eigenvector and unboundedness certificates");
    ct->add_option("--spec", ct_spec, "region JSON file")->required();
    ct->add_option("--lambda", ct_lambda, "query point re,im");
    ct->add_option("--N", ct_N, "truncation level (default 4096)");
    ct->add_option("--cells", ct_cells, "grid cells (default 256)");
    ct->add_option("--unbounded", ct_K, "also emit unboundedness witnesses above this ratio");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (gm->parsed()) return cmd_generate_multipliers(gm_spec, gm_count, gm_out);
        if (cl->parsed()) {
            if (cl_lambda.empty() && cl_exact.empty()) {
                std::cerr << "classify: provide --lambda or --exact\n";
                return 2;
            }
            return cmd_classify(cl_spec, cl_lambda, cl_exact, cl_N, cl_cells, cl_tol);
        }
        if (vn->parsed()) return cmd_volterra_norm(vn_lambda, vn_cells, vn_p);
        if (sr->parsed()) {
            const auto [nx, ny] = parse_grid(sr_grid);
            return cmd_spectrum_report(sr_spec, parse_window(sr_window), nx, ny, sr_N, sr_cells,
                                       sr_tol, sr_out);
        }
        if (ps->parsed()) {
            SweepConfig cfg;
            cfg.window = parse_window(ps_window);
            std::tie(cfg.nx, cfg.ny) = parse_grid(ps_grid);
            cfg.truncation = ps_N;
            cfg.n_cells = ps_cells;
            cfg.seed = ps_seed;
            cfg.epsilons.clear();
            std::istringstream eps_in(ps_eps);
            std::string tok;
            while (std::getline(eps_in, tok, ',')) cfg.epsilons.push_back(std::stod(tok));
            return cmd_pseudospectrum(ps_spec, cfg, ps_out);
        }
        if (vf->parsed()) return cmd_verify(vf_spec, vf_profile, vf_out);
        if (ct->parsed()) return cmd_certificate(ct_spec, ct_lambda, ct_N, ct_cells, ct_K);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const RegionParseError& e) {
        std::cerr << "region parse error";
        if (e.primitive_index >= 0) std::cerr << " (primitive " << e.primitive_index << ")";
        std::cerr << ": " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace opspec
