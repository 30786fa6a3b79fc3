#include "opspec/volterra_op.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opspec {

namespace {

void check_shape(const GridFunction& a, const GridFunction& b) {
    if (a.cells() != b.cells() || a.p() != b.p()) {
        throw std::invalid_argument("grid functions have mismatched shape");
    }
}

std::complex<double> step_factor(std::complex<double> lambda, double h) {
    const std::complex<double> e = std::exp(lambda * h);
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
        throw OverflowGuardError("exp(lambda*h) overflows; reduce h or rescale lambda");
    }
    return e;
}

}  // namespace

GridFunction::GridFunction(int n_cells, int p) : p_(p) {
    if (n_cells < 2) throw std::invalid_argument("grid needs at least 2 cells");
    if (p != 1 && p != 2) throw std::invalid_argument("norm exponent p must be 1 or 2");
    samples_.assign(static_cast<std::size_t>(n_cells) + 1, {0.0, 0.0});
}

GridFunction GridFunction::from_function(int n_cells, int p,
                                         const std::function<std::complex<double>(double)>& f) {
    GridFunction g(n_cells, p);
    for (int i = 0; i <= n_cells; ++i) g[i] = f(g.t(i));
    return g;
}

double GridFunction::norm() const {
    const int n = cells();
    const double step = h();
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        const double mag = std::abs(samples_[static_cast<std::size_t>(i)]);
        acc += w * (p_ == 1 ? mag : mag * mag);
    }
    acc *= step;
    return p_ == 1 ? acc : std::sqrt(acc);
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    check_shape(a, b);
    GridFunction out(a.cells(), a.p());
    for (int i = 0; i <= a.cells(); ++i) out[i] = a[i] + b[i];
    return out;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    check_shape(a, b);
    GridFunction out(a.cells(), a.p());
    for (int i = 0; i <= a.cells(); ++i) out[i] = a[i] - b[i];
    return out;
}

GridFunction operator*(std::complex<double> s, const GridFunction& a) {
    GridFunction out(a.cells(), a.p());
    for (int i = 0; i <= a.cells(); ++i) out[i] = s * a[i];
    return out;
}

GridFunction differentiate(const GridFunction& x) {
    if (std::abs(x[0]) > 1e-12) {
        throw DomainViolationError("domain condition x(0) = 0 violated");
    }
    const int n = x.cells();
    const double h = x.h();
    GridFunction out(n, x.p());
    out[0] = (-3.0 * x[0] + 4.0 * x[1] - x[2]) / (2.0 * h);
    for (int i = 1; i < n; ++i) out[i] = (x[i + 1] - x[i - 1]) / (2.0 * h);
    out[n] = (3.0 * x[n] - 4.0 * x[n - 1] + x[n - 2]) / (2.0 * h);
    return out;
}

GridFunction resolvent_apply(std::complex<double> lambda, const GridFunction& y) {
    const int n = y.cells();
    const double h = y.h();
    const std::complex<double> e = step_factor(lambda, h);
    GridFunction u(n, y.p());
    u[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        u[i + 1] = e * u[i] + 0.5 * h * (e * y[i] + y[i + 1]);
    }
    return u;
}

double verify_resolvent(std::complex<double> lambda, const GridFunction& y) {
    const GridFunction u = resolvent_apply(lambda, y);
    const GridFunction du = differentiate(u);
    double residual = 0.0;
    for (int i = 1; i < y.cells(); ++i) {
        residual = std::max(residual, std::abs(du[i] - lambda * u[i] - y[i]));
    }
    return residual;
}

namespace {

// The kernel matrix R behind resolvent_apply (rows i >= 1):
//   R_{i0} = (h/2) e^i,  R_{ij} = h e^{i-j} for 1 <= j < i,  R_{ii} = h/2,
// with e = exp(lambda h). Both R and its adjoint admit O(n) recurrences, so
// the power iteration below never forms the matrix.

std::vector<std::complex<double>> apply_kernel(std::complex<double> e, double h,
                                               const std::vector<std::complex<double>>& y) {
    const std::size_t n = y.size() - 1;
    std::vector<std::complex<double>> u(n + 1, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        u[i + 1] = e * u[i] + 0.5 * h * (e * y[i] + y[i + 1]);
    }
    return u;
}

std::vector<std::complex<double>> apply_kernel_adjoint(std::complex<double> e, double h,
                                                       const std::vector<std::complex<double>>& v) {
    const std::size_t n = v.size() - 1;
    const std::complex<double> mu = std::conj(e);
    // Suffix sums T_j = sum_{i>=j} mu^{i-j} v_i.
    std::vector<std::complex<double>> suffix(n + 2, {0.0, 0.0});
    for (std::size_t j = n + 1; j-- > 0;) {
        suffix[j] = v[j] + mu * suffix[j + 1];
    }
    std::vector<std::complex<double>> w(n + 1, {0.0, 0.0});
    w[0] = 0.5 * h * mu * suffix[1];
    for (std::size_t j = 1; j <= n; ++j) {
        w[j] = 0.5 * h * v[j] + h * mu * suffix[j + 1];
    }
    return w;
}

double vec_norm(const std::vector<std::complex<double>>& v) {
    double acc = 0.0;
    for (const auto& c : v) acc += std::norm(c);
    return std::sqrt(acc);
}

// The kernel magnitudes reach e^{Re lambda} across the full interval; past
// ~709 the norm itself leaves double range.
void check_interval_growth(std::complex<double> lambda) {
    if (!std::isfinite(std::exp(lambda.real()))) {
        throw OverflowGuardError("resolvent norm exceeds double range; rescale lambda");
    }
}

ResolventEstimate norm_estimate_p2(std::complex<double> lambda, int n_cells, int max_iterations) {
    const double h = 1.0 / n_cells;
    const std::complex<double> e = step_factor(lambda, h);
    check_interval_growth(lambda);
    const auto n = static_cast<std::size_t>(n_cells);

    // Trapezoid weights fold into a similarity by sqrt(w); only the endpoint
    // weights differ from 1.
    std::vector<double> sqrt_w(n + 1, 1.0);
    sqrt_w[0] = sqrt_w[n] = std::sqrt(0.5);

    auto apply_weighted_gram = [&](const std::vector<std::complex<double>>& v) {
        std::vector<std::complex<double>> tmp(v);
        for (std::size_t i = 0; i <= n; ++i) tmp[i] /= sqrt_w[i];
        tmp = apply_kernel(e, h, tmp);
        for (std::size_t i = 0; i <= n; ++i) tmp[i] *= sqrt_w[i] * sqrt_w[i];
        tmp = apply_kernel_adjoint(e, h, tmp);
        for (std::size_t i = 0; i <= n; ++i) tmp[i] /= sqrt_w[i];
        return tmp;
    };

    constexpr double kTol = 1e-8;

    // Fixed start vector with a mild profile so it is never orthogonal to
    // the dominant singular direction in practice.
    std::vector<std::complex<double>> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        v[i] = {1.0 + 0.5 * static_cast<double>(i) / static_cast<double>(n + 1), 0.0};
    }
    double scale = vec_norm(v);
    for (auto& c : v) c /= scale;

    double sigma = 0.0;
    int stable = 0;
    for (int iter = 1; iter <= max_iterations; ++iter) {
        auto w = apply_weighted_gram(v);
        const double rayleigh = vec_norm(w);  // ||A v|| with A = S^H S psd
        const double estimate = std::sqrt(rayleigh);
        if (rayleigh == 0.0) {
            return {lambda, n_cells, 0.0, "power-iteration", iter, kTol};
        }
        for (auto& c : w) c /= rayleigh;
        v = std::move(w);

        if (iter > 1 && std::abs(estimate - sigma) <= kTol * estimate) {
            if (++stable >= 3) {
                return {lambda, n_cells, estimate, "power-iteration", iter, kTol};
            }
        } else {
            stable = 0;
        }
        sigma = estimate;
    }
    throw NonConvergenceError(max_iterations);
}

ResolventEstimate norm_estimate_p1(std::complex<double> lambda, int n_cells) {
    const double h = 1.0 / n_cells;
    step_factor(lambda, h);  // overflow guard
    check_interval_growth(lambda);
    const double growth = std::exp(lambda.real() * h);
    const auto n = static_cast<std::size_t>(n_cells);

    std::vector<double> weight(n + 1, h);
    weight[0] = weight[n] = 0.5 * h;

    std::vector<double> power(n + 1, 1.0);
    for (std::size_t k = 1; k <= n; ++k) power[k] = power[k - 1] * growth;

    // Weighted 1-norm: max over columns j of sum_i w_i |R_ij| / w_j.
    double best = 0.0;
    double col0 = 0.0;
    for (std::size_t i = 1; i <= n; ++i) col0 += weight[i] * 0.5 * h * power[i];
    best = col0 / weight[0];
    for (std::size_t j = 1; j <= n; ++j) {
        double colsum = weight[j] * 0.5 * h;
        for (std::size_t i = j + 1; i <= n; ++i) colsum += weight[i] * h * power[i - j];
        best = std::max(best, colsum / weight[j]);
    }
    return {lambda, n_cells, best, "column-sum", 0, 0.0};
}

}  // namespace

ResolventEstimate resolvent_norm_estimate(std::complex<double> lambda, int n_cells, int p,
                                          int max_iterations) {
    if (n_cells < 16) throw std::invalid_argument("resolvent_norm_estimate: n_cells must be >= 16");
    if (n_cells > 4096) throw std::invalid_argument("resolvent_norm_estimate: n_cells above 4096 guard");
    if (max_iterations < 1) throw std::invalid_argument("resolvent_norm_estimate: empty iteration budget");
    if (p == 2) return norm_estimate_p2(lambda, n_cells, max_iterations);
    if (p == 1) return norm_estimate_p1(lambda, n_cells);
    throw std::invalid_argument("norm exponent p must be 1 or 2");
}

DerivativeRatioWitness derivative_ratio_witness(double K, int n_cells, int p) {
    if (!(K > 0)) throw std::invalid_argument("derivative_ratio_witness: K must be positive");
    const int k = static_cast<int>(std::ceil(K / M_PI)) + 1;
    if (n_cells < 8 * k) {
        throw GridTooCoarseError("n_cells = " + std::to_string(n_cells) +
                                 " cannot resolve sin(" + std::to_string(k) +
                                 " pi t); need at least " + std::to_string(8 * k));
    }
    GridFunction x = GridFunction::from_function(
        n_cells, p, [k](double t) { return std::complex<double>(std::sin(k * M_PI * t), 0.0); });
    const double ratio = differentiate(x).norm() / x.norm();
    return {std::move(x), k, ratio};
}

}  // namespace opspec
