#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "opspec/errors.hpp"

namespace opspec {

// Sampled function on the uniform grid t_i = i/n_cells over [0,1], carrying
// the L_p norm convention (p in {1,2}, composite trapezoid quadrature).
class GridFunction {
  public:
    GridFunction(int n_cells, int p);
    static GridFunction from_function(int n_cells, int p,
                                      const std::function<std::complex<double>(double)>& f);

    int cells() const { return static_cast<int>(samples_.size()) - 1; }
    int p() const { return p_; }
    double h() const { return 1.0 / cells(); }
    double t(int i) const { return static_cast<double>(i) / cells(); }

    std::complex<double>& operator[](int i) { return samples_[static_cast<std::size_t>(i)]; }
    const std::complex<double>& operator[](int i) const {
        return samples_[static_cast<std::size_t>(i)];
    }
    const std::vector<std::complex<double>>& samples() const { return samples_; }

    double norm() const;  // trapezoid L_p norm

  private:
    std::vector<std::complex<double>> samples_;
    int p_;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(std::complex<double> s, const GridFunction& a);

// Second-order difference derivative: central in the interior, one-sided at
// the endpoints. Requires the domain condition x(0) = 0 (DomainViolationError
// beyond 1e-12).
GridFunction differentiate(const GridFunction& x);

// u(t) = integral_0^t exp(lambda (t-s)) y(s) ds via the one-step recurrence
//   u_{i+1} = e^{lambda h} u_i + (h/2)(e^{lambda h} y_i + y_{i+1}),
// defined for every lambda; u(0) = 0 exactly. Throws OverflowGuardError when
// exp(lambda h) is not representable.
GridFunction resolvent_apply(std::complex<double> lambda, const GridFunction& y);

// Max-norm of (d/dt - lambda) applied to resolvent_apply(lambda, y) minus y
// over interior nodes; O(h^2) for smooth y.
double verify_resolvent(std::complex<double> lambda, const GridFunction& y);

struct ResolventEstimate {
    std::complex<double> lambda;
    int n_cells;
    double norm_estimate;
    std::string method;  // "power-iteration" (p=2) or "column-sum" (p=1)
    int iterations;
    double residual_tolerance;
};

// Operator norm of the discrete resolvent in the grid L_p norm. Finite for
// every finite lambda. p=2 runs power iteration on the normal matrix of the
// weighted kernel matrix (relative tolerance 1e-8) without materializing it,
// throwing NonConvergenceError past max_iterations; p=1 is the exact weighted
// column-sum maximum.
ResolventEstimate resolvent_norm_estimate(std::complex<double> lambda, int n_cells, int p,
                                          int max_iterations = 20000);

struct DerivativeRatioWitness {
    GridFunction vector;  // sin(k pi t)
    int frequency;        // k
    double ratio;         // ||D x|| / ||x|| ~ k pi
};

// Rayleigh-ratio witness that differentiation is unbounded: x(t) = sin(k pi t)
// with k = ceil(K/pi) + 1. GridTooCoarseError when n_cells < 8k.
DerivativeRatioWitness derivative_ratio_witness(double K, int n_cells, int p);

}  // namespace opspec
