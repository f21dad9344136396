#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "permascale/matrix.hpp"

namespace permascale {

/// Discretized positive function on a weighted product grid: values(i,j) is
/// f(x_i, y_j), mu/nu are row/column probability weights.
struct GridFunction {
    NonnegMatrix values;
    std::vector<double> mu;
    std::vector<double> nu;

    GridFunction() = default;
    GridFunction(NonnegMatrix values, std::vector<double> mu, std::vector<double> nu);

    std::size_t m() const { return values.rows(); }
    std::size_t n() const { return values.cols(); }

    /// Strict JSON schema {"mu": [...], "nu": [...], "values": [[...]]};
    /// weights are re-validated on load.
    static GridFunction from_json(const std::string& text);
    std::string to_json() const;
};

/// f = phi g psi with g doubly stochastic under the grid weights.
/// Gauge convention: gmean(psi, nu) = 1.
struct FunctionalSinkhorn {
    std::vector<double> phi;
    std::vector<double> psi;
    GridFunction g;
    std::size_t iterations = 0;
    double residual = 0.0;
    double kappa = 0.0; // tanh^2(delta/4), delta = 2 log(max f / min f)
};

struct FunctionalMaxIterExceeded : Error {
    FunctionalSinkhorn partial;
    FunctionalMaxIterExceeded(const std::string& what, FunctionalSinkhorn p)
        : Error(what), partial(std::move(p)) {}
};

struct TwoBlockResult {
    double smean = 0.0;
    double r = 0.0;
};

enum class Axis { Rows, Cols };

/// exp(sum_i w_i log v_i).
double geometric_mean(std::span<const double> v, std::span<const double> w);

/// Rows: integrate out y, giving a vector over i; Cols: integrate out x.
std::vector<double> conditional_expectation(const GridFunction& f, Axis axis);

/// Alternating normalization of the scaling rays until the doubly stochastic
/// residual drops below tol. Optional initial ray for the row factor.
FunctionalSinkhorn functional_sinkhorn(const GridFunction& f, double tol = 1e-12,
                                       std::size_t max_iter = 100000,
                                       std::span<const double> initial_phi = {});

/// gmean(phi, mu) * gmean(psi, nu) from the functional Sinkhorn factorization.
double functional_scaling_mean(const GridFunction& f, double tol = 1e-12);

/// Closed form for a function taking values f0(x) on a y-block of measure c
/// and f1(x) on the complement: solves sum_i mu_i f0_i/(f0_i + r f1_i) = c by
/// bracketed bisection, then assembles the scaling mean.
TwoBlockResult two_block_scaling_mean(std::span<const double> f0, std::span<const double> f1,
                                      std::span<const double> mu, double c,
                                      double tol = 1e-13);

/// Per-cell averages of f over a uniform k x k grid on [0,1]^2 by fixed-order
/// q x q midpoint quadrature. Every sample must stay in [1/lambda, lambda].
GridFunction discretize(const std::function<double(double, double)>& f, double lambda,
                        std::size_t k, std::size_t q = 8);

} // namespace permascale
