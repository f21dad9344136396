#pragma once

#include <span>
#include <vector>

#include "permascale/matrix.hpp"

namespace permascale {

/// Elementary symmetric values E_0..E_n in scaled form,
/// E_k = mantissas[k] * exp(exponent_logs[k]) with mantissas in [0,1].
struct ScaledCoefficients {
    std::vector<double> mantissas;
    std::vector<double> exponent_logs;
    std::size_t degree = 0;

    /// log E_k, or -infinity when E_k = 0.
    double log_value(std::size_t k) const;
    double value(std::size_t k) const;
};

/// All E_0..E_n by the running recurrence e_k <- e_k + z_i e_{k-1},
/// accumulated in log space; O(n^2) and overflow-free at any magnitude.
ScaledCoefficients elementary_symmetric(std::span<const double> z);

/// k-th symmetric mean (E_k / C(n,k))^(1/k).
double symmetric_mean(std::span<const double> z, std::size_t k);

/// The n x n matrix with k rows equal to z stacked over n-k rows of ones;
/// bridges symmetric and permanental means via sym_k(z) = pmean(R_k)^(n/k).
NonnegMatrix rep_matrix(std::span<const double> z, std::size_t k);

/// Muirhead alpha-mean [pmean(M_alpha(z))]^(n / sum alpha) with
/// M_alpha(z)_{ij} = z_j^{alpha_i}; uses the permanent, so n <= cap.
double muirhead_mean(std::span<const double> z, std::span<const double> alpha,
                     std::size_t cap = 26);

struct HsLimit {
    double limit = 0.0;
    double r = 0.0;
};

/// Ergodic limit of sym_{round(cn)} along orbits of g: solves
/// sum_i w_i g_i/(g_i + r) = c and returns
/// c ((1-c)/r)^{(1-c)/c} exp((1/c) sum_i w_i log(g_i + r)).
HsLimit hs_limit(std::span<const double> g, std::span<const double> w, double c);

/// Functional Muirhead limit [sm(g^h)]^{1 / sum_j nu_j h_j} on the weighted
/// product grid f_ij = g_i^{h_j}.
double muirhead_limit(std::span<const double> g, std::span<const double> mu,
                      std::span<const double> h, std::span<const double> nu,
                      double tol = 1e-12);

} // namespace permascale
