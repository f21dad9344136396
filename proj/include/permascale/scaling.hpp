#pragma once

#include <optional>
#include <span>
#include <vector>

#include "permascale/matrix.hpp"

namespace permascale {

/// A = D S E with S doubly stochastic. Gauge convention: gmean(e) = 1.
struct SinkhornFactorization {
    std::vector<double> d; // diagonal of D
    std::vector<double> e; // diagonal of E
    NonnegMatrix s;        // doubly stochastic core
    std::size_t iterations = 0;
    double residual = 0.0; // max |row/col sum of s - 1|
    // A-priori Hilbert-metric contraction factor per full cycle,
    // kappa = tanh^2(delta/4) with delta = 2 log(max/min); present iff the
    // input was entrywise positive.
    std::optional<double> certificate;
};

struct MaxIterExceeded : Error {
    SinkhornFactorization partial;
    MaxIterExceeded(const std::string& what, SinkhornFactorization p)
        : Error(what), partial(std::move(p)) {}
};

inline constexpr double kDefaultSinkhornTol = 1e-12;
inline constexpr std::size_t kDefaultSinkhornMaxIter = 100000;

/// Alternating row/column normalization until the doubly stochastic residual
/// drops below tol. Requires A in P_n (every positive entry on a positive
/// diagonal); apply pi_projection and decompose first otherwise.
SinkhornFactorization sinkhorn(const NonnegMatrix& a, double tol = kDefaultSinkhornTol,
                               std::size_t max_iter = kDefaultSinkhornMaxIter);

/// Scaling mean sm(A) = (1/n) gmean(D) gmean(E), assembled over the fully
/// indecomposable blocks of Pi(A); 0 when per A = 0.
double scaling_mean(const NonnegMatrix& a, double tol = kDefaultSinkhornTol,
                    std::size_t max_iter = kDefaultSinkhornMaxIter);

/// Closed form for 2x2 matrices: (sqrt(ad) + sqrt(bc)) / 2.
double scaling_mean_2x2(double a, double b, double c, double d);

/// Hilbert projective distance log(max_i(v_i/u_i) / min_i(v_i/u_i)).
double hilbert_distance(std::span<const double> u, std::span<const double> v);

/// Kronecker product (a_ij * B).
NonnegMatrix kron(const NonnegMatrix& a, const NonnegMatrix& b);

/// lhs = sm(A); rhs = rho(Delta A) / (n gmean(Delta)) at the optimal
/// Delta = E^-1 D^-1 from the Sinkhorn factorization, rho by power iteration.
/// Requires strictly positive A.
std::pair<double, double> spectral_radius_cross_check(const NonnegMatrix& a,
                                                      double tol = 1e-12);

/// Perron root of a nonnegative square matrix by power iteration.
double spectral_radius(const NonnegMatrix& a, double tol = 1e-12,
                       std::size_t max_iter = kDefaultSinkhornMaxIter);

/// exp(mean of logs); helper shared across modules (unweighted version).
double gmean(std::span<const double> v);

} // namespace permascale
