#include "permascale/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "permascale/pattern.hpp"

namespace permascale {

double gmean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        if (!(x > 0.0)) throw NonPositiveEntry("gmean requires positive entries");
        s += std::log(x);
    }
    return std::exp(s / static_cast<double>(v.size()));
}

namespace {

double ds_residual(const NonnegMatrix& s) {
    const std::size_t n = s.rows();
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < n; ++j) r += s(i, j);
        res = std::max(res, std::abs(r - 1.0));
    }
    for (std::size_t j = 0; j < n; ++j) {
        double c = 0.0;
        for (std::size_t i = 0; i < n; ++i) c += s(i, j);
        res = std::max(res, std::abs(c - 1.0));
    }
    return res;
}

SinkhornFactorization sinkhorn_unchecked(const NonnegMatrix& a, double tol,
                                         std::size_t max_iter) {
    const std::size_t n = a.rows();
    SinkhornFactorization f;
    f.d.assign(n, 1.0);
    f.e.assign(n, 1.0);

    const double mn = a.min_entry();
    if (mn > 0.0) {
        double delta = 2.0 * std::log(a.max_entry() / mn);
        double t = std::tanh(delta / 4.0);
        f.certificate = t * t;
    }

    NonnegMatrix s = a;
    double res = ds_residual(s);
    std::size_t it = 0;
    while (res >= tol && it < max_iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0;
            for (std::size_t j = 0; j < n; ++j) r += s(i, j);
            f.d[i] *= r;
            for (std::size_t j = 0; j < n; ++j) s.set(i, j, s(i, j) / r);
        }
        for (std::size_t j = 0; j < n; ++j) {
            double c = 0.0;
            for (std::size_t i = 0; i < n; ++i) c += s(i, j);
            f.e[j] *= c;
            for (std::size_t i = 0; i < n; ++i) s.set(i, j, s(i, j) / c);
        }
        ++it;
        res = ds_residual(s);
    }
    f.s = std::move(s);
    f.iterations = it;
    f.residual = res;

    // gauge: gmean(e) = 1
    double g = gmean(f.e);
    for (double& v : f.e) v /= g;
    for (double& v : f.d) v *= g;

    if (res >= tol) throw MaxIterExceeded("sinkhorn did not reach tol within max_iter", f);
    return f;
}

} // namespace

SinkhornFactorization sinkhorn(const NonnegMatrix& a, double tol, std::size_t max_iter) {
    if (!a.square()) throw DimensionError("sinkhorn requires a square matrix");
    if (!(tol > 0.0)) throw DomainError("sinkhorn tol must be positive");
    if (a.rows() == 0) throw DimensionError("sinkhorn requires n >= 1");
    auto report = decompose_fully_indecomposable(a);
    if (!report.in_pn || !report.has_positive_diagonal)
        throw NotInPn("matrix does not have the zero pattern of a doubly stochastic matrix");
    return sinkhorn_unchecked(a, tol, max_iter);
}

double scaling_mean(const NonnegMatrix& a, double tol, std::size_t max_iter) {
    if (!a.square()) throw DimensionError("scaling_mean requires a square matrix");
    const std::size_t n = a.rows();
    if (n == 0) throw DimensionError("scaling_mean requires n >= 1");

    auto [pi, report] = pi_projection(a);
    if (!report.has_positive_diagonal) return 0.0;

    // Pi(A) is permutationally equivalent to a direct sum of its fully
    // indecomposable blocks; Sinkhorn each block and pool the log scalings.
    double log_sum = 0.0;
    for (const auto& block : report.blocks) {
        const std::size_t m = block.rows.size();
        NonnegMatrix sub(m, m);
        for (std::size_t bi = 0; bi < m; ++bi)
            for (std::size_t bj = 0; bj < m; ++bj)
                sub.set(bi, bj, pi(block.rows[bi], block.cols[bj]));
        auto f = sinkhorn_unchecked(sub, tol, max_iter);
        for (double v : f.d) log_sum += std::log(v);
        for (double v : f.e) log_sum += std::log(v);
    }
    return std::exp(log_sum / static_cast<double>(n)) / static_cast<double>(n);
}

double scaling_mean_2x2(double a, double b, double c, double d) {
    if (!(a >= 0.0 && b >= 0.0 && c >= 0.0 && d >= 0.0))
        throw DomainError("scaling_mean_2x2 requires nonnegative entries");
    return (std::sqrt(a * d) + std::sqrt(b * c)) / 2.0;
}

double hilbert_distance(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw DimensionError("hilbert_distance length mismatch");
    if (u.empty()) throw DimensionError("hilbert_distance requires nonempty vectors");
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!(u[i] > 0.0) || !(v[i] > 0.0))
            throw NonPositiveEntry("hilbert_distance requires positive entries");
        double r = v[i] / u[i];
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return std::log(hi / lo);
}

NonnegMatrix kron(const NonnegMatrix& a, const NonnegMatrix& b) {
    NonnegMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            double aij = a(i, j);
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < b.cols(); ++c)
                    k.set(i * b.rows() + r, j * b.cols() + c, aij * b(r, c));
        }
    return k;
}

double spectral_radius(const NonnegMatrix& a, double tol, std::size_t max_iter) {
    if (!a.square()) throw DimensionError("spectral_radius requires a square matrix");
    const std::size_t n = a.rows();
    std::vector<double> v(n, 1.0), w(n);
    double lambda = 0.0;
    for (std::size_t it = 0; it < max_iter; ++it) {
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += a(i, j) * v[j];
            w[i] = s;
            norm += s;
        }
        if (norm == 0.0) return 0.0;
        for (std::size_t i = 0; i < n; ++i) w[i] /= norm;
        if (it > 0 && std::abs(norm - lambda) <= tol * std::max(1.0, std::abs(norm))) {
            return norm;
        }
        lambda = norm;
        std::swap(v, w);
    }
    return lambda;
}

std::pair<double, double> spectral_radius_cross_check(const NonnegMatrix& a, double tol) {
    if (!a.square()) throw DimensionError("cross check requires a square matrix");
    if (!(a.min_entry() > 0.0))
        throw NonPositiveEntry("cross check requires a strictly positive matrix");
    const std::size_t n = a.rows();

    double lhs = scaling_mean(a, tol);
    auto f = sinkhorn(a, tol);
    // optimal Delta = E^-1 D^-1
    std::vector<double> delta(n);
    for (std::size_t i = 0; i < n; ++i) delta[i] = 1.0 / (f.e[i] * f.d[i]);
    NonnegMatrix da(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) da.set(i, j, delta[i] * a(i, j));
    double rho = spectral_radius(da, tol);
    double rhs = rho / (static_cast<double>(n) * gmean(delta));
    return {lhs, rhs};
}

} // namespace permascale
