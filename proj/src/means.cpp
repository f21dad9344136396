#include "permascale/means.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "permascale/funcspace.hpp"
#include "permascale/permanent.hpp"

namespace permascale {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

double log_binomial(std::size_t n, std::size_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

} // namespace

double ScaledCoefficients::log_value(std::size_t k) const {
    if (k > degree) throw IndexError("symmetric coefficient index out of range");
    if (mantissas[k] == 0.0) return kNegInf;
    return std::log(mantissas[k]) + exponent_logs[k];
}

double ScaledCoefficients::value(std::size_t k) const {
    if (k > degree) throw IndexError("symmetric coefficient index out of range");
    return mantissas[k] * std::exp(exponent_logs[k]);
}

ScaledCoefficients elementary_symmetric(std::span<const double> z) {
    const std::size_t n = z.size();
    std::vector<double> log_e(n + 1, kNegInf);
    log_e[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(z[i] >= 0.0)) throw NegativeEntry("elementary_symmetric requires z >= 0");
        if (z[i] == 0.0) continue;
        double lz = std::log(z[i]);
        std::size_t top = std::min(i + 1, n);
        for (std::size_t k = top; k >= 1; --k)
            log_e[k] = log_add_exp(log_e[k], lz + log_e[k - 1]);
    }
    ScaledCoefficients out;
    out.degree = n;
    out.mantissas.resize(n + 1);
    out.exponent_logs.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        if (log_e[k] == kNegInf) {
            out.mantissas[k] = 0.0;
            out.exponent_logs[k] = 0.0;
        } else {
            double e = std::ceil(log_e[k]);
            out.exponent_logs[k] = e;
            out.mantissas[k] = std::exp(log_e[k] - e);
        }
    }
    return out;
}

double symmetric_mean(std::span<const double> z, std::size_t k) {
    const std::size_t n = z.size();
    if (k < 1 || k > n) throw IndexError("symmetric_mean requires 1 <= k <= n");
    auto es = elementary_symmetric(z);
    double log_ek = es.log_value(k);
    if (log_ek == kNegInf) return 0.0;
    return std::exp((log_ek - log_binomial(n, k)) / static_cast<double>(k));
}

NonnegMatrix rep_matrix(std::span<const double> z, std::size_t k) {
    const std::size_t n = z.size();
    if (k < 1 || k > n) throw IndexError("rep_matrix requires 1 <= k <= n");
    NonnegMatrix r(n, n, 1.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) r.set(i, j, z[j]);
    return r;
}

double muirhead_mean(std::span<const double> z, std::span<const double> alpha,
                     std::size_t cap) {
    const std::size_t n = z.size();
    if (alpha.size() != n) throw DimensionError("muirhead_mean length mismatch");
    double alpha_sum = 0.0;
    for (double a : alpha) {
        if (!(a >= 0.0)) throw NegativeEntry("muirhead_mean requires alpha >= 0");
        alpha_sum += a;
    }
    if (alpha_sum == 0.0) throw AllZeroAlpha("muirhead_mean requires some alpha > 0");
    if (n > cap) throw CapExceeded("muirhead_mean exceeds the permanent cap");

    NonnegMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.set(i, j, std::pow(z[j], alpha[i]));
    double pm = permanental_mean(m, cap);
    if (pm == 0.0) return 0.0;
    return std::pow(pm, static_cast<double>(n) / alpha_sum);
}

HsLimit hs_limit(std::span<const double> g, std::span<const double> w, double c) {
    if (g.size() != w.size()) throw DimensionError("hs_limit length mismatch");
    if (!(c > 0.0 && c < 1.0)) throw DomainError("hs_limit requires 0 < c < 1");
    std::vector<double> ones(g.size(), 1.0);
    auto tb = two_block_scaling_mean(g, ones, w, c);
    // The limit is [sm(f)]^{1/c} for the two-block function (g on the c-block,
    // 1 elsewhere); expand directly from the closed form.
    double log_int = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) log_int += w[i] * std::log(g[i] + tb.r);
    double limit = std::exp(std::log(c) + ((1.0 - c) / c) * std::log((1.0 - c) / tb.r) +
                            log_int / c);
    return {limit, tb.r};
}

double muirhead_limit(std::span<const double> g, std::span<const double> mu,
                      std::span<const double> h, std::span<const double> nu, double tol) {
    if (g.size() != mu.size() || h.size() != nu.size())
        throw DimensionError("muirhead_limit length mismatch");
    double h_mean = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) {
        if (!(h[j] >= 0.0)) throw NegativeEntry("muirhead_limit requires h >= 0");
        h_mean += nu[j] * h[j];
    }
    if (!(h_mean > 0.0)) throw ZeroMeanExponent("muirhead_limit requires mean of h > 0");

    NonnegMatrix values(g.size(), h.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!(g[i] > 0.0)) throw NonPositiveEntry("muirhead_limit requires g > 0");
        for (std::size_t j = 0; j < h.size(); ++j) values.set(i, j, std::pow(g[i], h[j]));
    }
    GridFunction f(std::move(values), {mu.begin(), mu.end()}, {nu.begin(), nu.end()});
    double sm = functional_scaling_mean(f, tol);
    return std::pow(sm, 1.0 / h_mean);
}

} // namespace permascale
