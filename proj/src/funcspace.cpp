#include "permascale/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace permascale {

namespace {

void check_probability_vector(std::span<const double> w, const char* name) {
    double sum = 0.0;
    for (double v : w) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError(std::string(name) + " weights must be positive");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw DomainError(std::string(name) + " weights must sum to 1");
}

} // namespace

GridFunction::GridFunction(NonnegMatrix v, std::vector<double> mu_in, std::vector<double> nu_in)
    : values(std::move(v)), mu(std::move(mu_in)), nu(std::move(nu_in)) {
    if (mu.size() != values.rows() || nu.size() != values.cols())
        throw DimensionError("weight lengths must match the value grid");
    check_probability_vector(mu, "row");
    check_probability_vector(nu, "column");
    if (!(values.min_entry() > 0.0))
        throw NonPositiveEntry("grid function values must be strictly positive");
}

GridFunction GridFunction::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid grid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("mu") || !j.contains("nu") || !j.contains("values") ||
        j.size() != 3)
        throw ParseError("grid JSON must be exactly {\"mu\", \"nu\", \"values\"}");
    std::vector<double> mu, nu;
    std::vector<std::vector<double>> rows;
    try {
        mu = j.at("mu").get<std::vector<double>>();
        nu = j.at("nu").get<std::vector<double>>();
        rows = j.at("values").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid grid JSON: ") + e.what());
    }
    if (rows.size() != mu.size()) throw ParseError("values row count must match mu length");
    std::vector<double> data;
    for (const auto& r : rows) {
        if (r.size() != nu.size()) throw ParseError("values column count must match nu length");
        data.insert(data.end(), r.begin(), r.end());
    }
    // weight and positivity violations keep their own error types
    NonnegMatrix values(mu.size(), nu.size(), std::move(data));
    return GridFunction(std::move(values), std::move(mu), std::move(nu));
}

std::string GridFunction::to_json() const {
    nlohmann::json j;
    j["mu"] = mu;
    j["nu"] = nu;
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t jj = 0; jj < n(); ++jj) row.push_back(values(i, jj));
        rows.push_back(std::move(row));
    }
    j["values"] = std::move(rows);
    return j.dump();
}

double geometric_mean(std::span<const double> v, std::span<const double> w) {
    if (v.size() != w.size()) throw DimensionError("geometric_mean length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0)) throw NonPositiveEntry("geometric_mean requires positive entries");
        s += w[i] * std::log(v[i]);
    }
    return std::exp(s);
}

std::vector<double> conditional_expectation(const GridFunction& f, Axis axis) {
    if (axis == Axis::Rows) {
        std::vector<double> out(f.m(), 0.0);
        for (std::size_t i = 0; i < f.m(); ++i)
            for (std::size_t j = 0; j < f.n(); ++j) out[i] += f.nu[j] * f.values(i, j);
        return out;
    }
    std::vector<double> out(f.n(), 0.0);
    for (std::size_t j = 0; j < f.n(); ++j)
        for (std::size_t i = 0; i < f.m(); ++i) out[j] += f.mu[i] * f.values(i, j);
    return out;
}

FunctionalSinkhorn functional_sinkhorn(const GridFunction& f, double tol, std::size_t max_iter,
                                       std::span<const double> initial_phi) {
    const std::size_t m = f.m(), n = f.n();
    if (!initial_phi.empty() && initial_phi.size() != m)
        throw DimensionError("initial ray length mismatch");

    // Work on the reciprocal rays: g = u f v with u = 1/phi, v = 1/psi.
    std::vector<double> u(m, 1.0), v(n, 1.0);
    if (!initial_phi.empty())
        for (std::size_t i = 0; i < m; ++i) {
            if (!(initial_phi[i] > 0.0))
                throw NonPositiveEntry("initial ray must be positive");
            u[i] = 1.0 / initial_phi[i];
        }

    double delta = 2.0 * std::log(f.values.max_entry() / f.values.min_entry());
    double th = std::tanh(delta / 4.0);
    const double kappa = th * th;

    auto residual_of = [&]() {
        double res = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double r = 0.0;
            for (std::size_t j = 0; j < n; ++j) r += f.nu[j] * u[i] * f.values(i, j) * v[j];
            res = std::max(res, std::abs(r - 1.0));
        }
        for (std::size_t j = 0; j < n; ++j) {
            double c = 0.0;
            for (std::size_t i = 0; i < m; ++i) c += f.mu[i] * u[i] * f.values(i, j) * v[j];
            res = std::max(res, std::abs(c - 1.0));
        }
        return res;
    };

    std::size_t it = 0;
    double res = residual_of();
    while (res >= tol && it < max_iter) {
        for (std::size_t j = 0; j < n; ++j) {
            double c = 0.0;
            for (std::size_t i = 0; i < m; ++i) c += f.mu[i] * u[i] * f.values(i, j);
            v[j] = 1.0 / c;
        }
        for (std::size_t i = 0; i < m; ++i) {
            double r = 0.0;
            for (std::size_t j = 0; j < n; ++j) r += f.nu[j] * f.values(i, j) * v[j];
            u[i] = 1.0 / r;
        }
        ++it;
        res = residual_of();
    }

    FunctionalSinkhorn out;
    out.phi.resize(m);
    out.psi.resize(n);
    for (std::size_t i = 0; i < m; ++i) out.phi[i] = 1.0 / u[i];
    for (std::size_t j = 0; j < n; ++j) out.psi[j] = 1.0 / v[j];
    // gauge: gmean(psi, nu) = 1
    double g = geometric_mean(out.psi, f.nu);
    for (double& x : out.psi) x /= g;
    for (double& x : out.phi) x *= g;

    NonnegMatrix core(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            core.set(i, j, f.values(i, j) / (out.phi[i] * out.psi[j]));
    out.g = GridFunction(std::move(core), f.mu, f.nu);
    out.iterations = it;
    out.residual = res;
    out.kappa = kappa;
    if (res >= tol)
        throw FunctionalMaxIterExceeded("functional sinkhorn did not reach tol", out);
    return out;
}

double functional_scaling_mean(const GridFunction& f, double tol) {
    auto s = functional_sinkhorn(f, tol);
    return geometric_mean(s.phi, f.mu) * geometric_mean(s.psi, f.nu);
}

TwoBlockResult two_block_scaling_mean(std::span<const double> f0, std::span<const double> f1,
                                      std::span<const double> mu, double c, double tol) {
    if (f0.size() != f1.size() || f0.size() != mu.size())
        throw DimensionError("two_block length mismatch");
    if (!(c > 0.0 && c < 1.0)) throw DomainError("two_block requires 0 < c < 1");
    for (std::size_t i = 0; i < f0.size(); ++i)
        if (!(f0[i] > 0.0) || !(f1[i] > 0.0))
            throw NonPositiveEntry("two_block requires positive values");

    // lhs(r) = sum_i mu_i f0_i / (f0_i + r f1_i), strictly decreasing in r,
    // from 1 at r -> 0+ to 0 at r -> infinity.
    auto lhs = [&](double r) {
        double s = 0.0;
        for (std::size_t i = 0; i < f0.size(); ++i) s += mu[i] * f0[i] / (f0[i] + r * f1[i]);
        return s;
    };

    double lo = 1.0, hi = 1.0;
    int guard = 0;
    while (lhs(hi) > c) {
        hi *= 2.0;
        if (++guard > 4000) throw BracketFailure("two_block bracket failed to grow");
    }
    while (lhs(lo) < c) {
        lo /= 2.0;
        if (++guard > 4000) throw BracketFailure("two_block bracket failed to shrink");
    }
    while (hi - lo > tol * hi) {
        double mid = 0.5 * (lo + hi);
        if (lhs(mid) > c)
            lo = mid;
        else
            hi = mid;
    }
    double r = 0.5 * (lo + hi);
    if (!std::isfinite(r)) throw BracketFailure("two_block root is not finite");

    double log_int = 0.0;
    for (std::size_t i = 0; i < f0.size(); ++i) log_int += mu[i] * std::log(f0[i] + r * f1[i]);
    double smean = std::exp(c * std::log(c) + (1.0 - c) * std::log((1.0 - c) / r) + log_int);
    return {smean, r};
}

GridFunction discretize(const std::function<double(double, double)>& f, double lambda,
                        std::size_t k, std::size_t q) {
    if (k < 1 || q < 1) throw DomainError("discretize requires k >= 1 and q >= 1");
    if (!(lambda >= 1.0)) throw DomainError("discretize requires lambda >= 1");
    NonnegMatrix values(k, k);
    const double cell = 1.0 / static_cast<double>(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double acc = 0.0;
            for (std::size_t a = 0; a < q; ++a)
                for (std::size_t b = 0; b < q; ++b) {
                    double x = (static_cast<double>(i) + (a + 0.5) / q) * cell;
                    double y = (static_cast<double>(j) + (b + 0.5) / q) * cell;
                    double s = f(x, y);
                    if (!(s >= 1.0 / lambda) || !(s <= lambda))
                        throw BoundsViolated("sample outside [1/lambda, lambda]");
                    acc += s;
                }
            values.set(i, j, acc / static_cast<double>(q * q));
        }
    }
    std::vector<double> w(k, cell);
    return GridFunction(std::move(values), w, w);
}

} // namespace permascale
