#include "permascale/dynamics.hpp"

#include <cmath>

namespace permascale {

namespace {

double frac(double x) {
    double f = x - std::floor(x);
    // one compensated correction so results stay in [0,1)
    if (f >= 1.0) f -= 1.0;
    if (f < 0.0) f += 1.0;
    return f;
}

} // namespace

IntervalMap IntervalMap::rotation(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("rotation angle must be in (0,1)");
    IntervalMap m;
    m.kind_ = Kind::Rotation;
    m.alpha_ = alpha;
    return m;
}

IntervalMap IntervalMap::doubling() {
    IntervalMap m;
    m.kind_ = Kind::Doubling;
    return m;
}

IntervalMap IntervalMap::cyclic(std::size_t k) {
    if (k == 0) throw DomainError("cyclic map requires k >= 1");
    IntervalMap m;
    m.kind_ = Kind::Cyclic;
    m.k_ = k;
    return m;
}

void IntervalMap::check_domain(double x) const {
    if (!(x >= 0.0 && x < 1.0)) throw DomainError("point outside [0,1)");
    if (kind_ == Kind::Cyclic) {
        double idx = x * static_cast<double>(k_);
        if (idx != std::floor(idx)) throw DomainError("point not on the cyclic grid");
    }
}

double IntervalMap::step(double x) const {
    switch (kind_) {
        case Kind::Rotation: return frac(x + alpha_);
        case Kind::Doubling: return frac(2.0 * x);
        case Kind::Cyclic: {
            std::size_t i = static_cast<std::size_t>(std::llround(x * static_cast<double>(k_)));
            return static_cast<double>((i + 1) % k_) / static_cast<double>(k_);
        }
    }
    return x;
}

double IntervalMap::iterate(double x0, std::size_t i) const {
    switch (kind_) {
        case Kind::Rotation: return frac(std::fma(static_cast<double>(i), alpha_, x0));
        case Kind::Cyclic: {
            std::size_t p = static_cast<std::size_t>(std::llround(x0 * static_cast<double>(k_)));
            return static_cast<double>((p + i) % k_) / static_cast<double>(k_);
        }
        case Kind::Doubling: {
            double x = x0;
            for (std::size_t s = 0; s < i; ++s) x = step(x);
            return x;
        }
    }
    return x0;
}

std::vector<double> orbit(const IntervalMap& map, double x0, std::size_t n) {
    map.check_domain(x0);
    std::vector<double> out;
    out.reserve(n);
    if (map.kind() == IntervalMap::Kind::Doubling) {
        double x = x0;
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(x);
            x = map.step(x);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) out.push_back(map.iterate(x0, i));
    }
    return out;
}

NonnegMatrix dynamical_matrix(const std::function<double(double, double)>& f,
                              const IntervalMap& t, const IntervalMap& s, double x, double y,
                              std::size_t n) {
    if (n < 1) throw DomainError("dynamical_matrix requires n >= 1");
    auto xs = orbit(t, x, n);
    auto ys = orbit(s, y, n);
    NonnegMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a.set(i, j, f(xs[j], ys[i]));
    return a;
}

double birkhoff_average(const IntervalMap& map, const std::function<double(double)>& phi,
                        double x, std::size_t n) {
    if (n < 1) throw DomainError("birkhoff_average requires n >= 1");
    auto xs = orbit(map, x, n);
    double acc = 0.0, comp = 0.0;
    for (double p : xs) {
        double v = phi(p);
        double t = acc + v;
        comp += std::abs(acc) >= std::abs(v) ? (acc - t) + v : (v - t) + acc;
        acc = t;
    }
    return (acc + comp) / static_cast<double>(n);
}

} // namespace permascale
