#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "permascale/matrix.hpp"

namespace permascale {

/// Measure-preserving map of [0,1): rotation x -> frac(x + alpha),
/// doubling x -> frac(2x), or the cyclic shift on the grid {i/k}.
/// Doubling orbits lose accuracy after ~50 steps in floating point; long
/// experiments should use rotations.
class IntervalMap {
  public:
    enum class Kind { Rotation, Doubling, Cyclic };

    static IntervalMap rotation(double alpha);
    static IntervalMap doubling();
    static IntervalMap cyclic(std::size_t k);

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    std::size_t period() const { return k_; }

    /// Image of a single point.
    double step(double x) const;
    /// i-th iterate; rotations use a direct fused multiply-add so the orbit
    /// has no accumulating drift.
    double iterate(double x0, std::size_t i) const;

    void check_domain(double x) const;

  private:
    Kind kind_;
    double alpha_ = 0.0;
    std::size_t k_ = 0;
};

/// Default rotation angles: badly approximable irrationals keeping the two
/// factors independent.
inline constexpr double kDefaultAlphaT = 0.41421356237309515; // sqrt(2) - 1
inline constexpr double kDefaultAlphaS = 0.7320508075688772;  // sqrt(3) - 1

/// (x0, Tx0, ..., T^{n-1}x0).
std::vector<double> orbit(const IntervalMap& map, double x0, std::size_t n);

/// n x n matrix with entry (i,j) = f(T^j x, S^i y): rows advance S, columns
/// advance T.
NonnegMatrix dynamical_matrix(const std::function<double(double, double)>& f,
                              const IntervalMap& t, const IntervalMap& s, double x, double y,
                              std::size_t n);

/// (1/n) sum_{i<n} phi(T^i x).
double birkhoff_average(const IntervalMap& map, const std::function<double(double)>& phi,
                        double x, std::size_t n);

} // namespace permascale
