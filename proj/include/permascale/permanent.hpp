#pragma once

#include <cstddef>

#include "permascale/matrix.hpp"

namespace permascale {

/// Natural log of a permanent, with an explicit zero flag so that exact
/// zero-pattern results never degrade to tiny floats.
struct LogPermanent {
    bool is_zero = false;
    double log_value = 0.0; // valid only when !is_zero

    double value() const;
};

inline constexpr std::size_t kDefaultPermanentCap = 26;
inline constexpr std::size_t kNaivePermanentCap = 10;

/// Permanent by Gray-code Ryser inclusion-exclusion, pre-scaled by the
/// maximum entry so double precision stays safe up to the cap. The subset
/// range is split into fixed chunks with per-chunk compensated accumulation;
/// the chunk reduction order is fixed, so the result is identical for any
/// thread count.
LogPermanent permanent(const NonnegMatrix& a, std::size_t cap = kDefaultPermanentCap,
                       unsigned threads = 1);

/// Direct enumeration over all n! permutations (n <= 10); the oracle for
/// permanent().
LogPermanent permanent_naive(const NonnegMatrix& a);

/// (per A / n!)^(1/n), evaluated in log space; 0 when per A = 0.
double permanental_mean(const NonnegMatrix& a, std::size_t cap = kDefaultPermanentCap,
                        unsigned threads = 1);

/// per A(i|j): the permanent of the minor with row i and column j deleted.
/// Together with the Laplace expansion per A = sum_i a_ij per A(i|j) this
/// gives the partial derivatives of the permanent.
double permanent_minor(const NonnegMatrix& a, std::size_t i, std::size_t j);

} // namespace permascale
