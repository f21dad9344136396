#include "permascale/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "permascale/pattern.hpp"

namespace permascale {

double LogPermanent::value() const { return is_zero ? 0.0 : std::exp(log_value); }

namespace {

struct NeumaierSum {
    long double sum = 0.0L;
    long double comp = 0.0L;

    void add(long double v) {
        long double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    long double total() const { return sum + comp; }
};

// Signed Ryser sum over subsets k in [k0, k1) of the scaled matrix b
// (row-major, n <= 26 columns). Gray-code subset updates: one row-sum
// column toggle per subset. Extended precision throughout: the signed sum
// cancels by many orders of magnitude near permutation patterns, and the
// rounding of each subset product is what limits the final accuracy.
NeumaierSum ryser_chunk(const double* b, unsigned n, std::uint64_t k0, std::uint64_t k1) {
    std::vector<long double> rowsum(n, 0.0L);
    std::uint64_t s = (k0 - 1) ^ ((k0 - 1) >> 1);
    for (unsigned j = 0; j < n; ++j)
        if (s & (1ULL << j))
            for (unsigned i = 0; i < n; ++i) rowsum[i] += b[i * n + j];
    int popcnt = std::popcount(s);

    NeumaierSum acc;
    for (std::uint64_t k = k0; k < k1; ++k) {
        unsigned j = static_cast<unsigned>(std::countr_zero(k));
        std::uint64_t bit = 1ULL << j;
        if (s & bit) {
            for (unsigned i = 0; i < n; ++i) rowsum[i] -= b[i * n + j];
            --popcnt;
        } else {
            for (unsigned i = 0; i < n; ++i) rowsum[i] += b[i * n + j];
            ++popcnt;
        }
        s ^= bit;
        long double prod = 1.0L;
        for (unsigned i = 0; i < n; ++i) prod *= rowsum[i];
        // sign of (-1)^(n - |S|)
        acc.add(((static_cast<int>(n) - popcnt) & 1) ? -prod : prod);
    }
    // return the uncollapsed pair: rounding each chunk to a single double
    // costs ~ulp of the chunk partial, which dominates after cancellation
    return acc;
}

} // namespace

LogPermanent permanent(const NonnegMatrix& a, std::size_t cap, unsigned threads) {
    if (!a.square()) throw DimensionError("permanent requires a square matrix");
    const std::size_t n = a.rows();
    if (n > cap) throw CapExceeded("matrix order exceeds the permanent cap");
    if (n == 0) return {false, 0.0};

    // Exact zero detection by matching, before any floating point runs.
    if (!max_bipartite_matching(SupportMask::of(a))) return {true, 0.0};

    const double c = a.max_entry();
    std::vector<double> b(n * n);
    for (std::size_t k = 0; k < b.size(); ++k) b[k] = a.data()[k] / c;

    const std::uint64_t total = (1ULL << n) - 1;
    // Chunk boundaries are fixed by n alone, so any thread count yields the
    // same per-chunk partials and the same reduction order.
    const std::uint64_t nchunks = n <= 12 ? 1 : 256;
    const std::uint64_t chunk_size = (total + nchunks - 1) / nchunks;
    std::vector<NeumaierSum> partial(nchunks);

    auto worker = [&](std::uint64_t first_chunk, std::uint64_t stride) {
        for (std::uint64_t ci = first_chunk; ci < nchunks; ci += stride) {
            std::uint64_t k0 = 1 + ci * chunk_size;
            std::uint64_t k1 = std::min<std::uint64_t>(k0 + chunk_size, total + 1);
            if (k0 <= total) partial[ci] = ryser_chunk(b.data(), static_cast<unsigned>(n), k0, k1);
        }
    };

    unsigned nthreads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(nchunks)));
    if (nthreads == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker, t, nthreads);
        for (auto& th : pool) th.join();
    }

    NeumaierSum acc;
    for (const NeumaierSum& p : partial) {
        acc.add(p.sum);
        acc.add(p.comp);
    }
    long double sum = acc.total();
    if (!(sum > 1e-300))
        throw InternalError("permanent evaluated below 1e-300 despite a positive diagonal");
    return {false, static_cast<double>(n) * std::log(c) + static_cast<double>(std::log(sum))};
}

LogPermanent permanent_naive(const NonnegMatrix& a) {
    if (!a.square()) throw DimensionError("permanent requires a square matrix");
    const std::size_t n = a.rows();
    if (n > kNaivePermanentCap) throw CapExceeded("permanent_naive is capped at n = 10");
    if (n == 0) return {false, 0.0};

    const double c = a.max_entry();
    if (c == 0.0) return {true, 0.0};
    std::vector<double> b(n * n);
    for (std::size_t k = 0; k < b.size(); ++k) b[k] = a.data()[k] / c;

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    NeumaierSum acc;
    do {
        double prod = 1.0;
        for (std::size_t i = 0; i < n; ++i) prod *= b[i * n + perm[i]];
        acc.add(prod);
    } while (std::next_permutation(perm.begin(), perm.end()));
    long double sum = acc.total();
    if (sum == 0.0) return {true, 0.0};
    return {false, static_cast<double>(n) * std::log(c) + static_cast<double>(std::log(sum))};
}

double permanental_mean(const NonnegMatrix& a, std::size_t cap, unsigned threads) {
    LogPermanent p = permanent(a, cap, threads);
    if (p.is_zero) return 0.0;
    const double n = static_cast<double>(a.rows());
    if (a.rows() == 0) return 0.0;
    return std::exp((p.log_value - std::lgamma(n + 1.0)) / n);
}

double permanent_minor(const NonnegMatrix& a, std::size_t i, std::size_t j) {
    if (!a.square()) throw DimensionError("permanent_minor requires a square matrix");
    if (a.rows() < 2) throw DimensionError("permanent_minor requires n >= 2");
    if (i >= a.rows() || j >= a.cols()) throw IndexError("minor index out of range");
    return permanent(a.minor_at(i, j), kDefaultPermanentCap).value();
}

} // namespace permascale
