#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "permascale/errors.hpp"
#include "permascale/matrix.hpp"
#include "permascale/pattern.hpp"
#include "permascale/permanent.hpp"
#include "permascale/rng.hpp"

using namespace permascale;

namespace {

NonnegMatrix random_matrix(Rng& rng, size_t n, double zero_prob = 0.0) {
    NonnegMatrix a(n, n, 0.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            a.set(i, j, rng.uniform() < zero_prob ? 0.0 : rng.uniform());
    return a;
}

NonnegMatrix random_lambda_bounded(Rng& rng, size_t n, double lambda) {
    NonnegMatrix a(n, n, 0.0);
    double ll = std::log(lambda);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a.set(i, j, std::exp(rng.uniform(-ll, ll)));
    return a;
}

NonnegMatrix random_permutation_matrix(Rng& rng, size_t n) {
    std::vector<size_t> p(n);
    for (size_t i = 0; i < n; ++i) p[i] = i;
    for (size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.next_u64() % i]);
    NonnegMatrix m(n, n, 0.0);
    for (size_t i = 0; i < n; ++i) m.set(i, p[i], 1.0);
    return m;
}

NonnegMatrix multiply(const NonnegMatrix& a, const NonnegMatrix& b) {
    NonnegMatrix c(a.rows(), b.cols(), 0.0);
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k)
            for (size_t j = 0; j < b.cols(); ++j)
                c.set(i, j, c(i, j) + a(i, k) * b(k, j));
    return c;
}

} // namespace

TEST_CASE("permanent: worked examples") {
    CHECK(permanent({{1, 2}, {3, 4}}).value() == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(permanent(NonnegMatrix(3, 3, 1.0)).value() == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(permanent(NonnegMatrix(3, 3, 1.0 / 3.0)).value() ==
          doctest::Approx(6.0 / 27.0).epsilon(1e-14));
    CHECK(permanent({{1, 1, 0}, {1, 1, 0}, {1, 1, 0}}).is_zero);
    CHECK(permanent(NonnegMatrix(2, 2, 0.0)).is_zero);
}

TEST_CASE("permanent: error paths") {
    CHECK_THROWS_AS(permanent(NonnegMatrix(2, 3, 1.0)), DimensionError);
    CHECK_THROWS_AS(permanent(NonnegMatrix(5, 5, 1.0), /*cap=*/4), CapExceeded);
    CHECK_THROWS_AS(permanent_naive(NonnegMatrix(11, 11, 1.0)), CapExceeded);
}

TEST_CASE("permanent_naive: worked examples") {
    CHECK(permanent_naive({{1, 2}, {3, 4}}).value() == doctest::Approx(10.0).epsilon(1e-14));
    NonnegMatrix id4(4, 4, 0.0);
    for (size_t i = 0; i < 4; ++i) id4.set(i, i, 1.0);
    CHECK(permanent_naive(id4).value() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("permanent: oracle equivalence on random matrices") {
    Rng rng(101);
    for (size_t n = 2; n <= 8; ++n) {
        for (int t = 0; t < 60; ++t) {
            auto a = random_matrix(rng, n, t % 4 == 0 ? 0.3 : 0.0);
            auto fast = permanent(a);
            auto slow = permanent_naive(a);
            REQUIRE(fast.is_zero == slow.is_zero);
            if (!fast.is_zero)
                CHECK(fast.value() == doctest::Approx(slow.value()).epsilon(1e-12));
        }
    }
}

TEST_CASE("permanent: parallel equals serial bit for bit") {
    Rng rng(202);
    for (size_t n : {6, 11, 13, 14}) {
        auto a = random_matrix(rng, n);
        auto serial = permanent(a, kDefaultPermanentCap, 1);
        for (unsigned threads : {2u, 3u, 7u}) {
            auto parallel = permanent(a, kDefaultPermanentCap, threads);
            REQUIRE(!parallel.is_zero);
            CHECK(parallel.log_value == serial.log_value); // exact
        }
    }
}

TEST_CASE("permanental_mean: worked examples") {
    CHECK(permanental_mean(NonnegMatrix(5, 5, 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(permanental_mean(NonnegMatrix(3, 3, 1.0 / 3.0)) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    NonnegMatrix id2(2, 2, 0.0);
    id2.set(0, 0, 1.0);
    id2.set(1, 1, 1.0);
    CHECK(permanental_mean(id2) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(permanental_mean({{1, 1}, {0, 0}}) == 0.0);
}

TEST_CASE("permanent_minor: Laplace expansion") {
    CHECK(permanent_minor({{1, 2}, {3, 4}}, 0, 0) == doctest::Approx(4.0).epsilon(1e-14));
    NonnegMatrix id3(3, 3, 0.0);
    for (size_t i = 0; i < 3; ++i) id3.set(i, i, 1.0);
    CHECK(permanent_minor(id3, 0, 1) == 0.0);
    CHECK_THROWS_AS(permanent_minor(id3, 3, 0), IndexError);

    Rng rng(303);
    for (int t = 0; t < 10; ++t) {
        auto a = random_lambda_bounded(rng, 5, 3.0);
        double per = permanent(a).value();
        for (size_t j = 0; j < 5; ++j) {
            double s = 0.0;
            for (size_t i = 0; i < 5; ++i) s += a(i, j) * permanent_minor(a, i, j);
            CHECK(s == doctest::Approx(per).epsilon(1e-12));
        }
    }
}

TEST_CASE("pmean homogeneity under diagonal scaling") {
    Rng rng(404);
    for (int t = 0; t < 20; ++t) {
        size_t n = 3 + t % 4;
        auto a = random_lambda_bounded(rng, n, 2.0);
        std::vector<double> d(n);
        double logg = 0.0;
        NonnegMatrix da = a;
        for (size_t i = 0; i < n; ++i) {
            d[i] = std::exp(rng.uniform(-1.0, 1.0));
            logg += std::log(d[i]) / static_cast<double>(n);
            for (size_t j = 0; j < n; ++j) da.set(i, j, d[i] * a(i, j));
        }
        CHECK(permanental_mean(da) ==
              doctest::Approx(std::exp(logg) * permanental_mean(a)).epsilon(1e-12));
    }
}

TEST_CASE("pmean symmetry under permutations and transpose") {
    Rng rng(505);
    for (int t = 0; t < 20; ++t) {
        size_t n = 3 + t % 4;
        auto a = random_matrix(rng, n);
        auto p = random_permutation_matrix(rng, n);
        auto q = random_permutation_matrix(rng, n);
        double pm = permanental_mean(a);
        CHECK(permanental_mean(multiply(multiply(p, a), q)) ==
              doctest::Approx(pm).epsilon(1e-12));
        CHECK(permanental_mean(a.transpose()) == doctest::Approx(pm).epsilon(1e-12));
    }
}

TEST_CASE("pmean internality for positive matrices") {
    Rng rng(606);
    for (int t = 0; t < 30; ++t) {
        size_t n = 2 + t % 6;
        auto a = random_lambda_bounded(rng, n, 5.0);
        double pm = permanental_mean(a);
        CHECK(pm >= a.min_entry() - 1e-12);
        CHECK(pm <= a.max_entry() + 1e-12);
    }
}

TEST_CASE("per = 0 iff a Frobenius-Koenig witness exists (exhaustive 0/1, n <= 5)") {
    for (size_t n = 1; n <= 5; ++n) {
        const size_t cells = n * n;
        // subsample the larger grids deterministically to keep runtime modest
        const uint64_t stride = n <= 4 ? 1 : 41; // 41 is coprime to 2^25
        for (uint64_t bits = 0; bits < (uint64_t(1) << cells); bits += stride) {
            NonnegMatrix a(n, n, 0.0);
            for (size_t c = 0; c < cells; ++c)
                if (bits >> c & 1) a.set(c / n, c % n, 1.0);
            auto witness = frobenius_konig_witness(a);
            bool zero = permanent(a).is_zero;
            REQUIRE(zero == witness.has_value());
            if (witness) {
                CHECK(witness->rows.size() + witness->cols.size() == n + 1);
                for (size_t i : witness->rows)
                    for (size_t j : witness->cols) CHECK(a(i, j) == 0.0);
            }
        }
    }
}

TEST_CASE("minor ratio bounds for lambda-bounded matrices") {
    Rng rng(707);
    const double lambda = 2.0;
    for (size_t n = 3; n <= 8; ++n) {
        for (int t = 0; t < 6; ++t) {
            auto a = random_lambda_bounded(rng, n, lambda);
            double per = permanent(a).value();
            double s = 0.0;
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) s += a(i, j);
            double lo = std::pow(lambda, -4.0) * static_cast<double>(n) / s;
            double hi = std::pow(lambda, 4.0) * static_cast<double>(n) / s;
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    double ratio = permanent_minor(a, i, j) / per;
                    CHECK(ratio >= lo * (1 - 1e-10));
                    CHECK(ratio <= hi * (1 + 1e-10));
                }
        }
    }
}

TEST_CASE("permanent Lipschitz bound in log scale") {
    Rng rng(808);
    const double lambda = 2.0;
    for (size_t n = 3; n <= 8; ++n) {
        for (int t = 0; t < 8; ++t) {
            auto a = random_lambda_bounded(rng, n, lambda);
            auto b = a;
            double l1 = 0.0;
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    double v = std::min(lambda, std::max(1.0 / lambda,
                                                         a(i, j) + rng.uniform(-0.05, 0.05)));
                    l1 += std::abs(v - a(i, j));
                    b.set(i, j, v);
                }
            double lhs = std::abs(permanent(b).log_value - permanent(a).log_value);
            CHECK(lhs <= std::pow(lambda, 5.0) / static_cast<double>(n) * l1 + 1e-10);
        }
    }
}

TEST_CASE("minor deletion changes pmean by at most (6 log lambda + C log n)/n, C = 10") {
    Rng rng(909);
    const double lambda = 2.0;
    for (size_t n = 4; n <= 10; ++n) {
        for (int t = 0; t < 4; ++t) {
            auto a = random_lambda_bounded(rng, n, lambda);
            double pm = permanental_mean(a);
            double bound =
                (6.0 * std::log(lambda) + 10.0 * std::log(static_cast<double>(n))) /
                static_cast<double>(n);
            for (size_t i = 0; i < n; ++i) {
                size_t j = rng.next_u64() % n;
                double pm_minor = permanental_mean(a.minor_at(i, j));
                CHECK(std::abs(std::log(pm_minor / pm)) <= bound + 1e-10);
            }
        }
    }
}
