#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "permascale/errors.hpp"
#include "permascale/matrix.hpp"
#include "permascale/pattern.hpp"
#include "permascale/permanent.hpp"
#include "permascale/rng.hpp"
#include "permascale/scaling.hpp"

using namespace permascale;

namespace {

NonnegMatrix random_masked(Rng& rng, size_t n, double zero_prob) {
    NonnegMatrix a(n, n, 0.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            a.set(i, j, rng.uniform() < zero_prob ? 0.0 : 0.25 + rng.uniform());
    return a;
}

// Independent matching oracle: recursive row-by-row assignment.
bool has_perfect_matching_oracle(const SupportMask& s, size_t row, uint32_t used) {
    if (row == s.n) return true;
    for (size_t j = 0; j < s.n; ++j)
        if (s.at(row, j) && !(used >> j & 1))
            if (has_perfect_matching_oracle(s, row + 1, used | (uint32_t(1) << j))) return true;
    return false;
}

// Independent Pi oracle: an entry survives iff some positive diagonal uses it.
NonnegMatrix pi_oracle(const NonnegMatrix& a) {
    size_t n = a.rows();
    NonnegMatrix out(n, n, 0.0);
    auto s = SupportMask::of(a);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (a(i, j) == 0.0) continue;
            // force (i,j), match the rest
            SupportMask forced = s;
            for (size_t jj = 0; jj < n; ++jj)
                if (jj != j) forced.mask[i * n + jj] = 0;
            for (size_t ii = 0; ii < n; ++ii)
                if (ii != i) forced.mask[ii * n + j] = 0;
            if (has_perfect_matching_oracle(forced, 0, 0)) out.set(i, j, a(i, j));
        }
    return out;
}

} // namespace

TEST_CASE("max_bipartite_matching: worked examples") {
    SupportMask id{3, {1, 0, 0, 0, 1, 0, 0, 0, 1}};
    auto m = max_bipartite_matching(id);
    REQUIRE(m.has_value());
    CHECK((*m) == std::vector<size_t>{0, 1, 2});

    SupportMask full{3, std::vector<char>(9, 1)};
    auto m2 = max_bipartite_matching(full);
    REQUIRE(m2.has_value());
    std::vector<char> seen(3, 0);
    for (size_t j : *m2) seen[j] = 1;
    CHECK((seen == std::vector<char>{1, 1, 1}));

    SupportMask bad{2, {1, 1, 0, 0}};
    CHECK(!max_bipartite_matching(bad).has_value());
}

TEST_CASE("pi_projection: worked examples") {
    auto [p1, r1] = pi_projection({{1, 1}, {0, 1}});
    CHECK(p1 == NonnegMatrix{{1, 0}, {0, 1}});
    CHECK(!r1.in_pn);

    NonnegMatrix pos{{1, 2}, {3, 4}};
    auto [p2, r2] = pi_projection(pos);
    CHECK(p2 == pos);
    CHECK(r2.in_pn);

    auto [p3, r3] = pi_projection({{1, 0}, {0, 0}});
    CHECK(p3 == NonnegMatrix(2, 2, 0.0));
    CHECK(!r3.has_positive_diagonal);
}

TEST_CASE("pi_projection matches the forced-entry oracle") {
    Rng rng(111);
    for (size_t n = 2; n <= 6; ++n)
        for (int t = 0; t < 40; ++t) {
            auto a = random_masked(rng, n, 0.45);
            CHECK(pi_projection(a).first == pi_oracle(a));
        }
}

TEST_CASE("pi is idempotent, exactly") {
    Rng rng(222);
    for (int t = 0; t < 60; ++t) {
        auto a = random_masked(rng, 2 + t % 6, 0.4);
        auto once = pi_projection(a).first;
        CHECK(pi_projection(once).first == once);
    }
}

TEST_CASE("pmean and smean are Pi-invariant") {
    Rng rng(333);
    for (int t = 0; t < 60; ++t) {
        size_t n = 2 + t % 7;
        auto a = random_masked(rng, n, 0.35);
        auto pa = pi_projection(a).first;
        double pm_a = permanental_mean(a);
        double pm_p = permanental_mean(pa);
        if (pm_a == 0.0)
            CHECK(pm_p == 0.0);
        else
            CHECK(pm_p == doctest::Approx(pm_a).epsilon(1e-12));
        CHECK(scaling_mean(pa) == doctest::Approx(scaling_mean(a)).epsilon(1e-8));
    }
}

TEST_CASE("Pi respects Kronecker products with positive B") {
    Rng rng(444);
    for (int t = 0; t < 25; ++t) {
        size_t n = 2 + t % 3, m = 2 + t % 2;
        auto a = random_masked(rng, n, 0.4);
        NonnegMatrix b(m, m, 0.0);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) b.set(i, j, 0.5 + rng.uniform());
        CHECK(pi_projection(kron(a, b)).first == kron(pi_projection(a).first, b));
    }
}

TEST_CASE("decompose_fully_indecomposable: worked examples") {
    auto pos = decompose_fully_indecomposable(NonnegMatrix(4, 4, 1.0));
    REQUIRE(pos.blocks.size() == 1);
    CHECK(pos.blocks[0].rows == std::vector<size_t>{0, 1, 2, 3});
    CHECK(pos.in_pn);

    NonnegMatrix bd(5, 5, 0.0);
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) bd.set(i, j, 1.0);
    for (size_t i = 2; i < 5; ++i)
        for (size_t j = 2; j < 5; ++j) bd.set(i, j, 1.0);
    auto two = decompose_fully_indecomposable(bd);
    REQUIRE(two.blocks.size() == 2);
    CHECK(two.blocks[0].rows == std::vector<size_t>{0, 1});
    CHECK(two.blocks[1].rows == std::vector<size_t>{2, 3, 4});
    CHECK(two.in_pn);

    auto tri = decompose_fully_indecomposable({{1, 1}, {0, 1}});
    REQUIRE(tri.blocks.size() == 2);
    CHECK(tri.blocks[0].rows == std::vector<size_t>{0});
    CHECK(tri.blocks[0].cols == std::vector<size_t>{0});
    CHECK(tri.blocks[1].rows == std::vector<size_t>{1});
    CHECK(!tri.in_pn);
}

TEST_CASE("block row and column sets have equal cardinality and partition the support") {
    Rng rng(555);
    for (int t = 0; t < 40; ++t) {
        size_t n = 2 + t % 6;
        auto a = random_masked(rng, n, 0.45);
        auto rep = decompose_fully_indecomposable(a);
        std::vector<char> row_seen(n, 0), col_seen(n, 0);
        for (const auto& b : rep.blocks) {
            CHECK(b.rows.size() == b.cols.size());
            for (size_t i : b.rows) {
                CHECK(!row_seen[i]);
                row_seen[i] = 1;
            }
            for (size_t j : b.cols) {
                CHECK(!col_seen[j]);
                col_seen[j] = 1;
            }
        }
        if (rep.has_positive_diagonal) {
            for (char c : row_seen) CHECK(c);
            // every surviving entry lies inside some block's rows x cols
            auto pi = pi_projection(a).first;
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j)
                    if (pi(i, j) > 0.0) {
                        bool inside = false;
                        for (const auto& b : rep.blocks) {
                            bool ri = std::find(b.rows.begin(), b.rows.end(), i) != b.rows.end();
                            bool cj = std::find(b.cols.begin(), b.cols.end(), j) != b.cols.end();
                            if (ri && cj) inside = true;
                            CHECK(ri == cj); // off-block entries of Pi(A) cannot survive
                        }
                        CHECK(inside);
                    }
        }
    }
}

TEST_CASE("frobenius_konig_witness: worked examples") {
    NonnegMatrix id3(3, 3, 0.0);
    for (size_t i = 0; i < 3; ++i) id3.set(i, i, 1.0);
    CHECK(!frobenius_konig_witness(id3).has_value());

    auto w = frobenius_konig_witness({{1, 1, 0}, {1, 1, 0}, {1, 1, 0}});
    REQUIRE(w.has_value());
    CHECK(w->rows.size() + w->cols.size() == 4);

    auto wz = frobenius_konig_witness(NonnegMatrix(2, 2, 0.0));
    REQUIRE(wz.has_value());
    CHECK(wz->rows.size() + wz->cols.size() == 3);
}

TEST_CASE("positive diagonal iff positive permanent, exhaustive 0/1 up to n = 4") {
    for (size_t n = 1; n <= 4; ++n) {
        const size_t cells = n * n;
        for (uint64_t bits = 0; bits < (uint64_t(1) << cells); ++bits) {
            NonnegMatrix a(n, n, 0.0);
            for (size_t c = 0; c < cells; ++c)
                if (bits >> c & 1) a.set(c / n, c % n, 1.0);
            bool diag = decompose_fully_indecomposable(a).has_positive_diagonal;
            CHECK(diag == !permanent_naive(a).is_zero);
        }
    }
}
