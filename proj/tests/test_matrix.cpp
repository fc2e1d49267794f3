#include <doctest.h>

#include <numeric>
#include <random>

#include "hmrc/matrix.hpp"

using namespace hmrc;

namespace {

FMatrix random_matrix(FieldPtr f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    std::uniform_int_distribution<Elem> d(0, f->size() - 1);
    FMatrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

// Leibniz expansion, independent of elimination.
Elem det_leibniz(const FMatrix& m) {
    const auto& f = m.field();
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Elem total = 0;
    do {
        std::size_t inv = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
        Elem term = 1;
        for (std::size_t i = 0; i < n; ++i) term = f.mul(term, m(i, perm[i]));
        total = inv % 2 ? f.sub(total, term) : f.add(total, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// Block matrix [C_1 0 ..; 0 C_2 ..; ...; D_1 D_2 ...].
FMatrix block_stack(const std::vector<FMatrix>& C, const std::vector<FMatrix>& D) {
    auto f = C[0].field_ptr();
    std::size_t rows = 0, cols = 0;
    for (const auto& c : C) {
        rows += c.rows();
        cols += c.cols();
    }
    rows += D[0].rows();
    FMatrix m(f, rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (std::size_t b = 0; b < C.size(); ++b) {
        for (std::size_t i = 0; i < C[b].rows(); ++i)
            for (std::size_t j = 0; j < C[b].cols(); ++j) m(r0 + i, c0 + j) = C[b](i, j);
        for (std::size_t i = 0; i < D[b].rows(); ++i)
            for (std::size_t j = 0; j < D[b].cols(); ++j) m(rows - D[b].rows() + i, c0 + j) = D[b](i, j);
        r0 += C[b].rows();
        c0 += C[b].cols();
    }
    return m;
}

// det of C stacked with the listed (1-based) rows of D.
Elem det_with(const FMatrix& C, const FMatrix& D, std::vector<std::size_t> rows1) {
    for (auto& r : rows1) --r;
    return det(vstack(C, D.select_rows(rows1)));
}

}  // namespace

TEST_CASE("rank") {
    auto f13 = FieldTower::prime(13).level_ptr(0);
    CHECK(rank(FMatrix::identity(f13, 3)) == 3);
    CHECK(rank(FMatrix(f13, 3, 4)) == 0);
    auto f5 = FieldTower::prime(5).level_ptr(0);
    Elem nodes[] = {1, 2, 3};
    CHECK(rank(vandermonde(f5, nodes, 3, 0)) == 3);

    std::mt19937_64 rng(1);
    auto f16 = FieldTower::make({2, {4}, {}}).level_ptr(1);
    for (int t = 0; t < 50; ++t) {
        auto m = random_matrix(f16, 1 + t % 5, 1 + (t * 3) % 6, rng);
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("determinant") {
    auto f7 = FieldTower::prime(7).level_ptr(0);
    CHECK(det(FMatrix::identity(f7, 4)) == 1);
    Elem a[] = {1, 2}, b[] = {3, 4};
    auto c = cauchy(f7, a, b);
    CHECK(c == FMatrix::from_rows(f7, {{3, 6}, {2, 3}}));
    CHECK(det(c) == 4);
    CHECK(cauchy_det_closed_form(*f7, a, b) == 4);
    CHECK_THROWS_AS(det(FMatrix(f7, 2, 3)), Error);

    std::mt19937_64 rng(2);
    auto f9 = FieldTower::make({3, {2}, {}}).level_ptr(1);
    for (int t = 0; t < 40; ++t) {
        auto m = random_matrix(f9, 1 + t % 5, 1 + t % 5, rng);
        CHECK(det(m) == det_leibniz(m));
        if (m.cols() >= 2) {
            auto dup = m;
            for (std::size_t i = 0; i < m.rows(); ++i) dup(i, 1) = dup(i, 0);
            CHECK(det(dup) == 0);
        }
    }
}

TEST_CASE("solve, inverse, nullspace") {
    auto f7 = FieldTower::prime(7).level_ptr(0);
    auto rhs = FMatrix::from_rows(f7, {{1}, {0}});
    CHECK(solve(FMatrix::identity(f7, 2), rhs) == rhs);
    Elem nodes[] = {2, 3};
    auto v = vandermonde(f7, nodes, 2, 0);
    auto x = solve(v, rhs);
    CHECK(multiply(v, x) == rhs);
    // [[1,1],[2,3]]^{-1} (1,0) = (3,-2) = (3,5)
    CHECK(x == FMatrix::from_rows(f7, {{3}, {5}}));
    auto sing = FMatrix::from_rows(f7, {{1, 2}, {2, 4}});
    try {
        solve(sing, rhs);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Inconsistent);
    }
    try {
        solve(sing, FMatrix::from_rows(f7, {{1}, {2}}));
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Singular);
    }

    std::mt19937_64 rng(3);
    auto f8 = FieldTower::make({2, {3}, {}}).level_ptr(1);
    for (int t = 0; t < 30; ++t) {
        auto m = random_matrix(f8, 3, 6, rng);
        auto ns = nullspace(m);
        CHECK(ns.rows() + rank(m) == 6);
        CHECK(multiply(m, ns.transpose()).is_zero());
        auto sq = random_matrix(f8, 4, 4, rng);
        if (det(sq) != 0) CHECK(multiply(sq, inverse(sq)) == FMatrix::identity(f8, 4));
    }
}

TEST_CASE("structured builders") {
    auto f4 = FieldTower::make({2, {2}, {{1, 1, 1}}}).level_ptr(1);
    Elem beta = 2, beta2 = 3;
    Elem nodes[] = {1, beta, beta2};
    CHECK(vandermonde(f4, nodes, 2, 0) == FMatrix::from_rows(f4, {{1, 1, 1}, {1, beta, beta2}}));

    auto f5 = FieldTower::prime(5).level_ptr(0);
    Elem b = f5->primitive_element();
    Elem m0nodes[] = {0, b, f5->pow(b, 2), f5->pow(b, 3)};
    CHECK(vandermonde(f5, m0nodes, 2, 0) ==
          FMatrix::from_rows(f5, {{1, 1, 1, 1}, {0, b, f5->pow(b, 2), f5->pow(b, 3)}}));

    auto f7 = FieldTower::prime(7).level_ptr(0);
    Elem n7[] = {2, 3};
    CHECK(vandermonde(f7, n7, 2, 1) == FMatrix::from_rows(f7, {{2, 3}, {4, 2}}));

    Elem a1[] = {5}, b1[] = {3};
    CHECK(cauchy(f7, a1, b1) == FMatrix::from_rows(f7, {{4}}));
    Elem same[] = {1};
    try {
        cauchy(f7, same, same);
        FAIL("expected CoincidentNodes");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CoincidentNodes);
    }

    Elem el[] = {1, beta};
    CHECK(moore(f4, el, 2, 2) == FMatrix::from_rows(f4, {{1, beta}, {1, beta2}}));
    CHECK(moore(f4, el, 1, 2) == FMatrix::from_rows(f4, {{1, beta}}));
    CHECK_THROWS_AS(moore(f4, el, 2, 3), Error);
    CHECK_THROWS_AS(moore(f4, el, 2, 8), Error);
}

TEST_CASE("k-wise independence") {
    auto t = FieldTower::make({2, {2}, {{1, 1, 1}}});
    Elem basis[] = {1, 2};
    CHECK(is_k_wise_independent(t, basis, 1, 0, 2).independent);
    Elem three[] = {1, 2, 3};
    auto r = is_k_wise_independent(t, three, 1, 0, 3);
    CHECK_FALSE(r.independent);
    CHECK(r.witness == std::vector<std::size_t>{0, 1, 2});
    CHECK(is_k_wise_independent(t, three, 1, 0, 2).independent);
    Elem withzero[] = {1, 0};
    auto z = is_k_wise_independent(t, withzero, 1, 0, 1);
    CHECK_FALSE(z.independent);
    CHECK(z.witness == std::vector<std::size_t>{1});
}

TEST_CASE("Moore matrix is MDS iff elements are k-wise independent") {
    auto t = FieldTower::make({2, {3}, {}});  // F_8 over F_2
    auto F = t.level_ptr(1);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<Elem> d(0, 7);
    int agree = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + trial % 5, k = 1 + trial % 3;
        if (k > n) k = n;
        std::vector<Elem> el(n);
        for (auto& e : el) e = d(rng);
        auto g = moore(F, el, k, 2);
        bool mds = true;
        std::vector<std::size_t> c(k);
        std::iota(c.begin(), c.end(), 0);
        do {
            mds = mds && det(g.select_cols(c)) != 0;
        } while (next_combination(c, n));
        // brute-force independence: no nonzero F_2 combination of <= k elements vanishes
        bool indep = true;
        for (std::uint64_t mask = 1; mask < (1u << n); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcountll(mask)) > k) continue;
            Elem s = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (mask >> j & 1) s ^= el[j];
            if (s == 0) indep = false;
        }
        CHECK(mds == indep);
        CHECK(is_k_wise_independent(t, el, 1, 0, k).independent == indep);
        agree += mds == indep;
    }
    CHECK(agree == 200);
}

TEST_CASE("Cauchy determinant closed form") {
    std::mt19937_64 rng(11);
    for (std::uint64_t q : {7u, 11u, 13u, 16u, 25u}) {
        auto t = FieldTower::for_prime_power(q);
        auto F = t.level_ptr(t.top());
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t n = 1 + trial % 4;
            if (2 * n > q) continue;
            std::vector<Elem> pool(q);
            std::iota(pool.begin(), pool.end(), 0);
            std::shuffle(pool.begin(), pool.end(), rng);
            std::vector<Elem> a(pool.begin(), pool.begin() + n), b(pool.begin() + n, pool.begin() + 2 * n);
            auto c = cauchy(F, a, b);
            Elem dt = det(c);
            CHECK(dt != 0);
            CHECK(dt == cauchy_det_closed_form(*F, a, b));
            // other orientation: prod_{i>j}(a_i-a_j)(b_i-b_j) / prod_{i,j}(a_i-b_j), equal up to sign
            Elem num = 1, den = 1;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < i; ++j)
                    num = F->mul(num, F->mul(F->sub(a[i], a[j]), F->sub(b[i], b[j])));
                for (std::size_t j = 0; j < n; ++j) den = F->mul(den, F->sub(a[i], b[j]));
            }
            Elem other = F->div(num, den);
            CHECK((dt == other || dt == F->neg(other)));
        }
    }
}

TEST_CASE("diag-id block determinant identity") {
    std::mt19937_64 rng(21);
    int trials = 0;
    for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u}) {
        auto t = FieldTower::for_prime_power(q);
        auto F = t.level_ptr(t.top());
        for (int rep = 0; rep < 12; ++rep, ++trials) {
            std::size_t a = 1 + rep % 3, h = 1 + (rep / 3) % 3;
            std::vector<FMatrix> C, D;
            for (std::size_t i = 0; i < h; ++i) {
                C.push_back(random_matrix(F, a, a + 1, rng));
                D.push_back(random_matrix(F, h, a + 1, rng));
            }
            Elem lhs = det(block_stack(C, D));
            FMatrix inner(F, h, h);
            for (std::size_t j = 0; j < h; ++j)
                for (std::size_t i = 0; i < h; ++i) inner(j, i) = det_with(C[i], D[i], {j + 1});
            Elem rhs = det(inner);
            if ((a * h * (h - 1) / 2) % 2) rhs = F->neg(rhs);
            REQUIRE(lhs == rhs);
        }
    }
    CHECK(trials >= 100);
}

TEST_CASE("2prod-id block determinant identity") {
    std::mt19937_64 rng(22);
    int trials = 0;
    for (std::uint64_t q : {3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u}) {
        auto t = FieldTower::for_prime_power(q);
        auto F = t.level_ptr(t.top());
        for (int rep = 0; rep < 13; ++rep, ++trials) {
            std::size_t a = 1 + rep % 3;
            FMatrix C1 = random_matrix(F, a, a + 1, rng), C2 = random_matrix(F, a, a + 2, rng);
            FMatrix D1 = random_matrix(F, 3, a + 1, rng), D2 = random_matrix(F, 3, a + 2, rng);
            Elem lhs = det(block_stack({C1, C2}, {D1, D2}));
            Elem s = F->mul(det_with(C1, D1, {1}), det_with(C2, D2, {2, 3}));
            s = F->sub(s, F->mul(det_with(C1, D1, {2}), det_with(C2, D2, {1, 3})));
            s = F->add(s, F->mul(det_with(C1, D1, {3}), det_with(C2, D2, {1, 2})));
            if (a % 2) s = F->neg(s);
            CHECK(lhs == s);
        }
    }
    CHECK(trials >= 100);
}

TEST_CASE("3prod-id with all-plus leading sign is not an identity") {
    std::mt19937_64 rng(23);
    int trials = 0, mismatches = 0;
    for (std::uint64_t q : {3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u}) {
        auto t = FieldTower::for_prime_power(q);
        auto F = t.level_ptr(t.top());
        for (int rep = 0; rep < 13; ++rep, ++trials) {
            std::size_t a = 1 + rep % 3;
            FMatrix C1 = random_matrix(F, a, a + 1, rng), C2 = random_matrix(F, a, a + 1, rng);
            FMatrix C3 = random_matrix(F, a, a + 2, rng);
            FMatrix D1 = random_matrix(F, 4, a + 1, rng), D2 = random_matrix(F, 4, a + 1, rng);
            FMatrix D3 = random_matrix(F, 4, a + 2, rng);
            for (std::size_t j = 0; j < a + 2; ++j) D3(0, j) = 0;
            for (std::size_t j = 0; j < a + 1; ++j) D1(1, j) = D2(1, j) = 0;
            Elem lhs = det(block_stack({C1, C2, C3}, {D1, D2, D3}));
            auto term = [&](std::size_t r1, std::size_t r2, std::size_t r3a, std::size_t r3b) {
                return F->mul(F->mul(det_with(C1, D1, {r1}), det_with(C2, D2, {r2})),
                              det_with(C3, D3, {r3a, r3b}));
            };
            Elem s = term(1, 3, 2, 4);
            s = F->add(s, term(1, 4, 2, 3));
            s = F->add(s, term(3, 1, 2, 4));
            s = F->sub(s, term(4, 1, 2, 3));
            if (a % 2) s = F->neg(s);
            mismatches += lhs != s;
        }
    }
    CHECK(trials >= 100);
    CHECK(mismatches > 0);
}

TEST_CASE("3prod-id terms recombined by Laplace expansion") {
    std::mt19937_64 rng(23);
    int trials = 0;
    for (std::uint64_t q : {3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u}) {
        auto t = FieldTower::for_prime_power(q);
        auto F = t.level_ptr(t.top());
        for (int rep = 0; rep < 13; ++rep, ++trials) {
            std::size_t a = 1 + rep % 3;
            FMatrix C1 = random_matrix(F, a, a + 1, rng), C2 = random_matrix(F, a, a + 1, rng);
            FMatrix C3 = random_matrix(F, a, a + 2, rng);
            FMatrix D1 = random_matrix(F, 4, a + 1, rng), D2 = random_matrix(F, 4, a + 1, rng);
            FMatrix D3 = random_matrix(F, 4, a + 2, rng);
            for (std::size_t j = 0; j < a + 2; ++j) D3(0, j) = 0;
            for (std::size_t j = 0; j < a + 1; ++j) D1(1, j) = D2(1, j) = 0;
            Elem lhs = det(block_stack({C1, C2, C3}, {D1, D2, D3}));
            auto term = [&](std::size_t r1, std::size_t r2, std::size_t r3a, std::size_t r3b) {
                return F->mul(F->mul(det_with(C1, D1, {r1}), det_with(C2, D2, {r2})),
                              det_with(C3, D3, {r3a, r3b}));
            };
            Elem s = F->neg(term(1, 3, 2, 4));
            s = F->add(s, term(1, 4, 2, 3));
            s = F->add(s, term(3, 1, 2, 4));
            s = F->sub(s, term(4, 1, 2, 3));
            if (a % 2) s = F->neg(s);
            CHECK(lhs == s);
        }
    }
    CHECK(trials >= 100);
}
