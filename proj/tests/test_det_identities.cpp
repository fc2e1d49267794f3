#include <doctest.h>

#include <random>

#include "hmrc/det_identities.hpp"

using namespace hmrc;

namespace {

FMatrix random_matrix(FieldPtr f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    FMatrix m(f, r, c);
    std::uniform_int_distribution<Elem> u(0, f->size() - 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = u(rng);
    return m;
}

void zero_row(FMatrix& m, std::size_t i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = 0;
}

const std::uint64_t kFields[] = {2, 3, 4, 5, 7, 8, 9, 11, 13};

}  // namespace

TEST_CASE("Laplace expansion over D rows equals the determinant") {
    std::mt19937_64 rng(11);
    for (auto q : kFields) {
        auto f = FieldTower::for_prime_power(q).level_ptr(FieldTower::for_prime_power(q).top());
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t a = rng() % 4, h = 1 + rng() % 3;
            std::vector<std::size_t> m(h);
            std::size_t total = 0;
            for (auto& x : m) total += x = 1 + rng() % 2;
            std::vector<FMatrix> c, d;
            for (std::size_t b = 0; b < h; ++b) {
                c.push_back(random_matrix(f, a, a + m[b], rng));
                d.push_back(random_matrix(f, total, a + m[b], rng));
            }
            CHECK(block_laplace_det(c, d) == det(stacked_block_matrix(c, d)));
        }
    }
}

TEST_CASE("diagonal identity") {
    std::mt19937_64 rng(5);
    for (auto q : kFields) {
        auto f = FieldTower::for_prime_power(q).level_ptr(FieldTower::for_prime_power(q).top());
        for (std::size_t a = 0; a <= 3; ++a)
            for (std::size_t h = 1; h <= 3; ++h)
                for (int trial = 0; trial < 10; ++trial) {
                    std::vector<FMatrix> c, d;
                    for (std::size_t b = 0; b < h; ++b) {
                        c.push_back(random_matrix(f, a, a + 1, rng));
                        d.push_back(random_matrix(f, h, a + 1, rng));
                    }
                    CAPTURE(q);
                    CAPTURE(a);
                    CAPTURE(h);
                    CHECK(diag_id_rhs(c, d) == det(stacked_block_matrix(c, d)));
                }
    }
}

TEST_CASE("two-block identity") {
    std::mt19937_64 rng(6);
    for (auto q : kFields) {
        auto f = FieldTower::for_prime_power(q).level_ptr(FieldTower::for_prime_power(q).top());
        for (std::size_t a = 0; a <= 3; ++a)
            for (int trial = 0; trial < 10; ++trial) {
                auto c1 = random_matrix(f, a, a + 1, rng), c2 = random_matrix(f, a, a + 2, rng);
                auto d1 = random_matrix(f, 3, a + 1, rng), d2 = random_matrix(f, 3, a + 2, rng);
                CHECK(prod2_id_rhs(c1, c2, d1, d2) == det(stacked_block_matrix({c1, c2}, {d1, d2})));
            }
    }
}

TEST_CASE("three-block identity with its stated signs") {
    // Expanding along D gives -, +, +, - for the four surviving terms; the
    // stated form has + on the first, so it agrees only when that term
    // vanishes or the characteristic is 2.
    std::mt19937_64 rng(7);
    std::size_t agree = 0, disagree = 0, odd_char_nonzero_first = 0;
    for (auto q : kFields) {
        auto f = FieldTower::for_prime_power(q).level_ptr(FieldTower::for_prime_power(q).top());
        for (std::size_t a = 0; a <= 3; ++a)
            for (int trial = 0; trial < 10; ++trial) {
                auto c1 = random_matrix(f, a, a + 1, rng), c2 = random_matrix(f, a, a + 1, rng),
                     c3 = random_matrix(f, a, a + 2, rng);
                auto d1 = random_matrix(f, 4, a + 1, rng), d2 = random_matrix(f, 4, a + 1, rng),
                     d3 = random_matrix(f, 4, a + 2, rng);
                zero_row(d3, 0);
                zero_row(d1, 1);
                zero_row(d2, 1);
                const Elem lhs = det(stacked_block_matrix({c1, c2, c3}, {d1, d2, d3}));
                CHECK(block_laplace_det({c1, c2, c3}, {d1, d2, d3}) == lhs);
                const Elem stated = prod3_id_rhs(c1, c2, c3, d1, d2, d3);
                // first term, recomputed
                auto minor = [&](const FMatrix& c, const FMatrix& d, std::vector<std::size_t> r) {
                    return det(vstack(c, d.select_rows(r)));
                };
                const Elem first =
                    f->mul(f->mul(minor(c1, d1, {0}), minor(c2, d2, {2})), minor(c3, d3, {1, 3}));
                const Elem signed_first = a % 2 ? f->neg(first) : first;
                CHECK(f->add(lhs, f->add(signed_first, signed_first)) == stated);
                if (stated == lhs)
                    ++agree;
                else
                    ++disagree;
                if (q % 2 == 1 && first != 0) ++odd_char_nonzero_first;
            }
    }
    CHECK(disagree == odd_char_nonzero_first);
    CHECK(disagree > 0);
    MESSAGE("stated three-block identity: " << agree << " agree, " << disagree << " disagree");
}

TEST_CASE("shape errors") {
    auto f = FieldTower::for_prime_power(5).level_ptr(0);
    std::mt19937_64 rng(1);
    auto c = random_matrix(f, 2, 3, rng), d = random_matrix(f, 2, 3, rng);
    CHECK_THROWS_AS(stacked_block_matrix({c}, {d}), Error);
    CHECK_THROWS_AS(diag_id_rhs({c, c}, {d}), Error);
}
