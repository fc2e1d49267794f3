#include <doctest.h>

#include "hmrc/kwise.hpp"
#include "hmrc/matrix.hpp"

using namespace hmrc;

namespace {

void check_all_orders(const KWiseSet& s, std::size_t k) {
    for (std::size_t j = 1; j <= k; ++j)
        CHECK(is_k_wise_independent(s.tower, s.elems, s.level, s.base_level, j).independent);
}

}  // namespace

TEST_CASE("Hamming columns") {
    auto s = bch_columns(FieldTower::prime(2), 7, 2);
    CHECK(s.degree == 3);
    CHECK(s.bch_rows == 3);
    CHECK(s.tower.size(s.level) == 8);
    CHECK(s.elems.size() == 7);
    CHECK(s.source == KWiseSource::Bch);
    check_all_orders(s, 2);
    // 7 distinct nonzero elements of F_8
    std::vector<Elem> e = s.elems;
    std::sort(e.begin(), e.end());
    CHECK(std::unique(e.begin(), e.end()) == e.end());
    CHECK(e.front() != 0);
}

TEST_CASE("designed distance 5 binary BCH") {
    auto s = bch_columns(FieldTower::prime(2), 7, 4);
    CHECK(s.bch_rows == 6);  // cosets {1,2,4} and {3,6,5}
    check_all_orders(s, 4);
    // the code is the [7,1] repetition code: all 7 columns sum to zero
    CHECK_FALSE(is_k_wise_independent(s.tower, s.elems, s.level, s.base_level, 7).independent);
}

TEST_CASE("k = 1") {
    auto s = bch_columns(FieldTower::prime(3), 5, 1);
    for (Elem x : s.elems) CHECK(x != 0);
    CHECK(s.elems.size() == 5);
}

TEST_CASE("row count stays under the bound") {
    struct C {
        std::uint64_t q;
        std::size_t n, k;
    };
    for (auto c : {C{2, 7, 2}, C{2, 7, 4}, C{2, 15, 6}, C{3, 8, 3}, C{3, 6, 2}, C{4, 12, 4}, C{5, 20, 3},
                   C{7, 16, 4}, C{9, 8, 2}, C{2, 30, 3}}) {
        CAPTURE(c.q);
        CAPTURE(c.n);
        CAPTURE(c.k);
        auto s = bch_columns(FieldTower::for_prime_power(c.q), c.n, c.k);
        CHECK(s.bch_rows <= bch_row_bound(c.q, c.n, c.k));
        CHECK(s.elems.size() == c.n);
        check_all_orders(s, std::min(c.k, c.n));
    }
}

TEST_CASE("BCH over a non-prime base") {
    auto t = FieldTower::for_prime_power(4);
    auto s = bch_columns(t, 10, 3);
    CHECK(s.base_level == t.top());
    CHECK(s.tower.shares_prefix(t, t.level_count()));
    check_all_orders(s, 3);
}

TEST_CASE("greedy search") {
    auto s = search_columns(FieldTower::prime(2), {3, 2, 2});
    CHECK(s.degree == 2);
    CHECK(s.elems == std::vector<Elem>{1, 2, 3});
    CHECK(s.source == KWiseSource::Search);

    auto b = search_columns(FieldTower::prime(3), {2, 2, 4});
    CHECK(b.degree == 2);
    CHECK(b.elems.size() == 2);
    check_all_orders(b, 2);

    try {
        search_columns(FieldTower::prime(2), {8, 3, 2});
        FAIL("expected ExtensionCapExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ExtensionCapExceeded);
    }
    CHECK_THROWS_AS(search_columns(FieldTower::prime(2), {1, 2, 2}), Error);
}

TEST_CASE("generate_kwise falls back to search") {
    auto t = FieldTower::prime(3);
    auto s = generate_kwise(t, 4, 2, 2);
    CHECK(s.source == KWiseSource::Search);
    CHECK(s.degree == 2);
    check_all_orders(s, 2);
    auto b = generate_kwise(t, 6, 2, 2);  // only 4 projective points in P^1(F_3)
    CHECK(b.source == KWiseSource::Bch);
    CHECK(b.degree == 3);
    check_all_orders(b, 2);
}

TEST_CASE("sizing helpers") {
    CHECK(bch_extension_degree(2, 7) == 3);
    CHECK(bch_extension_degree(2, 8) == 4);
    CHECK(bch_extension_degree(5, 4) == 1);
    CHECK(bch_row_bound(2, 7, 2) == 4);
    CHECK(bch_row_bound(5, 8, 2) == 1 + 1 * 2);
}
