#include <doctest.h>

#include "hmrc/constructions.hpp"
#include "hmrc/bounds.hpp"
#include "hmrc/kwise.hpp"

using namespace hmrc;

namespace {

// Every completion of a (delta, h2) pattern by h1 further coordinates has full column rank.
bool completions_ok(const FMatrix& h, const CodeProfile& p, const ErasurePattern& dg) {
    const Mask base = dg.mask();
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < p.n; ++c)
        if (!(base >> c & 1)) free.push_back(c);
    bool ok = true;
    for_each_subset(free.size(), p.h1, [&](Mask t) {
        Mask x = base;
        for (auto j : mask_to_indices(t)) x |= Mask{1} << free[j];
        auto cols = mask_to_indices(x);
        ok = rank(h.select_cols(cols)) == cols.size();
        return ok;
    });
    return ok;
}

struct Agreement {
    bool exhaustive, theorem2;
    std::size_t comparable = 0, mismatches = 0;
};

Agreement compare(const ParityCheck& code) {
    Agreement a;
    a.exhaustive = verify_hl_mrc(code.matrix, code.profile).passed;
    a.theorem2 = certify_theorem2(code).passed;
    for (const auto& dg : enumerate_delta_gamma_patterns(code.profile)) {
        auto o = check_theorem2(code, dg);
        if (!o.psi_ok) continue;
        ++a.comparable;
        if (o.theta_ok != completions_ok(code.matrix, code.profile, dg)) ++a.mismatches;
    }
    return a;
}

void check_levels(const ParityCheck& pc) {
    auto s = scan_bands(pc);
    CHECK_MESSAGE(s.ok, s.problem);
}

}  // namespace

TEST_CASE("general family: Psi/Theta conditions agree with exhaustive verification") {
    for (auto p : {make_profile(Variant::HL, 3, 2, 1, 1, 1, 1), make_profile(Variant::HL, 2, 2, 1, 2, 1, 1),
                   make_profile(Variant::HL, 1, 1, 2, 1, 1, 1)}) {
        CAPTURE(p.describe());
        auto c = construct_general(p);
        check_levels(c.code);
        auto a = compare(c.code);
        CHECK(a.exhaustive);
        CHECK(a.theorem2);
        CHECK(a.comparable > 0);
        CHECK(a.mismatches == 0);
    }
}

TEST_CASE("general family field sizing") {
    auto p = make_profile(Variant::HL, 3, 2, 1, 1, 1, 1);
    auto c = construct_general(p);
    CHECK(c.params.q == 3);
    CHECK(c.params.m1 <= bch_row_bound(3, p.n2 * p.t2, (p.delta + 1) * p.h2));
    CHECK(c.params.m1 == 3);
    CHECK(c.params.m % c.params.m1 == 0);
    CHECK(c.code.tower.size(c.code.tower.top()) == checked_pow(3, c.params.m).value());
    std::size_t mid_level = 0;
    for (const auto& b : c.code.bands)
        if (b.kind == BandKind::Mid) mid_level = b.level;
    CHECK(c.code.tower.size(mid_level) == 27);
    CHECK(is_k_wise_independent(c.code.tower, c.params.alpha, mid_level, 0, (p.delta + 1) * p.h2).independent);
}

TEST_CASE("dependent lambdas fail both checks") {
    auto p = make_profile(Variant::HL, 2, 2, 1, 2, 1, 1);
    auto c = construct_general(p);
    auto& h = c.code.matrix;
    // A_1 reuses the lambdas of A_0
    for (auto r : c.code.band_rows(BandKind::Global, 0))
        for (std::size_t j = 0; j < p.n1; ++j) h(r, p.mids[1].all[j]) = h(r, p.mids[0].all[j]);
    auto a = compare(c.code);
    CHECK_FALSE(a.exhaustive);
    CHECK_FALSE(a.theorem2);
    CHECK(a.mismatches == 0);
    auto cert = certify_theorem2(c.code);
    CHECK(cert.theta_failures > 0);
    REQUIRE(cert.witness);
    CHECK_FALSE(completions_ok(h, p, *cert.witness));
}

TEST_CASE("degenerate general instances") {
    auto p = make_profile(Variant::HL, 4, 2, 2, 0, 0, 1);
    auto c = construct_general(p);
    CHECK(c.code.band_rows(BandKind::Mid, 0).empty());
    for (const auto& dg : enumerate_delta_gamma_patterns(p)) CHECK(check_theorem2(c.code, dg).ok());
    CHECK(verify_hl_mrc(c.code.matrix, p).passed);

    auto q = make_profile(Variant::HL, 3, 2, 1, 1, 0, 1);  // h2 = 0: mid band empty
    auto d = construct_general(q);
    CHECK(d.code.band_rows(BandKind::Mid, 0).empty());
    CHECK(d.params.m1 == 1);
    check_levels(d.code);
    CHECK(verify_hl_mrc(d.code.matrix, q).passed);
    CHECK(certify_theorem2(d.code).passed);
}

TEST_CASE("theorem2 certificate needs the general family") {
    auto p = make_profile(Variant::HL, 3, 2, 1, 1, 1, 1);
    auto c = construct_h1_1(p);
    try {
        certify_theorem2(c.code);
        FAIL("expected MethodUnavailable");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MethodUnavailable);
    }
}

TEST_CASE("h1 = 1 family") {
    auto p = make_profile(Variant::HL, 3, 2, 1, 1, 1, 1);
    auto c = construct_h1_1(p);
    check_levels(c.code);
    CHECK(c.params.m == c.params.m1);
    CHECK(c.code.tower.level_count() == FieldTower::for_prime_power(c.params.q).level_count() + 1);
    CHECK(verify_hl_mrc(c.code.matrix, p).passed);

    auto z = make_profile(Variant::HL, 3, 2, 2, 1, 0, 1);  // h2 = 0: global row is alpha itself
    auto d = construct_h1_1(z);
    auto g = d.code.band_rows(BandKind::Global, 0);
    REQUIRE(g.size() == 1);
    for (std::size_t j = 0; j < z.n; ++j) CHECK(d.code.matrix(g[0], j) == d.params.alpha[j % (z.n2 * z.t2)]);
    CHECK(verify_hl_mrc(d.code.matrix, z).passed);
    CHECK_THROWS_AS(construct_h1_1(make_profile(Variant::HL, 2, 2, 1, 2, 1, 1)), Error);
}

TEST_CASE("h1 = h2 = 1 family on the n = 16 profile") {
    auto p = make_profile(Variant::HL, 5, 3, 2, 1, 1, 2);
    auto c = construct_h1_1_h2_1(p, {13});
    CHECK(c.params.subgroup_order == 4);
    CHECK(c.params.alpha == std::vector<Elem>{1, 5, 8, 12});
    CHECK(c.params.lambda.size() == 2);
    check_levels(c.code);
    CHECK(c.code.tower.level_count() == 1);
    CHECK(c.code.matrix.rows() == 11);
    auto rep = verify_hl_mrc(c.code.matrix, p);
    CHECK(rep.passed);
    CHECK(rep.patterns_checked > 0);

    auto d = construct_h1_1_h2_1(p);
    CHECK(d.params.q == 9);
    CHECK(verify_hl_mrc(d.code.matrix, p).passed);

    // [[l0, l1], [g1, g2]] is nonsingular for all g1, g2 in G since l0/l1 is outside G
    const auto& f = c.code.matrix.field();
    Subgroup g = make_subgroup(f, 4);
    for (Elem g1 : g.elements)
        for (Elem g2 : g.elements) {
            FMatrix m = FMatrix::from_rows(c.code.matrix.field_ptr(), {{c.params.lambda[0], c.params.lambda[1]}, {g1, g2}});
            CHECK(det(m) != 0);
        }
    CHECK_THROWS_AS(construct_h1_1_h2_1(p, {5}), Error);
}

TEST_CASE("single local group per mid group") {
    auto p = make_profile(Variant::HL, 3, 2, 3, 1, 1, 1);
    REQUIRE(p.t2 == 1);
    auto c = construct_h1_1_h2_1(p);
    CHECK(verify_hl_mrc(c.code.matrix, p).passed);
}

TEST_CASE("h1 = 2, h2 = 1 family") {
    auto p = make_profile(Variant::HL, 4, 3, 2, 2, 1, 1);
    auto c = construct_h1_2_h2_1(p);
    const auto& prm = c.params;
    CHECK(prm.q0 >= 2 * (p.n2 + p.delta) + 3);
    CHECK(prm.subgroup_order >= p.n2 + 2);
    CHECK(prm.q0 == 37);
    CHECK(prm.beta.size() == p.delta + 3);
    CHECK(prm.lambda.size() == p.t1 * p.t2);
    check_levels(c.code);
    CHECK(verify_hl_mrc(c.code.matrix, p).passed);

    FieldTower base = FieldTower::for_prime_power(prm.q0);
    const auto& f = base.level(base.top());
    Subgroup g = make_subgroup(f, prm.subgroup_order);
    for (Elem a : prm.alpha) {
        CHECK(g.contains(f, f.div(f.sub(a, prm.beta[p.delta + 1]), f.sub(a, prm.beta[p.delta + 2]))));
        CHECK(g.contains(f, f.div(f.sub(a, prm.beta[p.delta]), f.sub(a, prm.beta[p.delta + 2]))));
    }
    const auto& tw = c.code.tower;
    CHECK(is_k_wise_independent(tw, prm.lambda, tw.top(), base.top(), 4).independent);

    // [[l_a, l_b], [mu_a g1, mu_b g2]] nonsingular for all g1, g2 in G
    const auto& F = c.code.matrix.field();
    for (std::size_t a = 0; a < prm.lambda.size(); ++a)
        for (std::size_t b = a + 1; b < prm.lambda.size(); ++b)
            for (Elem g1 : g.elements)
                for (Elem g2 : g.elements) {
                    Elem d = F.sub(F.mul(prm.lambda[a], F.mul(prm.mu[b], g2)),
                                   F.mul(prm.lambda[b], F.mul(prm.mu[a], g1)));
                    CHECK(d != 0);
                }

    try {
        CauchyOptions o;
        o.q0 = 9;
        construct_h1_2_h2_1(p, o);
        FAIL("expected ParameterSelectionFailure");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParameterSelectionFailure);
    }
    try {
        CauchyOptions o;
        o.q0_cap = 31;
        construct_h1_2_h2_1(p, o);
        FAIL("expected ParameterSelectionFailure");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParameterSelectionFailure);
        CHECK(std::string(e.what()).find("alpha") != std::string::npos);
    }
}

TEST_CASE("HDL derivation") {
    CHECK(derive_hdl_profile(make_profile(Variant::HL, 8, 4, 2, 4, 2, 1)).n == 20);
    auto relabel = make_profile(Variant::HL, 4, 2, 2, 0, 0, 1);
    auto hp = derive_hdl_profile(relabel);
    CHECK(hp.n == relabel.n);
    CHECK(hdl_selection(relabel).shortened.empty());
    CHECK(derive_hdl_profile(make_profile(Variant::HL, 5, 3, 1, 1, 1, 1)).k == 3);
    CHECK_THROWS_AS(derive_hdl_profile(make_profile(Variant::HL, 1, 1, 2, 1, 1, 1)), Error);

    struct Case {
        Family f;
        CodeProfile p;
        std::optional<std::uint64_t> q;
    };
    for (const auto& c : {Case{Family::H11H21, make_profile(Variant::HL, 5, 3, 2, 1, 1, 2), {}},
                          Case{Family::H11H21, make_profile(Variant::HL, 5, 3, 1, 1, 1, 1), 9},
                          Case{Family::General, make_profile(Variant::HL, 3, 2, 1, 1, 1, 1), {}},
                          Case{Family::H12H21, make_profile(Variant::HL, 4, 3, 2, 2, 1, 1), {}}}) {
        CAPTURE(c.p.describe());
        auto hl = construct(c.f, c.p, c.q);
        auto rep = verify_hl_mrc(hl.code.matrix, c.p);
        REQUIRE(rep.passed);
        auto h = derive_hdl_from_hl(hl.code, &rep);
        check_levels(h);
        CHECK(h.profile == derive_hdl_profile(c.p));
        CHECK(verify_hdl_mrc(h.matrix, h.profile).passed);
        CHECK(min_distance(h.matrix) == h.profile.h1 + h.profile.h2 + h.profile.delta + 1);
    }

    auto bad = construct_h1_1_h2_1(make_profile(Variant::HL, 5, 3, 2, 1, 1, 2));
    for (std::size_t c = 0; c < bad.code.profile.n; ++c) bad.code.matrix(0, c) = 0;
    try {
        derive_hdl_from_hl(bad.code);
        FAIL("expected NotVerifiedInput");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotVerifiedInput);
    }
}

TEST_CASE("h1 = h2 = 1 family against the two-level distance bound") {
    auto two_level = [](const CodeProfile& p) {
        for (const auto& b : distance_bounds(p))
            if (b.name == "dmin upper two-level") return b.value;
        return std::int64_t{-1};
    };
    auto ex = construct_h1_1_h2_1(make_profile(Variant::HL, 5, 3, 2, 1, 1, 2));
    CHECK(two_level(ex.code.profile) == 7);
    CHECK(min_distance(ex.code.matrix) == 7);

    // maximally recoverable, yet one short of the bound
    auto q9 = construct_h1_1_h2_1(make_profile(Variant::HL, 5, 3, 1, 1, 1, 1), {9});
    REQUIRE(verify_hl_mrc(q9.code.matrix, q9.code.profile).passed);
    CHECK(two_level(q9.code.profile) == 7);
    CHECK(min_distance(q9.code.matrix) == 6);
}
