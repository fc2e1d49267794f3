#include "hmrc/constructions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "hmrc/kwise.hpp"

namespace hmrc {

const char* to_string(Family f) noexcept {
    switch (f) {
        case Family::General: return "general";
        case Family::H1Eq1: return "h1eq1";
        case Family::H11H21: return "h11h21";
        case Family::H12H21: return "h12h21";
        case Family::DerivedHdl: return "derived-hdl";
    }
    return "?";
}

Family family_from_string(const std::string& s) {
    for (Family f : {Family::General, Family::H1Eq1, Family::H11H21, Family::H12H21, Family::DerivedHdl})
        if (s == to_string(f)) return f;
    throw Error(ErrorCode::ParameterRange, "unknown family '" + s + "'");
}

const char* to_string(CertificateMethod m) noexcept {
    return m == CertificateMethod::PsiThetaConditions ? "theorem2" : "exhaustive";
}

namespace {

void require_hl(const CodeProfile& p, const char* who) {
    if (p.variant != Variant::HL) throw Error(ErrorCode::ParameterRange, std::string(who) + " needs an HL profile");
}

std::string kwise_note(const char* what, const KWiseSet& s) {
    return std::string(what) + ": " + to_string(s.source) + ", degree " + std::to_string(s.degree) + ", " + s.note;
}

// Places an r x |cols| block into h at row offset r0.
void put(FMatrix& h, std::size_t r0, const std::vector<std::size_t>& cols, const FMatrix& blk) {
    for (std::size_t r = 0; r < blk.rows(); ++r)
        for (std::size_t j = 0; j < cols.size(); ++j) h(r0 + r, cols[j]) = blk(r, j);
}

std::vector<std::size_t> iota_vec(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// Shared skeleton of the Moore-based families. `global_rows(i, s)` returns
// the h1 x n2 block H_{i,s}.
ParityCheck assemble(const CodeProfile& p, const FieldTower& tw, const FMatrix& m0,
                     const std::function<FMatrix(std::size_t)>& mid_block,
                     const std::function<FMatrix(std::size_t, std::size_t)>& global_block, std::size_t local_level,
                     std::size_t mid_level, std::size_t global_level, const std::string& family) {
    ParityCheck pc;
    pc.profile = p;
    pc.tower = tw;
    pc.family = family;
    pc.bands = standard_bands(p, local_level, mid_level, global_level);
    pc.matrix = FMatrix(tw.level_ptr(tw.top()), p.n - p.k, p.n);
    const FMatrix m0_top = m0.embed(tw.level_ptr(tw.top()));
    for (const auto& b : pc.bands) {
        if (b.kind == BandKind::Local) {
            put(pc.matrix, b.row_begin, p.local_group(b.mid, b.local), m0_top);
        } else if (b.kind == BandKind::Mid) {
            for (std::size_t s = 0; s < p.t2; ++s) put(pc.matrix, b.row_begin, p.local_group(b.mid, s), mid_block(s));
        } else {
            for (std::size_t i = 0; i < p.t1; ++i)
                for (std::size_t s = 0; s < p.t2; ++s)
                    put(pc.matrix, b.row_begin, p.local_group(i, s), global_block(i, s));
        }
    }
    return pc;
}

FMatrix local_vandermonde(const FieldTower& tw, std::size_t lq, const CodeProfile& p) {
    const GaloisField& f = tw.level(lq);
    const Elem beta = f.size() > 2 ? f.primitive_element() : 1;
    std::vector<Elem> nodes = {0};
    for (std::size_t j = 1; j < p.n2; ++j) nodes.push_back(f.pow(beta, j));
    return vandermonde(tw.level_ptr(lq), nodes, p.delta, 0);
}

std::uint64_t pick_q(const CodeProfile& p, const GeneralOptions& opt) {
    if (!opt.q) return smallest_prime_power_above(p.n2);
    if (!prime_power(*opt.q)) throw Error(ErrorCode::ParameterSelectionFailure, "q must be a prime power");
    if (*opt.q < p.n2) throw Error(ErrorCode::ParameterSelectionFailure, "q >= n2 needed for distinct local nodes");
    return *opt.q;
}

}  // namespace

Construction construct_general(const CodeProfile& p, const GeneralOptions& opt) {
    require_hl(p, "construct_general");
    Construction out;
    auto& prm = out.params;
    prm.q = pick_q(p, opt);
    FieldTower tw = FieldTower::for_prime_power(prm.q);
    const std::size_t lq = tw.top();
    std::size_t mid = lq, top = lq;
    if (p.h2 > 0) {
        const auto target = bch_row_bound(prm.q, p.n2 * p.t2, (p.delta + 1) * p.h2);
        KWiseSet a = generate_kwise(tw, p.n2 * p.t2, (p.delta + 1) * p.h2, static_cast<unsigned>(target));
        prm.notes.push_back(kwise_note("alpha", a) + ", bound " + std::to_string(target));
        tw = a.tower;
        mid = top = a.level;
        prm.alpha = a.elems;
        prm.m1 = a.degree;
    }
    if (p.h1 > 0) {
        const std::uint64_t q1 = tw.size(mid);
        const std::size_t kk = (p.delta + 1) * (p.h2 + 1) * p.h1;
        const auto target = bch_row_bound(q1, p.n, kk);
        KWiseSet l = generate_kwise(tw, p.n, kk, static_cast<unsigned>(target));
        prm.notes.push_back(kwise_note("lambda", l) + ", bound " + std::to_string(target));
        tw = l.tower;
        top = l.level;
        prm.lambda = l.elems;
        prm.m = prm.m1 * l.degree;
    } else {
        prm.m = prm.m1;
    }
    FieldPtr F = tw.level_ptr(top);
    const std::uint64_t q = prm.q, q1 = tw.size(mid);
    auto mid_block = [&](std::size_t s) {
        std::span<const Elem> a(prm.alpha.data() + s * p.n2, p.n2);
        return moore(F, a, p.h2, q);
    };
    auto global_block = [&](std::size_t i, std::size_t s) {
        std::span<const Elem> l(prm.lambda.data() + p.local_index(i, s) * p.n2, p.n2);
        return moore(F, l, p.h1, q1);
    };
    out.code = assemble(p, tw, local_vandermonde(tw, lq, p), mid_block, global_block, lq, mid, top,
                        to_string(Family::General));
    return out;
}

Construction construct_h1_1(const CodeProfile& p, const GeneralOptions& opt) {
    require_hl(p, "construct_h1_1");
    if (p.h1 != 1) throw Error(ErrorCode::ParameterRange, "construct_h1_1 needs h1 = 1");
    Construction out;
    auto& prm = out.params;
    prm.q = pick_q(p, opt);
    FieldTower tw = FieldTower::for_prime_power(prm.q);
    const std::size_t lq = tw.top();
    const std::size_t kk = (p.delta + 1) * (p.h2 + 1);
    const auto target = bch_row_bound(prm.q, p.n2 * p.t2, kk);
    KWiseSet a = generate_kwise(tw, p.n2 * p.t2, kk, static_cast<unsigned>(target));
    prm.notes.push_back(kwise_note("alpha", a) + ", bound " + std::to_string(target));
    tw = a.tower;
    const std::size_t top = a.level;
    prm.alpha = a.elems;
    prm.m1 = prm.m = a.degree;
    FieldPtr F = tw.level_ptr(top);
    const std::uint64_t q = prm.q;
    auto mid_block = [&](std::size_t s) {
        std::span<const Elem> v(prm.alpha.data() + s * p.n2, p.n2);
        return moore(F, v, p.h2, q);
    };
    auto global_block = [&](std::size_t, std::size_t s) {
        FMatrix m(F, 1, p.n2);
        for (std::size_t j = 0; j < p.n2; ++j) {
            Elem x = prm.alpha[s * p.n2 + j];
            for (std::size_t e = 0; e < p.h2; ++e) x = F->pow(x, q);
            m(0, j) = x;
        }
        return m;
    };
    out.code = assemble(p, tw, local_vandermonde(tw, lq, p), mid_block, global_block, lq, top, top,
                        to_string(Family::H1Eq1));
    return out;
}

Construction construct_h1_1_h2_1(const CodeProfile& p, const SubgroupOptions& opt) {
    require_hl(p, "construct_h1_1_h2_1");
    if (p.h1 != 1 || p.h2 != 1) throw Error(ErrorCode::ParameterRange, "construct_h1_1_h2_1 needs h1 = h2 = 1");
    std::uint64_t q = 0;
    if (opt.q) {
        if (!prime_power(*opt.q)) throw Error(ErrorCode::ParameterSelectionFailure, "q must be a prime power");
        q = *opt.q;
    } else {
        for (std::uint64_t c = 2;; c = smallest_prime_power_above(c)) {
            if (c > (std::uint64_t{1} << 20))
                throw Error(ErrorCode::NoSuitableSubgroup, "no field up to 2^20 has a suitable subgroup");
            auto t = FieldTower::for_prime_power(c);
            if (!feasible_subgroup_orders(t.level(t.top()), p.n2, p.t2).empty()) {
                q = c;
                break;
            }
        }
    }
    FieldTower tw = FieldTower::for_prime_power(q);
    const std::size_t top = tw.top();
    FieldPtr F = tw.level_ptr(top);
    Subgroup g = find_subgroup(*F, p.n2, p.t2);
    Construction out;
    auto& prm = out.params;
    prm.q = q;
    prm.subgroup_order = g.order;
    prm.subgroup_generator = g.generator;
    prm.alpha.assign(g.elements.begin(), g.elements.begin() + static_cast<std::ptrdiff_t>(p.n2));
    prm.lambda.assign(g.coset_reps.begin(), g.coset_reps.begin() + static_cast<std::ptrdiff_t>(p.t2));
    prm.notes.push_back("subgroup of order " + std::to_string(g.order) + " generated by " +
                        std::to_string(g.generator) + ", " + std::to_string(g.coset_reps.size()) + " cosets");
    FMatrix m0 = vandermonde(F, prm.alpha, p.delta, 1);
    FMatrix top_row = vandermonde(F, prm.alpha, 1, static_cast<unsigned>(p.delta + 1));
    auto mid_block = [&](std::size_t s) { return FMatrix(F, 1, p.n2, std::vector<Elem>(p.n2, prm.lambda[s])); };
    auto global_block = [&](std::size_t, std::size_t) { return top_row; };
    out.code = assemble(p, tw, m0, mid_block, global_block, top, top, top, to_string(Family::H11H21));
    return out;
}

Construction construct_h1_2_h2_1(const CodeProfile& p, const CauchyOptions& opt) {
    require_hl(p, "construct_h1_2_h2_1");
    if (p.h1 != 2 || p.h2 != 1) throw Error(ErrorCode::ParameterRange, "construct_h1_2_h2_1 needs h1 = 2, h2 = 1");
    const std::uint64_t lower = 2 * (p.n2 + p.delta) + 3;
    const std::size_t groups = p.t1 * p.t2;
    std::vector<std::uint64_t> candidates;
    if (opt.q0) {
        if (!prime_power(*opt.q0)) throw Error(ErrorCode::ParameterSelectionFailure, "q0 must be a prime power");
        if (*opt.q0 < lower)
            throw Error(ErrorCode::ParameterSelectionFailure,
                        "q0 >= 2(n2+delta)+3 = " + std::to_string(lower) + " violated by q0 = " + std::to_string(*opt.q0));
        candidates.push_back(*opt.q0);
    } else {
        for (std::uint64_t c = smallest_prime_power_at_least(lower); c <= opt.q0_cap; c = smallest_prime_power_above(c))
            candidates.push_back(c);
        if (candidates.empty())
            throw Error(ErrorCode::ParameterSelectionFailure, "q0 >= 2(n2+delta)+3 = " + std::to_string(lower) +
                                                                  " exceeds the cap " + std::to_string(opt.q0_cap));
    }
    std::string last_failure = "subgroup of size >= n2+2 with >= t1*t2 cosets";
    for (std::uint64_t q0 : candidates) {
        FieldTower base = FieldTower::for_prime_power(q0);
        const std::size_t lq = base.top();
        const GaloisField& f = base.level(lq);
        auto orders = feasible_subgroup_orders(f, p.n2 + 2, groups);
        if (orders.empty()) continue;
        if (last_failure.rfind("subgroup", 0) == 0) last_failure = "alpha with both ratios in G";
        std::reverse(orders.begin(), orders.end());
        for (auto d : orders) {
            Subgroup g = make_subgroup(f, d);
            std::vector<char> in_g(q0, 0);
            for (Elem e : g.elements) in_g[e] = 1;
            auto ratio_in_g = [&](Elem x, Elem b, Elem c) { return in_g[f.div(f.sub(x, b), f.sub(x, c))] != 0; };
            std::vector<Elem> alpha, beta3;
            bool found = false;
            for (Elem b1 = 0; b1 < q0 && !found; ++b1)
                for (Elem b2 = 0; b2 < q0 && !found; ++b2)
                    for (Elem b3 = 0; b3 < q0 && !found; ++b3) {
                        if (b1 == b2 || b1 == b3 || b2 == b3) continue;
                        alpha.clear();
                        for (Elem x = 0; x < q0 && alpha.size() < p.n2; ++x) {
                            if (x == b1 || x == b2 || x == b3) continue;
                            if (ratio_in_g(x, b2, b3) && ratio_in_g(x, b1, b3)) alpha.push_back(x);
                        }
                        if (alpha.size() == p.n2) {
                            found = true;
                            beta3 = {b1, b2, b3};
                        }
                    }
            if (!found) continue;
            std::vector<Elem> beta;
            for (Elem x = 0; x < q0 && beta.size() < p.delta; ++x)
                if (std::find(alpha.begin(), alpha.end(), x) == alpha.end() &&
                    std::find(beta3.begin(), beta3.end(), x) == beta3.end())
                    beta.push_back(x);
            if (beta.size() < p.delta) {
                last_failure = "delta further distinct beta values (q0 = " + std::to_string(q0) + ")";
                continue;
            }
            beta.insert(beta.end(), beta3.begin(), beta3.end());

            KWiseSet lam;
            const std::size_t kk = std::min<std::size_t>(4, groups);
            try {
                lam = search_columns(base, {groups, kk, opt.max_extension_degree});
            } catch (const Error& e) {
                if (e.code() != ErrorCode::ExtensionCapExceeded) throw;
                lam = bch_columns(base, groups, kk);
            }
            Construction out;
            auto& prm = out.params;
            prm.q0 = q0;
            prm.q = q0;
            prm.m = lam.degree;
            prm.subgroup_order = g.order;
            prm.subgroup_generator = g.generator;
            prm.alpha = alpha;
            prm.beta = beta;
            prm.lambda = lam.elems;
            prm.mu.assign(g.coset_reps.begin(), g.coset_reps.begin() + static_cast<std::ptrdiff_t>(groups));
            prm.notes.push_back("subgroup of order " + std::to_string(g.order) + " with " +
                                std::to_string(g.coset_reps.size()) + " cosets");
            prm.notes.push_back(kwise_note("lambda", lam));

            const FieldTower& tw = lam.tower;
            FieldPtr F = tw.level_ptr(tw.top());
            std::vector<Elem> b_local(beta.begin(), beta.begin() + static_cast<std::ptrdiff_t>(p.delta));
            FMatrix m0 = cauchy(tw.level_ptr(lq), alpha, b_local);
            auto inv_row = [&](Elem b, Elem scale) {
                FMatrix r(F, 1, p.n2);
                for (std::size_t j = 0; j < p.n2; ++j) r(0, j) = F->div(scale, F->sub(alpha[j], b));
                return r;
            };
            const Elem bd1 = beta[p.delta], bd2 = beta[p.delta + 1], bd3 = beta[p.delta + 2];
            auto mid_block = [&](std::size_t) { return inv_row(bd1, 1); };
            auto global_block = [&](std::size_t i, std::size_t s) {
                const std::size_t idx = s + i * p.t2;
                return vstack(inv_row(bd2, prm.lambda[idx]), inv_row(bd3, prm.mu[idx]));
            };
            out.code = assemble(p, tw, m0, mid_block, global_block, lq, lq, tw.top(), to_string(Family::H12H21));
            return out;
        }
    }
    throw Error(ErrorCode::ParameterSelectionFailure, "no q0 in range satisfies: " + last_failure);
}

Construction construct(Family f, const CodeProfile& p, std::optional<std::uint64_t> q) {
    switch (f) {
        case Family::General: return construct_general(p, {q});
        case Family::H1Eq1: return construct_h1_1(p, {q});
        case Family::H11H21: return construct_h1_1_h2_1(p, {q});
        case Family::H12H21: {
            CauchyOptions o;
            o.q0 = q;
            return construct_h1_2_h2_1(p, o);
        }
        case Family::DerivedHdl: break;
    }
    throw Error(ErrorCode::ParameterRange, "derived-hdl is not a construction family");
}

std::vector<ErasurePattern> enumerate_delta_gamma_patterns(const CodeProfile& p) {
    std::vector<ErasurePattern> out;
    ErasurePattern cur;
    cur.delta_sets.resize(p.local_group_count());
    cur.gamma_sets.resize(p.t1);
    std::function<void(std::size_t)> gam;
    std::function<void(std::size_t)> loc = [&](std::size_t g) {
        if (g == p.local_group_count()) return gam(0);
        const auto& b = p.local_group(g / p.t2, g % p.t2);
        for_each_subset(b.size(), p.delta, [&](Mask m) {
            cur.delta_sets[g].clear();
            for (auto j : mask_to_indices(m)) cur.delta_sets[g].push_back(b[j]);
            loc(g + 1);
            return true;
        });
    };
    gam = [&](std::size_t i) {
        if (i == p.t1) return out.push_back(cur);
        std::vector<std::size_t> free;
        for (auto c : p.mids[i].all) {
            bool used = false;
            for (std::size_t s = 0; s < p.t2 && !used; ++s) {
                const auto& d = cur.delta_sets[p.local_index(i, s)];
                used = std::find(d.begin(), d.end(), c) != d.end();
            }
            if (!used) free.push_back(c);
        }
        for_each_subset(free.size(), p.h2, [&](Mask m) {
            cur.gamma_sets[i].clear();
            for (auto j : mask_to_indices(m)) cur.gamma_sets[i].push_back(free[j]);
            gam(i + 1);
            return true;
        });
    };
    loc(0);
    return out;
}

namespace {

struct GeneralView {
    std::size_t lq, mid, top;
    std::uint64_t q;
};

GeneralView general_view(const ParityCheck& h) {
    if (h.family != to_string(Family::General))
        throw Error(ErrorCode::MethodUnavailable, "the theorem2 certificate needs a general-family code, got '" +
                                                      h.family + "'");
    GeneralView v{h.tower.top(), h.tower.top(), h.tower.top(), 0};
    bool have_local = false, have_mid = false, have_global = false;
    for (const auto& b : h.bands) {
        if (b.kind == BandKind::Local && !have_local) v.lq = b.level, have_local = true;
        if (b.kind == BandKind::Mid && !have_mid) v.mid = b.level, have_mid = true;
        if (b.kind == BandKind::Global && !have_global) v.top = b.level, have_global = true;
    }
    if (!have_local) v.lq = 0;
    if (!have_mid) v.mid = v.lq;
    v.q = h.tower.size(v.lq);
    return v;
}

// a_bar - a_delta * L restricted to one local group.
std::vector<Elem> reduce_row(const GaloisField& F, const std::vector<Elem>& a_d, const std::vector<Elem>& a_db,
                             const FMatrix& l) {
    std::vector<Elem> out(a_db);
    for (std::size_t j = 0; j < out.size(); ++j) {
        Elem s = 0;
        for (std::size_t t = 0; t < a_d.size(); ++t) s = F.add(s, F.mul(a_d[t], l(t, j)));
        out[j] = F.sub(out[j], s);
    }
    return out;
}

}  // namespace

PsiThetaOutcome check_theorem2(const ParityCheck& h, const ErasurePattern& pattern) {
    const GeneralView v = general_view(h);
    const CodeProfile& p = h.profile;
    const FMatrix& H = h.matrix;
    const GaloisField& F = H.field();
    FieldPtr Fp = H.field_ptr();
    if (pattern.delta_sets.size() != p.local_group_count() || pattern.gamma_sets.size() != p.t1)
        throw Error(ErrorCode::ShapeMismatch, "pattern does not match the profile");
    const auto global_rows = h.band_rows(BandKind::Global, 0);
    PsiThetaOutcome out;
    for (std::size_t i = 0; i < p.t1; ++i) {
        const auto local_rows = h.band_rows(BandKind::Local, i);
        const auto mid_rows = h.band_rows(BandKind::Mid, i);
        std::vector<Elem> psi, phi;
        std::vector<std::size_t> rest;  // coordinates of A_i outside every Delta
        for (std::size_t s = 0; s < p.t2; ++s) {
            const auto& b = p.local_group(i, s);
            const auto& dset = pattern.delta_sets[p.local_index(i, s)];
            std::vector<std::size_t> d, db;
            for (std::size_t j = 0; j < b.size(); ++j)
                (std::find(dset.begin(), dset.end(), b[j]) != dset.end() ? d : db).push_back(j);
            if (d.size() != p.delta) throw Error(ErrorCode::ShapeMismatch, "delta set outside its local group");
            std::vector<std::size_t> rows(local_rows.begin() + static_cast<std::ptrdiff_t>(s * p.delta),
                                          local_rows.begin() + static_cast<std::ptrdiff_t>((s + 1) * p.delta));
            FMatrix m0 = H.select_rows(rows).select_cols(b);
            FMatrix l(Fp, p.delta, db.size());
            if (p.delta > 0) {
                FMatrix inv;
                try {
                    inv = inverse(m0.select_cols(d));
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::Singular) throw;
                    throw Error(ErrorCode::SingularLocalBlock,
                                "local block of group (" + std::to_string(i) + "," + std::to_string(s) + ") is singular");
                }
                l = multiply(inv, m0.select_cols(db));
            }
            auto pick = [&](std::size_t row, const std::vector<std::size_t>& idx) {
                std::vector<Elem> v2;
                for (auto j : idx) v2.push_back(H(row, b[j]));
                return v2;
            };
            if (p.h2 > 0) {
                auto r = reduce_row(F, pick(mid_rows[0], d), pick(mid_rows[0], db), l);
                psi.insert(psi.end(), r.begin(), r.end());
            }
            if (p.h1 > 0) {
                auto r = reduce_row(F, pick(global_rows[0], d), pick(global_rows[0], db), l);
                phi.insert(phi.end(), r.begin(), r.end());
            }
            for (auto j : db) rest.push_back(b[j]);
        }
        FMatrix z;
        std::vector<std::size_t> g, gb;
        for (std::size_t t = 0; t < rest.size(); ++t) {
            const auto& gs = pattern.gamma_sets[i];
            (std::find(gs.begin(), gs.end(), rest[t]) != gs.end() ? g : gb).push_back(t);
        }
        if (g.size() != p.h2) throw Error(ErrorCode::ShapeMismatch, "gamma set outside its mid group");
        if (p.h2 > 0) {
            auto ind = is_k_wise_independent(h.tower, psi, v.mid, v.lq, p.h2);
            if (!ind.independent) out.psi_ok = false;
            FMatrix fm = moore(Fp, psi, p.h2, v.q);
            try {
                z = multiply(inverse(fm.select_cols(g)), fm.select_cols(gb));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::Singular) throw;
                if (out.psi_ok)
                    throw Error(ErrorCode::SingularGammaBlock, "F restricted to Gamma is singular in mid group " +
                                                                   std::to_string(i));
                continue;
            }
        }
        if (p.h1 > 0) {
            std::vector<Elem> pg, pgb;
            for (auto t : g) pg.push_back(phi[t]);
            for (auto t : gb) pgb.push_back(phi[t]);
            auto th = p.h2 > 0 ? reduce_row(F, pg, pgb, z) : pgb;
            out.theta.insert(out.theta.end(), th.begin(), th.end());
        }
    }
    if (!out.psi_ok) {
        out.theta_ok = false;
        out.theta.clear();
        return out;
    }
    if (p.h1 > 0) out.theta_ok = is_k_wise_independent(h.tower, out.theta, v.top, v.mid, p.h1).independent;
    return out;
}

ConstructionCertificate certify_theorem2(const ParityCheck& h) {
    general_view(h);
    ConstructionCertificate c;
    c.method = CertificateMethod::PsiThetaConditions;
    c.passed = true;
    for (const auto& pat : enumerate_delta_gamma_patterns(h.profile)) {
        auto o = check_theorem2(h, pat);
        ++c.patterns_checked;
        if (!o.psi_ok) ++c.psi_failures;
        else if (!o.theta_ok) ++c.theta_failures;
        if (!o.ok() && c.passed) {
            c.passed = false;
            c.witness = pat;
        }
    }
    return c;
}

ConstructionCertificate certify_exhaustive(const ParityCheck& h, const VerifyOptions& opt) {
    auto rep = verify_mrc(h.matrix, h.profile, opt);
    ConstructionCertificate c;
    c.method = CertificateMethod::ExhaustiveRank;
    c.passed = rep.passed;
    c.patterns_checked = rep.patterns_checked;
    if (rep.witness) {
        c.witness = rep.witness->pattern;
        c.rank_deficit = rep.witness->rank_deficit;
    }
    return c;
}

CodeProfile derive_hdl_profile(const CodeProfile& hl) {
    if (hl.variant != Variant::HL) throw Error(ErrorCode::UnsupportedCase, "derivation starts from an HL profile");
    const std::size_t r1p = hl.r2 * (hl.r1 / hl.r2);
    const std::size_t t1p = hl.k / hl.r1;
    if (r1p == 0) throw Error(ErrorCode::UnsupportedCase, "r1 < r2 leaves no complete local group");
    if (t1p == 0) throw Error(ErrorCode::UnsupportedCase, "k < r1 leaves no complete mid group");
    return make_profile(Variant::HDL, t1p * r1p, r1p, hl.r2, hl.h1, hl.h2, hl.delta);
}

HdlSelection hdl_selection(const CodeProfile& hl) {
    const CodeProfile hdl = derive_hdl_profile(hl);
    const std::size_t t1p = hdl.t1, whole = hdl.r1 / hl.r2;
    HdlSelection sel;
    std::vector<std::size_t> tail;  // primary coordinates of the dropped mid groups
    for (std::size_t i = 0; i < hl.t1; ++i) {
        std::vector<std::size_t> primary, other;
        for (std::size_t s = 0; s < hl.t2; ++s) {
            const auto& b = hl.local_group(i, s);
            for (std::size_t j = 0; j < hl.r2; ++j) (primary.size() < hl.r1 ? primary : other).push_back(b[j]);
        }
        if (i >= t1p) {
            tail.insert(tail.end(), primary.begin(), primary.end());
            continue;
        }
        for (std::size_t s = 0; s < whole; ++s) {
            const auto& b = hl.local_group(i, s);
            sel.kept.insert(sel.kept.end(), b.begin(), b.end());
        }
        sel.shortened.insert(sel.shortened.end(), primary.begin() + static_cast<std::ptrdiff_t>(hdl.r1), primary.end());
        sel.kept.insert(sel.kept.end(), other.begin(), other.end());
    }
    const std::size_t extra = tail.size() - hl.h1;
    sel.shortened.insert(sel.shortened.end(), tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(extra));
    sel.kept.insert(sel.kept.end(), tail.begin() + static_cast<std::ptrdiff_t>(extra), tail.end());
    std::sort(sel.shortened.begin(), sel.shortened.end());
    return sel;
}

FMatrix banded_basis(const FMatrix& m, const CodeProfile& p) {
    FieldPtr F = m.field_ptr();
    std::vector<std::vector<Elem>> chosen;
    auto add_from = [&](const FMatrix& cand, const std::vector<std::size_t>& cols, std::size_t want,
                        const std::string& what) {
        std::size_t added = 0;
        for (std::size_t r = 0; r < cand.rows() && added < want; ++r) {
            std::vector<Elem> full(m.cols(), 0);
            for (std::size_t j = 0; j < cols.size(); ++j) full[cols[j]] = cand(r, j);
            auto trial = chosen;
            trial.push_back(full);
            if (rank(FMatrix::from_rows(F, trial)) == trial.size()) {
                chosen = std::move(trial);
                ++added;
            }
        }
        if (added != want)
            throw Error(ErrorCode::ShapeMismatch, "row space has " + std::to_string(added) + " independent " + what +
                                                      " rows, expected " + std::to_string(want));
    };
    for (std::size_t i = 0; i < p.t1; ++i) {
        for (std::size_t s = 0; s < p.t2; ++s) {
            const auto& b = p.local_group(i, s);
            add_from(shortened_dual(m, b), b, p.delta, "local");
        }
        add_from(shortened_dual(m, p.mids[i].all), p.mids[i].all, p.h2, "mid");
    }
    add_from(m, iota_vec(m.cols()), p.h1, "global");
    if (chosen.size() != rank(m)) throw Error(ErrorCode::ShapeMismatch, "bands do not span the row space");
    if (chosen.empty()) return FMatrix(F, 0, m.cols());
    return FMatrix::from_rows(F, chosen);
}

ParityCheck derive_hdl_from_hl(const ParityCheck& hl, const VerificationReport* verified) {
    const CodeProfile& p = hl.profile;
    const CodeProfile hdl = derive_hdl_profile(p);
    if (verified) {
        if (!verified->passed || !verified->exhaustive)
            throw Error(ErrorCode::NotVerifiedInput, "input is not an exhaustively verified HL-MRC");
    } else if (!verify_hl_mrc(hl.matrix, p).passed) {
        throw Error(ErrorCode::NotVerifiedInput, "input fails HL-MRC verification");
    }
    const HdlSelection sel = hdl_selection(p);
    std::vector<char> gone(p.n, 0);
    for (auto c : sel.shortened) gone[c] = 1;
    std::vector<std::size_t> cols = sel.kept;
    std::vector<char> kept(p.n, 0);
    for (auto c : sel.kept) kept[c] = 1;
    for (std::size_t c = 0; c < p.n; ++c)
        if (!kept[c] && !gone[c]) cols.push_back(c);  // punctured
    FMatrix shortened = hl.matrix.select_cols(cols);
    FMatrix dual = shortened_dual(shortened, iota_vec(sel.kept.size()));
    if (dual.rows() != hdl.n - hdl.k || rank(dual) != hdl.n - hdl.k)
        throw Error(ErrorCode::VerificationFailed, "derived code has redundancy " + std::to_string(rank(dual)) +
                                                       ", expected " + std::to_string(hdl.n - hdl.k));
    ParityCheck out;
    out.profile = hdl;
    out.tower = hl.tower;
    out.family = to_string(Family::DerivedHdl);
    out.matrix = banded_basis(dual, hdl);
    out.bands = standard_bands(hdl, 0, 0, 0);
    for (auto& b : out.bands) {
        std::size_t lv = 0;
        for (std::size_t r = b.row_begin; r < b.row_end; ++r)
            for (std::size_t c = 0; c < hdl.n; ++c) lv = std::max(lv, hl.tower.level_of(out.matrix(r, c)));
        b.level = lv;
    }
    return out;
}

}  // namespace hmrc
