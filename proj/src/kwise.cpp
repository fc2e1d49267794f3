#include "hmrc/kwise.hpp"

#include <algorithm>
#include <numeric>

#include "hmrc/matrix.hpp"

namespace hmrc {

const char* to_string(KWiseSource s) noexcept { return s == KWiseSource::Bch ? "bch" : "search"; }

unsigned bch_extension_degree(std::uint64_t q, std::size_t n) {
    unsigned m = 1;
    for (;;) {
        auto qm = checked_pow(q, m);
        if (!qm) throw Error(ErrorCode::LengthOverflow, "BCH length exceeds 63-bit range");
        if (*qm - 1 >= n) return m;
        ++m;
    }
}

std::uint64_t bch_row_bound(std::uint64_t q, std::size_t n_cols, std::size_t k) {
    std::uint64_t lg = 0, pw = 1;
    while (pw < n_cols) {
        pw *= q;
        ++lg;
    }
    const std::uint64_t x = k == 0 ? 0 : k - 1;
    const std::uint64_t c = x - x / q;  // ceil((q-1) x / q)
    return 1 + c * lg;
}

namespace {

constexpr std::uint64_t kSearchLimit = std::uint64_t{1} << 24;

struct Expanded {
    FMatrix rows;  // reduced, nonzero rows only
    std::string label;
};

Expanded expand_roots(const FieldTower& ext, std::size_t elevel, std::size_t base, Elem gamma,
                      const std::vector<std::uint64_t>& exps, std::size_t n_cols, const std::string& label) {
    const GaloisField& E = ext.level(elevel);
    const unsigned m = E.prime_degree() / ext.level(base).prime_degree();
    FMatrix big(ext.level_ptr(base), exps.size() * m, n_cols);
    for (std::size_t t = 0; t < exps.size(); ++t) {
        Elem step = E.pow(gamma, exps[t]);
        Elem v = 1;
        for (std::size_t j = 0; j < n_cols; ++j) {
            auto c = ext.flatten(v, elevel, base);
            for (unsigned i = 0; i < m; ++i) big(t * m + i, j) = c[i];
            v = E.mul(v, step);
        }
    }
    Echelon ech = rref(big);
    std::vector<std::size_t> keep(ech.pivots.size());
    std::iota(keep.begin(), keep.end(), 0);
    return {ech.m.select_rows(keep), label};
}

KWiseSet pack_columns(const FieldTower& tower, const FMatrix& rows) {
    const std::size_t base = tower.top();
    KWiseSet out;
    out.base_level = base;
    out.degree = static_cast<unsigned>(std::max<std::size_t>(rows.rows(), 1));
    out.tower = out.degree > 1 ? tower.extend(out.degree) : tower;
    out.level = out.tower.top();
    for (std::size_t j = 0; j < rows.cols(); ++j) {
        std::vector<Elem> coords(out.degree, 0);
        for (std::size_t i = 0; i < rows.rows(); ++i) coords[i] = rows(i, j);
        out.elems.push_back(out.tower.unflatten(coords, base));
    }
    return out;
}

void require_independent(const KWiseSet& s, std::size_t k) {
    if (s.degree == 1 && k > 1 && s.elems.size() > 1)
        throw Error(ErrorCode::VerificationFailed, "degree-1 set cannot be more than 1-wise independent");
    if (s.level == s.base_level) {
        for (Elem e : s.elems)
            if (e == 0) throw Error(ErrorCode::VerificationFailed, "zero element in generated set");
        return;
    }
    auto r = is_k_wise_independent(s.tower, s.elems, s.level, s.base_level, k);
    if (!r.independent) throw Error(ErrorCode::VerificationFailed, "generated set is not k-wise independent");
}

}  // namespace

KWiseSet bch_columns(const FieldTower& tower, std::size_t n_cols, std::size_t k) {
    if (k == 0) throw Error(ErrorCode::ParameterRange, "k must be positive");
    const std::size_t base = tower.top();
    const std::uint64_t q = tower.size(base);
    const unsigned m = bch_extension_degree(q, n_cols);
    FieldTower ext = m > 1 ? tower.extend(m) : tower;
    const std::size_t elevel = ext.top();
    const std::uint64_t len = ext.size(elevel) - 1;
    Elem gamma = ext.size(elevel) > 2 ? ext.level(elevel).primitive_element() : 1;

    std::vector<std::uint64_t> narrow, zero;
    for (std::size_t e = 1; e <= k; ++e) narrow.push_back(e % len);
    for (std::size_t e = 0; e < k; ++e) zero.push_back(e % len);
    Expanded a = expand_roots(ext, elevel, base, gamma, narrow, n_cols, "narrow-sense roots 1..k");
    Expanded b = expand_roots(ext, elevel, base, gamma, zero, n_cols, "roots 0..k-1");
    const Expanded& pick = b.rows.rows() < a.rows.rows() ? b : a;

    KWiseSet out = pack_columns(tower, pick.rows);
    out.source = KWiseSource::Bch;
    out.bch_rows = static_cast<unsigned>(pick.rows.rows());
    out.note = "BCH length " + std::to_string(len) + ", " + pick.label;
    require_independent(out, k);
    return out;
}

KWiseSet search_columns(const FieldTower& tower, const KWiseRequest& req) {
    if (req.k == 0 || req.count < req.k) throw Error(ErrorCode::ParameterRange, "search needs count >= k >= 1");
    const std::size_t base = tower.top();
    for (unsigned d = 1; d <= req.max_extension_degree; ++d) {
        auto full = checked_pow(tower.size(base), d);
        if (!full || *full > kSearchLimit) break;
        FieldTower ext = d > 1 ? tower.extend(d) : tower;
        const std::size_t lv = ext.top();
        const std::uint64_t size = ext.size(lv);
        std::vector<Elem> chosen;
        std::vector<std::vector<Elem>> flat;  // coordinates of chosen elements
        for (Elem x = 1; x < size && chosen.size() < req.count; ++x) {
            auto fx = ext.flatten(x, lv, base);
            const std::size_t s = std::min(req.k - 1, chosen.size());
            bool ok = true;
            if (s > 0) {
                std::vector<std::size_t> c(s);
                std::iota(c.begin(), c.end(), 0);
                do {
                    FMatrix m(ext.level_ptr(base), d, s + 1);
                    for (std::size_t j = 0; j < s; ++j)
                        for (unsigned i = 0; i < d; ++i) m(i, j) = flat[c[j]][i];
                    for (unsigned i = 0; i < d; ++i) m(i, s) = fx[i];
                    ok = rank(m) == s + 1;
                } while (ok && next_combination(c, chosen.size()));
            }
            if (ok) {
                chosen.push_back(x);
                flat.push_back(std::move(fx));
            }
        }
        if (chosen.size() == req.count) {
            KWiseSet out;
            out.tower = ext;
            out.base_level = base;
            out.level = lv;
            out.degree = d;
            out.elems = std::move(chosen);
            out.source = KWiseSource::Search;
            out.note = "greedy search, degree " + std::to_string(d);
            require_independent(out, req.k);
            return out;
        }
    }
    throw Error(ErrorCode::ExtensionCapExceeded, "no " + std::to_string(req.k) + "-wise independent set of " +
                                                     std::to_string(req.count) + " elements within degree " +
                                                     std::to_string(req.max_extension_degree));
}

KWiseSet generate_kwise(const FieldTower& tower, std::size_t count, std::size_t k, unsigned target_degree) {
    KWiseSet bch = bch_columns(tower, count, k);
    if (bch.degree <= target_degree) return bch;
    try {
        KWiseRequest req{count, std::min(k, count), target_degree};
        KWiseSet s = search_columns(tower, req);
        s.note += " (BCH needed degree " + std::to_string(bch.degree) + ")";
        return s;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ExtensionCapExceeded) throw;
    }
    bch.note += " (search within degree " + std::to_string(target_degree) + " failed)";
    return bch;
}

}  // namespace hmrc
