#include "hmrc/patterns.hpp"

#include <algorithm>

#include "hmrc/error.hpp"

namespace hmrc {

std::vector<std::size_t> mask_to_indices(Mask m) {
    std::vector<std::size_t> out;
    while (m) {
        out.push_back(static_cast<std::size_t>(__builtin_ctzll(m)));
        m &= m - 1;
    }
    return out;
}

Mask indices_to_mask(const std::vector<std::size_t>& idx) {
    Mask m = 0;
    for (auto i : idx) m |= Mask{1} << i;
    return m;
}

Mask ErasurePattern::mask() const {
    Mask m = indices_to_mask(global_set);
    for (const auto& d : delta_sets) m |= indices_to_mask(d);
    for (const auto& g : gamma_sets) m |= indices_to_mask(g);
    return m;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void for_each_subset(std::size_t n, std::size_t w, const std::function<bool(Mask)>& visit) {
    if (w > n) return;
    std::vector<std::size_t> c(w);
    for (std::size_t i = 0; i < w; ++i) c[i] = i;
    for (;;) {
        Mask m = 0;
        for (auto i : c) m |= Mask{1} << i;
        if (!visit(m)) return;
        std::size_t i = w;
        while (i > 0 && c[i - 1] == n - w + i - 1) --i;
        if (i == 0) return;
        ++c[i - 1];
        for (std::size_t j = i; j < w; ++j) c[j] = c[j - 1] + 1;
    }
}

namespace {

void require_mask_width(const CodeProfile& p) {
    if (p.n > 64) throw Error(ErrorCode::LengthOverflow, "pattern enumeration supports n <= 64");
}

Mask mask_of(const std::vector<std::size_t>& coords) { return indices_to_mask(coords); }

// All subsets of `coords` with exactly c elements, as masks.
std::vector<Mask> unit_subsets(const std::vector<std::size_t>& coords, std::size_t c) {
    std::vector<Mask> out;
    for_each_subset(coords.size(), c, [&](Mask local) {
        Mask m = 0;
        for (auto j : mask_to_indices(local)) m |= Mask{1} << coords[j];
        out.push_back(m);
        return true;
    });
    return out;
}

struct Unit {
    std::vector<std::size_t> coords;
    std::size_t lo = 0, hi = 0;  // count range
    std::size_t mid = CodeProfile::npos;
    std::size_t base = 0;        // counts above this add to the mid-group tally
    bool closes_mid = false;
};

// Enumerates masks choosing a count in [lo, hi] per unit; `mid_ok` judges each
// mid-group tally when its last unit is placed; total size must equal `total`.
class UnitWalker {
  public:
    UnitWalker(std::vector<Unit> units, std::size_t total, std::function<bool(std::size_t)> mid_ok)
        : units_(std::move(units)), total_(total), mid_ok_(std::move(mid_ok)) {
        min_after_.assign(units_.size() + 1, 0);
        max_after_.assign(units_.size() + 1, 0);
        for (std::size_t u = units_.size(); u-- > 0;) {
            min_after_[u] = min_after_[u + 1] + units_[u].lo;
            max_after_[u] = max_after_[u + 1] + units_[u].hi;
        }
    }

    std::vector<Mask> run() {
        out_.clear();
        rec(0, 0, 0, 0);
        std::sort(out_.begin(), out_.end(), mask_lex_less);
        return std::move(out_);
    }

  private:
    void rec(std::size_t u, Mask acc, std::size_t used, std::size_t tally) {
        if (u == units_.size()) {
            if (used == total_) out_.push_back(acc);
            return;
        }
        const Unit& U = units_[u];
        for (std::size_t c = U.lo; c <= U.hi; ++c) {
            if (used + c + min_after_[u + 1] > total_) break;
            if (used + c + max_after_[u + 1] < total_) continue;
            std::size_t t = tally + (c > U.base ? c - U.base : 0);
            std::size_t next_tally = t;
            if (U.closes_mid) {
                if (!mid_ok_(t)) continue;
                next_tally = 0;
            }
            for (Mask m : unit_subsets(U.coords, c)) rec(u + 1, acc | m, used + c, next_tally);
        }
    }

    std::vector<Unit> units_;
    std::size_t total_;
    std::function<bool(std::size_t)> mid_ok_;
    std::vector<std::size_t> min_after_, max_after_;
    std::vector<Mask> out_;
};

}  // namespace

bool is_maximal_pattern(const CodeProfile& p, Mask x) {
    if (popcount(x) != p.n - p.k) return false;
    for (const auto& g : p.mids) {
        std::size_t excess = popcount(x & mask_of(g.loose));
        for (const auto& b : g.locals) {
            std::size_t c = popcount(x & mask_of(b));
            if (c < p.delta) return false;
            excess += c - p.delta;
        }
        if (excess < p.h2) return false;
    }
    return true;
}

std::vector<Mask> enumerate_erasure_patterns(const CodeProfile& p) {
    require_mask_width(p);
    std::vector<Unit> units;
    for (std::size_t i = 0; i < p.t1; ++i) {
        const auto& g = p.mids[i];
        for (const auto& b : g.locals) units.push_back({b, p.delta, b.size(), i, p.delta, false});
        units.push_back({g.loose, 0, g.loose.size(), i, 0, true});
    }
    units.push_back({p.globals, 0, p.globals.size(), CodeProfile::npos, 0, false});
    const std::size_t h2 = p.h2;
    return UnitWalker(std::move(units), p.n - p.k, [h2](std::size_t t) { return t >= h2; }).run();
}

ErasurePattern decompose(const CodeProfile& p, Mask x) {
    ErasurePattern e;
    for (const auto& g : p.mids) {
        std::vector<std::size_t> extra;
        for (const auto& b : g.locals) {
            std::vector<std::size_t> d;
            for (auto c : b) {
                if (!(x >> c & 1)) continue;
                if (d.size() < p.delta)
                    d.push_back(c);
                else
                    extra.push_back(c);
            }
            e.delta_sets.push_back(std::move(d));
        }
        for (auto c : g.loose)
            if (x >> c & 1) extra.push_back(c);
        std::sort(extra.begin(), extra.end());
        std::vector<std::size_t> gam(extra.begin(), extra.begin() + std::min(p.h2, extra.size()));
        for (std::size_t j = gam.size(); j < extra.size(); ++j) e.global_set.push_back(extra[j]);
        e.gamma_sets.push_back(std::move(gam));
    }
    for (auto c : p.globals)
        if (x >> c & 1) e.global_set.push_back(c);
    std::sort(e.global_set.begin(), e.global_set.end());
    return e;
}

std::vector<Mask> enumerate_e_sets(const CodeProfile& p) {
    require_mask_width(p);
    const std::size_t size = p.k + p.h1;
    if (p.t1 * p.r1 > size) return {};
    const std::size_t from_globals = size - p.t1 * p.r1;
    if (from_globals > p.globals.size()) return {};
    std::vector<Unit> units;
    for (std::size_t i = 0; i < p.t1; ++i) {
        const auto& g = p.mids[i];
        for (const auto& b : g.locals) units.push_back({b, 0, std::min(p.r2, b.size()), i, 0, false});
        units.push_back({g.loose, 0, g.loose.size(), i, 0, true});
    }
    units.push_back({p.globals, from_globals, from_globals, CodeProfile::npos, 0, false});
    const std::size_t r1 = p.r1;
    return UnitWalker(std::move(units), size, [r1](std::size_t t) { return t == r1; }).run();
}

std::uint64_t count_e_sets(const CodeProfile& p) {
    const std::size_t size = p.k + p.h1;
    if (p.t1 * p.r1 > size) return 0;
    const std::size_t from_globals = size - p.t1 * p.r1;
    // generating polynomial of one mid group, truncated at degree r1
    std::vector<std::uint64_t> poly(p.r1 + 1, 0);
    poly[0] = 1;
    auto times = [&](const std::vector<std::uint64_t>& factor) {
        std::vector<std::uint64_t> r(p.r1 + 1, 0);
        for (std::size_t a = 0; a <= p.r1; ++a)
            for (std::size_t b = 0; b < factor.size() && a + b <= p.r1; ++b) r[a + b] += poly[a] * factor[b];
        poly = std::move(r);
    };
    const auto& g = p.mids.empty() ? MidGroup{} : p.mids.front();
    for (const auto& b : g.locals) {
        std::vector<std::uint64_t> f;
        for (std::size_t c = 0; c <= std::min(p.r2, b.size()); ++c) f.push_back(binomial(b.size(), c));
        times(f);
    }
    std::vector<std::uint64_t> loose;
    for (std::size_t c = 0; c <= g.loose.size(); ++c) loose.push_back(binomial(g.loose.size(), c));
    times(loose);
    std::uint64_t per_mid = poly[p.r1], total = 1;
    for (std::size_t i = 0; i < p.t1; ++i) total *= per_mid;
    return total * binomial(p.globals.size(), from_globals);
}

}  // namespace hmrc
