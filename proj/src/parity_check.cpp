#include "hmrc/parity_check.hpp"

#include <algorithm>

namespace hmrc {

const char* to_string(BandKind k) noexcept {
    switch (k) {
        case BandKind::Local: return "local";
        case BandKind::Mid: return "mid";
        case BandKind::Global: return "global";
    }
    return "?";
}

BandKind band_kind_from_string(const std::string& s) {
    if (s == "local") return BandKind::Local;
    if (s == "mid") return BandKind::Mid;
    if (s == "global") return BandKind::Global;
    throw Error(ErrorCode::ParseError, "unknown band kind '" + s + "'");
}

std::vector<std::size_t> ParityCheck::band_support(const Band& b) const {
    switch (b.kind) {
        case BandKind::Local: return profile.local_group(b.mid, b.local);
        case BandKind::Mid: return profile.mids.at(b.mid).all;
        case BandKind::Global: {
            std::vector<std::size_t> all(profile.n);
            for (std::size_t c = 0; c < profile.n; ++c) all[c] = c;
            return all;
        }
    }
    return {};
}

std::vector<std::size_t> ParityCheck::band_rows(BandKind kind, std::size_t mid) const {
    std::vector<std::size_t> rows;
    for (const auto& b : bands) {
        if (b.kind != kind) continue;
        if (kind != BandKind::Global && b.mid != mid) continue;
        for (std::size_t r = b.row_begin; r < b.row_end; ++r) rows.push_back(r);
    }
    return rows;
}

BandScan scan_bands(const ParityCheck& h) {
    BandScan res;
    auto fail = [&](std::string why) {
        res.ok = false;
        res.problem = std::move(why);
        return res;
    };
    const auto& m = h.matrix;
    if (m.cols() != h.profile.n) return fail("matrix has " + std::to_string(m.cols()) + " columns, expected n");
    if (m.rows() != h.profile.n - h.profile.k) return fail("matrix row count differs from n-k");
    std::vector<int> covered(m.rows(), 0);
    for (const auto& b : h.bands) {
        if (b.row_end > m.rows() || b.row_begin > b.row_end) return fail("band rows out of range");
        if (b.level >= h.tower.level_count()) return fail("band level outside tower");
        auto sup = h.band_support(b);
        std::vector<char> in(m.cols(), 0);
        for (auto c : sup) in[c] = 1;
        const std::uint64_t lim = h.tower.size(b.level);
        for (std::size_t r = b.row_begin; r < b.row_end; ++r) {
            ++covered[r];
            for (std::size_t c = 0; c < m.cols(); ++c) {
                if (!in[c] && m(r, c) != 0)
                    return fail(std::string(to_string(b.kind)) + " band row " + std::to_string(r) +
                                " is nonzero outside its support at column " + std::to_string(c));
                if (m(r, c) >= lim)
                    return fail("row " + std::to_string(r) + " has an entry above its declared level");
            }
        }
    }
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (covered[r] != 1) return fail("row " + std::to_string(r) + " is not covered by exactly one band");
    return res;
}

std::vector<Band> standard_bands(const CodeProfile& p, std::size_t local_level, std::size_t mid_level,
                                 std::size_t global_level) {
    std::vector<Band> out;
    std::size_t r = 0;
    for (std::size_t i = 0; i < p.t1; ++i) {
        for (std::size_t s = 0; s < p.t2; ++s) {
            if (p.delta) out.push_back({BandKind::Local, i, s, r, r + p.delta, local_level});
            r += p.delta;
        }
        if (p.h2) out.push_back({BandKind::Mid, i, 0, r, r + p.h2, mid_level});
        r += p.h2;
    }
    if (p.h1) out.push_back({BandKind::Global, 0, 0, r, r + p.h1, global_level});
    return out;
}

}  // namespace hmrc
