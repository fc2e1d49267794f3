#include "hmrc/profile.hpp"

#include <numeric>

#include "hmrc/error.hpp"

namespace hmrc {

const char* to_string(Variant v) noexcept {
    switch (v) {
        case Variant::DataLocal: return "DataLocal";
        case Variant::Local: return "Local";
        case Variant::HDL: return "HDL";
        case Variant::HL: return "HL";
    }
    return "?";
}

Variant variant_from_string(const std::string& s) {
    if (s == "DataLocal") return Variant::DataLocal;
    if (s == "Local") return Variant::Local;
    if (s == "HDL") return Variant::HDL;
    if (s == "HL") return Variant::HL;
    throw Error(ErrorCode::ParseError, "unknown variant '" + s + "'");
}

std::size_t CodeProfile::mid_of(std::size_t c) const { return c < mid_of_.size() ? mid_of_[c] : npos; }
std::size_t CodeProfile::local_of(std::size_t c) const { return c < local_of_.size() ? local_of_[c] : npos; }

std::string CodeProfile::describe() const {
    if (variant == Variant::DataLocal || variant == Variant::Local) {
        return std::string(to_string(variant)) + "[k=" + std::to_string(k) + ",r=" + std::to_string(r2) +
               ",h=" + std::to_string(h2) + ",delta=" + std::to_string(delta) + "]";
    }
    return std::string(to_string(variant)) + "[k=" + std::to_string(k) + ",r1=" + std::to_string(r1) +
           ",r2=" + std::to_string(r2) + ",h1=" + std::to_string(h1) + ",h2=" + std::to_string(h2) +
           ",delta=" + std::to_string(delta) + "]";
}

namespace {

void require_divides(std::size_t a, std::size_t b, const std::string& what) {
    if (a == 0 || b % a != 0) throw Error(ErrorCode::DivisibilityViolation, what + " (" + std::to_string(a) +
                                                                                " does not divide " +
                                                                                std::to_string(b) + ")");
}

}  // namespace

CodeProfile make_profile(Variant variant, std::size_t k, std::size_t r1, std::size_t r2, std::size_t h1,
                         std::size_t h2, std::size_t delta) {
    if (k == 0) throw Error(ErrorCode::ParameterRange, "k must be positive");
    if (r1 == 0 || r2 == 0) throw Error(ErrorCode::ParameterRange, "r1 and r2 must be positive");
    const bool single = variant == Variant::DataLocal || variant == Variant::Local;
    if (single && (r1 != k || h1 != 0))
        throw Error(ErrorCode::ParameterRange, "data-local/local profiles map to r1 = k, h1 = 0");

    CodeProfile p;
    p.variant = variant;
    p.k = k;
    p.r1 = r1;
    p.r2 = r2;
    p.h1 = h1;
    p.h2 = h2;
    p.delta = delta;
    p.n2 = r2 + delta;

    const bool hl = variant == Variant::HL || variant == Variant::Local;
    if (hl) {
        require_divides(r2, r1 + h2, single ? "r | (k+h)" : "r2 | (r1+h2)");
        require_divides(r1, k + h1, "r1 | (k+h1)");
        p.t1 = (k + h1) / r1;
        p.t2 = (r1 + h2) / r2;
        p.n1 = p.t2 * p.n2;
        p.n = p.t1 * p.n1;
    } else {
        require_divides(r2, r1, single ? "r | k" : "r2 | r1");
        require_divides(r1, k, "r1 | k");
        p.t1 = k / r1;
        p.t2 = r1 / r2;
        p.n1 = p.t2 * p.n2 + h2;
        p.n = p.t1 * p.n1 + h1;
    }

    p.mid_of_.assign(p.n, CodeProfile::npos);
    p.local_of_.assign(p.n, CodeProfile::npos);
    std::size_t c = 0;
    for (std::size_t i = 0; i < p.t1; ++i) {
        MidGroup g;
        for (std::size_t s = 0; s < p.t2; ++s) {
            std::vector<std::size_t> b(p.n2);
            std::iota(b.begin(), b.end(), c);
            for (auto x : b) p.local_of_[x] = i * p.t2 + s;
            c += p.n2;
            g.locals.push_back(std::move(b));
        }
        if (!hl) {
            for (std::size_t j = 0; j < h2; ++j) g.loose.push_back(c++);
        }
        g.all.resize(p.n1);
        std::iota(g.all.begin(), g.all.end(), i * p.n1);
        for (auto x : g.all) p.mid_of_[x] = i;
        p.mids.push_back(std::move(g));
    }
    while (c < p.n) p.globals.push_back(c++);
    return p;
}

CodeProfile make_local_profile(Variant variant, std::size_t k, std::size_t r, std::size_t h, std::size_t delta) {
    if (variant != Variant::DataLocal && variant != Variant::Local)
        throw Error(ErrorCode::ParameterRange, "make_local_profile needs DataLocal or Local");
    return make_profile(variant, k, k, r, 0, h, delta);
}

}  // namespace hmrc
