#pragma once

// Code parameters and coordinate topology.
//
// All four variants share one layout: mid groups A_i, each holding local
// groups B_{i,s} plus loose mid coordinates, followed by loose global
// coordinates. DataLocal and Local are the single-mid-group special cases
// (r1 = k, h1 = 0, r2 = r, h2 = h).

#include <cstddef>
#include <string>
#include <vector>

namespace hmrc {

enum class Variant { DataLocal, Local, HDL, HL };

const char* to_string(Variant v) noexcept;
Variant variant_from_string(const std::string& s);

struct MidGroup {
    std::vector<std::vector<std::size_t>> locals;  // B_{i,s}
    std::vector<std::size_t> loose;                // mid parities outside every B (HDL only)
    std::vector<std::size_t> all;                  // A_i, ascending
};

struct CodeProfile {
    Variant variant = Variant::HL;
    std::size_t k = 0, r1 = 0, r2 = 0, h1 = 0, h2 = 0, delta = 0;
    std::size_t t1 = 0, t2 = 0, n1 = 0, n2 = 0, n = 0;

    std::vector<MidGroup> mids;
    std::vector<std::size_t> globals;  // coordinates outside every A_i

    std::size_t redundancy() const { return n - k; }
    std::size_t local_group_count() const { return t1 * t2; }
    /// Flattened index of B_{i,s}.
    std::size_t local_index(std::size_t i, std::size_t s) const { return i * t2 + s; }
    const std::vector<std::size_t>& local_group(std::size_t i, std::size_t s) const { return mids[i].locals[s]; }

    /// Mid group containing coordinate c, or npos.
    std::size_t mid_of(std::size_t c) const;
    /// Flattened local group index containing c, or npos.
    std::size_t local_of(std::size_t c) const;

    /// Human-readable "HL[k=..,r1=..,...]".
    std::string describe() const;

    bool operator==(const CodeProfile& o) const {
        return variant == o.variant && k == o.k && r1 == o.r1 && r2 == o.r2 && h1 == o.h1 && h2 == o.h2 &&
               delta == o.delta;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  private:
    friend CodeProfile make_profile(Variant, std::size_t, std::size_t, std::size_t, std::size_t, std::size_t,
                                    std::size_t);
    std::vector<std::size_t> mid_of_, local_of_;
};

/// HL or HDL; DataLocal/Local accept the mapped tuple (r1 = k, h1 = 0).
CodeProfile make_profile(Variant variant, std::size_t k, std::size_t r1, std::size_t r2, std::size_t h1,
                         std::size_t h2, std::size_t delta);
/// [k, r, h, delta] data-local or local profile.
CodeProfile make_local_profile(Variant variant, std::size_t k, std::size_t r, std::size_t h, std::size_t delta);

}  // namespace hmrc
