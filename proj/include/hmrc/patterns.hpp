#pragma once

// Erasure patterns and E-sets as 64-bit coordinate masks.

#include <cstdint>
#include <functional>
#include <vector>

#include "hmrc/profile.hpp"

namespace hmrc {

using Mask = std::uint64_t;

inline std::size_t popcount(Mask m) { return static_cast<std::size_t>(__builtin_popcountll(m)); }
std::vector<std::size_t> mask_to_indices(Mask m);
Mask indices_to_mask(const std::vector<std::size_t>& idx);
/// Lexicographic order of the sorted index lists.
inline bool mask_lex_less(Mask a, Mask b) {
    Mask d = a ^ b;
    return d != 0 && (a & d & (~d + 1)) != 0;
}

struct ErasurePattern {
    std::vector<std::vector<std::size_t>> delta_sets;  // one per local group, flattened (i, s) order
    std::vector<std::vector<std::size_t>> gamma_sets;  // one per mid group
    std::vector<std::size_t> global_set;

    Mask mask() const;
    bool operator==(const ErasurePattern&) const = default;
};

/// True iff X is a maximal erasure pattern: at least delta erasures in every
/// local group, at least h2 erasures beyond those in every mid group, and
/// |X| = n - k.
bool is_maximal_pattern(const CodeProfile& p, Mask x);

/// Every distinct maximal pattern, in lexicographic order. Throws
/// LengthOverflow when n > 64.
std::vector<Mask> enumerate_erasure_patterns(const CodeProfile& p);

/// Canonical split of a maximal pattern: first delta erased coordinates of each
/// local group, then the first h2 remaining erased coordinates of each mid
/// group, the rest global.
ErasurePattern decompose(const CodeProfile& p, Mask x);

/// Sets E with |E| = k + h1, |E n B_{i,s}| <= r2, |E n A_i| = r1; global
/// coordinates are unconstrained members. Lexicographic order.
std::vector<Mask> enumerate_e_sets(const CodeProfile& p);
/// Number of E-sets, by counting without enumeration.
std::uint64_t count_e_sets(const CodeProfile& p);

/// Lexicographic successor walk over all size-w subsets of [0, n).
void for_each_subset(std::size_t n, std::size_t w, const std::function<bool(Mask)>& visit);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace hmrc
