#pragma once

// Sets of extension elements that are k-wise independent over a subfield.

#include <string>
#include <vector>

#include "hmrc/field.hpp"

namespace hmrc {

enum class KWiseSource { Bch, Search };

const char* to_string(KWiseSource s) noexcept;

struct KWiseSet {
    FieldTower tower;        // input tower extended by one level (unless degree 1)
    std::size_t base_level;  // independence is over this level
    std::size_t level;       // elements live here
    unsigned degree = 1;     // [level : base_level]
    std::vector<Elem> elems;
    KWiseSource source = KWiseSource::Bch;
    unsigned bch_rows = 0;   // row count of the BCH parity check (when computed)
    std::string note;        // which root set or why the fallback was taken
};

struct KWiseRequest {
    std::size_t count = 0;
    std::size_t k = 1;
    unsigned max_extension_degree = 8;
};

/// BCH parity-check columns over the top level of `tower` (size Q): the code
/// length is Q^m - 1 for the least m with Q^m - 1 >= n_cols, designed distance
/// k+1. Rows of both the narrow-sense (roots 1..k) and the b = 0 (roots
/// 0..k-1) parity checks are expanded over F_Q and row-reduced; the smaller
/// one wins, narrow-sense on ties. The first n_cols columns are packed into a
/// new level of degree m' = row count.
KWiseSet bch_columns(const FieldTower& tower, std::size_t n_cols, std::size_t k);

/// Greedy scan of extensions of degree 1, 2, ..., max_extension_degree over the
/// top level: an element joins iff the set stays k-wise independent. Fields
/// above 2^24 elements are not scanned.
KWiseSet search_columns(const FieldTower& tower, const KWiseRequest& req);

/// BCH when its degree is at most target_degree, otherwise the greedy search
/// capped at target_degree, otherwise BCH anyway.
KWiseSet generate_kwise(const FieldTower& tower, std::size_t count, std::size_t k, unsigned target_degree);

/// BCH row-count bound 1 + ceil((Q-1)/Q (k-1)) * ceil(log_Q n_cols).
std::uint64_t bch_row_bound(std::uint64_t q, std::size_t n_cols, std::size_t k);

/// Least m with q^m - 1 >= n (at least 1).
unsigned bch_extension_degree(std::uint64_t q, std::size_t n);

}  // namespace hmrc
