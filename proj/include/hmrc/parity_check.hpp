#pragma once

// Parity-check matrix with labeled row bands.

#include <string>
#include <vector>

#include "hmrc/matrix.hpp"
#include "hmrc/profile.hpp"

namespace hmrc {

enum class BandKind { Local, Mid, Global };

const char* to_string(BandKind k) noexcept;
BandKind band_kind_from_string(const std::string& s);

struct Band {
    BandKind kind = BandKind::Global;
    std::size_t mid = 0;    // i for Local/Mid
    std::size_t local = 0;  // s for Local
    std::size_t row_begin = 0, row_end = 0;
    std::size_t level = 0;  // tower level holding the band's entries

    std::size_t rows() const { return row_end - row_begin; }
    bool operator==(const Band&) const = default;
};

struct ParityCheck {
    CodeProfile profile;
    FieldTower tower;
    FMatrix matrix;  // over tower top
    std::vector<Band> bands;
    std::string family;

    /// Columns a band may touch.
    std::vector<std::size_t> band_support(const Band& b) const;
    /// Rows of all bands of the given kind restricted to mid group i (or all for Global).
    std::vector<std::size_t> band_rows(BandKind kind, std::size_t mid) const;
};

struct BandScan {
    bool ok = true;
    std::string problem;
};

/// Checks dimensions, row coverage by bands, zeros outside each band's
/// support and that entries live at the declared level.
BandScan scan_bands(const ParityCheck& h);

/// Standard band layout: for each i, delta local rows per s, then h2 mid
/// rows; h1 global rows last.
std::vector<Band> standard_bands(const CodeProfile& p, std::size_t local_level, std::size_t mid_level,
                                 std::size_t global_level);

}  // namespace hmrc
