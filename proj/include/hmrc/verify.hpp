#pragma once

// Maximal-recoverability verification.

#include <cstdint>
#include <optional>
#include <string>

#include "hmrc/matrix.hpp"
#include "hmrc/parity_check.hpp"
#include "hmrc/patterns.hpp"

namespace hmrc {

struct Witness {
    ErasurePattern pattern;
    std::size_t rank_deficit = 0;
};

struct VerificationReport {
    bool passed = true;
    std::uint64_t patterns_checked = 0;
    std::optional<Witness> witness;
    bool exhaustive = true;  // false for sample mode
};

struct VerifyOptions {
    unsigned jobs = 1;
    /// 0 = exhaustive; otherwise check this many patterns drawn uniformly.
    std::size_t sample = 0;
    std::uint64_t seed = 1;
};

/// rank(H|_X) = |X| for every maximal pattern X of the profile. H must be
/// (n-k) x n. Works for every variant.
VerificationReport verify_mrc(const FMatrix& h, const CodeProfile& p, const VerifyOptions& opt = {});

VerificationReport verify_hl_mrc(const FMatrix& h, const CodeProfile& p, const VerifyOptions& opt = {});
VerificationReport verify_hdl_mrc(const FMatrix& h, const CodeProfile& p, const VerifyOptions& opt = {});
VerificationReport verify_local_mrc(const FMatrix& h, const CodeProfile& p, const VerifyOptions& opt = {});
VerificationReport verify_data_local_mrc(const FMatrix& h, const CodeProfile& p, const VerifyOptions& opt = {});

enum class MdsMode { ParityCheck, Generator };
/// Parity-check mode: every (n-k)-column subset nonsingular (n-k = rows).
/// Generator mode: every k-column subset nonsingular (k = rows).
bool verify_mds(const FMatrix& m, MdsMode mode);

/// Literal definition check: generator G = nullspace(H); for HL/HDL every
/// E-set must carry an MDS puncturing, for Local/DataLocal every deletion of
/// delta coordinates per local group must. Returns true iff all pass.
bool verify_by_definition(const FMatrix& h, const CodeProfile& p);

/// Smallest number of linearly dependent columns.
std::size_t min_distance(const FMatrix& h);

/// Parity-check matrix of the punctured code C|_{A_i}: rows of the row space
/// of H vanishing outside A_i, restricted to A_i. Rows of H that already
/// vanish there are kept as they are and come first.
FMatrix middle_restriction(const FMatrix& h, const CodeProfile& p, std::size_t i);
/// Profile of that middle code: Local for HL, DataLocal for HDL.
CodeProfile middle_profile(const CodeProfile& p);

/// Basis of {y in rowspace(h) : y_c = 0 for c outside `keep`}, preferring
/// existing rows of h in order; returned columns are restricted to `keep`.
FMatrix shortened_dual(const FMatrix& h, const std::vector<std::size_t>& keep);

}  // namespace hmrc
