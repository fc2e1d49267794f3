#pragma once

// Explicit HL-MRC families, their algebraic certificate and the HDL derivation.

#include <optional>
#include <string>
#include <vector>

#include "hmrc/parity_check.hpp"
#include "hmrc/patterns.hpp"
#include "hmrc/verify.hpp"

namespace hmrc {

enum class Family { General, H1Eq1, H11H21, H12H21, DerivedHdl };

const char* to_string(Family f) noexcept;
Family family_from_string(const std::string& s);

struct ConstructionParams {
    std::uint64_t q = 0;   // local field size
    unsigned m1 = 1;       // [mid level : local level]
    unsigned m = 1;        // [top : local level]
    std::uint64_t q0 = 0;  // base field of the h1=2, h2=1 family
    std::uint64_t subgroup_order = 0;
    std::uint64_t subgroup_generator = 0;
    std::vector<Elem> alpha, beta, lambda, mu;
    std::vector<std::string> notes;  // k-wise generator provenance, fallbacks
};

struct Construction {
    ParityCheck code;
    ConstructionParams params;
};

struct GeneralOptions {
    std::optional<std::uint64_t> q;  // overrides the smallest prime power above n2
};

/// Vandermonde local rows over F_q, Moore mid rows over F_{q^M1}, Moore
/// global rows over F_{q^M} with q^M1-power rows.
Construction construct_general(const CodeProfile& p, const GeneralOptions& opt = {});

/// h1 = 1: one global row alpha^(q^h2), everything in F_{q^M1}.
Construction construct_h1_1(const CodeProfile& p, const GeneralOptions& opt = {});

struct SubgroupOptions {
    std::optional<std::uint64_t> q;  // default: smallest prime power with a suitable subgroup
};

/// h1 = h2 = 1 over a single prime-power field.
Construction construct_h1_1_h2_1(const CodeProfile& p, const SubgroupOptions& opt = {});

struct CauchyOptions {
    std::optional<std::uint64_t> q0;  // force this base field
    std::uint64_t q0_cap = 256;       // search limit
    unsigned max_extension_degree = 4;
};

/// h1 = 2, h2 = 1 with Cauchy blocks over F_q0 and lambda in an extension.
Construction construct_h1_2_h2_1(const CodeProfile& p, const CauchyOptions& opt = {});

/// Dispatch by family name; `q` feeds the family's field override.
Construction construct(Family f, const CodeProfile& p, std::optional<std::uint64_t> q = std::nullopt);

/// (delta, h2) pattern: delta_sets and gamma_sets filled, global_set empty.
std::vector<ErasurePattern> enumerate_delta_gamma_patterns(const CodeProfile& p);

struct PsiThetaOutcome {
    bool psi_ok = true;    // every Psi_i h2-wise independent over F_q
    bool theta_ok = true;  // Theta h1-wise independent over F_{q^M1} (false when Psi fails)
    std::vector<Elem> theta;
    bool ok() const { return psi_ok && theta_ok; }
};

/// Ψ/Θ conditions for one (delta, h2) pattern of a general-family code.
/// Throws SingularLocalBlock or SingularGammaBlock.
PsiThetaOutcome check_theorem2(const ParityCheck& h, const ErasurePattern& pattern);

enum class CertificateMethod { PsiThetaConditions, ExhaustiveRank };

const char* to_string(CertificateMethod m) noexcept;

struct ConstructionCertificate {
    CertificateMethod method = CertificateMethod::ExhaustiveRank;
    bool passed = false;
    std::uint64_t patterns_checked = 0;
    std::uint64_t psi_failures = 0, theta_failures = 0;  // PsiThetaConditions only
    std::optional<ErasurePattern> witness;
    std::size_t rank_deficit = 0;  // ExhaustiveRank only
};

/// Every (delta, h2) pattern through check_theorem2; needs family "general".
ConstructionCertificate certify_theorem2(const ParityCheck& h);

/// Exhaustive rank verification wrapped as a certificate.
ConstructionCertificate certify_exhaustive(const ParityCheck& h, const VerifyOptions& opt = {});

/// HDL profile obtained from an HL profile: r1' = r2 floor(r1/r2),
/// k' = floor(k/r1) r1'; r2, h1, h2, delta kept. Throws UnsupportedCase.
CodeProfile derive_hdl_profile(const CodeProfile& hl);

/// Shortens and punctures a verified HL-MRC into an HDL code with standard
/// bands. Runs the exhaustive verifier first unless `verified` is given.
ParityCheck derive_hdl_from_hl(const ParityCheck& hl, const VerificationReport* verified = nullptr);

/// Coordinates of the HL code kept by derive_hdl_from_hl, in HDL order, and
/// the shortened ones.
struct HdlSelection {
    std::vector<std::size_t> kept, shortened;
};
HdlSelection hdl_selection(const CodeProfile& hl);

/// Row basis of `m` rearranged into the standard bands of `p` (local rows
/// supported on each local group, mid rows on each mid group, the rest).
/// Throws ShapeMismatch when the row space does not split that way.
FMatrix banded_basis(const FMatrix& m, const CodeProfile& p);

}  // namespace hmrc
