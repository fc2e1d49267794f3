#pragma once

// Distance upper bounds and field-size lower bounds.

#include <cstdint>
#include <string>
#include <vector>

#include "hmrc/profile.hpp"

namespace hmrc {

struct BoundResult {
    std::string name;
    std::int64_t value = 0;  // meaningful only when applicable
    bool applicable = false;
    std::vector<std::string> precondition_failures;
    std::vector<std::string> assumptions;
};

/// n - k + 1 - (ceil(k/r) - 1)(delta_param - 1).
std::int64_t dmin_upper_rdelta(std::int64_t n, std::int64_t k, std::int64_t r, std::int64_t delta_param);

/// h + delta + 1.
std::int64_t dmin_data_local(std::int64_t h, std::int64_t delta);

/// h + delta + 1 + floor(h/r) delta.
std::int64_t dmin_local(std::int64_t h, std::int64_t r, std::int64_t delta);

/// n - k + 1 - (ceil(k/r2) - 1)(delta2 - 1) - (ceil(k/r1) - 1)(delta1 - delta2).
std::int64_t dmin_upper_hier(std::int64_t n, std::int64_t k, std::int64_t r1, std::int64_t r2, std::int64_t delta1,
                             std::int64_t delta2);

/// h1 + h2 + delta + 1.
std::int64_t dmin_hdl(std::int64_t h1, std::int64_t h2, std::int64_t delta);

/// The three field-size regimes for an HL profile, each with its
/// preconditions checked literally. The undecorated r is read as r2.
std::vector<BoundResult> field_size_bounds(const CodeProfile& p);

/// Largest applicable field-size bound; applicable = false with every
/// regime's failures when none applies.
BoundResult field_size_lb(const CodeProfile& p);

/// Distance bounds that apply to the profile: the (r, delta) bound with
/// r = r2, delta_param = delta + 1 and, for HL/HDL, the two-level bound with
/// delta2 = delta + 1, delta1 = h2 + delta + 1; the exact HDL/local values.
std::vector<BoundResult> distance_bounds(const CodeProfile& p);

/// ceil(a / b) for b > 0.
std::int64_t ceil_div(std::int64_t a, std::int64_t b);

}  // namespace hmrc
