#include "hmrc/bounds.hpp"

#include "hmrc/error.hpp"
#include "hmrc/patterns.hpp"

namespace hmrc {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    if (b <= 0) throw Error(ErrorCode::ParameterRange, "ceil_div needs a positive divisor");
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

std::int64_t dmin_upper_rdelta(std::int64_t n, std::int64_t k, std::int64_t r, std::int64_t delta_param) {
    if (r < 1 || r > k || k > n) throw Error(ErrorCode::ParameterRange, "need 1 <= r <= k <= n");
    if (delta_param < 1) throw Error(ErrorCode::ParameterRange, "need delta >= 1");
    return n - k + 1 - (ceil_div(k, r) - 1) * (delta_param - 1);
}

std::int64_t dmin_data_local(std::int64_t h, std::int64_t delta) {
    if (h < 0 || delta < 0) throw Error(ErrorCode::ParameterRange, "need h, delta >= 0");
    return h + delta + 1;
}

std::int64_t dmin_local(std::int64_t h, std::int64_t r, std::int64_t delta) {
    if (h < 0 || delta < 0 || r < 1) throw Error(ErrorCode::ParameterRange, "need h, delta >= 0 and r >= 1");
    return h + delta + 1 + (h / r) * delta;
}

std::int64_t dmin_upper_hier(std::int64_t n, std::int64_t k, std::int64_t r1, std::int64_t r2, std::int64_t delta1,
                             std::int64_t delta2) {
    if (r2 < 1 || r2 > r1 || r1 > k || k > n) throw Error(ErrorCode::ParameterRange, "need 1 <= r2 <= r1 <= k <= n");
    return n - k + 1 - (ceil_div(k, r2) - 1) * (delta2 - 1) - (ceil_div(k, r1) - 1) * (delta1 - delta2);
}

std::int64_t dmin_hdl(std::int64_t h1, std::int64_t h2, std::int64_t delta) { return h1 + h2 + delta + 1; }

namespace {

// ceil(((groups / den) - 1) * binom) - 4, exactly.
std::int64_t projective_value(std::int64_t groups, std::int64_t den, std::uint64_t binom) {
    return ceil_div((groups - den) * static_cast<std::int64_t>(binom), den) - 4;
}

std::string cond(const std::string& what, std::int64_t lhs, std::int64_t rhs) {
    return what + " (" + std::to_string(lhs) + " vs " + std::to_string(rhs) + ")";
}

}  // namespace

std::vector<BoundResult> field_size_bounds(const CodeProfile& p) {
    if (p.variant != Variant::HL) throw Error(ErrorCode::ParameterRange, "field-size bounds need an HL profile");
    const auto h1 = static_cast<std::int64_t>(p.h1), h2 = static_cast<std::int64_t>(p.h2);
    const auto d = static_cast<std::int64_t>(p.delta);
    const auto t1 = static_cast<std::int64_t>(p.t1), t2 = static_cast<std::int64_t>(p.t2);
    const std::int64_t groups = t1 * t2;  // n / n2
    const std::string r_note = "binomial r read as r2";

    std::vector<BoundResult> out(3);
    auto& a = out[0];
    a.name = "field-size, delta+2 <= h1+h2, h1 <= t1";
    if (!(d + 2 <= h1 + h2)) a.precondition_failures.push_back(cond("delta+2 <= h1+h2", d + 2, h1 + h2));
    if (!(h1 <= t1)) a.precondition_failures.push_back(cond("h1 <= n/n1", h1, t1));
    if (!(h2 <= t2 - 1)) a.precondition_failures.push_back(cond("h2 <= n1/n2 - 1", h2, t2 - 1));
    a.assumptions.push_back(r_note);
    if (a.precondition_failures.empty()) {
        a.applicable = true;
        a.value = projective_value(groups, h1 * h2 + h1 - 1, binomial(p.r2 + p.delta, p.delta + 1));
    }

    auto& b = out[1];
    b.name = "field-size, 4 <= h1+h2 <= delta+2";
    if (!(4 <= h1 + h2)) b.precondition_failures.push_back(cond("4 <= h1+h2", 4, h1 + h2));
    if (!(h1 + h2 <= d + 2)) b.precondition_failures.push_back(cond("h1+h2 <= delta+2", h1 + h2, d + 2));
    if (!(h1 <= t1)) b.precondition_failures.push_back(cond("h1 <= n/n1", h1, t1));
    if (!(h2 <= t2 - 1)) b.precondition_failures.push_back(cond("h2 <= n1/n2 - 1", h2, t2 - 1));
    b.assumptions.push_back(r_note);
    if (b.precondition_failures.empty()) {
        b.applicable = true;
        b.value = projective_value(groups, h1 * h2 + h1 - 1, binomial(p.r2 + p.h1 + p.h2 - 2, p.h1 + p.h2 - 1));
    }

    auto& c = out[2];
    c.name = "field-size, delta+2 <= h1+h2, h1 > t1";
    if (!(d + 2 <= h1 + h2)) c.precondition_failures.push_back(cond("delta+2 <= h1+h2", d + 2, h1 + h2));
    if (!(h1 > t1)) c.precondition_failures.push_back(cond("h1 > n/n1", h1, t1));
    const std::int64_t cap = t2 - ceil_div(h1, t1);
    if (!(h2 <= cap)) c.precondition_failures.push_back(cond("h2 <= n1/n2 - ceil(h1/t1)", h2, cap));
    c.assumptions.push_back(r_note);
    if (c.precondition_failures.empty()) {
        c.applicable = true;
        c.value = projective_value(groups, t1 * h2 + h1 - 1, binomial(p.r2 + p.delta, p.delta + 1));
    }
    return out;
}

BoundResult field_size_lb(const CodeProfile& p) {
    BoundResult best;
    best.name = "field-size lower bound";
    best.assumptions.push_back("binomial r read as r2");
    for (const auto& b : field_size_bounds(p)) {
        if (b.applicable) {
            if (!best.applicable || b.value > best.value) best.value = b.value;
            best.applicable = true;
        } else {
            for (const auto& f : b.precondition_failures) best.precondition_failures.push_back(b.name + ": " + f);
        }
    }
    if (best.applicable) best.precondition_failures.clear();
    return best;
}

std::vector<BoundResult> distance_bounds(const CodeProfile& p) {
    std::vector<BoundResult> out;
    const auto n = static_cast<std::int64_t>(p.n), k = static_cast<std::int64_t>(p.k);
    const auto d = static_cast<std::int64_t>(p.delta);
    auto add = [&](const std::string& name, auto fn) {
        BoundResult b;
        b.name = name;
        try {
            b.value = fn();
            b.applicable = true;
        } catch (const Error& e) {
            b.precondition_failures.push_back(e.what());
        }
        out.push_back(b);
    };
    add("dmin upper (r, delta)", [&] { return dmin_upper_rdelta(n, k, static_cast<std::int64_t>(p.r2), d + 1); });
    out.back().assumptions.push_back("r = r2, delta = local distance delta+1");
    if (p.variant == Variant::HL || p.variant == Variant::HDL) {
        add("dmin upper two-level", [&] {
            return dmin_upper_hier(n, k, static_cast<std::int64_t>(p.r1), static_cast<std::int64_t>(p.r2),
                                   static_cast<std::int64_t>(p.h2) + d + 1, d + 1);
        });
        out.back().assumptions.push_back("delta2 = delta+1, delta1 = h2+delta+1");
    }
    if (p.variant == Variant::HDL)
        add("dmin HDL-MRC", [&] { return dmin_hdl(static_cast<std::int64_t>(p.h1), static_cast<std::int64_t>(p.h2), d); });
    if (p.variant == Variant::DataLocal)
        add("dmin data-local MRC", [&] { return dmin_data_local(static_cast<std::int64_t>(p.h2), d); });
    if (p.variant == Variant::Local)
        add("dmin local MRC", [&] {
            return dmin_local(static_cast<std::int64_t>(p.h2), static_cast<std::int64_t>(p.r2), d);
        });
    return out;
}

}  // namespace hmrc
