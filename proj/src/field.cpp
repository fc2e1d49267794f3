#include "hmrc/field.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace hmrc {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
        case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
        case ErrorCode::DegreeDivisibilityViolation: return "DegreeDivisibilityViolation";
        case ErrorCode::InvalidFieldSpec: return "InvalidFieldSpec";
        case ErrorCode::FieldTooLarge: return "FieldTooLarge";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::FieldTooSmall: return "FieldTooSmall";
        case ErrorCode::NoSuitableSubgroup: return "NoSuitableSubgroup";
        case ErrorCode::LevelOrderViolation: return "LevelOrderViolation";
        case ErrorCode::NonSquare: return "NonSquare";
        case ErrorCode::Singular: return "Singular";
        case ErrorCode::Inconsistent: return "Inconsistent";
        case ErrorCode::CoincidentNodes: return "CoincidentNodes";
        case ErrorCode::InvalidPowerBase: return "InvalidPowerBase";
        case ErrorCode::DivisibilityViolation: return "DivisibilityViolation";
        case ErrorCode::ParameterRange: return "ParameterRange";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::ZeroDimensionalCode: return "ZeroDimensionalCode";
        case ErrorCode::UnrecoverablePattern: return "UnrecoverablePattern";
        case ErrorCode::InconsistentReceived: return "InconsistentReceived";
        case ErrorCode::ParameterSelectionFailure: return "ParameterSelectionFailure";
        case ErrorCode::SingularLocalBlock: return "SingularLocalBlock";
        case ErrorCode::SingularGammaBlock: return "SingularGammaBlock";
        case ErrorCode::NotVerifiedInput: return "NotVerifiedInput";
        case ErrorCode::UnsupportedCase: return "UnsupportedCase";
        case ErrorCode::VerificationFailed: return "VerificationFailed";
        case ErrorCode::LengthOverflow: return "LengthOverflow";
        case ErrorCode::ExtensionCapExceeded: return "ExtensionCapExceeded";
        case ErrorCode::MethodUnavailable: return "MethodUnavailable";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// integers

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t pollard_rho(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
        std::uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0) {
            out.push_back(p);
            factor_into(n / p, out);
            return;
        }
    }
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    factor_into(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    auto ps = prime_factors(q);
    if (ps.size() != 1) return std::nullopt;
    unsigned e = 0;
    while (q > 1) {
        q /= ps[0];
        ++e;
    }
    return std::make_pair(ps[0], e);
}

std::uint64_t smallest_prime_power_at_least(std::uint64_t n) {
    for (std::uint64_t q = std::max<std::uint64_t>(n, 2);; ++q) {
        if (prime_power(q)) return q;
    }
}

std::uint64_t smallest_prime_power_above(std::uint64_t n) { return smallest_prime_power_at_least(n + 1); }

std::optional<std::uint64_t> checked_pow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (b != 0 && r > (std::uint64_t{1} << 63) / b) return std::nullopt;
        r *= b;
    }
    return r;
}

// ---------------------------------------------------------------------------
// polynomials over a field (coefficients ascending, no trailing zeros)

namespace {

using Poly = std::vector<Elem>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(const GaloisField& f, Poly a, const Poly& m) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const Elem lead_inv = f.inv(m.back());
    while (a.size() >= m.size()) {
        Elem c = f.mul(a.back(), lead_inv);
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = f.sub(a[shift + j], f.mul(c, m[j]));
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const GaloisField& f, const Poly& a, const Poly& b, const Poly& m) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    return poly_mod(f, std::move(r), m);
}

Poly poly_powmod(const GaloisField& f, Poly a, std::uint64_t e, const Poly& m) {
    Poly r{1};
    a = poly_mod(f, std::move(a), m);
    while (e) {
        if (e & 1) r = poly_mulmod(f, r, a, m);
        e >>= 1;
        if (e) a = poly_mulmod(f, a, a, m);
    }
    return r;
}

Poly poly_gcd(const GaloisField& f, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

bool is_irreducible(const GaloisField& base, std::span<const Elem> poly_in) {
    Poly f(poly_in.begin(), poly_in.end());
    trim(f);
    if (f.size() < 2) return false;
    const std::size_t d = f.size() - 1;
    if (d == 1) return true;
    if (f[0] == 0) return false;
    const std::uint64_t q = base.size();
    // Ben-Or: no factor of degree i <= d/2 iff gcd(x^{q^i} - x, f) = 1.
    Poly h{0, 1};
    for (std::size_t i = 1; i <= d / 2; ++i) {
        h = poly_powmod(base, h, q, f);
        Poly g = h;
        g.resize(std::max<std::size_t>(g.size(), 2), 0);
        g[1] = base.sub(g[1], 1);
        trim(g);
        if (g.empty()) return false;
        Poly c = poly_gcd(base, f, g);
        if (c.size() > 1) return false;
    }
    return true;
}

std::vector<Elem> canonical_modulus(const GaloisField& base, unsigned degree) {
    if (degree == 0) throw Error(ErrorCode::InvalidFieldSpec, "extension degree must be positive");
    const std::uint64_t q = base.size();
    std::vector<Elem> poly(degree + 1, 0);
    poly[degree] = 1;
    // Odometer over the non-leading coefficients, least significant first.
    for (;;) {
        if (poly[0] != 0 && is_irreducible(base, poly)) return poly;
        std::size_t i = 0;
        while (i < degree) {
            if (++poly[i] < q) break;
            poly[i] = 0;
            ++i;
        }
        if (i == degree) throw Error(ErrorCode::ReduciblePolynomial, "no irreducible polynomial found");
    }
}

// ---------------------------------------------------------------------------
// GaloisField

FieldPtr GaloisField::prime(std::uint64_t p) {
    if (!is_prime(p)) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 31)) throw Error(ErrorCode::FieldTooLarge, "characteristic too large");
    auto f = std::shared_ptr<GaloisField>(new GaloisField());
    f->p_ = p;
    f->size_ = p;
    f->prime_degree_ = 1;
    f->degree_ = 1;
    if (p > 2) {
        auto fs = prime_factors(p - 1);
        for (Elem g = 2; g < p; ++g) {
            bool ok = true;
            for (auto r : fs) {
                if (f->pow(g, (p - 1) / r) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                f->primitive_ = g;
                break;
            }
        }
    } else {
        f->primitive_ = 1;
    }
    return f;
}

FieldPtr GaloisField::extension(FieldPtr base, std::vector<Elem> modulus) {
    if (!base) throw Error(ErrorCode::InvalidFieldSpec, "null base field");
    if (modulus.size() < 2) throw Error(ErrorCode::InvalidFieldSpec, "modulus must have degree >= 1");
    if (modulus.back() != 1) throw Error(ErrorCode::InvalidFieldSpec, "modulus must be monic");
    for (Elem c : modulus) {
        if (!base->contains(c)) throw Error(ErrorCode::InvalidFieldSpec, "modulus coefficient outside base level");
    }
    const unsigned d = static_cast<unsigned>(modulus.size() - 1);
    auto sz = checked_pow(base->size(), d);
    if (!sz) throw Error(ErrorCode::FieldTooLarge, "tower exceeds 63-bit element encoding");
    if (!is_irreducible(*base, modulus)) throw Error(ErrorCode::ReduciblePolynomial, "modulus is reducible");

    auto f = std::shared_ptr<GaloisField>(new GaloisField());
    f->p_ = base->p_;
    f->size_ = *sz;
    f->prime_degree_ = base->prime_degree_ * d;
    f->degree_ = d;
    f->base_ = std::move(base);
    f->modulus_ = std::move(modulus);
    if (f->size_ <= kTableLimit) f->build_tables();
    return f;
}

Elem GaloisField::add(Elem a, Elem b) const noexcept {
    if (p_ == 2) return a ^ b;
    if (prime_degree_ == 1) {
        Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem r = 0, w = 1;
    while (a | b) {
        Elem s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        r += s * w;
        w *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

Elem GaloisField::neg(Elem a) const noexcept {
    if (p_ == 2) return a;
    if (prime_degree_ == 1) return a == 0 ? 0 : p_ - a;
    Elem r = 0, w = 1;
    while (a) {
        Elem d = a % p_;
        r += (d == 0 ? 0 : p_ - d) * w;
        w *= p_;
        a /= p_;
    }
    return r;
}

Elem GaloisField::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

Elem GaloisField::mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (prime_degree_ == 1) return static_cast<Elem>(static_cast<u128>(a) * b % p_);
    if (!exp_.empty()) return exp_[log_[a] + log_[b]];
    return slow_mul(a, b);
}

Elem GaloisField::slow_mul(Elem a, Elem b) const noexcept {
    const GaloisField& k = *base_;
    const std::uint64_t q = k.size();
    const unsigned d = degree_;
    Elem da[64], db[64], prod[128] = {};
    for (unsigned i = 0; i < d; ++i) {
        da[i] = a % q;
        a /= q;
        db[i] = b % q;
        b /= q;
    }
    for (unsigned i = 0; i < d; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; j < d; ++j) {
            if (db[j] == 0) continue;
            prod[i + j] = k.add(prod[i + j], k.mul(da[i], db[j]));
        }
    }
    for (unsigned i = 2 * d - 2; i >= d; --i) {
        Elem c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (unsigned j = 0; j < d; ++j) prod[i - d + j] = k.sub(prod[i - d + j], k.mul(c, modulus_[j]));
    }
    Elem r = 0;
    for (unsigned i = d; i-- > 0;) r = r * q + prod[i];
    return r;
}

void GaloisField::build_tables() {
    const std::uint64_t n = size_ - 1;
    auto fs = prime_factors(n);
    auto slow_pow = [&](Elem a, std::uint64_t e) {
        Elem r = 1;
        while (e) {
            if (e & 1) r = slow_mul(r, a);
            a = slow_mul(a, a);
            e >>= 1;
        }
        return r;
    };
    Elem g = 0;
    for (Elem c = 2; c < size_; ++c) {
        bool ok = true;
        for (auto r : fs) {
            if (slow_pow(c, n / r) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            g = c;
            break;
        }
    }
    primitive_ = g;
    exp_.assign(2 * n, 0);
    log_.assign(size_, 0);
    Elem x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        exp_[i] = static_cast<std::uint32_t>(x);
        exp_[i + n] = static_cast<std::uint32_t>(x);
        log_[x] = static_cast<std::uint32_t>(i);
        x = slow_mul(x, g);
    }
}

Elem GaloisField::inv(Elem a) const {
    if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    if (!exp_.empty()) return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
    return pow(a, size_ - 2);
}

Elem GaloisField::pow(Elem a, std::uint64_t e) const noexcept {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (!exp_.empty()) {
        const std::uint64_t n = size_ - 1;
        return exp_[static_cast<std::uint64_t>(static_cast<u128>(log_[a]) * (e % n) % n)];
    }
    Elem r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        e >>= 1;
        if (e) a = mul(a, a);
    }
    return r;
}

std::uint64_t GaloisField::order(Elem a) const {
    if (a == 0) throw Error(ErrorCode::DivisionByZero, "zero has no multiplicative order");
    std::uint64_t n = size_ - 1;
    for (auto r : prime_factors(n == 0 ? 1 : n)) {
        while (n % r == 0 && pow(a, n / r) == 1) n /= r;
    }
    return n;
}

Elem GaloisField::primitive_element() const {
    if (size_ < 3) throw Error(ErrorCode::FieldTooSmall, "field must have at least 3 elements");
    if (primitive_ != 0) return primitive_;
    const std::uint64_t n = size_ - 1;
    auto fs = prime_factors(n);
    for (Elem c = 2; c < size_; ++c) {
        bool ok = true;
        for (auto r : fs) {
            if (pow(c, n / r) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return c;
    }
    throw Error(ErrorCode::FieldTooSmall, "no primitive element found");
}

// ---------------------------------------------------------------------------
// FieldTower

FieldTower FieldTower::prime(std::uint64_t p) {
    FieldTower t;
    t.levels_.push_back(GaloisField::prime(p));
    return t;
}

FieldTower FieldTower::make(const FieldSpec& spec) {
    FieldTower t = prime(spec.p);
    if (!spec.moduli.empty() && spec.moduli.size() != spec.degrees.size())
        throw Error(ErrorCode::InvalidFieldSpec, "moduli count must match degrees count");
    for (std::size_t i = 0; i < spec.degrees.size(); ++i) {
        std::optional<std::vector<Elem>> m;
        if (!spec.moduli.empty() && !spec.moduli[i].empty()) {
            if (spec.moduli[i].size() != spec.degrees[i] + 1u)
                throw Error(ErrorCode::InvalidFieldSpec, "modulus degree does not match declared degree");
            m = spec.moduli[i];
        }
        t = t.extend(spec.degrees[i], std::move(m));
    }
    return t;
}

FieldTower FieldTower::for_prime_power(std::uint64_t q) {
    auto pp = prime_power(q);
    if (!pp) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(q) + " is not a prime power");
    FieldTower t = prime(pp->first);
    if (pp->second > 1) t = t.extend(pp->second);
    return t;
}

FieldTower FieldTower::make_absolute(std::uint64_t p, std::span<const unsigned> absolute_degrees) {
    FieldTower t = prime(p);
    unsigned prev = 1;
    for (unsigned d : absolute_degrees) {
        if (d == 0 || d % prev != 0)
            throw Error(ErrorCode::DegreeDivisibilityViolation,
                        std::to_string(prev) + " does not divide " + std::to_string(d));
        if (d > prev) t = t.extend(d / prev);
        prev = d;
    }
    return t;
}

FieldTower FieldTower::extend(unsigned degree, std::optional<std::vector<Elem>> modulus) const {
    if (levels_.empty()) throw Error(ErrorCode::InvalidFieldSpec, "cannot extend an empty tower");
    if (degree == 0) throw Error(ErrorCode::InvalidFieldSpec, "extension degree must be positive");
    const GaloisField& base = *levels_.back();
    if (!checked_pow(base.size(), degree)) throw Error(ErrorCode::FieldTooLarge, "tower exceeds 63-bit element encoding");
    std::vector<Elem> m = modulus ? std::move(*modulus) : canonical_modulus(base, degree);
    FieldTower t = *this;
    t.levels_.push_back(GaloisField::extension(levels_.back(), std::move(m)));
    return t;
}

FieldTower FieldTower::prefix(std::size_t level_count) const {
    if (level_count == 0 || level_count > levels_.size())
        throw Error(ErrorCode::LevelOrderViolation, "invalid tower prefix length");
    FieldTower t;
    t.levels_.assign(levels_.begin(), levels_.begin() + static_cast<std::ptrdiff_t>(level_count));
    return t;
}

std::optional<std::size_t> FieldTower::level_of_size(std::uint64_t q) const {
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (levels_[i]->size() == q) return i;
    }
    return std::nullopt;
}

std::size_t FieldTower::level_of(Elem x) const {
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (x < levels_[i]->size()) return i;
    }
    throw Error(ErrorCode::LevelOrderViolation, "element outside tower");
}

FieldSpec FieldTower::spec() const {
    FieldSpec s;
    s.p = characteristic();
    for (std::size_t i = 1; i < levels_.size(); ++i) {
        s.degrees.push_back(levels_[i]->degree());
        s.moduli.push_back(levels_[i]->modulus());
    }
    return s;
}

std::vector<Elem> FieldTower::flatten(Elem x, std::size_t from, std::size_t over) const {
    if (from >= levels_.size() || over > from)
        throw Error(ErrorCode::LevelOrderViolation, "flatten requires over_level <= element level");
    const std::uint64_t q = levels_[over]->size();
    const unsigned n = levels_[from]->prime_degree() / levels_[over]->prime_degree();
    std::vector<Elem> out(n);
    for (unsigned i = 0; i < n; ++i) {
        out[i] = x % q;
        x /= q;
    }
    return out;
}

Elem FieldTower::unflatten(std::span<const Elem> coords, std::size_t over) const {
    const std::uint64_t q = levels_.at(over)->size();
    Elem r = 0;
    for (std::size_t i = coords.size(); i-- > 0;) r = r * q + coords[i];
    return r;
}

Elem FieldTower::frobenius(Elem x, std::size_t level_of_x, std::size_t fixed) const {
    if (fixed > level_of_x) throw Error(ErrorCode::LevelOrderViolation, "Frobenius base above element level");
    return levels_.at(level_of_x)->pow(x, levels_[fixed]->size());
}

bool FieldTower::shares_prefix(const FieldTower& other, std::size_t count) const {
    if (count > levels_.size() || count > other.levels_.size()) return false;
    for (std::size_t i = 0; i < count; ++i) {
        if (levels_[i] == other.levels_[i]) continue;
        if (levels_[i]->size() != other.levels_[i]->size() || levels_[i]->modulus() != other.levels_[i]->modulus())
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// subgroups

std::vector<std::uint64_t> feasible_subgroup_orders(const GaloisField& f, std::uint64_t min_size,
                                                    std::uint64_t min_cosets) {
    const std::uint64_t n = f.size() - 1;
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        for (std::uint64_t c : {d, n / d}) {
            if (c >= min_size && n / c >= min_cosets) out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Subgroup make_subgroup(const GaloisField& f, std::uint64_t order) {
    const std::uint64_t n = f.size() - 1;
    if (order == 0 || n % order != 0) throw Error(ErrorCode::NoSuitableSubgroup, "order must divide q-1");
    if (f.size() > kTableLimit) throw Error(ErrorCode::FieldTooLarge, "subgroup enumeration limited to small fields");
    Subgroup g;
    g.order = order;
    auto fs = prime_factors(order == 1 ? 1 : order);
    for (Elem c = 1; c < f.size(); ++c) {
        if (f.pow(c, order) != 1) continue;
        bool exact = true;
        if (order > 1) {
            for (auto r : fs) {
                if (f.pow(c, order / r) == 1) {
                    exact = false;
                    break;
                }
            }
        }
        if (exact) {
            g.generator = c;
            break;
        }
    }
    Elem x = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
        g.elements.push_back(x);
        x = f.mul(x, g.generator);
    }
    std::sort(g.elements.begin(), g.elements.end());
    std::vector<char> seen(f.size(), 0);
    for (Elem c = 1; c < f.size(); ++c) {
        if (seen[c]) continue;
        g.coset_reps.push_back(c);
        for (Elem e : g.elements) seen[f.mul(c, e)] = 1;
    }
    return g;
}

Subgroup find_subgroup(const GaloisField& f, std::uint64_t min_size, std::uint64_t min_cosets) {
    auto orders = feasible_subgroup_orders(f, min_size, min_cosets);
    if (orders.empty())
        throw Error(ErrorCode::NoSuitableSubgroup, "no subgroup of size >= " + std::to_string(min_size) + " with >= " +
                                                       std::to_string(min_cosets) + " cosets in F_" +
                                                       std::to_string(f.size()));
    return make_subgroup(f, orders.front());
}

}  // namespace hmrc
