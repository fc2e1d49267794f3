#pragma once

// Finite fields and extension towers.
//
// Every element of a tower level is stored as one integer: the little-endian
// base-p number formed by its coordinates in the canonical tower basis (inner
// extension first). With that encoding the embedding of a lower level into a
// higher one is the identity on integers, the subfield of size Q is exactly
// {0, ..., Q-1}, and flattening over a level of size Q is a base-Q digit split.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hmrc/error.hpp"

namespace hmrc {

using Elem = std::uint64_t;

class GaloisField;
using FieldPtr = std::shared_ptr<const GaloisField>;

/// Largest field that gets exp/log tables.
inline constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

/// One level of a tower: either a prime field or a simple extension of the
/// level below by a monic irreducible polynomial.
class GaloisField {
  public:
    static FieldPtr prime(std::uint64_t p);
    /// `modulus` holds degree+1 coefficients over `base`, ascending, monic.
    static FieldPtr extension(FieldPtr base, std::vector<Elem> modulus);

    std::uint64_t characteristic() const noexcept { return p_; }
    std::uint64_t size() const noexcept { return size_; }
    /// Degree over the prime field.
    unsigned prime_degree() const noexcept { return prime_degree_; }
    /// Degree over the level directly below (1 for a prime field).
    unsigned degree() const noexcept { return degree_; }
    const GaloisField* base() const noexcept { return base_.get(); }
    FieldPtr base_ptr() const noexcept { return base_; }
    const std::vector<Elem>& modulus() const noexcept { return modulus_; }
    bool contains(Elem x) const noexcept { return x < size_; }
    bool has_tables() const noexcept { return !exp_.empty(); }

    Elem add(Elem a, Elem b) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept;
    Elem mul(Elem a, Elem b) const noexcept;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const noexcept;

    /// Multiplicative order of a nonzero element.
    std::uint64_t order(Elem a) const;
    /// First element in canonical order whose order is size-1.
    Elem primitive_element() const;

  private:
    GaloisField() = default;

    Elem slow_mul(Elem a, Elem b) const noexcept;
    void build_tables();

    std::uint64_t p_ = 0;
    std::uint64_t size_ = 0;
    unsigned prime_degree_ = 1;
    unsigned degree_ = 1;
    FieldPtr base_;
    std::vector<Elem> modulus_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
    Elem primitive_ = 0;
};

/// Serializable description of a tower.
struct FieldSpec {
    std::uint64_t p = 0;
    std::vector<unsigned> degrees;                ///< relative degree per extension step
    std::vector<std::vector<Elem>> moduli;        ///< one per step; empty means canonical

    bool operator==(const FieldSpec&) const = default;
};

/// Immutable chain F_p = level 0 ⊂ level 1 ⊂ ... ⊂ top.
class FieldTower {
  public:
    FieldTower() = default;

    static FieldTower make(const FieldSpec& spec);
    static FieldTower prime(std::uint64_t p);
    /// F_q as a tower over its prime field (one level if q is prime).
    static FieldTower for_prime_power(std::uint64_t q);
    /// Absolute degrees over F_p (e.g. {M1, M}); each must divide the next.
    static FieldTower make_absolute(std::uint64_t p, std::span<const unsigned> absolute_degrees);

    FieldTower extend(unsigned degree, std::optional<std::vector<Elem>> modulus = std::nullopt) const;
    FieldTower prefix(std::size_t level_count) const;

    std::size_t level_count() const noexcept { return levels_.size(); }
    std::size_t top() const noexcept { return levels_.size() - 1; }
    const GaloisField& level(std::size_t i) const { return *levels_.at(i); }
    FieldPtr level_ptr(std::size_t i) const { return levels_.at(i); }
    std::uint64_t size(std::size_t i) const { return levels_.at(i)->size(); }
    std::uint64_t characteristic() const { return levels_.front()->characteristic(); }
    std::optional<std::size_t> level_of_size(std::uint64_t q) const;
    /// Lowest level containing x.
    std::size_t level_of(Elem x) const;

    FieldSpec spec() const;

    /// Coordinates of x (living at `from`) over level `over`, little-endian.
    std::vector<Elem> flatten(Elem x, std::size_t from, std::size_t over) const;
    Elem unflatten(std::span<const Elem> coords, std::size_t over) const;
    /// Base-p digits of x at the given level.
    std::vector<Elem> coords(Elem x, std::size_t level) const { return flatten(x, level, 0); }

    /// x^{|fixed|}: the Frobenius map of x's level over the level `fixed`.
    Elem frobenius(Elem x, std::size_t level_of_x, std::size_t fixed) const;

    /// True if both towers agree on their first `count` levels.
    bool shares_prefix(const FieldTower& other, std::size_t count) const;

  private:
    std::vector<FieldPtr> levels_;
};

/// Subgroup of the multiplicative group of a field plus one representative
/// per coset.
struct Subgroup {
    Elem generator = 1;
    std::uint64_t order = 1;
    std::vector<Elem> elements;    ///< sorted ascending
    std::vector<Elem> coset_reps;  ///< smallest element of each coset, ascending

    bool contains(const GaloisField& f, Elem x) const { return x != 0 && f.pow(x, order) == 1; }
};

Subgroup make_subgroup(const GaloisField& f, std::uint64_t order);
/// Orders d | q-1 with d >= min_size and (q-1)/d >= min_cosets, ascending.
std::vector<std::uint64_t> feasible_subgroup_orders(const GaloisField& f, std::uint64_t min_size,
                                                    std::uint64_t min_cosets);
/// Smallest feasible subgroup; throws NoSuitableSubgroup.
Subgroup find_subgroup(const GaloisField& f, std::uint64_t min_size, std::uint64_t min_cosets);

// Integer helpers.
bool is_prime(std::uint64_t n);
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q);
std::uint64_t smallest_prime_power_above(std::uint64_t n);
std::uint64_t smallest_prime_power_at_least(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
/// b^e, or nullopt on overflow past 2^63.
std::optional<std::uint64_t> checked_pow(std::uint64_t b, unsigned e);

/// Monic irreducibility over `base` (coefficients ascending).
bool is_irreducible(const GaloisField& base, std::span<const Elem> poly);
/// Smallest monic irreducible of the given degree, ordering candidates by the
/// integer sum c_i * |base|^i over the non-leading coefficients.
std::vector<Elem> canonical_modulus(const GaloisField& base, unsigned degree);

}  // namespace hmrc
