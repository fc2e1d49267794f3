#pragma once

// Dense matrices over one level of a field tower.

#include <cstddef>
#include <span>
#include <vector>

#include "hmrc/field.hpp"

namespace hmrc {

class FMatrix {
  public:
    FMatrix() = default;
    FMatrix(FieldPtr field, std::size_t rows, std::size_t cols);
    FMatrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

    static FMatrix identity(FieldPtr field, std::size_t n);
    static FMatrix from_rows(FieldPtr field, const std::vector<std::vector<Elem>>& rows);

    const GaloisField& field() const { return *field_; }
    FieldPtr field_ptr() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Elem& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    Elem operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    const std::vector<Elem>& entries() const noexcept { return e_; }
    std::span<const Elem> row(std::size_t i) const { return {e_.data() + i * cols_, cols_}; }

    FMatrix select_cols(std::span<const std::size_t> cols) const;
    FMatrix select_rows(std::span<const std::size_t> rows) const;
    FMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    FMatrix transpose() const;
    /// Same entries viewed over a larger field (entries must already fit).
    FMatrix embed(FieldPtr larger) const;

    bool is_zero() const;
    bool operator==(const FMatrix& o) const;

  private:
    FieldPtr field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Elem> e_;
};

FMatrix hstack(const FMatrix& a, const FMatrix& b);
FMatrix vstack(const FMatrix& a, const FMatrix& b);
FMatrix multiply(const FMatrix& a, const FMatrix& b);
FMatrix add(const FMatrix& a, const FMatrix& b);
FMatrix sub(const FMatrix& a, const FMatrix& b);

std::size_t rank(const FMatrix& m);
Elem det(const FMatrix& m);

struct Echelon {
    FMatrix m;                       // reduced row echelon form, zero rows kept at the bottom
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
};
Echelon rref(FMatrix m);

/// Solves m*x = rhs. Throws Singular if the solution is not unique,
/// Inconsistent if none exists.
FMatrix solve(const FMatrix& m, const FMatrix& rhs);
FMatrix inverse(const FMatrix& m);
/// Rows form a basis of {x : m*x = 0}.
FMatrix nullspace(const FMatrix& m);

/// entry(i,j) = nodes_j^(start_power+i), with 0^0 = 1.
FMatrix vandermonde(FieldPtr f, std::span<const Elem> nodes, std::size_t rows, unsigned start_power);
/// entry(i,j) = 1/(a_j - b_i).
FMatrix cauchy(FieldPtr f, std::span<const Elem> a, std::span<const Elem> b);
/// det(cauchy(a,b)) = prod_{i<j} (a_j-a_i)(b_i-b_j) / prod_{i,j} (a_j-b_i).
Elem cauchy_det_closed_form(const GaloisField& f, std::span<const Elem> a, std::span<const Elem> b);
/// entry(i,j) = elems_j^(power_base^i).
FMatrix moore(FieldPtr f, std::span<const Elem> elems, std::size_t rows, std::uint64_t power_base);

/// Columns are the coordinates of each element over level `over` of the tower.
FMatrix flatten_columns(const FieldTower& t, std::span<const Elem> elems, std::size_t from, std::size_t over);

struct IndependenceResult {
    bool independent = true;
    std::vector<std::size_t> witness; // lexicographically first dependent subset
};

/// Every subset of at most k elements is linearly independent over `over`.
IndependenceResult is_k_wise_independent(const FieldTower& t, std::span<const Elem> elems, std::size_t from,
                                         std::size_t over, std::size_t k);

/// Advances a sorted k-subset of [0,n) to its lexicographic successor.
bool next_combination(std::vector<std::size_t>& c, std::size_t n);

}  // namespace hmrc
