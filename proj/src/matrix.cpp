#include "hmrc/matrix.hpp"

#include <algorithm>
#include <numeric>

namespace hmrc {

namespace {

void require_same_field(const FMatrix& a, const FMatrix& b) {
    if (a.field().size() != b.field().size())
        throw Error(ErrorCode::ShapeMismatch, "matrices live over different fields");
}

// In-place Gauss-Jordan; returns pivot columns.
std::vector<std::size_t> eliminate(const GaloisField& f, std::vector<Elem>& e, std::size_t rows, std::size_t cols,
                                   bool reduce_above) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && e[p * cols + c] == 0) ++p;
        if (p == rows) continue;
        if (p != r) std::swap_ranges(e.begin() + p * cols, e.begin() + (p + 1) * cols, e.begin() + r * cols);
        Elem* pr = e.data() + r * cols;
        Elem iv = f.inv(pr[c]);
        for (std::size_t j = c; j < cols; ++j) pr[j] = f.mul(pr[j], iv);
        for (std::size_t i = reduce_above ? 0 : r + 1; i < rows; ++i) {
            if (i == r) continue;
            Elem* ri = e.data() + i * cols;
            Elem factor = ri[c];
            if (factor == 0) continue;
            for (std::size_t j = c; j < cols; ++j) {
                if (pr[j] != 0) ri[j] = f.sub(ri[j], f.mul(factor, pr[j]));
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

FMatrix::FMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), e_(rows * cols, 0) {}

FMatrix::FMatrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows * cols) throw Error(ErrorCode::ShapeMismatch, "entry count does not match dimensions");
    for (Elem x : e_) {
        if (!field_->contains(x)) throw Error(ErrorCode::InvalidFieldSpec, "matrix entry outside its field");
    }
}

FMatrix FMatrix::identity(FieldPtr field, std::size_t n) {
    FMatrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

FMatrix FMatrix::from_rows(FieldPtr field, const std::vector<std::vector<Elem>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    std::vector<Elem> e;
    e.reserve(rows.size() * c);
    for (const auto& r : rows) {
        if (r.size() != c) throw Error(ErrorCode::ShapeMismatch, "ragged rows");
        e.insert(e.end(), r.begin(), r.end());
    }
    return FMatrix(std::move(field), rows.size(), c, std::move(e));
}

FMatrix FMatrix::select_cols(std::span<const std::size_t> cols) const {
    FMatrix out(field_, rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(i, cols[j]);
    }
    return out;
}

FMatrix FMatrix::select_rows(std::span<const std::size_t> rows) const {
    FMatrix out(field_, rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::copy_n(e_.begin() + rows[i] * cols_, cols_, out.e_.begin() + i * cols_);
    }
    return out;
}

FMatrix FMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::ShapeMismatch, "block out of range");
    FMatrix out(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    }
    return out;
}

FMatrix FMatrix::transpose() const {
    FMatrix out(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    }
    return out;
}

FMatrix FMatrix::embed(FieldPtr larger) const {
    if (larger->characteristic() != field_->characteristic() || larger->size() < field_->size())
        throw Error(ErrorCode::LevelOrderViolation, "cannot embed into a smaller field");
    FMatrix out = *this;
    out.field_ = std::move(larger);
    return out;
}

bool FMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](Elem x) { return x == 0; });
}

bool FMatrix::operator==(const FMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_ &&
           (field_ == o.field_ || (field_ && o.field_ && field_->size() == o.field_->size()));
}

FMatrix hstack(const FMatrix& a, const FMatrix& b) {
    if (a.rows() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "hstack row mismatch");
    require_same_field(a, b);
    FMatrix out(a.field_ptr(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

FMatrix vstack(const FMatrix& a, const FMatrix& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, "vstack column mismatch");
    require_same_field(a, b);
    std::vector<Elem> e = a.entries();
    e.insert(e.end(), b.entries().begin(), b.entries().end());
    return FMatrix(a.field_ptr(), a.rows() + b.rows(), a.cols(), std::move(e));
}

FMatrix multiply(const FMatrix& a, const FMatrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "multiply dimension mismatch");
    require_same_field(a, b);
    const GaloisField& f = a.field();
    FMatrix out(a.field_ptr(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t l = 0; l < a.cols(); ++l) {
            Elem x = a(i, l);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(x, b(l, j)));
        }
    }
    return out;
}

FMatrix add(const FMatrix& a, const FMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, "add shape mismatch");
    require_same_field(a, b);
    FMatrix out(a.field_ptr(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().add(a(i, j), b(i, j));
    }
    return out;
}

FMatrix sub(const FMatrix& a, const FMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, "sub shape mismatch");
    require_same_field(a, b);
    FMatrix out(a.field_ptr(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().sub(a(i, j), b(i, j));
    }
    return out;
}

std::size_t rank(const FMatrix& m) {
    if (m.empty()) return 0;
    std::vector<Elem> e = m.entries();
    return eliminate(m.field(), e, m.rows(), m.cols(), false).size();
}

Elem det(const FMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::NonSquare, "determinant of a non-square matrix");
    const GaloisField& f = m.field();
    const std::size_t n = m.rows();
    std::vector<Elem> e = m.entries();
    Elem d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && e[p * n + c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap_ranges(e.begin() + p * n, e.begin() + (p + 1) * n, e.begin() + c * n);
            d = f.neg(d);
        }
        Elem piv = e[c * n + c];
        d = f.mul(d, piv);
        Elem iv = f.inv(piv);
        for (std::size_t i = c + 1; i < n; ++i) {
            Elem factor = f.mul(e[i * n + c], iv);
            if (factor == 0) continue;
            for (std::size_t j = c; j < n; ++j) e[i * n + j] = f.sub(e[i * n + j], f.mul(factor, e[c * n + j]));
        }
    }
    return d;
}

Echelon rref(FMatrix m) {
    std::vector<Elem> e = m.entries();
    auto piv = eliminate(m.field(), e, m.rows(), m.cols(), true);
    return {FMatrix(m.field_ptr(), m.rows(), m.cols(), std::move(e)), std::move(piv)};
}

FMatrix solve(const FMatrix& m, const FMatrix& rhs) {
    if (m.rows() != rhs.rows()) throw Error(ErrorCode::ShapeMismatch, "solve: rhs row count mismatch");
    require_same_field(m, rhs);
    const std::size_t n = m.cols();
    Echelon ech = rref(hstack(m, rhs));
    std::size_t r = 0;
    for (std::size_t c : ech.pivots) {
        if (c >= n) throw Error(ErrorCode::Inconsistent, "system has no solution");
        ++r;
    }
    if (r < n) throw Error(ErrorCode::Singular, "solution is not unique (rank " + std::to_string(r) + " < " +
                                                     std::to_string(n) + ")");
    FMatrix x(m.field_ptr(), n, rhs.cols());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < rhs.cols(); ++j) x(i, j) = ech.m(i, n + j);
    }
    return x;
}

FMatrix inverse(const FMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::NonSquare, "inverse of a non-square matrix");
    return solve(m, FMatrix::identity(m.field_ptr(), m.rows()));
}

FMatrix nullspace(const FMatrix& m) {
    const GaloisField& f = m.field();
    Echelon ech = rref(m);
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto c : ech.pivots) is_pivot[c] = 1;
    std::vector<std::vector<Elem>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Elem> v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = f.neg(ech.m(r, free));
        basis.push_back(std::move(v));
    }
    if (basis.empty()) return FMatrix(m.field_ptr(), 0, m.cols());
    return FMatrix::from_rows(m.field_ptr(), basis);
}

FMatrix vandermonde(FieldPtr f, std::span<const Elem> nodes, std::size_t rows, unsigned start_power) {
    FMatrix out(f, rows, nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        for (std::size_t i = 0; i < rows; ++i) out(i, j) = f->pow(nodes[j], start_power + i);
    }
    return out;
}

FMatrix cauchy(FieldPtr f, std::span<const Elem> a, std::span<const Elem> b) {
    FMatrix out(f, b.size(), a.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            Elem d = f->sub(a[j], b[i]);
            if (d == 0) throw Error(ErrorCode::CoincidentNodes, "a_j equals b_i in Cauchy matrix");
            out(i, j) = f->inv(d);
        }
    }
    return out;
}

Elem cauchy_det_closed_form(const GaloisField& f, std::span<const Elem> a, std::span<const Elem> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::NonSquare, "Cauchy determinant needs |a| = |b|");
    Elem num = 1, den = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            num = f.mul(num, f.mul(f.sub(a[j], a[i]), f.sub(b[i], b[j])));
        }
        for (std::size_t j = 0; j < b.size(); ++j) den = f.mul(den, f.sub(a[i], b[j]));
    }
    if (den == 0) throw Error(ErrorCode::CoincidentNodes, "a_j equals b_i in Cauchy matrix");
    return f.div(num, den);
}

FMatrix moore(FieldPtr f, std::span<const Elem> elems, std::size_t rows, std::uint64_t power_base) {
    auto pp = prime_power(power_base);
    if (!pp || pp->first != f->characteristic() || f->prime_degree() % pp->second != 0)
        throw Error(ErrorCode::InvalidPowerBase, std::to_string(power_base) + " is not a subfield size");
    FMatrix out(f, rows, elems.size());
    for (std::size_t j = 0; j < elems.size(); ++j) {
        Elem x = elems[j];
        for (std::size_t i = 0; i < rows; ++i) {
            out(i, j) = x;
            x = f->pow(x, power_base);
        }
    }
    return out;
}

FMatrix flatten_columns(const FieldTower& t, std::span<const Elem> elems, std::size_t from, std::size_t over) {
    const unsigned d = t.level(from).prime_degree() / t.level(over).prime_degree();
    FMatrix out(t.level_ptr(over), d, elems.size());
    for (std::size_t j = 0; j < elems.size(); ++j) {
        auto c = t.flatten(elems[j], from, over);
        for (unsigned i = 0; i < d; ++i) out(i, j) = c[i];
    }
    return out;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

IndependenceResult is_k_wise_independent(const FieldTower& t, std::span<const Elem> elems, std::size_t from,
                                         std::size_t over, std::size_t k) {
    if (over >= from && !(over == from && elems.empty()))
        throw Error(ErrorCode::LevelOrderViolation, "independence base must lie below the elements' level");
    const std::size_t s = std::min(k, elems.size());
    IndependenceResult res;
    if (s == 0) return res;
    FMatrix flat = flatten_columns(t, elems, from, over);
    if (s > flat.rows()) {
        res.independent = false;
        res.witness.resize(s);
        std::iota(res.witness.begin(), res.witness.end(), 0);
        return res;
    }
    std::vector<std::size_t> c(s);
    std::iota(c.begin(), c.end(), 0);
    do {
        if (rank(flat.select_cols(c)) < s) {
            res.independent = false;
            res.witness = c;
            return res;
        }
    } while (next_combination(c, elems.size()));
    return res;
}

}  // namespace hmrc
