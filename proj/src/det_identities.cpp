#include "hmrc/det_identities.hpp"

#include <numeric>

namespace hmrc {

namespace {

void check_shapes(const std::vector<FMatrix>& c, const std::vector<FMatrix>& d) {
    if (c.empty() || c.size() != d.size()) throw Error(ErrorCode::ShapeMismatch, "need one D block per C block");
    const std::size_t a = c[0].rows(), m = d[0].rows();
    std::size_t total = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].rows() != a || c[i].cols() < a) throw Error(ErrorCode::ShapeMismatch, "C blocks must be a x (a+m_i)");
        if (d[i].rows() != m || d[i].cols() != c[i].cols())
            throw Error(ErrorCode::ShapeMismatch, "D_i must match C_i in width and share a row count");
        total += c[i].cols() - a;
    }
    if (total != m) throw Error(ErrorCode::ShapeMismatch, "D row count must equal sum of m_i");
}

// det [C; rows of D]
Elem minor_with(const FMatrix& c, const FMatrix& d, std::initializer_list<std::size_t> rows) {
    std::vector<std::size_t> r(rows);
    for (auto& x : r) --x;
    return det(vstack(c, d.select_rows(r)));
}

int perm_sign(const std::vector<std::size_t>& v) {
    int s = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j]) s = -s;
    return s;
}

}  // namespace

FMatrix stacked_block_matrix(const std::vector<FMatrix>& c, const std::vector<FMatrix>& d) {
    check_shapes(c, d);
    const std::size_t a = c[0].rows(), m = d[0].rows();
    std::size_t cols = 0;
    for (const auto& x : c) cols += x.cols();
    FMatrix out(c[0].field_ptr(), a * c.size() + m, cols);
    std::size_t c0 = 0;
    for (std::size_t b = 0; b < c.size(); ++b) {
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = 0; j < c[b].cols(); ++j) out(b * a + i, c0 + j) = c[b](i, j);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < d[b].cols(); ++j) out(a * c.size() + i, c0 + j) = d[b](i, j);
        c0 += c[b].cols();
    }
    return out;
}

Elem block_laplace_det(const std::vector<FMatrix>& c, const std::vector<FMatrix>& d) {
    check_shapes(c, d);
    const auto& f = c[0].field();
    const std::size_t a = c[0].rows(), h = c.size(), m = d[0].rows();
    std::vector<std::size_t> need(h);
    for (std::size_t b = 0; b < h; ++b) need[b] = c[b].cols() - a;

    // Rows are reordered to C_1, D_{S_1}, C_2, D_{S_2}, ... which makes the matrix
    // block diagonal. Row indices: C_b row i -> b*a+i, D row s -> h*a+s.
    Elem total = 0;
    std::vector<std::size_t> owner(m);
    auto recurse = [&](auto&& self, std::size_t s, std::vector<std::size_t>& left) -> void {
        if (s == m) {
            std::vector<std::size_t> order;
            Elem prod = 1;
            for (std::size_t b = 0; b < h && prod != 0; ++b) {
                std::vector<std::size_t> rows;
                for (std::size_t i = 0; i < a; ++i) order.push_back(b * a + i);
                for (std::size_t t = 0; t < m; ++t)
                    if (owner[t] == b) {
                        rows.push_back(t);
                        order.push_back(h * a + t);
                    }
                prod = f.mul(prod, det(vstack(c[b], d[b].select_rows(rows))));
            }
            if (prod == 0) return;
            total = perm_sign(order) > 0 ? f.add(total, prod) : f.sub(total, prod);
            return;
        }
        for (std::size_t b = 0; b < h; ++b) {
            if (left[b] == 0) continue;
            --left[b];
            owner[s] = b;
            self(self, s + 1, left);
            ++left[b];
        }
    };
    recurse(recurse, 0, need);
    return total;
}

Elem diag_id_rhs(const std::vector<FMatrix>& c, const std::vector<FMatrix>& d) {
    check_shapes(c, d);
    const auto& f = c[0].field();
    const std::size_t a = c[0].rows(), h = c.size();
    for (const auto& x : c)
        if (x.cols() != a + 1) throw Error(ErrorCode::ShapeMismatch, "diag identity needs a x (a+1) blocks");
    FMatrix inner(c[0].field_ptr(), h, h);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) {
            std::vector<std::size_t> r{i};
            inner(i, j) = det(vstack(c[j], d[j].select_rows(r)));
        }
    Elem v = det(inner);
    return (a * h * (h - 1) / 2) % 2 ? f.neg(v) : v;
}

Elem prod2_id_rhs(const FMatrix& c1, const FMatrix& c2, const FMatrix& d1, const FMatrix& d2) {
    check_shapes({c1, c2}, {d1, d2});
    if (c2.cols() != c1.cols() + 1 || d1.rows() != 3) throw Error(ErrorCode::ShapeMismatch, "needs m = (1, 2)");
    const auto& f = c1.field();
    Elem v = f.mul(minor_with(c1, d1, {1}), minor_with(c2, d2, {2, 3}));
    v = f.sub(v, f.mul(minor_with(c1, d1, {2}), minor_with(c2, d2, {1, 3})));
    v = f.add(v, f.mul(minor_with(c1, d1, {3}), minor_with(c2, d2, {1, 2})));
    return c1.rows() % 2 ? f.neg(v) : v;
}

Elem prod3_id_rhs(const FMatrix& c1, const FMatrix& c2, const FMatrix& c3, const FMatrix& d1, const FMatrix& d2,
                  const FMatrix& d3) {
    check_shapes({c1, c2, c3}, {d1, d2, d3});
    if (c1.cols() != c2.cols() || c3.cols() != c1.cols() + 1 || d1.rows() != 4)
        throw Error(ErrorCode::ShapeMismatch, "needs m = (1, 1, 2)");
    const auto& f = c1.field();
    auto term = [&](std::size_t i1, std::size_t i2, std::size_t j1, std::size_t j2) {
        return f.mul(f.mul(minor_with(c1, d1, {i1}), minor_with(c2, d2, {i2})), minor_with(c3, d3, {j1, j2}));
    };
    Elem v = term(1, 3, 2, 4);
    v = f.add(v, term(1, 4, 2, 3));
    v = f.add(v, term(3, 1, 2, 4));
    v = f.sub(v, term(4, 1, 2, 3));
    return c1.rows() % 2 ? f.neg(v) : v;
}

}  // namespace hmrc
