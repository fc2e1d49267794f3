#include "hmrc/decode.hpp"

#include <algorithm>

namespace hmrc {

namespace {

void check_word(const FMatrix& h, const Received& word) {
    if (word.size() != h.cols())
        throw Error(ErrorCode::ShapeMismatch, "received word has " + std::to_string(word.size()) +
                                                  " symbols, code length is " + std::to_string(h.cols()));
    for (const auto& s : word)
        if (s && !h.field().contains(*s)) throw Error(ErrorCode::ShapeMismatch, "symbol outside the code field");
}

bool is_codeword(const FMatrix& h, const std::vector<Elem>& c) {
    const auto& f = h.field();
    for (std::size_t r = 0; r < h.rows(); ++r) {
        Elem s = 0;
        for (std::size_t j = 0; j < h.cols(); ++j) s = f.add(s, f.mul(h(r, j), c[j]));
        if (s != 0) return false;
    }
    return true;
}

// Solves rows R of H for unknown columns U given the current word. Returns
// false (and leaves the word untouched) if H[R,U] has a rank deficit.
bool solve_block(const FMatrix& h, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& unknown,
                 std::vector<Elem>& word, const std::vector<char>& erased) {
    if (unknown.empty()) return true;
    if (rows.size() < unknown.size()) return false;
    const auto& f = h.field();
    FMatrix sub = h.select_rows(rows);
    FMatrix a = sub.select_cols(unknown);
    if (rank(a) < unknown.size()) return false;
    std::vector<char> is_unknown(h.cols(), 0);
    for (auto u : unknown) is_unknown[u] = 1;
    FMatrix rhs(h.field_ptr(), rows.size(), 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        Elem s = 0;
        for (std::size_t j = 0; j < h.cols(); ++j) {
            if (is_unknown[j] || sub(r, j) == 0) continue;
            if (erased[j]) return false;  // row touches another unresolved coordinate
            s = f.add(s, f.mul(sub(r, j), word[j]));
        }
        rhs(r, 0) = f.neg(s);
    }
    FMatrix x;
    try {
        x = solve(a, rhs);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Inconsistent)
            throw Error(ErrorCode::InconsistentReceived, "known symbols violate the parity checks");
        throw;
    }
    for (std::size_t t = 0; t < unknown.size(); ++t) word[unknown[t]] = x(t, 0);
    return true;
}

}  // namespace

std::vector<Elem> decode_erasures(const FMatrix& h, const Received& word) {
    check_word(h, word);
    std::vector<Elem> c(word.size(), 0);
    std::vector<char> erased(word.size(), 0);
    std::vector<std::size_t> x;
    for (std::size_t j = 0; j < word.size(); ++j) {
        if (word[j]) {
            c[j] = *word[j];
        } else {
            erased[j] = 1;
            x.push_back(j);
        }
    }
    if (!x.empty()) {
        std::size_t rk = rank(h.select_cols(x));
        if (rk < x.size()) throw UnrecoverableError(x.size(), x.size() - rk);
        std::vector<std::size_t> all(h.rows());
        for (std::size_t r = 0; r < h.rows(); ++r) all[r] = r;
        solve_block(h, all, x, c, erased);
    }
    if (!is_codeword(h, c)) throw Error(ErrorCode::InconsistentReceived, "known symbols violate the parity checks");
    return c;
}

std::vector<Elem> decode_hierarchical(const ParityCheck& h, const Received& word, HierarchicalTrace* trace) {
    const FMatrix& m = h.matrix;
    check_word(m, word);
    const CodeProfile& p = h.profile;
    std::vector<Elem> c(word.size(), 0);
    std::vector<char> erased(word.size(), 0);
    for (std::size_t j = 0; j < word.size(); ++j) {
        if (word[j])
            c[j] = *word[j];
        else
            erased[j] = 1;
    }
    HierarchicalTrace local_trace;
    HierarchicalTrace& tr = trace ? *trace : local_trace;
    tr = {};
    auto pending = [&](const std::vector<std::size_t>& cols) {
        std::vector<std::size_t> out;
        for (auto j : cols)
            if (erased[j]) out.push_back(j);
        return out;
    };
    auto mark = [&](const std::vector<std::size_t>& cols) {
        for (auto j : cols) erased[j] = 0;
    };

    for (const auto& b : h.bands) {
        if (b.kind != BandKind::Local) continue;
        auto u = pending(h.band_support(b));
        if (u.empty() || u.size() > b.rows()) continue;
        std::vector<std::size_t> rows;
        for (std::size_t r = b.row_begin; r < b.row_end; ++r) rows.push_back(r);
        if (solve_block(m, rows, u, c, erased)) {
            mark(u);
            tr.solved_local += u.size();
        }
    }
    for (std::size_t i = 0; i < p.t1; ++i) {
        auto u = pending(p.mids[i].all);
        if (u.empty()) continue;
        auto rows = h.band_rows(BandKind::Local, i);
        auto mid_rows = h.band_rows(BandKind::Mid, i);
        rows.insert(rows.end(), mid_rows.begin(), mid_rows.end());
        std::sort(rows.begin(), rows.end());
        if (solve_block(m, rows, u, c, erased)) {
            mark(u);
            tr.solved_mid += u.size();
        }
    }
    std::vector<std::size_t> all_cols(p.n);
    for (std::size_t j = 0; j < p.n; ++j) all_cols[j] = j;
    auto rest = pending(all_cols);
    if (!rest.empty()) {
        std::vector<std::size_t> all_rows(m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r) all_rows[r] = r;
        if (!solve_block(m, all_rows, rest, c, erased)) return decode_erasures(m, word);  // reports the deficit
        mark(rest);
        tr.solved_global += rest.size();
    }
    if (!is_codeword(m, c)) throw Error(ErrorCode::InconsistentReceived, "known symbols violate the parity checks");
    return c;
}

}  // namespace hmrc
