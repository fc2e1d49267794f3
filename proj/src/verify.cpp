#include "hmrc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <thread>

namespace hmrc {

namespace {

void check_shape(const FMatrix& h, const CodeProfile& p) {
    if (h.cols() != p.n)
        throw Error(ErrorCode::ShapeMismatch, "H has " + std::to_string(h.cols()) + " columns but n = " +
                                                  std::to_string(p.n));
    if (h.rows() != p.n - p.k)
        throw Error(ErrorCode::ShapeMismatch, "H has " + std::to_string(h.rows()) + " rows but n-k = " +
                                                  std::to_string(p.n - p.k));
}

std::size_t pattern_deficit(const FMatrix& h, Mask x) {
    auto cols = mask_to_indices(x);
    return cols.size() - rank(h.select_cols(cols));
}

VerificationReport check_patterns(const FMatrix& h, const CodeProfile& p, const std::vector<Mask>& patterns,
                                  unsigned jobs) {
    const std::size_t total = patterns.size();
    std::atomic<std::size_t> first_fail{total};
    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            if (idx >= first_fail.load(std::memory_order_relaxed)) return;
            if (pattern_deficit(h, patterns[idx]) != 0) {
                std::size_t cur = first_fail.load();
                while (idx < cur && !first_fail.compare_exchange_weak(cur, idx)) {
                }
                return;
            }
        }
    };
    jobs = std::max(1u, jobs);
    if (jobs == 1 || total < 64) {
        worker(0, total);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (total + jobs - 1) / jobs;
        for (unsigned j = 0; j < jobs; ++j) {
            std::size_t b = j * chunk, e = std::min(total, b + chunk);
            if (b < e) pool.emplace_back(worker, b, e);
        }
        for (auto& t : pool) t.join();
    }
    VerificationReport rep;
    const std::size_t ff = first_fail.load();
    if (ff == total) {
        rep.patterns_checked = total;
        return rep;
    }
    rep.passed = false;
    rep.patterns_checked = ff + 1;
    rep.witness = Witness{decompose(p, patterns[ff]), pattern_deficit(h, patterns[ff])};
    return rep;
}

bool all_k_minors_nonsingular(const FMatrix& g, const std::vector<std::size_t>& cols, std::size_t k) {
    if (k == 0) return true;
    if (cols.size() < k) return false;
    std::vector<std::size_t> c(k);
    std::iota(c.begin(), c.end(), 0);
    std::vector<std::size_t> pick(k);
    do {
        for (std::size_t j = 0; j < k; ++j) pick[j] = cols[c[j]];
        if (det(g.select_cols(pick)) == 0) return false;
    } while (next_combination(c, cols.size()));
    return true;
}

}  // namespace

VerificationReport verify_mrc(const FMatrix& h, const CodeProfile& p, const VerifyOptions& opt) {
    check_shape(h, p);
    auto patterns = enumerate_erasure_patterns(p);
    if (opt.sample == 0 || opt.sample >= patterns.size()) return check_patterns(h, p, patterns, opt.jobs);
    std::mt19937_64 rng(opt.seed);
    std::vector<Mask> picked;
    std::sample(patterns.begin(), patterns.end(), std::back_inserter(picked), opt.sample, rng);
    auto rep = check_patterns(h, p, picked, opt.jobs);
    rep.exhaustive = false;
    return rep;
}

VerificationReport verify_hl_mrc(const FMatrix& h, const CodeProfile& p, const VerifyOptions& opt) {
    if (p.variant != Variant::HL) throw Error(ErrorCode::ShapeMismatch, "verify_hl_mrc needs an HL profile");
    return verify_mrc(h, p, opt);
}

VerificationReport verify_hdl_mrc(const FMatrix& h, const CodeProfile& p, const VerifyOptions& opt) {
    if (p.variant != Variant::HDL) throw Error(ErrorCode::ShapeMismatch, "verify_hdl_mrc needs an HDL profile");
    return verify_mrc(h, p, opt);
}

VerificationReport verify_local_mrc(const FMatrix& h, const CodeProfile& p, const VerifyOptions& opt) {
    if (p.variant != Variant::Local) throw Error(ErrorCode::ShapeMismatch, "verify_local_mrc needs a Local profile");
    return verify_mrc(h, p, opt);
}

VerificationReport verify_data_local_mrc(const FMatrix& h, const CodeProfile& p, const VerifyOptions& opt) {
    if (p.variant != Variant::DataLocal)
        throw Error(ErrorCode::ShapeMismatch, "verify_data_local_mrc needs a DataLocal profile");
    return verify_mrc(h, p, opt);
}

bool verify_mds(const FMatrix& m, MdsMode mode) {
    if (m.rows() > m.cols()) throw Error(ErrorCode::ShapeMismatch, "more rows than columns");
    if (rank(m) != m.rows()) throw Error(ErrorCode::ShapeMismatch, "input is not full rank");
    (void)mode;  // both modes test all rows-sized column subsets
    std::vector<std::size_t> all(m.cols());
    std::iota(all.begin(), all.end(), 0);
    return all_k_minors_nonsingular(m, all, m.rows());
}

bool verify_by_definition(const FMatrix& h, const CodeProfile& p) {
    check_shape(h, p);
    FMatrix g = nullspace(h);
    if (g.rows() != p.k) return false;
    if (p.variant == Variant::HL || p.variant == Variant::HDL) {
        for (Mask e : enumerate_e_sets(p)) {
            if (!all_k_minors_nonsingular(g, mask_to_indices(e), p.k)) return false;
        }
        return true;
    }
    // delete delta coordinates from every local group
    std::vector<const std::vector<std::size_t>*> groups;
    for (const auto& m : p.mids)
        for (const auto& b : m.locals) groups.push_back(&b);
    std::vector<std::vector<Mask>> choices;
    for (auto* b : groups) {
        std::vector<Mask> ch;
        for_each_subset(b->size(), p.delta, [&](Mask local) {
            Mask m = 0;
            for (auto j : mask_to_indices(local)) m |= Mask{1} << (*b)[j];
            ch.push_back(m);
            return true;
        });
        choices.push_back(std::move(ch));
    }
    const Mask full = p.n == 64 ? ~Mask{0} : (Mask{1} << p.n) - 1;
    std::vector<std::size_t> idx(groups.size(), 0);
    for (;;) {
        Mask del = 0;
        for (std::size_t g2 = 0; g2 < groups.size(); ++g2) del |= choices[g2][idx[g2]];
        if (!all_k_minors_nonsingular(g, mask_to_indices(full & ~del), p.k)) return false;
        std::size_t j = 0;
        while (j < idx.size() && ++idx[j] == choices[j].size()) idx[j++] = 0;
        if (j == idx.size()) break;
    }
    return true;
}

std::size_t min_distance(const FMatrix& h) {
    const std::size_t n = h.cols();
    const std::size_t r = rank(h);
    if (r >= n) throw Error(ErrorCode::ZeroDimensionalCode, "code has dimension zero");
    for (std::size_t w = 1; w <= r + 1; ++w) {
        bool found = false;
        for_each_subset(n, w, [&](Mask m) {
            if (rank(h.select_cols(mask_to_indices(m))) < w) found = true;
            return !found;
        });
        if (found) return w;
    }
    return r + 1;
}

FMatrix shortened_dual(const FMatrix& h, const std::vector<std::size_t>& keep) {
    std::vector<char> in(h.cols(), 0);
    for (auto c : keep) in[c] = 1;
    std::vector<std::size_t> out_cols;
    for (std::size_t c = 0; c < h.cols(); ++c)
        if (!in[c]) out_cols.push_back(c);

    std::vector<std::vector<Elem>> picked;
    auto try_add = [&](std::vector<Elem> y) {
        std::vector<std::vector<Elem>> trial = picked;
        trial.push_back(y);
        if (rank(FMatrix::from_rows(h.field_ptr(), trial)) == trial.size()) picked = std::move(trial);
    };
    for (std::size_t r = 0; r < h.rows(); ++r) {
        bool vanishes = true;
        for (auto c : out_cols) vanishes = vanishes && h(r, c) == 0;
        if (vanishes) {
            auto row = h.row(r);
            try_add({row.begin(), row.end()});
        }
    }
    const std::size_t target = rank(h) - (out_cols.empty() ? 0 : rank(h.select_cols(out_cols)));
    if (picked.size() < target) {
        FMatrix z = out_cols.empty() ? FMatrix::identity(h.field_ptr(), h.rows())
                                     : nullspace(h.select_cols(out_cols).transpose());
        FMatrix ys = multiply(z, h);
        for (std::size_t r = 0; r < ys.rows() && picked.size() < target; ++r) {
            auto row = ys.row(r);
            try_add({row.begin(), row.end()});
        }
    }
    if (picked.empty()) return FMatrix(h.field_ptr(), 0, keep.size());
    return FMatrix::from_rows(h.field_ptr(), picked).select_cols(keep);
}

FMatrix middle_restriction(const FMatrix& h, const CodeProfile& p, std::size_t i) {
    return shortened_dual(h, p.mids.at(i).all);
}

CodeProfile middle_profile(const CodeProfile& p) {
    if (p.variant == Variant::HL) return make_local_profile(Variant::Local, p.r1, p.r2, p.h2, p.delta);
    if (p.variant == Variant::HDL) return make_local_profile(Variant::DataLocal, p.r1, p.r2, p.h2, p.delta);
    throw Error(ErrorCode::ShapeMismatch, "middle codes exist only for HL and HDL profiles");
}

}  // namespace hmrc
