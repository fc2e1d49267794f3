#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hmrc/acceptance.hpp"
#include "hmrc/bounds.hpp"
#include "hmrc/serialize.hpp"

using namespace hmrc;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kConstruction = 2, kIo = 3, kFailed = 4, kShape = 5 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::ParseError: return kIo;
        case ErrorCode::ShapeMismatch:
        case ErrorCode::MethodUnavailable: return kShape;
        case ErrorCode::UnrecoverablePattern:
        case ErrorCode::InconsistentReceived:
        case ErrorCode::VerificationFailed:
        case ErrorCode::NotVerifiedInput: return kFailed;
        case ErrorCode::DivisibilityViolation:
        case ErrorCode::ParameterRange:
        case ErrorCode::ZeroDimensionalCode: return kUsage;
        default: return kConstruction;
    }
}

json read_json(const std::string& path) {
    std::stringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open " + path);
        buf << in.rdbuf();
    }
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << text << '\n';
    if (!out) throw IoError("write failed for " + path);
}

struct ProfileArgs {
    std::string variant = "HL";
    std::size_t k = 0, r1 = 0, r2 = 0, h1 = 0, h2 = 0, delta = 0;
    CLI::Option* k_opt = nullptr;

    void add(CLI::App* c) {
        c->add_option("--variant", variant, "HL, HDL, Local or DataLocal")->capture_default_str();
        k_opt = c->add_option("--k", k, "data symbols");
        c->add_option("--r1", r1, "mid group data size");
        c->add_option("--r2", r2, "local group data size");
        c->add_option("--h1", h1, "global parities");
        c->add_option("--h2", h2, "mid parities per mid group");
        c->add_option("--delta", delta, "local parities per local group");
    }
    bool given() const { return k_opt && k_opt->count() > 0; }
    CodeProfile make() const {
        Variant v;
        try {
            v = variant_from_string(variant);
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
        return make_profile(v, k, r1, r2, h1, h2, delta);
    }
};

std::string describe_field(const FieldTower& t) {
    std::string s = "F_" + std::to_string(t.size(t.top()));
    if (t.level_count() > 1) {
        s += " (tower";
        for (std::size_t l = 0; l < t.level_count(); ++l) s += " " + std::to_string(t.size(l));
        s += ")";
    }
    return s;
}

void print_witness(std::ostream& os, const ErasurePattern& w, std::size_t deficit) {
    os << "witness: delta_sets " << json(w.delta_sets).dump() << " gamma_sets " << json(w.gamma_sets).dump()
       << " global_set " << json(w.global_set).dump() << " rank_deficit " << deficit << '\n';
}

// ---- construct

struct ConstructArgs {
    ProfileArgs profile;
    std::string family, descriptor, output, certify = "exhaustive";
    std::optional<std::uint64_t> q, q0;
    std::uint64_t q0_cap = 256;
    unsigned max_ext = 4, jobs = 1;
    bool derive_hdl = false, as_json = false;
};

int run_construct(const ConstructArgs& a) {
    std::string family_name = a.family;
    CodeProfile p;
    if (!a.descriptor.empty()) {
        if (!a.family.empty() || a.profile.given()) throw UsageError("--descriptor excludes --family and profile flags");
        json d = read_json(a.descriptor);
        if (!d.is_object() || !d.contains("family") || !d.contains("profile"))
            throw Error(ErrorCode::ParseError, "descriptor needs family and profile");
        if (d.contains("seed") && !d["seed"].is_null()) throw UsageError("seed is reserved and must be null");
        family_name = d["family"].get<std::string>();
        json prof = d["profile"];
        if (!prof.contains("variant")) prof["variant"] = "HL";
        try {
            p = profile_from_json(prof);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ParseError) throw;
            throw UsageError(e.what());
        }
    } else {
        if (a.family.empty()) throw UsageError("--family or --descriptor is required");
        if (!a.profile.given()) throw UsageError("profile flags --k --r1 --r2 --h1 --h2 --delta are required");
        try {
            p = a.profile.make();
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
    }
    Family fam;
    try {
        fam = family_from_string(family_name);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    if (fam == Family::DerivedHdl) throw UsageError("derived-hdl is produced with --derive-hdl");
    if (p.variant != Variant::HL) throw UsageError("constructions take an HL profile");

    Construction c;
    if (fam == Family::H12H21) {
        CauchyOptions o;
        o.q0 = a.q0 ? a.q0 : a.q;
        o.q0_cap = a.q0_cap;
        o.max_extension_degree = a.max_ext;
        c = construct_h1_2_h2_1(p, o);
    } else {
        c = construct(fam, p, a.q);
    }

    const auto t0 = std::chrono::steady_clock::now();
    VerifyOptions vo;
    vo.jobs = a.jobs;
    std::optional<ConstructionCertificate> cert;
    ParityCheck out = c.code;
    if (a.derive_hdl) {
        auto hl_report = verify_hl_mrc(c.code.matrix, c.code.profile, vo);
        out = derive_hdl_from_hl(c.code, &hl_report);
    }
    if (a.certify == "exhaustive") {
        cert = certify_exhaustive(out, vo);
    } else if (a.certify == "theorem2") {
        if (a.derive_hdl) throw Error(ErrorCode::MethodUnavailable, "theorem2 certificates cover HL codes only");
        cert = certify_theorem2(out);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json doc = code_to_json(out, &c.params, cert ? &*cert : nullptr);
    write_text(a.output, doc.dump());

    if (a.as_json) {
        json s = {{"family", out.family},
                  {"profile", profile_to_json(out.profile)},
                  {"n", out.profile.n},
                  {"rows", out.matrix.rows()},
                  {"field_size", out.tower.size(out.tower.top())},
                  {"bands", doc["bands"]},
                  {"certificate", doc["certificate"]},
                  {"certify_seconds", secs},
                  {"output", a.output.empty() ? "-" : a.output}};
        if (!a.output.empty() && a.output != "-") std::cout << s.dump() << '\n';
    } else if (!a.output.empty() && a.output != "-") {
        std::cout << "family " << out.family << ", " << out.profile.describe() << ", n=" << out.profile.n
                  << ", " << out.matrix.rows() << " parity rows over " << describe_field(out.tower) << '\n';
        for (const auto& b : out.bands) {
            std::cout << "  band " << to_string(b.kind);
            if (b.kind != BandKind::Global) std::cout << " A_" << b.mid;
            if (b.kind == BandKind::Local) std::cout << " B_" << b.mid << "," << b.local;
            std::cout << " rows " << b.row_begin << ".." << b.row_end << " level " << b.level << '\n';
        }
        for (const auto& n : c.params.notes) std::cout << "  note: " << n << '\n';
        if (cert)
            std::cout << "certificate " << to_string(cert->method) << ": " << (cert->passed ? "passed" : "FAILED")
                      << " over " << cert->patterns_checked << " patterns in " << secs << " s\n";
        std::cout << "wrote " << a.output << '\n';
    }
    return cert && !cert->passed ? kFailed : kOk;
}

// ---- verify

struct VerifyArgs {
    std::string input, mode = "exhaustive";
    unsigned jobs = 1;
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    bool as_json = false;
};

int run_verify(const VerifyArgs& a) {
    auto f = code_from_json(read_json(a.input));
    json report;
    bool passed;
    const auto t0 = std::chrono::steady_clock::now();
    if (a.mode == "theorem2") {
        if (f.code.profile.variant != Variant::HL)
            throw Error(ErrorCode::MethodUnavailable, "theorem2 applies to HL codes of the general family");
        auto c = certify_theorem2(f.code);
        passed = c.passed;
        report = certificate_to_json(c);
        report.erase("method");
        report["mode"] = a.mode;
    } else {
        VerifyOptions o;
        o.jobs = a.jobs;
        o.seed = a.seed;
        if (a.mode == "sample") o.sample = a.samples;
        auto r = verify_mrc(f.code.matrix, f.code.profile, o);
        passed = r.passed;
        report = report_to_json(r, a.mode);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (a.as_json) {
        report["seconds"] = secs;
        std::cout << report.dump() << '\n';
    } else {
        std::cout << (passed ? "PASS" : "FAIL") << " " << f.code.profile.describe() << " mode " << a.mode
                  << ": patterns_checked " << report["patterns_checked"].get<std::uint64_t>() << " (" << secs
                  << " s)\n";
        if (!report["witness"].is_null()) {
            auto w = pattern_from_json(report["witness"]);
            print_witness(std::cout, w, report["witness"].value("rank_deficit", std::size_t{0}));
        }
    }
    return passed ? kOk : kFailed;
}

// ---- decode

struct DecodeArgs {
    std::string input, received, method = "hierarchical", output;
    bool as_json = false;
};

// Local groups and mid groups whose rows cannot be satisfied by any filling of the erasures.
std::vector<std::string> inconsistency_sites(const ParityCheck& h, const Received& w) {
    std::vector<std::string> sites;
    const auto& f = h.matrix.field();
    for (const auto& b : h.bands) {
        if (b.row_begin == b.row_end) continue;
        std::vector<std::size_t> rows;
        for (std::size_t r = b.row_begin; r < b.row_end; ++r) rows.push_back(r);
        std::vector<std::size_t> erased;
        FMatrix rhs(h.matrix.field_ptr(), rows.size(), 1);
        for (std::size_t c = 0; c < h.profile.n; ++c) {
            if (!w[c]) {
                erased.push_back(c);
                continue;
            }
            for (std::size_t i = 0; i < rows.size(); ++i)
                rhs(i, 0) = f.sub(rhs(i, 0), f.mul(h.matrix(rows[i], c), *w[c]));
        }
        FMatrix a = h.matrix.select_rows(rows).select_cols(erased);
        const bool ok = erased.empty() ? rhs.is_zero() : rank(hstack(a, rhs)) == rank(a);
        if (ok) continue;
        std::string s = to_string(b.kind);
        if (b.kind == BandKind::Local) s += " B_" + std::to_string(b.mid) + "," + std::to_string(b.local);
        if (b.kind == BandKind::Mid) s += " A_" + std::to_string(b.mid);
        sites.push_back(s);
    }
    return sites;
}

int run_decode(const DecodeArgs& a) {
    auto f = code_from_json(read_json(a.input));
    const auto& code = f.code;
    auto w = received_from_json(read_json(a.received), code.tower, code.tower.top());
    if (w.size() != code.profile.n)
        throw Error(ErrorCode::ShapeMismatch,
                    "received word has " + std::to_string(w.size()) + " symbols, code length is " +
                        std::to_string(code.profile.n));
    std::size_t erased = 0;
    for (const auto& x : w) erased += !x;

    json out = {{"erased", erased}};
    try {
        std::vector<Elem> c;
        if (a.method == "global") {
            c = decode_erasures(code.matrix, w);
        } else {
            HierarchicalTrace tr;
            c = decode_hierarchical(code, w, &tr);
            out["trace"] = {{"local", tr.solved_local}, {"mid", tr.solved_mid}, {"global", tr.solved_global}};
            if (a.method == "both" && decode_erasures(code.matrix, w) != c)
                throw std::logic_error("hierarchical and global decoders disagree");
        }
        out["status"] = "recovered";
        out["codeword"] = word_to_json(code.tower, code.tower.top(), c);
        if (!a.output.empty()) write_text(a.output, out["codeword"].dump());
    } catch (const UnrecoverableError& e) {
        out["status"] = "unrecoverable";
        out["rank_deficit"] = e.deficit();
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InconsistentReceived) throw;
        out["status"] = "inconsistent";
        out["violated"] = inconsistency_sites(code, w);
    }

    const bool ok = out["status"] == "recovered";
    if (a.as_json) {
        std::cout << out.dump() << '\n';
    } else if (ok) {
        if (a.output.empty()) std::cout << out["codeword"].dump() << '\n';
        std::cout << "recovered " << erased << " erasures";
        if (out.contains("trace"))
            std::cout << " (local " << out["trace"]["local"] << ", mid " << out["trace"]["mid"] << ", global "
                      << out["trace"]["global"] << ")";
        std::cout << '\n';
    } else if (out["status"] == "unrecoverable") {
        std::cout << "unrecoverable: " << erased << " erasures, rank deficit " << out["rank_deficit"] << '\n';
    } else {
        std::cout << "inconsistent: known symbols are not a codeword restriction";
        if (!out["violated"].empty()) {
            std::cout << "; violated bands:";
            for (const auto& s : out["violated"]) std::cout << ' ' << s.get<std::string>() << ';';
        }
        std::cout << '\n';
    }
    return ok ? kOk : kFailed;
}

// ---- bounds

int run_bounds(const ProfileArgs& pa, bool as_json) {
    if (!pa.given()) throw UsageError("profile flags are required");
    CodeProfile p;
    try {
        p = pa.make();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    std::vector<BoundResult> rows = distance_bounds(p);
    if (p.variant == Variant::HL) {
        for (auto& r : field_size_bounds(p)) rows.push_back(r);
        rows.push_back(field_size_lb(p));
    }
    if (as_json) {
        json a = json::array();
        for (const auto& r : rows)
            a.push_back({{"name", r.name},
                         {"applicable", r.applicable},
                         {"value", r.applicable ? json(r.value) : json(nullptr)},
                         {"precondition_failures", r.precondition_failures},
                         {"assumptions", r.assumptions}});
        std::cout << json{{"profile", profile_to_json(p)}, {"bounds", a}}.dump() << '\n';
        return kOk;
    }
    std::cout << p.describe() << " n=" << p.n << '\n';
    std::size_t w = 4;
    for (const auto& r : rows) w = std::max(w, r.name.size());
    std::cout << std::left << std::setw(static_cast<int>(w) + 2) << "bound" << std::setw(12) << "applicable"
              << std::setw(8) << "value" << "assumptions\n";
    for (const auto& r : rows) {
        std::string notes;
        for (const auto& s : r.assumptions) notes += (notes.empty() ? "" : "; ") + s;
        for (const auto& s : r.precondition_failures) notes += (notes.empty() ? "fails " : "; fails ") + s;
        std::cout << std::setw(static_cast<int>(w) + 2) << r.name << std::setw(12) << (r.applicable ? "yes" : "no")
                  << std::setw(8) << (r.applicable ? std::to_string(r.value) : "-") << notes << '\n';
    }
    return kOk;
}

// ---- selftest

int run_selftest(bool as_json, unsigned jobs) {
    AcceptanceOptions o;
    o.jobs = jobs;
    auto results = run_acceptance(o, as_json ? nullptr : &std::cout);
    bool all = true;
    json a = json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        a.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    if (as_json) std::cout << json{{"passed", all}, {"criteria", a}}.dump() << '\n';
    return all ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hierarchical maximally recoverable codes: construct, verify, decode, bounds"};
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 ok, 1 usage, 2 construction failure, 3 I/O or parse error,\n"
        "            4 verification failed or unrecoverable, 5 shape mismatch or method unavailable");

    ConstructArgs ca;
    auto* construct_cmd = app.add_subcommand("construct", "build a parity-check matrix and certify it");
    construct_cmd->add_option("--family", ca.family, "general, h1eq1, h11h21 or h12h21")
        ->check(CLI::IsMember({"general", "h1eq1", "h11h21", "h12h21"}));
    ca.profile.add(construct_cmd);
    construct_cmd->add_option("--descriptor", ca.descriptor, "JSON {family, profile, seed: null}");
    construct_cmd->add_option("--q", ca.q, "field size override");
    construct_cmd->add_option("--q0", ca.q0, "base field for h12h21");
    construct_cmd->add_option("--q0-cap", ca.q0_cap, "largest q0 tried by h12h21")->capture_default_str();
    construct_cmd->add_option("--max-ext", ca.max_ext, "largest extension degree for h12h21 lambdas")
        ->capture_default_str();
    construct_cmd->add_option("--certify", ca.certify, "exhaustive, theorem2 or none")
        ->check(CLI::IsMember({"exhaustive", "theorem2", "none"}))
        ->capture_default_str();
    construct_cmd->add_flag("--derive-hdl", ca.derive_hdl, "shorten and puncture into an HDL code");
    construct_cmd->add_option("--jobs", ca.jobs, "verification workers")->check(CLI::PositiveNumber);
    construct_cmd->add_option("-o,--output", ca.output, "code file (stdout when absent)");
    construct_cmd->add_flag("--json", ca.as_json, "summary as one JSON document");

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "check maximal recoverability of a code file");
    verify_cmd->add_option("file", va.input, "code file or -")->required();
    verify_cmd->add_option("--mode", va.mode, "exhaustive, theorem2 or sample")
        ->check(CLI::IsMember({"exhaustive", "theorem2", "sample"}))
        ->capture_default_str();
    verify_cmd->add_option("--jobs", va.jobs, "workers")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--samples", va.samples, "patterns drawn in sample mode")->capture_default_str();
    verify_cmd->add_option("--seed", va.seed, "sample mode seed")->capture_default_str();
    verify_cmd->add_flag("--json", va.as_json, "report as one JSON document");

    DecodeArgs da;
    auto* decode_cmd = app.add_subcommand("decode", "fill erasures of a received word");
    decode_cmd->add_option("file", da.input, "code file")->required();
    decode_cmd->add_option("received", da.received, "JSON list, null marks an erasure")->required();
    decode_cmd->add_option("--method", da.method, "hierarchical, global or both")
        ->check(CLI::IsMember({"hierarchical", "global", "both"}))
        ->capture_default_str();
    decode_cmd->add_option("-o,--output", da.output, "write the codeword here");
    decode_cmd->add_flag("--json", da.as_json, "result as one JSON document");

    ProfileArgs ba;
    bool bounds_json = false;
    auto* bounds_cmd = app.add_subcommand("bounds", "distance and field-size bounds for a profile");
    ba.add(bounds_cmd);
    bounds_cmd->add_flag("--json", bounds_json, "table as one JSON document");

    bool self_json = false;
    unsigned self_jobs = 1;
    auto* self_cmd = app.add_subcommand("selftest", "run the acceptance suite on built-in profiles");
    self_cmd->add_flag("--json", self_json, "results as one JSON document");
    self_cmd->add_option("--jobs", self_jobs, "verification workers")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*construct_cmd) return run_construct(ca);
        if (*verify_cmd) return run_verify(va);
        if (*decode_cmd) return run_decode(da);
        if (*bounds_cmd) return run_bounds(ba, bounds_json);
        if (*self_cmd) return run_selftest(self_json, self_jobs);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_for(e.code());
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    }
    return kUsage;
}
