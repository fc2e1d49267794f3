#include "hmrc/serialize.hpp"

namespace hmrc {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
    return j.at(key);
}

template <class T>
T get(const json& j, const char* key) {
    try {
        return need(j, key).get<T>();
    } catch (const json::exception& e) {
        bad(std::string("bad value for '") + key + "': " + e.what());
    }
}

std::vector<std::vector<std::size_t>> index_lists(const json& j, const char* key) {
    return get<std::vector<std::vector<std::size_t>>>(j, key);
}

}  // namespace

json field_spec_to_json(const FieldSpec& s) { return {{"p", s.p}, {"degrees", s.degrees}, {"moduli", s.moduli}}; }

FieldSpec field_spec_from_json(const json& j) {
    FieldSpec s;
    s.p = get<std::uint64_t>(j, "p");
    s.degrees = get<std::vector<unsigned>>(j, "degrees");
    if (j.contains("moduli")) s.moduli = get<std::vector<std::vector<Elem>>>(j, "moduli");
    return s;
}

json element_to_json(const FieldTower& t, std::size_t level, Elem x) { return t.coords(x, level); }

Elem element_from_json(const FieldTower& t, std::size_t level, const json& j) {
    const auto& f = t.level(level);
    if (j.is_number_integer()) {
        if (j.get<std::int64_t>() < 0) bad("negative element");
        Elem x = j.get<Elem>();
        if (!f.contains(x)) bad("element " + std::to_string(x) + " outside the field");
        return x;
    }
    if (!j.is_array()) bad("element must be a digit list or a non-negative integer");
    std::vector<Elem> digits;
    try {
        digits = j.get<std::vector<Elem>>();
    } catch (const json::exception&) {
        bad("element digits must be non-negative integers");
    }
    if (digits.size() != f.prime_degree()) bad("element has " + std::to_string(digits.size()) + " digits, expected " +
                                                std::to_string(f.prime_degree()));
    for (Elem d : digits)
        if (d >= t.characteristic()) bad("digit out of range");
    return t.unflatten(digits, 0);
}

json matrix_to_json(const FieldTower& t, std::size_t level, const FMatrix& m) {
    json entries = json::array();
    for (Elem x : m.entries()) entries.push_back(element_to_json(t, level, x));
    return {{"field", field_spec_to_json(t.spec())},
            {"level", level},
            {"rows", m.rows()},
            {"cols", m.cols()},
            {"entries", entries}};
}

FMatrix matrix_from_json(const json& j, FieldTower& tower, std::size_t& level) {
    try {
        tower = FieldTower::make(field_spec_from_json(need(j, "field")));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw;
        bad(std::string("invalid field: ") + e.what());
    }
    level = get<std::size_t>(j, "level");
    if (level >= tower.level_count()) bad("level out of range");
    const auto rows = get<std::size_t>(j, "rows"), cols = get<std::size_t>(j, "cols");
    const json& e = need(j, "entries");
    if (!e.is_array() || e.size() != rows * cols) bad("entries must hold rows*cols elements");
    std::vector<Elem> v;
    v.reserve(e.size());
    for (const auto& x : e) v.push_back(element_from_json(tower, level, x));
    return FMatrix(tower.level_ptr(level), rows, cols, std::move(v));
}

json profile_to_json(const CodeProfile& p) {
    return {{"variant", to_string(p.variant)}, {"k", p.k},   {"r1", p.r1}, {"r2", p.r2},
            {"h1", p.h1},                      {"h2", p.h2}, {"delta", p.delta}, {"n", p.n}};
}

CodeProfile profile_from_json(const json& j) {
    Variant v;
    try {
        v = variant_from_string(get<std::string>(j, "variant"));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw;
        bad(e.what());
    }
    auto p = make_profile(v, get<std::size_t>(j, "k"), get<std::size_t>(j, "r1"), get<std::size_t>(j, "r2"),
                          get<std::size_t>(j, "h1"), get<std::size_t>(j, "h2"), get<std::size_t>(j, "delta"));
    if (j.contains("n") && get<std::size_t>(j, "n") != p.n) bad("stored n disagrees with the profile");
    return p;
}

json pattern_to_json(const ErasurePattern& p) {
    return {{"delta_sets", p.delta_sets}, {"gamma_sets", p.gamma_sets}, {"global_set", p.global_set}};
}

ErasurePattern pattern_from_json(const json& j) {
    ErasurePattern p;
    p.delta_sets = index_lists(j, "delta_sets");
    p.gamma_sets = index_lists(j, "gamma_sets");
    p.global_set = get<std::vector<std::size_t>>(j, "global_set");
    return p;
}

json params_to_json(const FieldTower& t, const ConstructionParams& p) {
    auto elems = [&](const std::vector<Elem>& v) {
        json a = json::array();
        for (Elem x : v) a.push_back(element_to_json(t, t.top(), x));
        return a;
    };
    json j = {{"q", p.q}, {"M1", p.m1}, {"M", p.m}, {"notes", p.notes}};
    if (p.q0) j["q0"] = p.q0;
    if (p.subgroup_order) {
        j["subgroup_order"] = p.subgroup_order;
        j["subgroup_generator"] = element_to_json(t, t.top(), p.subgroup_generator);
    }
    if (!p.alpha.empty()) j["alpha"] = elems(p.alpha);
    if (!p.beta.empty()) j["beta"] = elems(p.beta);
    if (!p.lambda.empty()) j["lambda"] = elems(p.lambda);
    if (!p.mu.empty()) j["mu"] = elems(p.mu);
    return j;
}

json certificate_to_json(const ConstructionCertificate& c) {
    json j = {{"method", to_string(c.method)},
              {"passed", c.passed},
              {"patterns_checked", c.patterns_checked},
              {"witness", c.witness ? pattern_to_json(*c.witness) : json(nullptr)}};
    if (c.method == CertificateMethod::PsiThetaConditions) {
        j["psi_failures"] = c.psi_failures;
        j["theta_failures"] = c.theta_failures;
    } else if (c.witness) {
        j["rank_deficit"] = c.rank_deficit;
    }
    return j;
}

json code_to_json(const ParityCheck& code, const ConstructionParams* params, const ConstructionCertificate* cert) {
    json bands = json::array();
    for (const auto& b : code.bands)
        bands.push_back({{"kind", to_string(b.kind)},
                         {"mid", b.mid},
                         {"local", b.local},
                         {"row_begin", b.row_begin},
                         {"row_end", b.row_end},
                         {"level", b.level}});
    return {{"format", "hmrc-code/1"},
            {"family", code.family},
            {"profile", profile_to_json(code.profile)},
            {"field", field_spec_to_json(code.tower.spec())},
            {"matrix", matrix_to_json(code.tower, code.tower.top(), code.matrix)},
            {"bands", bands},
            {"certificate", cert ? certificate_to_json(*cert) : json(nullptr)},
            {"params", params ? params_to_json(code.tower, *params) : json(nullptr)}};
}

CodeFile code_from_json(const json& j) {
    if (get<std::string>(j, "format") != "hmrc-code/1") bad("unknown format");
    CodeFile f;
    auto& c = f.code;
    c.family = get<std::string>(j, "family");
    try {
        c.profile = profile_from_json(need(j, "profile"));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw;
        bad(std::string("invalid profile: ") + e.what());
    }
    std::size_t level = 0;
    c.matrix = matrix_from_json(need(j, "matrix"), c.tower, level);
    if (level != c.tower.top()) bad("matrix must live at the top level of its field");
    if (j.contains("field") && !j.at("field").is_null() && field_spec_from_json(j.at("field")) != c.tower.spec())
        bad("field and matrix.field disagree");
    for (const auto& b : need(j, "bands")) {
        Band band;
        try {
            band.kind = band_kind_from_string(get<std::string>(b, "kind"));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ParseError) throw;
            bad(e.what());
        }
        band.mid = get<std::size_t>(b, "mid");
        band.local = get<std::size_t>(b, "local");
        band.row_begin = get<std::size_t>(b, "row_begin");
        band.row_end = get<std::size_t>(b, "row_end");
        band.level = get<std::size_t>(b, "level");
        if (band.level >= c.tower.level_count()) bad("band level out of range");
        if (band.row_end < band.row_begin) bad("band rows reversed");
        c.bands.push_back(band);
    }
    if (c.matrix.cols() != c.profile.n || c.matrix.rows() != c.profile.n - c.profile.k)
        throw Error(ErrorCode::ShapeMismatch, "matrix is " + std::to_string(c.matrix.rows()) + "x" +
                                                  std::to_string(c.matrix.cols()) + ", profile needs " +
                                                  std::to_string(c.profile.n - c.profile.k) + "x" +
                                                  std::to_string(c.profile.n));
    f.params = j.value("params", json(nullptr));
    f.certificate = j.value("certificate", json(nullptr));
    return f;
}

json report_to_json(const VerificationReport& r, const std::string& mode) {
    json w = nullptr;
    if (r.witness) {
        w = pattern_to_json(r.witness->pattern);
        w["rank_deficit"] = r.witness->rank_deficit;
    }
    return {{"passed", r.passed}, {"patterns_checked", r.patterns_checked}, {"witness", w}, {"mode", mode}};
}

Received received_from_json(const json& j, const FieldTower& t, std::size_t level) {
    if (!j.is_array()) bad("received word must be a JSON list");
    Received w;
    for (const auto& x : j) {
        if (x.is_null())
            w.emplace_back();
        else
            w.emplace_back(element_from_json(t, level, x));
    }
    return w;
}

json word_to_json(const FieldTower& t, std::size_t level, const std::vector<Elem>& w) {
    json a = json::array();
    for (Elem x : w) a.push_back(element_to_json(t, level, x));
    return a;
}

json received_to_json(const FieldTower& t, std::size_t level, const Received& w) {
    json a = json::array();
    for (const auto& x : w) a.push_back(x ? element_to_json(t, level, *x) : json(nullptr));
    return a;
}

}  // namespace hmrc
