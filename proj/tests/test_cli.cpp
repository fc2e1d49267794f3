#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hmrc/serialize.hpp"

using namespace hmrc;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

fs::path scratch() {
    static fs::path dir = [] {
        fs::path d = HMRC_SCRATCH;
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

Run run(const std::string& args) {
    const std::string out = path("stdout.txt");
    const std::string cmd = std::string(HMRC_CLI) + " " + args + " > " + out + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out);
    std::stringstream s;
    s << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, s.str()};
}

json load(const std::string& p) {
    std::ifstream in(p);
    return json::parse(in);
}

void save(const std::string& p, const json& j) { std::ofstream(p) << j.dump(); }

const char* kExample = "--k 5 --r1 3 --r2 2 --h1 1 --h2 1 --delta 2";

// Builds the n=16 example once.
const std::string& example_file() {
    static const std::string f = [] {
        auto p = path("example.json");
        auto r = run(std::string("construct --family h11h21 ") + kExample + " -o " + p);
        REQUIRE(r.code == 0);
        return p;
    }();
    return f;
}

}  // namespace

TEST_CASE("construct the n=16 example") {
    auto j = load(example_file());
    CHECK(j["format"] == "hmrc-code/1");
    CHECK(j["profile"]["n"] == 16);
    CHECK(j["matrix"]["rows"] == 11);
    CHECK(j["certificate"]["passed"] == true);
    CHECK(j["certificate"]["patterns_checked"].get<std::uint64_t>() > 0);
    auto back = code_from_json(j);
    CHECK(back.code.bands.size() == 2 * 2 + 2 + 1);
}

TEST_CASE("construct from a descriptor") {
    auto d = path("descriptor.json");
    save(d, {{"family", "general"},
             {"profile", {{"k", 3}, {"r1", 2}, {"r2", 1}, {"h1", 1}, {"h2", 1}, {"delta", 1}}},
             {"seed", nullptr}});
    auto r = run("construct --descriptor " + d + " --certify theorem2 --json -o " + path("desc_code.json"));
    CHECK(r.code == 0);
    auto s = json::parse(r.out);
    CHECK(s["certificate"]["method"] == "theorem2");
    CHECK(s["certificate"]["passed"] == true);

    save(d, {{"family", "general"},
             {"profile", {{"k", 3}, {"r1", 2}, {"r2", 1}, {"h1", 1}, {"h2", 1}, {"delta", 1}}},
             {"seed", 7}});
    CHECK(run("construct --descriptor " + d).code == 1);
}

TEST_CASE("construct usage and construction failures") {
    auto r = run(std::string("construct --family nosuch ") + kExample);
    CHECK(r.code == 1);
    CHECK(r.out.find("nosuch") != std::string::npos);

    CHECK(run("construct --family general --k 3 --r1 2 --r2 2 --h1 1 --h2 1 --delta 1").code == 1);
    CHECK(run("").code == 1);

    r = run("construct --family h12h21 --k 4 --r1 3 --r2 2 --h1 2 --h2 1 --delta 1 --q0-cap 31 -o " +
            path("never.json"));
    CHECK(r.code == 2);
    CHECK(r.out.find("alpha") != std::string::npos);
}

TEST_CASE("construct with HDL derivation") {
    auto p = path("hdl.json");
    auto r = run(std::string("construct --family h11h21 ") + kExample + " --derive-hdl -o " + p);
    CHECK(r.code == 0);
    auto j = load(p);
    CHECK(j["family"] == "derived-hdl");
    CHECK(j["profile"]["variant"] == "HDL");
    CHECK(run("verify " + p).code == 0);
}

TEST_CASE("verify") {
    auto r = run("verify --json " + example_file());
    CHECK(r.code == 0);
    auto rep = json::parse(r.out);
    CHECK(rep["passed"] == true);
    CHECK(rep["patterns_checked"].get<std::uint64_t>() > 0);
    CHECK(rep["witness"].is_null());

    auto par = json::parse(run("verify --json --jobs 4 " + example_file()).out);
    CHECK(par["patterns_checked"] == rep["patterns_checked"]);

    r = run("verify --mode sample --samples 50 --json " + example_file());
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["patterns_checked"] == 50);

    // zeroed first column
    auto j = load(example_file());
    const auto rows = j["matrix"]["rows"].get<std::size_t>(), cols = j["matrix"]["cols"].get<std::size_t>();
    for (std::size_t i = 0; i < rows; ++i)
        for (auto& d : j["matrix"]["entries"][i * cols]) d = 0;
    auto t = path("tampered.json");
    save(t, j);
    r = run("verify " + t);
    CHECK(r.code == 4);
    CHECK(r.out.find("witness") != std::string::npos);
    r = run("verify --json " + t);
    CHECK(json::parse(r.out)["witness"]["rank_deficit"].get<int>() >= 1);

    CHECK(run("verify --mode theorem2 " + example_file()).code == 5);

    auto shape = load(example_file());
    shape["profile"]["k"] = 2;
    shape["profile"]["r1"] = 3;
    shape["profile"].erase("n");
    save(path("shape.json"), shape);
    CHECK(run("verify " + path("shape.json")).code == 5);

    CHECK(run("verify " + path("does_not_exist.json")).code == 3);
    std::ofstream(path("garbage.json")) << "{not json";
    CHECK(run("verify " + path("garbage.json")).code == 3);
}

TEST_CASE("verify theorem2 on the general family") {
    auto p = path("general.json");
    REQUIRE(run("construct --family general --k 3 --r1 2 --r2 1 --h1 1 --h2 1 --delta 1 --certify none -o " + p)
                .code == 0);
    auto r = run("verify --mode theorem2 --json " + p);
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["passed"] == true);
}

TEST_CASE("decode") {
    auto f = code_from_json(load(example_file()));
    const auto& code = f.code;
    auto g = nullspace(code.matrix);
    const auto& fld = g.field();
    std::vector<Elem> c(code.profile.n, 0);
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t j = 0; j < g.cols(); ++j) c[j] = fld.add(c[j], fld.mul(static_cast<Elem>(r % 7 + 1), g(r, j)));

    // delta erasures in local group B_{0,0}
    Received w(c.begin(), c.end());
    for (std::size_t s = 0; s < code.profile.delta; ++s) w[code.profile.local_group(0, 0)[s]].reset();
    save(path("recv.json"), received_to_json(code.tower, code.tower.top(), w));
    auto r = run("decode --json --method both " + example_file() + " " + path("recv.json"));
    CHECK(r.code == 0);
    auto out = json::parse(r.out);
    CHECK(out["status"] == "recovered");
    CHECK(out["codeword"] == word_to_json(code.tower, code.tower.top(), c));
    CHECK(out["trace"]["local"] == code.profile.delta);

    // n-k+1 erasures
    Received many(c.begin(), c.end());
    for (std::size_t j = 0; j <= code.profile.n - code.profile.k; ++j) many[j].reset();
    save(path("many.json"), received_to_json(code.tower, code.tower.top(), many));
    r = run("decode " + example_file() + " " + path("many.json"));
    CHECK(r.code == 4);
    CHECK(r.out.find("unrecoverable") != std::string::npos);

    // corrupted known symbol in B_{1,0}
    Received bad = w;
    const auto victim = code.profile.local_group(1, 0)[0];
    bad[victim] = fld.add(*bad[victim], 1);
    save(path("bad.json"), received_to_json(code.tower, code.tower.top(), bad));
    r = run("decode --json " + example_file() + " " + path("bad.json"));
    CHECK(r.code == 4);
    out = json::parse(r.out);
    CHECK(out["status"] == "inconsistent");
    CHECK_FALSE(out["violated"].empty());

    save(path("short.json"), json::array({nullptr, 1}));
    CHECK(run("decode " + example_file() + " " + path("short.json")).code == 5);
}

TEST_CASE("bounds") {
    auto r = run("bounds --k 38 --r1 4 --r2 2 --h1 2 --h2 2 --delta 2 --json");
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    bool found = false;
    for (const auto& b : j["bounds"])
        if (b["name"] == "field-size lower bound") {
            found = true;
            CHECK(b["applicable"] == true);
            CHECK(b["value"] == 16);
        }
    CHECK(found);
    r = run("bounds --k 5 --r1 3 --r2 2 --h1 1 --h2 1 --delta 2");
    CHECK(r.code == 0);
    CHECK(r.out.find("applicable") != std::string::npos);
    CHECK(run("bounds --k 5").code == 1);
}
