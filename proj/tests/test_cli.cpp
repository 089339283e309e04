#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "trialg/cli.hpp"

using namespace trialg;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() / ("trialg_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }

    std::string file(const std::string& name, const std::string& content) const {
        fs::path p = dir / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
};

const char* kQuadricSpec =
    "l0: 1 1\n"
    "l1: 1 1\n"
    "l2: 2\n"
    "grading: 1 0 1\n"
    "grading: -1 0 1\n"
    "grading: 0 1 1\n"
    "grading: 0 -1 1\n"
    "grading: 0 0 1\n";

json out_json(const cli::RunResult& r) { return json::parse(r.out); }

}  // namespace

TEST_CASE("cli info") {
    TempDir tmp;
    std::string spec = tmp.file("quadric.spec", kQuadricSpec);
    auto res = cli::run({"info", spec});
    REQUIRE(res.code == 0);
    json j = out_json(res);
    REQUIRE(j["ambient_rank"] == 5);
    REQUIRE(j["free_rank"] == 3);
    REQUIRE(j["torsion"].empty());
    REQUIRE(j["basis"] == "explicit");
    REQUIRE(j["g_degree"] == json::array({0, 0, 2}));
    REQUIRE(j["generator_degrees"][0]["degree"] == json::array({1, 0, 1}));

    // deterministic output
    auto res2 = cli::run({"info", spec});
    REQUIRE(res2.out == res.out);

    std::string torsion_spec = tmp.file("diag.spec", "l0: 2\nl1: 2\nl2: 2\n");
    json dj = out_json(cli::run({"info", torsion_spec}));
    REQUIRE(dj["free_rank"] == 1);
    REQUIRE(dj["torsion"] == json::array({2, 2}));
    REQUIRE(dj["basis"] == "canonical");
}

TEST_CASE("cli elementary") {
    TempDir tmp;
    std::string spec = tmp.file("quadric.spec", kQuadricSpec);
    auto count = cli::run({"elementary", spec, "--count"});
    REQUIRE(count.code == 0);
    REQUIRE(out_json(count)["count"] == 12);

    auto list = cli::run({"elementary", spec, "--list"});
    REQUIRE(list.code == 0);
    json j = out_json(list);
    REQUIRE(j["classes"].size() == 12);
    for (const auto& cls : j["classes"]) {
        REQUIRE(cls.contains("C"));
        REQUIRE((cls["type"] == "I" || cls["type"] == "II"));
        REQUIRE(cls["images"].is_object());
        REQUIRE(!cls["images"].empty());
    }

    auto neither = cli::run({"elementary", spec});
    REQUIRE(neither.code == 2);

    std::string ones = tmp.file("ones.spec", "l0: 1\nl1: 1\nl2: 1\n");
    REQUIRE(out_json(cli::run({"elementary", ones, "--count"}))["count"] == 4);
}

TEST_CASE("cli is-root exit codes") {
    TempDir tmp;
    std::string spec = tmp.file("quadric.spec", kQuadricSpec);

    auto yes = cli::run({"is-root", spec, "--degree", "-1", "-1", "0"});
    REQUIRE(yes.code == 0);
    json j = out_json(yes);
    REQUIRE(j["is_root"] == true);
    REQUIRE(j["type_one"] == false);
    REQUIRE(j["containing_sets"].size() == 1);
    REQUIRE(j["containing_sets"][0]["pair"] == json::array({"T(0,1)", "T(1,1)"}));
    REQUIRE(j["containing_sets"][0]["witness"].empty());

    auto no = cli::run({"is-root", spec, "--degree", "0", "0", "1"});
    REQUIRE(no.code == 1);
    REQUIRE(out_json(no)["is_root"] == false);

    auto vertex = cli::run({"is-root", spec, "--degree", "-1", "-1", "1"});
    REQUIRE(vertex.code == 0);
    REQUIRE(out_json(vertex)["type_one"] == true);

    auto bad = cli::run({"is-root", spec, "--degree", "1", "2"});
    REQUIRE(bad.code == 2);
}

TEST_CASE("cli witness") {
    TempDir tmp;
    std::string spec = tmp.file("quadric.spec", kQuadricSpec);
    auto res = cli::run({"witness", spec, "--degree", "-2", "-1", "1"});
    REQUIRE(res.code == 0);
    json j = out_json(res);
    REQUIRE(j["is_root"] == true);
    REQUIRE(j["annihilates_g"] == true);
    REQUIRE(j["degree_matches"] == true);
    REQUIRE(j["nilpotency"]["index"] == 2);
    REQUIRE(j["derivation"].is_object());

    auto no = cli::run({"witness", spec, "--degree", "0", "0", "1"});
    REQUIRE(no.code == 1);
}

TEST_CASE("cli roots box") {
    TempDir tmp;
    std::string spec = tmp.file("quadric.spec", kQuadricSpec);
    auto res = cli::run({"roots", spec, "--box", "-2", "2", "-2", "2", "-2", "2"});
    REQUIRE(res.code == 0);
    json j = out_json(res);
    REQUIRE(j["basis"] == "explicit");
    bool found_corner = false;
    for (const auto& r : j["roots"]) {
        REQUIRE(r["count"].get<int>() >= 1);
        REQUIRE(r["count"].get<int>() <= 3);
        if (r["coordinates"] == json::array({-1, -1, 0})) found_corner = true;
        REQUIRE(r["coordinates"] != json::array({0, 0, 1}));
    }
    REQUIRE(found_corner);

    auto csv = cli::run({"roots", spec, "--box", "-2", "2", "-2", "2", "-2", "2", "--csv"});
    REQUIRE(csv.code == 0);
    REQUIRE(csv.out.rfind("x0,x1,x2,count,type1\n", 0) == 0);
    auto csv2 = cli::run({"roots", spec, "--box", "-2", "2", "-2", "2", "-2", "2", "--csv"});
    REQUIRE(csv2.out == csv.out);

    auto empty = cli::run({"roots", spec, "--box", "2", "-2", "0", "0", "0", "0"});
    REQUIRE(empty.code == 2);
    auto short_box = cli::run({"roots", spec, "--box", "-2", "2"});
    REQUIRE(short_box.code == 2);
}

TEST_CASE("cli verify") {
    TempDir tmp;
    std::string spec = tmp.file("quadric.spec", kQuadricSpec);

    std::string good = tmp.file("good.deriv", "T(0,1): T(1,2)\nT(1,1): -T(0,2)\n");
    auto res = cli::run({"verify", spec, good});
    REQUIRE(res.code == 0);
    json j = out_json(res);
    REQUIRE(j["annihilates_g"] == true);
    REQUIRE(j["homogeneous"] == true);
    REQUIRE(j["degree"] == json::array({-1, -1, 0}));
    REQUIRE(j["elementary"]["type"] == "II");

    // scaled by a kernel monomial: still elementary
    std::string scaled = tmp.file("scaled.deriv",
                                  "T(0,1): 2/3 * T(0,2) * T(1,2)\nT(1,1): -2/3 * T(0,2)^2\n");
    auto sres = cli::run({"verify", spec, scaled});
    REQUIRE(sres.code == 0);
    REQUIRE(out_json(sres)["elementary"]["multiplier"]["alpha"] == "2/3");

    // Euler derivation: fails nilpotency cap and the recognizer
    std::string euler = tmp.file(
        "euler.deriv",
        "T(0,1): T(0,1)\nT(0,2): T(0,2)\nT(1,1): T(1,1)\nT(1,2): T(1,2)\nT(2,1): T(2,1)\n");
    auto eres = cli::run({"verify", spec, euler});
    REQUIRE(eres.code == 1);
    json ej = out_json(eres);
    // Euler sends g to 2g, which vanishes in the quotient; it still fails
    // the recognizer (and the nilpotency cap)
    REQUIRE(ej["annihilates_g"] == true);
    REQUIRE(ej["nilpotency"].contains("unknown_at_cap"));
    REQUIRE(ej["elementary"].is_null());

    // not well defined on the quotient
    std::string bad = tmp.file("bad.deriv", "T(0,1): T(0,1)\n");
    auto bres = cli::run({"verify", spec, bad});
    REQUIRE(bres.code == 1);
    REQUIRE(out_json(bres)["annihilates_g"] == false);

    auto missing = cli::run({"verify", spec, (tmp.dir / "nope.deriv").string()});
    REQUIRE(missing.code == 2);
}

TEST_CASE("cli oracle") {
    TempDir tmp;
    std::string spec = tmp.file("xyz2.spec", "l0: 1\nl1: 1\nl2: 2\n");
    auto res = cli::run({"oracle", spec, "--degree", "-2", "--cap", "6", "--samples", "5"});
    REQUIRE(res.code == 0);
    json j = out_json(res);
    REQUIRE(j["ok"] == true);
    REQUIRE(j["entries"].size() == 1);
    REQUIRE(j["entries"][0]["degree_is_root"] == true);
    REQUIRE(j["entries"][0]["has_nilpotent"] == true);
    REQUIRE(j["entries"][0]["needs_scalar_extension"] == 0);

    // the Euler direction is not nilpotent: cap surfaces as exit 3
    auto unknown = cli::run({"oracle", spec, "--degree", "0", "--cap", "6", "--samples", "2"});
    REQUIRE(unknown.code == 3);
    REQUIRE(out_json(unknown)["ok"] == true);
}

TEST_CASE("cli degree parsing with torsion residues") {
    TempDir tmp;
    // x^2 + y^2 + z^2: K = Z + Z/2 + Z/2, canonical coordinates only
    std::string spec = tmp.file("diag.spec", "l0: 2\nl1: 2\nl2: 2\n");
    auto res = cli::run({"is-root", spec, "--degree", "1", ";", "1", "0"});
    REQUIRE(res.code == 1);  // no basic sets at all, so nothing is a root
    json j = out_json(res);
    REQUIRE(j["in_group"] == true);
    REQUIRE(j["is_root"] == false);
    REQUIRE(j["degree"]["torsion"] == json::array({1, 0}));

    // attached separator works the same way
    auto res2 = cli::run({"is-root", spec, "--degree", "1;1", "0"});
    REQUIRE(res2.out == res.out);

    // torsion residues are rejected in an explicit basis
    std::string qspec = tmp.file("q.spec", kQuadricSpec);
    auto bad = cli::run({"is-root", qspec, "--degree", "1", "1", "0", ";", "1"});
    REQUIRE(bad.code == 2);
}

TEST_CASE("cli misc errors") {
    TempDir tmp;
    auto nocmd = cli::run({});
    REQUIRE(nocmd.code == 2);
    auto help = cli::run({"help"});
    REQUIRE(help.code == 0);
    REQUIRE(help.out.find("usage:") != std::string::npos);
    auto unknown = cli::run({"frobnicate", "x"});
    REQUIRE(unknown.code == 2);
    auto missing_spec = cli::run({"info", (tmp.dir / "nope.spec").string()});
    REQUIRE(missing_spec.code == 2);
    std::string spec = tmp.file("q.spec", kQuadricSpec);
    auto badflag = cli::run({"is-root", spec, "--degrees", "1", "1", "0"});
    REQUIRE(badflag.code == 2);
}
