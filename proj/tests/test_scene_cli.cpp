#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "kirwan/cli.hpp"

using namespace kirwan;
using namespace kirwan::test;

namespace {

std::string scene_path(const std::string& file) { return std::string(KIRWAN_SCENE_DIR) + "/" + file; }

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

// Scratch file removed on scope exit.
struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& name, const std::string& contents = "")
        : path(std::filesystem::temp_directory_path() / ("kirwan_test_" + name)) {
        if (!contents.empty())
            std::ofstream(path, std::ios::binary) << contents;
    }
    ~TempFile() { std::filesystem::remove(path); }
    std::string str() const { return path.string(); }
};

const char* bad_d2_scene = R"({
  "torus_rank": 1,
  "variables": [{"name": "x", "weight": [1]}, {"name": "y", "weight": [-1]}],
  "gens1": [{"name": "w", "weight": [0], "differential": "x*y"}],
  "gens2": [{"name": "eta", "weight": [0], "differential": {"w": "1"}}]
})";

} // namespace

TEST_CASE("bundled scenes load and match the fixtures", "[scene]")
{
    CHECK(load_scene(scene_path("xy2-x2y.json")).cdga == xy2_x2y());
    CHECK(load_scene(scene_path("a2-hyperbolic.json")).cdga == a2_hyperbolic());
    CHECK(load_scene(scene_path("xy.json")).cdga == xy_scene());
    CHECK(load_scene(scene_path("darboux-x2y2.json")).cdga == darboux_x2y2());
    CHECK(load_scene(scene_path("all-positive.json")).cdga == all_positive());
    Scene d = load_scene(scene_path("darboux-x2y2.json"));
    CHECK(d.options.order == "grevlex");
    CHECK(d.options.seed == 0u);
    CHECK_FALSE(d.options.depth_fuse);
}

TEST_CASE("schema errors", "[scene]")
{
    CHECK_THROWS_AS(parse_scene_text(R"({"torus_rank": 1, "variables": [{"name": "x", "weight": [1, 0]}]})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_scene_text(R"({"torus_rank": 1})"), SchemaError);
    CHECK_THROWS_AS(parse_scene_text(R"({"torus_rank": 1, "variables": [], "colour": 3})"), SchemaError);
    CHECK_THROWS_AS(parse_scene_text(R"({"torus_rank": -1, "variables": []})"), SchemaError);
    CHECK_THROWS_AS(parse_scene_text(R"({"torus_rank": 1, "variables": [], "options": {"order": "deglex"}})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_scene_text("{ not json"), SchemaError);
    CHECK_THROWS_AS(load_scene(scene_path("does-not-exist.json")), IoError);
    CHECK_THROWS_AS(parse_scene_text(R"({"torus_rank": 1, "variables": [{"name": "x", "weight": [1]}],
        "gens1": [{"name": "w", "weight": [1], "differential": "x + "}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_scene_text(R"({"torus_rank": 1, "variables": [{"name": "x", "weight": [1]}],
        "gens1": [{"name": "w", "weight": [1], "differential": "z"}]})"),
                    UnknownVariable);
}

TEST_CASE("d^2 failures name the degree-2 generator", "[scene]")
{
    try {
        scene_from_text(bad_d2_scene);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE_FALSE(e.violations().empty());
        CHECK(std::string(e.what()).find("eta") != std::string::npos);
    }
}

TEST_CASE("scene serialization round-trips", "[scene]")
{
    for (const char* file : {"xy2-x2y.json", "a2-hyperbolic.json", "xy.json", "darboux-x2y2.json", "all-positive.json"}) {
        Scene s = load_scene(scene_path(file));
        const std::string text = scene_to_json(s).dump(2);
        Scene t = scene_from_text(text);
        CHECK(t.cdga == s.cdga);
        CHECK(t.options == s.options);
        CHECK(scene_to_json(t).dump(2) == text);
    }
    Scene rich;
    rich.cdga = darboux_x2y2();
    rich.options.order = "lex";
    rich.options.depth_fuse = 3;
    rich.options.degree_cap = 7;
    Scene back = scene_from_text(scene_to_json(rich).dump());
    CHECK(back.cdga == rich.cdga);
    CHECK(back.options == rich.options);
}

TEST_CASE("validate and pi0 subcommands", "[cli]")
{
    Run v = run({"validate", "--scene", scene_path("darboux-x2y2.json")});
    CHECK(v.code == 0);
    CHECK(v.out.find("valid") == 0);

    TempFile bad("bad_d2.json", bad_d2_scene);
    Run b = run({"validate", "--scene", bad.str(), "--json", "-"});
    CHECK(b.code == 1);
    Json doc = Json::parse(b.out);
    CHECK(doc["valid"] == false);
    CHECK(doc["violations"][0].get<std::string>().find("eta") != std::string::npos);

    Run p = run({"pi0", "--scene", scene_path("darboux-x2y2.json"), "--json", "-"});
    CHECK(p.code == 0);
    Json pj = Json::parse(p.out);
    CHECK(pj["generators"] == Json::array({"x^2*y", "x*y^2"}));
    CHECK(pj["command"] == "pi0");
}

TEST_CASE("reduce summaries", "[cli]")
{
    Run a2 = run({"reduce", "--scene", scene_path("a2-hyperbolic.json")});
    CHECK(a2.code == 0);
    CHECK(a2.out.find("summary: 1 blow-up, 2 DM charts\n") != std::string::npos);
    CHECK(a2.out.find("excluded V(u_y)") != std::string::npos);
    CHECK(a2.out.find("excluded V(u_x)") != std::string::npos);

    Run pos = run({"reduce", "--scene", scene_path("all-positive.json")});
    CHECK(pos.code == 0);
    CHECK(pos.out.find("2 fully-unstable charts") != std::string::npos);
    CHECK(pos.out.find("semistable locus is empty") != std::string::npos);

    Run j = run({"reduce", "--scene", scene_path("all-positive.json"), "--json", "-"});
    Json doc = Json::parse(j.out);
    CHECK(doc["summary"]["dm_charts"] == 0);
    CHECK(doc["summary"]["semistable_empty"] == true);
    CHECK(doc["invariants"]["failed"] == 0);
}

TEST_CASE("report lists DM leaves", "[cli]")
{
    Run r = run({"report", "--scene", scene_path("darboux-x2y2.json"), "--json", "-"});
    REQUIRE(r.code == 0);
    Json doc = Json::parse(r.out);
    REQUIRE(doc["leaves"].size() == 2);
    for (const Json& leaf : doc["leaves"]) {
        CHECK(leaf["vdim"] == 0);
        CHECK(leaf["dagger"] == true);
        CHECK(leaf["e_ranks"] == Json::array({1, 1}));
    }
}

TEST_CASE("chart subcommands", "[cli]")
{
    Run f = run({"fixed-locus", "--scene", scene_path("xy.json"), "--json", "-"});
    REQUIRE(f.code == 0);
    Json fl = Json::parse(f.out)["fixed_locus"];
    CHECK(fl["ring"].empty());
    REQUIRE(fl["gens1"].size() == 1);
    CHECK(fl["gens1"][0]["differential"] == "0");

    Run b = run({"blowup", "--scene", scene_path("xy2-x2y.json"), "--chart", "chart_y", "--json", "-"});
    REQUIRE(b.code == 0);
    Json charts = Json::parse(b.out)["charts"];
    REQUIRE(charts.size() == 1);
    CHECK(charts[0]["name"] == "chart_y");
    CHECK(charts[0]["crosscheck"] == true);

    Run k = run({"kirwan", "--scene", scene_path("a2-hyperbolic.json"), "--json", "-"});
    REQUIRE(k.code == 0);
    Json kd = Json::parse(k.out);
    CHECK(kd["saturation"] == Json::array({"x*y"}));
    CHECK(kd["charts"][0]["cdga"]["excluded"] == Json::array({"u_y"}));

    Run r = run({"rees", "--scene", scene_path("xy2-x2y.json"), "--order", "lex", "--json", "-"});
    REQUIRE(r.code == 0);
    Json rels = Json::parse(r.out)["rees"]["relations"];
    CHECK(rels[0]["relation"] == "-x + t_inv*v_x");
    CHECK(rels[1]["relation"] == "-y + t_inv*v_y");
}

TEST_CASE("exit codes", "[cli]")
{
    CHECK(run({}).code == 2);
    CHECK(run({"pi0"}).code == 2);
    CHECK(run({"frobnicate", "--scene", scene_path("xy.json")}).code == 2);
    CHECK(run({"pi0", "--scene", scene_path("missing.json")}).code == 2);
    CHECK(run({"pi0", "--scene", scene_path("xy.json"), "--order", "deglex"}).code == 2);
    CHECK(run({"blowup", "--scene", scene_path("xy.json"), "--subtorus", "1,0"}).code == 2);
    CHECK(run({"blowup", "--scene", scene_path("xy.json"), "--subtorus", "x"}).code == 2);
    CHECK(run({"blowup", "--scene", scene_path("xy.json"), "--chart", "chart_q"}).code == 2);
    CHECK(run({"--help"}).code == 0);

    TempFile bad("bad_d2_exit.json", bad_d2_scene);
    CHECK(run({"pi0", "--scene", bad.str()}).code == 1);

    TempFile schema("schema.json", R"({"torus_rank": 1, "variables": [{"name": "x", "weight": [1, 2]}]})");
    CHECK(run({"validate", "--scene", schema.str()}).code == 2);

    TempFile trivial("trivial.json", R"({"torus_rank": 1, "variables": [{"name": "x", "weight": [0]}]})");
    CHECK(run({"blowup", "--scene", trivial.str()}).code == 1);

    CHECK(run({"reduce", "--scene", scene_path("a2-hyperbolic.json"), "--depth-fuse", "0"}).code == 3);

    TempFile sink("sink.json");
    Run w = run({"pi0", "--scene", scene_path("xy.json"), "--json", sink.str()});
    CHECK(w.code == 0);
    CHECK(w.out.find("classical truncation") != std::string::npos);
    std::ifstream in(sink.path);
    CHECK(Json::parse(in)["generators"] == Json::array({"x*y"}));
}

TEST_CASE("reports are byte-identical across runs", "[cli]")
{
    for (const char* file : {"darboux-x2y2.json", "a2-hyperbolic.json", "xy2-x2y.json"}) {
        std::vector<std::string> args{"reduce", "--scene", scene_path(file), "--seed", "7", "--json", "-"};
        Run a = run(args), b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}
