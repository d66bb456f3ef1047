#include "scenario.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sat;

namespace {

std::string scenario_path(const std::string& name) { return std::string(SAT_SCENARIO_DIR) + "/" + name + ".scn"; }

const char* kCusp = R"(format: satake-scenario/1
name: cusp
group: sl 2
model: unip
subgroup: full_unipotent_radical levi={}
direction: 5, -5
indices: 1
samples: 2000
)";

std::string read(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_parse_error(const std::string& text, int line, int column) {
    try {
        parse_scenario(text);
        FAIL("no error for: " << text);
    } catch (const ParseError& e) {
        CHECK(e.line == line);
        CHECK(e.column == column);
    }
}

}  // namespace

TEST_CASE("scenario parsing") {
    Scenario sc = parse_scenario(kCusp);
    CHECK(sc.name == "cusp");
    CHECK(sc.factors == std::vector<int>{2});
    CHECK(sc.model == Model::unip);
    CHECK(sc.sequence.subgroup.kind == SubgroupKind::full_unipotent_radical);
    CHECK(sc.sequence.direction == QVec{Q(5), Q(-5)});
    CHECK(sc.samples == 2000);
    CHECK(sc.tesc.size() == 3);

    Scenario full = load_scenario(scenario_path("sl2r_mixed"));
    CHECK(full.factors == std::vector<int>{2, 2, 2});
    REQUIRE(full.sequence.subgroup.parts.size() == 3);
    CHECK(full.sequence.subgroup.parts[0].kind == SubgroupKind::full_group);
    CHECK(full.sequence.subgroup.parts[2].kind == SubgroupKind::trivial);
    CHECK(full.sequence.offset[4][5].d == 5);

    Scenario conj = parse_scenario(std::string(kCusp) + "conjugator: 0, -1; 1, 0\nseed: 9\ntesc: 50\nycap: 2e4\n");
    REQUIRE(conj.sequence.subgroup.conjugator);
    CHECK((*conj.sequence.subgroup.conjugator)(0, 1) == -1);
    CHECK(conj.seed == 9);
    CHECK(conj.tesc == std::vector<double>{50});
    CHECK(conj.ycap == 2e4);

    Scenario one = parse_scenario(
        "format: satake-scenario/1\nname: x\ngroup: sl 3\nmodel: sl3\nsubgroup: one_param_unipotent i=1 j=3\n"
        "direction: 1/2, 0, -1/2\nindices: 1, 2\n");
    CHECK(one.sequence.subgroup.i == 0);
    CHECK(one.sequence.subgroup.j == 2);
    CHECK(one.sequence.direction[0] == Q(1, 2));
}

TEST_CASE("parse errors carry line and column") {
    check_parse_error("name: x\n", 1, 1);
    check_parse_error("format: satake-scenario/2\n", 1, 9);
    check_parse_error("format: satake-scenario/1\nname x\n", 2, 1);
    check_parse_error("format: satake-scenario/1\n  bogus: 1\n", 2, 3);
    check_parse_error("format: satake-scenario/1\nname: a\nname: b\n", 3, 1);
    check_parse_error("format: satake-scenario/1\nname: a\n", 3, 1);
    try {
        load_scenario(scenario_path("malformed"));
        FAIL("malformed scenario parsed");
    } catch (const ParseError& e) {
        CHECK(e.line == 6);
        CHECK(e.column == 12);
        CHECK(std::string(e.what()).find("line 6, column 12") == 0);
    }
    CHECK_THROWS_AS(load_scenario("/nonexistent/file.scn"), InputError);
    CHECK_THROWS_AS(parse_group_spec("so 3"), InputError);
    CHECK(parse_group_spec("sl2^3") == std::vector<int>{2, 2, 2});
    CHECK(parse_group_spec("sl 4") == std::vector<int>{4});
}

TEST_CASE("running scenarios") {
    auto dir = std::filesystem::temp_directory_path() / "satake_test_scenario";
    std::filesystem::remove_all(dir);

    SUBCASE("the cusp escapes and outputs are written") {
        Report r = run_scenario(parse_scenario(kCusp), dir.string());
        CHECK(r.exit_code == kPass);
        CHECK(r.pass);
        CHECK(r.reported_label == 0);
        CHECK(std::filesystem::exists(dir / "points_1.tsv"));
        CHECK(read(dir / "summary.txt") == r.summary);
        CHECK(read(dir / "verdict.txt").find("predicted P{}") != std::string::npos);
        CHECK(r.summary.find("verdict: pass") != std::string::npos);
    }
    SUBCASE("summaries are byte-identical across runs and job counts") {
        Scenario sc = load_scenario(scenario_path("sl3_levi_unipotent"));
        sc.samples = 5000;
        Report a = run_scenario(sc);
        sc.jobs = 3;
        Report b = run_scenario(sc);
        CHECK(a.summary == b.summary);
        CHECK(a.reported_label == 2);
        sc.seed += 1;
        CHECK(run_scenario(sc).summary != a.summary);
    }
    SUBCASE("a translate too short to escape disagrees") {
        Scenario sc = parse_scenario(kCusp);
        sc.sequence.direction = {Q(1), Q(-1)};
        Report r = run_scenario(sc);
        CHECK(r.exit_code == kDisagree);
        CHECK_FALSE(r.pass);
    }
    SUBCASE("not covered") {
        CHECK(run_scenario(load_scenario(scenario_path("not_covered"))).exit_code == kNotCovered);
        Scenario sc = parse_scenario(
            "format: satake-scenario/1\nname: x\ngroup: sl 3\nmodel: levi\nsubgroup: full_group\n"
            "direction: 0, 0, 0\nindices: 1\n");
        CHECK(run_scenario(sc).exit_code == kNotCovered);
    }
    SUBCASE("input errors") {
        Scenario sc = parse_scenario(kCusp);
        sc.samples = 999;
        CHECK(run_scenario(sc).exit_code == kInputError);
        sc = parse_scenario(kCusp);
        sc.sequence.indices = {3};   // condition number e^30
        Report r = run_scenario(sc);
        CHECK(r.exit_code == kInputError);
        CHECK(r.message.find("condition number") != std::string::npos);
        sc = parse_scenario(kCusp);
        sc.sequence.direction = {Q(1), Q(0)};
        CHECK(run_scenario(sc).exit_code == kInputError);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("catalog") {
    std::string c = catalog_text();
    for (const char* k : {"trivial", "full_unipotent_radical", "levi_semisimple_nc", "embedded_sl2",
                          "one_param_unipotent", "full_group", "product"})
        CHECK(c.find(k) != std::string::npos);
    for (const std::string& s : sl3_branch_slugs()) CHECK(c.find(s) != std::string::npos);
    CHECK(catalog_text() == c);
    CHECK(label_name(3, 2) == "G");
    CHECK(label_name(2, 2) == "P{2}");
    CHECK(label_name(0, 2) == "P{}");
}
