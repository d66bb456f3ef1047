#include "satake.h"

#include <doctest.h>

#include <cmath>
#include <string>

namespace {

const char* kCusp = R"(format: satake-scenario/1
name: cusp
group: sl 2
model: unip
subgroup: full_unipotent_radical levi={}
direction: 5, -5
indices: 1
samples: 2000
)";

}  // namespace

TEST_CASE("C interface: scenarios and reports") {
    sat_scenario* sc = nullptr;
    REQUIRE(sat_scenario_parse(kCusp, &sc) == SAT_OK);
    CHECK(std::string(sat_scenario_name(sc)) == "cusp");
    CHECK(sat_scenario_set_samples(sc, 0) == SAT_INPUT_ERROR);
    CHECK(sat_scenario_set_jobs(sc, 0) == SAT_INPUT_ERROR);
    CHECK(sat_scenario_set_ycap(sc, 0.5) == SAT_INPUT_ERROR);
    CHECK(sat_scenario_set_seed(sc, 4) == SAT_OK);
    CHECK(sat_scenario_set_jobs(sc, 2) == SAT_OK);

    uint32_t label = 99;
    int support = -1;
    REQUIRE(sat_classify(sc, &label, &support) == SAT_OK);
    CHECK(label == 0);

    sat_report* r = nullptr;
    REQUIRE(sat_run(sc, nullptr, &r) == SAT_OK);
    CHECK(sat_report_exit_code(r) == SAT_OK);
    CHECK(sat_report_passed(r) == 1);
    CHECK(sat_report_label(r) == 0);
    CHECK(sat_report_index_count(r) == 1);
    double mass = 0;
    CHECK(sat_report_mass(r, 0, 0, 0, &mass) == SAT_OK);
    CHECK(mass == 1.0);
    CHECK(sat_report_mass(r, 1, 0, 0, &mass) == SAT_INPUT_ERROR);
    CHECK(std::string(sat_report_summary(r)).find("verdict: pass") != std::string::npos);
    CHECK(std::string(sat_report_verdict_table(r)).find("P{}") != std::string::npos);
    CHECK(std::string(sat_report_trace(r)) == "maximal-bounded-subset");
    CHECK(sat_report_runtime(r) >= 0);
    sat_report_free(r);
    sat_scenario_free(sc);
}

TEST_CASE("C interface: errors") {
    sat_scenario* sc = nullptr;
    CHECK(sat_scenario_parse("format: satake-scenario/1\nname x\n", &sc) == SAT_INPUT_ERROR);
    CHECK(sc == nullptr);
    CHECK(std::string(sat_last_error()).find("line 2, column 1") != std::string::npos);
    CHECK(sat_scenario_parse(nullptr, &sc) == SAT_INPUT_ERROR);
    CHECK(sat_scenario_load("/nonexistent.scn", &sc) == SAT_INPUT_ERROR);

    REQUIRE(sat_scenario_parse("format: satake-scenario/1\nname: x\ngroup: sl 3\nmodel: sl3\n"
                               "subgroup: one_param_unipotent i=2 j=3\ndirection: -2, 1, 1\nindices: 1\n",
                               &sc) == SAT_OK);
    CHECK(sat_classify(sc, nullptr, nullptr) == SAT_NOT_COVERED);
    sat_report* r = nullptr;
    REQUIRE(sat_run(sc, nullptr, &r) == SAT_OK);
    CHECK(sat_report_exit_code(r) == SAT_NOT_COVERED);
    CHECK(std::string(sat_report_message(r)).find("not covered") == 0);
    sat_report_free(r);
    sat_scenario_free(sc);

    CHECK(sat_report_exit_code(nullptr) == SAT_INPUT_ERROR);
    sat_report_free(nullptr);
    sat_scenario_free(nullptr);
}

TEST_CASE("C interface: group kernels") {
    sat_group* g = nullptr;
    CHECK(sat_group_create("sp 4", &g) == SAT_INPUT_ERROR);
    REQUIRE(sat_group_create("sl 3", &g) == SAT_OK);
    CHECK(sat_group_dim(g) == 3);
    CHECK(sat_group_rank(g) == 2);
    const double m[9] = {2, 1, 0, 0, 1, 0, 0, 0, 0.5};
    double n[9], a[9], k[9];
    REQUIRE(sat_iwasawa(g, m, n, a, k) == SAT_OK);
    CHECK(a[0] == doctest::Approx(2));
    CHECK(a[4] == doctest::Approx(1));
    CHECK(n[1] == doctest::Approx(1));
    double roots[2];
    REQUIRE(sat_root_values(g, m, roots) == SAT_OK);
    CHECK(roots[0] == doctest::Approx(2));
    CHECK(roots[1] == doctest::Approx(2));
    double rep[9];
    long long gamma[9];
    const double far[9] = {1e-2, 0, 0, 0, 1, 0, 0, 0, 1e2};
    REQUIRE(sat_reduce(g, far, rep, gamma) == SAT_OK);
    double det = gamma[0] * (gamma[4] * gamma[8] - gamma[5] * gamma[7]) -
                 gamma[1] * (gamma[3] * gamma[8] - gamma[5] * gamma[6]) +
                 gamma[2] * (gamma[3] * gamma[7] - gamma[4] * gamma[6]);
    CHECK(det == 1);
    const double bad[9] = {2, 0, 0, 0, 1, 0, 0, 0, 1};
    CHECK(sat_iwasawa(g, bad, n, a, k) == SAT_INPUT_ERROR);
    sat_group_free(g);

    REQUIRE(sat_group_create("sl2^2", &g) == SAT_OK);
    CHECK(sat_group_dim(g) == 4);
    CHECK(sat_group_rank(g) == 2);
    sat_group_free(g);
}

TEST_CASE("C interface: catalog and identities") {
    char* text = sat_catalog_text();
    REQUIRE(text);
    CHECK(std::string(text).find("embedded_sl2") != std::string::npos);
    sat_string_free(text);
    char* report = nullptr;
    int ok = 0;
    REQUIRE(sat_verify_identities(5, 1, &report, &ok) == SAT_OK);
    CHECK(ok == 1);
    CHECK(std::string(report).find("FAIL") == std::string::npos);
    sat_string_free(report);
    CHECK(sat_verify_identities(0, 1, nullptr, nullptr) == SAT_INPUT_ERROR);
    CHECK(std::string(sat_version()) == "1.0.0");
}
