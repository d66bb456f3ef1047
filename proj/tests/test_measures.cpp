#include "oracles.hpp"

#include <doctest.h>

#include <numeric>

using namespace sat;

namespace {

SubgroupSpec kind(SubgroupKind k, Subset I = 0) {
    SubgroupSpec s;
    s.kind = k;
    s.I = I;
    return s;
}

Mat diag_exp(std::vector<double> v) {
    Mat m = Mat::Zero(int(v.size()), int(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) m(i, i) = std::exp(v[i]);
    return m;
}

double mean_inverse_y(const EmpiricalMeasure& m) {
    double s = 0;
    for (const auto& p : m.points) s += std::exp(-p.logroot(0));
    return s / double(m.points.size());
}

}  // namespace

TEST_CASE("samplers produce elements of H") {
    RootSystem a2 = build_type_a(3);
    std::mt19937_64 rng(1);
    SUBCASE("trivial") {
        CHECK(sample_element(a2, kind(SubgroupKind::trivial), rng) == Mat::Identity(3, 3));
    }
    SUBCASE("one-parameter unipotent") {
        SubgroupSpec s = kind(SubgroupKind::one_param_unipotent);
        s.i = 0;
        s.j = 2;
        for (int t = 0; t < 100; ++t) {
            Mat h = sample_element(a2, s, rng);
            CHECK(h(0, 2) >= 0);
            CHECK(h(0, 2) < 1);
            Mat rest = h - Mat::Identity(3, 3);
            rest(0, 2) = 0;
            CHECK(rest.norm() == 0);
        }
    }
    SUBCASE("full unipotent radical and Levi") {
        for (int t = 0; t < 100; ++t) {
            Mat u = sample_element(a2, kind(SubgroupKind::full_unipotent_radical, 1), rng);
            CHECK(is_upper_unipotent(u, 0));
            CHECK(u(0, 1) == 0);
            Mat l = sample_element(a2, kind(SubgroupKind::levi_semisimple_nc, 2), rng);
            CHECK(l.determinant() == doctest::Approx(1));
            CHECK(l.row(0).tail(2).norm() == 0);
            CHECK(l.col(0).tail(2).norm() == 0);
        }
    }
    SUBCASE("conjugated subgroup") {
        SubgroupSpec s = kind(SubgroupKind::one_param_unipotent);
        s.i = 1;
        s.j = 2;
        IMat c(3, 3);
        c << 1, 0, 0, 0, 0, -1, 0, 1, 0;
        s.conjugator = c;
        Mat h = sample_element(a2, s, rng);
        // gamma exp(t E_23) gamma^-1 = exp(-t E_32)
        CHECK(h(2, 1) <= 0);
        CHECK(h(1, 2) == 0);
    }
}

TEST_CASE("Lie algebra containment") {
    RootSystem a2 = build_type_a(3);
    auto nb = lie_generators(a2, kind(SubgroupKind::full_unipotent_radical, 0));
    CHECK(nb.size() == 3);
    for (Subset I = 0; I < 4; ++I) CHECK(lie_in_parabolic(a2, nb, I));
    auto levi1 = lie_generators(a2, kind(SubgroupKind::levi_semisimple_nc, 1));
    CHECK(levi1.size() == 3);
    CHECK(lie_in_parabolic(a2, levi1, 1));
    CHECK(lie_in_parabolic(a2, levi1, 3));
    CHECK_FALSE(lie_in_parabolic(a2, levi1, 0));
    CHECK_FALSE(lie_in_parabolic(a2, levi1, 2));
    CHECK(lie_in_levi(a2, levi1, 1));
    CHECK_FALSE(lie_in_levi(a2, nb, 1));
    CHECK(lie_generators(a2, kind(SubgroupKind::full_group)).size() == 8);
}

TEST_CASE("Haar sampling on the modular surface") {
    RootSystem a1 = build_type_a(2);
    SampleConfig cfg;
    cfg.count = 100000;
    cfg.seed = 3;
    EmpiricalMeasure m = sample_pushforward(a1, kind(SubgroupKind::full_group), Mat::Identity(2, 2), cfg);
    double expect = oracle::mean_inverse_height(cfg.ycap);
    CHECK(std::abs(mean_inverse_y(m) / expect - 1) < 0.01);

    Box high;
    high.lo = {-INFINITY, std::log(10.0)};
    double tail = 3 / (M_PI * 10) - 3 / (M_PI * cfg.ycap);
    CHECK(std::abs(window_mass(m, high) - tail) < 0.005);

    // the G-invariant measure does not move under right translation
    std::mt19937_64 rng(4);
    Mat g = oracle::random_sl(2, rng, 50);
    cfg.seed = 5;
    EmpiricalMeasure moved = sample_pushforward(a1, kind(SubgroupKind::full_group), g, cfg);
    CHECK(std::abs(mean_inverse_y(moved) / expect - 1) < 0.01);
    CHECK(std::abs(window_mass(moved, high) - tail) < 0.005);
}

TEST_CASE("pushforward") {
    std::mt19937_64 rng(9);
    std::vector<Mat> hs{oracle::random_sl(3, rng), oracle::random_sl(3, rng)};
    auto same = pushforward(hs, Mat::Identity(3, 3));
    CHECK(same[1] == hs[1]);
    Mat g = oracle::random_sl(3, rng);
    for (const Mat& x : pushforward(hs, g)) CHECK(x.determinant() == doctest::Approx(1));
}

TEST_CASE("translated horocycle in SL_2 escapes at the predicted height") {
    RootSystem a1 = build_type_a(2);
    SampleConfig cfg;
    cfg.count = 20000;
    EmpiricalMeasure m =
        sample_pushforward(a1, kind(SubgroupKind::full_unipotent_radical, 0), diag_exp({5, -5}), cfg);
    for (const auto& p : m.points) CHECK(std::abs(p.logroot(0) - 10) < 1e-9);
    for (double T : {1e2, 1e3, 1e4}) CHECK(boundary_histogram(m, T).at(0) == 1.0);
}

TEST_CASE("boundary histograms") {
    RootSystem a2 = build_type_a(3);
    SampleConfig cfg;
    cfg.count = 5000;
    EmpiricalMeasure m =
        sample_pushforward(a2, kind(SubgroupKind::full_unipotent_radical, 0), diag_exp({2, -1, -1}), cfg);
    std::vector<double> Ts{1.5, 3, 10, 100, 1e3, 1e4, 1e6};
    for (const auto& p : m.points)
        for (std::size_t t = 0; t + 1 < Ts.size(); ++t) {
            Subset lo = point_label(p, Ts[t]), hi = point_label(p, Ts[t + 1]);
            CHECK((lo & ~hi) == 0);
        }
    for (double T : Ts) {
        BoundaryHistogram h = boundary_histogram(m, T);
        double total = 0;
        for (auto [I, v] : h.mass) total += v;
        CHECK(total == doctest::Approx(1.0));
        CHECK(h.at(h.argmax()) >= 1.0 / 4);
    }
    CHECK_THROWS_AS(boundary_histogram(m, 1.0), InputError);
}

TEST_CASE("window mass") {
    EmpiricalMeasure m;
    for (double r : {0.5, 1.5, 2.5, 3.5}) {
        PointRecord p;
        p.u = Vec::Constant(1, 0.1);
        p.logroot = Vec::Constant(1, r);
        m.points.push_back(p);
    }
    CHECK(window_mass(m, {}) == 1.0);
    CHECK(window_mass(m, {{-1, 1}, {1, 3}}) == 0.5);
    CHECK(window_mass(m, {{0.2}, {}}) == 0.0);
    CHECK(window_mass(EmpiricalMeasure{}, {}) == 0.0);
}

TEST_CASE("determinism") {
    RootSystem a2 = build_type_a(3);
    SubgroupSpec s = kind(SubgroupKind::levi_semisimple_nc, 2);
    SampleConfig cfg;
    cfg.count = 3 * kChunk + 17;
    cfg.seed = 42;
    Mat g = diag_exp({1, 0.5, -1.5});
    EmpiricalMeasure a = sample_pushforward(a2, s, g, cfg);
    cfg.jobs = 4;
    EmpiricalMeasure b = sample_pushforward(a2, s, g, cfg);
    CHECK(points_tsv(a) == points_tsv(b));
    cfg.seed = 43;
    CHECK(points_tsv(a) != points_tsv(sample_pushforward(a2, s, g, cfg)));
    auto raw = sample_subgroup(a2, s, 10, 42);
    auto raw2 = sample_subgroup(a2, s, 10, 42);
    for (int i = 0; i < 10; ++i) CHECK(raw[i] == raw2[i]);
}

TEST_CASE("truncation and unsampleable kinds") {
    RootSystem a2 = build_type_a(3);
    SubgroupSpec e = kind(SubgroupKind::embedded_sl2);
    CHECK(truncation_loss(a2, e, 2e4) == doctest::Approx(truncation_loss(a2, e, 1e4) / 2));
    CHECK(truncation_loss(a2, kind(SubgroupKind::full_unipotent_radical), 1e4) == 0);
    CHECK_FALSE(sampleable(a2, kind(SubgroupKind::full_group)));
    CHECK(sampleable(build_type_a(2), kind(SubgroupKind::full_group)));
    CHECK_FALSE(sampleable(build_type_a(4), kind(SubgroupKind::levi_semisimple_nc, 3)));
    SampleConfig cfg;
    cfg.count = 10;
    CHECK_THROWS_AS(sample_pushforward(a2, kind(SubgroupKind::full_group), Mat::Identity(3, 3), cfg), InputError);
    cfg.count = 0;
    CHECK_THROWS_AS(sample_pushforward(a2, kind(SubgroupKind::trivial), Mat::Identity(3, 3), cfg), InputError);
}

TEST_CASE("subgroup validation") {
    RootSystem a2 = build_type_a(3);
    SubgroupSpec s = kind(SubgroupKind::one_param_unipotent);
    s.i = 2;
    s.j = 1;
    CHECK_THROWS_AS(validate(a2, s), InputError);
    s = kind(SubgroupKind::embedded_sl2);
    s.p = 2;
    CHECK_THROWS_AS(validate(a2, s), InputError);
    s = kind(SubgroupKind::trivial);
    IMat c(3, 3);
    c << 2, 0, 0, 0, 1, 0, 0, 0, 1;
    s.conjugator = c;
    CHECK_THROWS_AS(validate(a2, s), InputError);
    RootSystem p = build_product({2, 2});
    SubgroupSpec prod = kind(SubgroupKind::product);
    prod.parts = {kind(SubgroupKind::full_group)};
    CHECK_THROWS_AS(validate(p, prod), InputError);
    prod.parts.push_back(kind(SubgroupKind::full_unipotent_radical));
    CHECK_NOTHROW(validate(p, prod));
    CHECK(describe(p, prod).find("product") != std::string::npos);
}

namespace {

// largest bin difference relative to the binomial standard error of a two-sample difference
double worst_z(const BoundaryHistogram& a, const BoundaryHistogram& b, double floor_p = 0) {
    std::set<Subset> labels;
    for (auto [I, v] : a.mass) labels.insert(I);
    for (auto [I, v] : b.mass) labels.insert(I);
    double worst = 0;
    for (Subset I : labels) {
        double p = std::max((a.at(I) + b.at(I)) / 2, floor_p);
        double se = std::sqrt(std::max(p * (1 - p), 1e-12) * (1.0 / a.count + 1.0 / b.count));
        worst = std::max(worst, (std::abs(a.at(I) - b.at(I))) / se);
    }
    return worst;
}

}  // namespace

TEST_CASE("conjugating H by gamma and translating g by gamma leaves the statistics") {
    RootSystem a2 = build_type_a(3);
    IMat gamma(3, 3);
    gamma << 1, 2, 0, 0, 1, 0, 1, 3, 1;
    REQUIRE(det(gamma) == 1);
    SubgroupSpec base = kind(SubgroupKind::embedded_sl2);
    base.p = 1;
    SubgroupSpec conj = base;
    conj.conjugator = gamma;
    Mat g = diag_exp({1.5, 0.5, -2});
    SampleConfig cfg;
    cfg.count = 20000;
    cfg.seed = 77;
    EmpiricalMeasure m0 = sample_pushforward(a2, base, g, cfg);
    EmpiricalMeasure m1 = sample_pushforward(a2, conj, to_mat(gamma) * g, cfg);
    cfg.seed = 78;
    EmpiricalMeasure m2 = sample_pushforward(a2, conj, to_mat(gamma) * g, cfg);
    for (double T : {1e2, 1e3, 1e4}) {
        BoundaryHistogram h0 = boundary_histogram(m0, T);
        // same samples: the same points of Gamma \ G
        for (auto [I, v] : h0.mass) CHECK(std::abs(boundary_histogram(m1, T).at(I) - v) <= 2e-4);
        CHECK(worst_z(h0, boundary_histogram(m2, T)) <= 2);
    }
}

TEST_CASE("doubling the truncation height moves fractions by less than the tail bound") {
    RootSystem a2 = build_type_a(3);
    SubgroupSpec e = kind(SubgroupKind::embedded_sl2);
    Mat g = diag_exp({1, 1, -2});
    SampleConfig cfg;
    cfg.count = 20000;
    cfg.seed = 90;
    EmpiricalMeasure a = sample_pushforward(a2, e, g, cfg);
    cfg.ycap *= 2;
    EmpiricalMeasure b = sample_pushforward(a2, e, g, cfg);
    double tail = 3 / (M_PI * 1e4);
    for (double T : {1e2, 1e3, 1e4}) {
        BoundaryHistogram ha = boundary_histogram(a, T), hb = boundary_histogram(b, T);
        for (auto [I, v] : ha.mass) {
            double se = std::sqrt(v * (1 - v) / double(cfg.count));
            CHECK(std::abs(hb.at(I) - v) < tail + 2 * se + 1e-12);
        }
    }
}

TEST_CASE("sampled points are reduced") {
    RootSystem a2 = build_type_a(3);
    SampleConfig cfg;
    cfg.count = 2000;
    EmpiricalMeasure m =
        sample_pushforward(a2, kind(SubgroupKind::full_unipotent_radical, 0), diag_exp({2, -0.5, -1.5}), cfg);
    for (const auto& p : m.points) {
        CHECK((p.logroot.array() >= std::log(SiegelSet{}.root_lower())).all());
        CHECK((p.u.array().abs() <= 0.5 + 1e-9).all());
    }
}
