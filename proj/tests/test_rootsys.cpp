#include "oracles.hpp"

#include <doctest.h>

using namespace sat;

namespace {

QVec unit(int rank, int k) {
    QVec e(rank, Q(0));
    e[k] = 1;
    return e;
}

// simple reflection in the simple-root basis: s_i(x) = x - <x, alpha_i^vee> alpha_i
QVec reflect(const QMat& cartan, const QVec& x, int i) {
    Q c(0);
    for (std::size_t j = 0; j < x.size(); ++j) c += x[j] * cartan[j][i];
    QVec y = x;
    y[i] -= c;
    return y;
}

QVec random_direction(int n, std::mt19937_64& rng, int spread = 5) {
    std::uniform_int_distribution<int> d(-spread, spread);
    QVec v(n);
    Q sum(0);
    for (int i = 0; i + 1 < n; ++i) {
        v[i] = Q(d(rng), 1 + std::abs(d(rng)) % 3);
        sum += v[i];
    }
    v[n - 1] = -sum;
    return v;
}

}  // namespace

TEST_CASE("cartan matrices of type A") {
    CHECK(build_type_a(2).cartan == QMat{{Q(2)}});
    CHECK(build_type_a(3).cartan == QMat{{Q(2), Q(-1)}, {Q(-1), Q(2)}});
    RootSystem a3 = build_type_a(4);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK((a3.cartan[i][j] == 0) == (std::abs(i - j) == 2));
    CHECK_THROWS(build_type_a(1));
}

TEST_CASE("pairing is symmetric, positive definite and Weyl invariant") {
    for (int n = 2; n <= 6; ++n) {
        RootSystem rs = build_type_a(n);
        CHECK(positive_definite(rs.pairing));
        for (int i = 0; i < rs.rank; ++i)
            for (int j = 0; j < rs.rank; ++j) {
                CHECK(rs.pairing[i][j] == rs.pairing[j][i]);
                for (int s = 0; s < rs.rank; ++s) {
                    QVec x = reflect(rs.cartan, unit(rs.rank, i), s), y = reflect(rs.cartan, unit(rs.rank, j), s);
                    CHECK(pair(rs, x, y) == rs.pairing[i][j]);
                }
            }
    }
}

TEST_CASE("quasi-fundamental weights") {
    SUBCASE("A2: chi_1 is proportional to 2/3 alpha_1 + 1/3 alpha_2") {
        Weights w = quasi_fundamental_weights(build_type_a(3));
        CHECK(w.chi[0][0] == 2 * w.chi[0][1]);
        CHECK(w.chi[0][1] > 0);
    }
    SUBCASE("A1: positive multiple of alpha") {
        Weights w = quasi_fundamental_weights(build_type_a(2));
        CHECK(w.chi[0][0] > 0);
    }
    SUBCASE("dual to the simple roots, positive coefficients, matches the inverse Cartan matrix") {
        for (int n = 2; n <= 9; ++n) {
            RootSystem rs = build_type_a(n);
            Weights w = quasi_fundamental_weights(rs);
            QMat cinv = oracle::q_inverse(oracle::cartan_a(rs.rank));
            for (int k = 0; k < rs.rank; ++k) {
                CHECK(w.d[k] > 0);
                Q scale = w.chi[k][0] / cinv[k][0];
                CHECK(scale > 0);
                for (int j = 0; j < rs.rank; ++j) {
                    CHECK(w.chi[k][j] > 0);
                    CHECK(w.chi[k][j] == scale * cinv[k][j]);
                    CHECK(pair(rs, w.chi[k], unit(rs.rank, j)) == (j == k ? w.d[k] : Q(0)));
                }
            }
        }
    }
}

TEST_CASE("restricted weights and projections") {
    RootSystem a2 = build_type_a(3);
    SUBCASE("I = Delta leaves the weights unchanged") {
        Weights w = quasi_fundamental_weights(a2);
        auto r = restrict_weights(a2, 3);
        CHECK(r[0] == w.chi[0]);
        CHECK(r[1] == w.chi[1]);
    }
    SUBCASE("A2, I = {alpha_1}") {
        auto r = restrict_weights(a2, 1);
        REQUIRE(r.size() == 1);
        CHECK(r[0][1] == 0);
        CHECK(r[0][0] > 0);
        QVec p = project_span(a2, unit(2, 1), 1);
        CHECK(p == QVec{Q(-1, 2), Q(0)});
    }
    SUBCASE("orthogonality and non-positivity for all I, n <= 4") {
        for (int n = 2; n <= 4; ++n) {
            RootSystem rs = build_type_a(n);
            QMat c = oracle::cartan_a(rs.rank);
            auto form = [&](const QVec& x, const QVec& y) {
                Q s(0);
                for (int i = 0; i < rs.rank; ++i)
                    for (int j = 0; j < rs.rank; ++j) s += x[i] * c[i][j] * y[j];
                return s;
            };
            for (Subset I = 0; I <= full_subset(rs.rank); ++I)
                for (int a = 0; a < rs.rank; ++a) {
                    QVec p1 = project_span(rs, unit(rs.rank, a), I), p2 = project_perp(rs, unit(rs.rank, a), I);
                    for (int k = 0; k < rs.rank; ++k) CHECK(p1[k] + p2[k] == (k == a ? Q(1) : Q(0)));
                    for (int b = 0; b < rs.rank; ++b)
                        CHECK(form(project_span(rs, unit(rs.rank, b), I), p2) == 0);
                    if (!has(I, a))
                        for (int k = 0; k < rs.rank; ++k) CHECK(p1[k] <= 0);
                }
        }
    }
}

TEST_CASE("chamber location") {
    RootSystem a2 = build_type_a(3);
    SUBCASE("origin lies in the face (identity, Delta)") {
        ChamberFace f = locate_chamber(a2, {Q(0), Q(0), Q(0)});
        CHECK(f.I == 3);
        CHECK(f.w == identity_weyl(a2));
    }
    SUBCASE("dominant cone") {
        ChamberFace f = locate_chamber(a2, {Q(2), Q(1), Q(-3)});
        CHECK(f.I == 0);
        CHECK(f.w == identity_weyl(a2));
    }
    SUBCASE("<v,alpha_1> = -<v,alpha_2> < 0: brute force over W x subsets") {
        QVec v{Q(-1), Q(2), Q(-1)};
        ChamberFace f = locate_chamber(a2, v);
        CHECK(popcount(f.I) == 1);
        CHECK_FALSE(f.w == identity_weyl(a2));
        std::set<oracle::OrderedPartition> hits;
        for (const auto& w : weyl_group(a2))
            for (Subset I = 0; I < 4; ++I)
                if (oracle::in_cone(v, w.perm, I)) hits.insert(oracle::partition_of(w.perm, I));
        REQUIRE(hits.size() == 1);
        CHECK(*hits.begin() == oracle::partition_of(f.w.perm, f.I));
        CHECK(*hits.begin() == oracle::face_of(v));
    }
    SUBCASE("random directions: partition and Weyl equivariance") {
        std::mt19937_64 rng(5);
        for (int n = 3; n <= 4; ++n) {
            RootSystem rs = build_type_a(n);
            auto W = weyl_group(rs);
            for (int t = 0; t < 200; ++t) {
                QVec v = random_direction(n, rng, 2);
                ChamberFace f = locate_chamber(rs, v);
                CHECK(oracle::partition_of(f.w.perm, f.I) == oracle::face_of(v));
                CHECK(f == canonical(rs, f));
                const WeylElement& w = W[t % W.size()];
                CHECK(locate_chamber(rs, act(w, v)) == canonical(rs, act(rs, w, f)));
            }
        }
    }
}

TEST_CASE("faces and Levi spheres") {
    RootSystem a2 = build_type_a(3);
    auto faces = all_faces(a2);
    // 6 chambers, 6 rays, 1 origin
    CHECK(faces.size() == 13);
    CHECK(levi_sphere(a2, 0).size() == faces.size());
    auto top = levi_sphere(a2, 3);
    REQUIRE(top.size() == 1);
    CHECK(top[0].I == 3);
    auto s1 = levi_sphere(a2, 1);
    int maximal = 0;
    for (const auto& f : s1) maximal += face_dimension(a2, f) == 1;
    CHECK(maximal == 2);
    // each face of the Levi sphere lies in the wall of alpha_1
    for (const auto& f : s1) {
        QVec x(3, Q(0));
        for (int k = 0; k < 2; ++k)
            if (!has(f.I, k)) {
                QVec c = act(f.w, coweight(a2, k));
                for (int i = 0; i < 3; ++i) x[i] += c[i];
            }
        CHECK(root_pairing(a2, x, 0) == 0);
    }
}

TEST_CASE("Weyl group basics") {
    RootSystem a3 = build_type_a(4);
    auto W = weyl_group(a3);
    CHECK(W.size() == 24);
    for (const auto& w : W) {
        CHECK(valid_weyl(a3, w));
        CHECK(compose(w, inverse(w)) == identity_weyl(a3));
    }
    WeylElement w0 = longest_element(a3);
    CHECK(w0.perm == std::vector<int>{3, 2, 1, 0});
    RootSystem p = build_product({2, 2, 2});
    CHECK(weyl_group(p).size() == 8);
    CHECK(p.rank == 3);
    CHECK(p.offset == std::vector<int>{0, 2, 4});
}

TEST_CASE("Levi and center components") {
    RootSystem a3 = build_type_a(4);
    std::mt19937_64 rng(2);
    for (int t = 0; t < 50; ++t) {
        QVec v = random_direction(4, rng);
        for (Subset I = 0; I < 8; ++I) {
            QVec li = levi_component(a3, v, I), ce = center_component(a3, v, I);
            CHECK(li == oracle::levi_part(v, I));
            for (int i = 0; i < 4; ++i) CHECK(li[i] + ce[i] == v[i]);
            for (int k = 0; k < 3; ++k)
                if (has(I, k)) CHECK(root_pairing(a3, ce, k) == 0);
        }
    }
}
