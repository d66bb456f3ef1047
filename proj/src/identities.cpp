#include "identities.hpp"

#include "lingrp.hpp"

#include <random>

namespace sat {

namespace {

Mat random_sl(const RootSystem& rs, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    for (;;) {
        Mat m = Mat::Zero(rs.dim, rs.dim);
        for (std::size_t f = 0; f < rs.factors.size(); ++f) {
            int lo = rs.offset[f], n = rs.factors[f];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m(lo + i, lo + j) = gauss(rng);
            if (m.block(lo, lo, n, n).determinant() < 0) m.row(lo) *= -1;
        }
        try {
            Mat g = normalize_det(rs, m).m;
            if (condition_number(g) < 1e6) return g;
        } catch (const InputError&) {
        }
    }
}

double rel(const Mat& a, const Mat& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

}  // namespace

std::vector<IdentityCheck> run_identity_suite(int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    IdentityCheck iw{"iwasawa round trip", 0, 1e-9};
    IdentityCheck orth_k{"k orthogonality", 0, 1e-10};
    IdentityCheck lang{"langlands round trip", 0, 1e-9};
    IdentityCheck dal{"d_alpha wedge norm vs root product", 0, 1e-8};
    for (int n = 2; n <= 4; ++n) {
        RootSystem rs = build_type_a(n);
        for (int t = 0; t < trials; ++t) {
            Mat g = random_sl(rs, rng);
            LanglandsParts p = iwasawa(rs, g);
            iw.worst = std::max(iw.worst, rel(p.n * p.a * p.k, g));
            orth_k.worst = std::max(orth_k.worst, orthogonality_error(p.k));
            ++iw.cases;
            ++orth_k.cases;
            for (Subset I = 0; I <= full_subset(rs.rank); ++I) {
                LanglandsParts q = langlands(rs, g, I);
                lang.worst = std::max(lang.worst, rel(q.n * q.m * q.a * q.k, g));
                ++lang.cases;
            }
            for (int a = 0; a < rs.rank; ++a) {
                dal.worst = std::max(dal.worst, verify_dalpha(rs, full_subset(rs.rank) & ~(Subset(1) << a), g));
                ++dal.cases;
            }
        }
    }

    IdentityCheck nonneg{"inverse Cartan entries positive", 0, 0, true};
    IdentityCheck orth{"span/complement orthogonality", 0, 0, true};
    IdentityCheck warn{"restricted simple roots non-positive", 0, 0, true};
    IdentityCheck restr{"restricted weights quasi-fundamental", 0, 0, true};
    for (int n = 2; n <= 9; ++n) {
        RootSystem rs = build_type_a(n);
        Weights w = quasi_fundamental_weights(rs);
        for (const QVec& chi : w.chi)
            for (const Q& c : chi) {
                nonneg.worst += c <= 0;
                ++nonneg.cases;
            }
        if (n > 4) continue;
        auto unit = [&](int k) {
            QVec e(rs.rank, Q(0));
            e[k] = 1;
            return e;
        };
        for (Subset I = 0; I <= full_subset(rs.rank); ++I) {
            for (int a = 0; a < rs.rank; ++a)
                for (int b = 0; b < rs.rank; ++b) {
                    orth.worst += pair(rs, project_span(rs, unit(a), I), project_perp(rs, unit(b), I)) != 0;
                    orth.worst += pair(rs, project_span(rs, w.chi[a], I), project_perp(rs, w.chi[b], I)) != 0;
                    orth.cases += 2;
                }
            for (int b = 0; b < rs.rank; ++b) {
                if (has(I, b)) continue;
                QVec p = project_span(rs, unit(b), I);
                for (int k = 0; k < rs.rank; ++k) {
                    warn.worst += has(I, k) ? p[k] > 0 : p[k] != 0;
                    ++warn.cases;
                }
            }
            std::vector<QVec> rw = restrict_weights(rs, I);
            int idx = 0;
            for (int a = 0; a < rs.rank; ++a) {
                if (!has(I, a)) continue;
                for (int b = 0; b < rs.rank; ++b) {
                    if (!has(I, b)) continue;
                    Q v = pair(rs, rw[idx], project_span(rs, unit(b), I));
                    restr.worst += a == b ? v <= 0 : v != 0;
                    ++restr.cases;
                }
                ++idx;
            }
        }
    }

    IdentityCheck cham{"chamber faces partition directions", 0, 0, true};
    std::uniform_int_distribution<int> coord(-6, 6);
    for (int n = 3; n <= 4; ++n) {
        RootSystem rs = build_type_a(n);
        auto faces = all_faces(rs);
        for (int t = 0; t < trials; ++t) {
            QVec v(n);
            Q sum = 0;
            for (int i = 0; i + 1 < n; ++i) {
                // coarse integers make wall hits common
                v[i] = Q(coord(rng), 1 + (t % 3));
                sum += v[i];
            }
            v[n - 1] = -sum;
            int hits = 0;
            for (const ChamberFace& f : faces) hits += in_face(rs, v, f);
            ChamberFace found = locate_chamber(rs, v);
            cham.worst += hits != 1 || !in_face(rs, v, found);
            ++cham.cases;
        }
    }
    return {iw, orth_k, lang, dal, nonneg, orth, warn, restr, cham};
}

}  // namespace sat
