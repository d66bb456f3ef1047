#include "lingrp.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>

namespace sat {

namespace {

Mat factor_block(const RootSystem& rs, const Mat& g, std::size_t f) {
    return g.block(rs.offset[f], rs.offset[f], rs.factors[f], rs.factors[f]);
}

void check_shape(const RootSystem& rs, const Mat& g) {
    if (g.rows() != rs.dim || g.cols() != rs.dim)
        throw InputError("matrix size " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()) +
                         " does not match group dimension " + std::to_string(rs.dim));
}

// Single-block Iwasawa via Householder QR of the reversed transpose.
void iwasawa_block(const Mat& g, Mat& n, Mat& a, Mat& k) {
    const int d = int(g.rows());
    Mat rev = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) rev(i, d - 1 - i) = 1.0;
    // X = P g^T P = (P k^T P)(P U^T P) with P U^T P upper triangular
    Mat x = rev * g.transpose() * rev;
    Eigen::HouseholderQR<Mat> qr(x);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        if (r(i, i) < 0) {
            r.row(i) *= -1.0;
            q.col(i) *= -1.0;
        }
    }
    Mat u = rev * r.transpose() * rev;
    k = rev * q.transpose() * rev;
    a = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) a(i, i) = u(i, i);
    n = u * a.inverse();
    for (int i = 0; i < d; ++i) {
        n(i, i) = 1.0;
        for (int j = 0; j < i; ++j) n(i, j) = 0.0;
    }
}

}  // namespace

GroupElement make_element(const RootSystem& rs, const Mat& m) {
    check_shape(rs, m);
    for (std::size_t f = 0; f < rs.factors.size(); ++f) {
        double det = factor_block(rs, m, f).determinant();
        if (std::abs(det - 1.0) > kDetTolerance)
            throw InputError("determinant " + std::to_string(det) + " is not 1");
    }
    return {m};
}

GroupElement normalize_det(const RootSystem& rs, const Mat& m) {
    check_shape(rs, m);
    Mat out = m;
    for (std::size_t f = 0; f < rs.factors.size(); ++f) {
        int lo = rs.offset[f], n = rs.factors[f];
        double det = factor_block(rs, m, f).determinant();
        if (!(det > 0)) throw InputError("determinant must be positive, got " + std::to_string(det));
        out.block(lo, lo, n, n) /= std::pow(det, 1.0 / n);
    }
    return make_element(rs, out);
}

ParabolicIndex standard_parabolic(const RootSystem& rs, Subset I) {
    ParabolicIndex P;
    P.I = I;
    for (const auto& b : blocks(rs, I)) P.flag_shape.push_back(int(b.size()));
    return P;
}

bool is_proper(const RootSystem& rs, const ParabolicIndex& P) { return P.I != full_subset(rs.rank); }

double condition_number(const Mat& g) {
    Eigen::JacobiSVD<Mat> svd(g);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) <= 0) return INFINITY;
    return s(0) / s(s.size() - 1);
}

LanglandsParts iwasawa(const RootSystem& rs, const Mat& g) {
    check_shape(rs, g);
    LanglandsParts p;
    p.n = Mat::Identity(rs.dim, rs.dim);
    p.m = Mat::Identity(rs.dim, rs.dim);
    p.a = Mat::Identity(rs.dim, rs.dim);
    p.k = Mat::Identity(rs.dim, rs.dim);
    for (std::size_t f = 0; f < rs.factors.size(); ++f) {
        int lo = rs.offset[f], d = rs.factors[f];
        Mat blk = factor_block(rs, g, f);
        double c = condition_number(blk);
        if (!(c <= kMaxCondition))
            throw InputError("numerically singular input (condition number " + std::to_string(c) + ")");
        Mat n, a, k;
        iwasawa_block(blk, n, a, k);
        p.n.block(lo, lo, d, d) = n;
        p.a.block(lo, lo, d, d) = a;
        p.k.block(lo, lo, d, d) = k;
    }
    return p;
}

LanglandsParts langlands(const RootSystem& rs, const Mat& g, Subset I) {
    LanglandsParts p = iwasawa(rs, g);
    Mat u = p.n * p.a;   // upper triangular
    Mat l = Mat::Zero(rs.dim, rs.dim);
    Mat ap = Mat::Identity(rs.dim, rs.dim);
    for (const auto& b : blocks(rs, I)) {
        double logsum = 0;
        for (int i : b) logsum += std::log(p.a(i, i));
        double c = std::exp(logsum / double(b.size()));
        for (int i : b) {
            ap(i, i) = c;
            for (int j : b) l(i, j) = u(i, j);
        }
    }
    Mat linv = l.inverse();
    LanglandsParts out;
    out.n = u * linv;
    out.a = ap;
    out.m = l * ap.inverse();
    out.k = p.k;
    return out;
}

Vec root_values(const RootSystem& rs, const Mat& a) {
    Vec out(rs.rank);
    for (int k = 0; k < rs.rank; ++k) out(k) = a(rs.roots[k].first, rs.roots[k].first) / a(rs.roots[k].second, rs.roots[k].second);
    return out;
}

Vec log_root_values(const RootSystem& rs, const Mat& a) {
    Vec out(rs.rank);
    for (int k = 0; k < rs.rank; ++k)
        out(k) = std::log(a(rs.roots[k].first, rs.roots[k].first)) - std::log(a(rs.roots[k].second, rs.roots[k].second));
    return out;
}

namespace {
// positions (i, j), i < j, spanning the Lie algebra of N_P
std::vector<std::pair<int, int>> nilradical(const RootSystem& rs, Subset I) {
    std::vector<int> block_of(rs.dim, -1), factor_of(rs.dim, -1);
    auto bl = blocks(rs, I);
    for (std::size_t b = 0; b < bl.size(); ++b)
        for (int i : bl[b]) block_of[i] = int(b);
    for (std::size_t f = 0; f < rs.factors.size(); ++f)
        for (int i = 0; i < rs.factors[f]; ++i) factor_of[rs.offset[f] + i] = int(f);
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < rs.dim; ++i)
        for (int j = i + 1; j < rs.dim; ++j)
            if (factor_of[i] == factor_of[j] && block_of[i] != block_of[j]) out.push_back({i, j});
    return out;
}
}  // namespace

double d_function(const RootSystem& rs, Subset I, const Mat& g) {
    auto pos = nilradical(rs, I);
    if (pos.empty()) throw InputError("d-function needs a proper parabolic");
    Mat ginv = g.inverse();
    Mat cols(rs.dim * rs.dim, pos.size());
    for (std::size_t c = 0; c < pos.size(); ++c) {
        // Ad(g) E_ij = g e_i e_j^T g^{-1}
        Mat x = g.col(pos[c].first) * ginv.row(pos[c].second);
        cols.col(c) = Eigen::Map<const Vec>(x.data(), x.size());
    }
    // volume of the parallelepiped = product of |R_ii|
    Eigen::HouseholderQR<Mat> qr(cols);
    Mat r = qr.matrixQR();
    double logvol = 0;
    for (std::size_t c = 0; c < pos.size(); ++c) logvol += std::log(std::abs(r(c, c)));
    return std::exp(logvol);
}

double dalpha_product(const RootSystem& rs, Subset I, const Mat& g) {
    LanglandsParts p = langlands(rs, g, I);
    double logprod = 0;
    for (auto [i, j] : nilradical(rs, I)) logprod -= std::log(p.a(i, i)) - std::log(p.a(j, j));
    return std::exp(logprod);
}

double verify_dalpha(const RootSystem& rs, Subset I, const Mat& g) {
    double d = d_function(rs, I, g.inverse());
    double prod = dalpha_product(rs, I, g);
    return std::abs(d - prod) / d;
}

Mat weyl_representative(const RootSystem& rs, const WeylElement& w) {
    if (!valid_weyl(rs, w)) throw InputError("invalid Weyl element");
    Mat k = Mat::Zero(rs.dim, rs.dim);
    for (int i = 0; i < rs.dim; ++i) k(w.perm[i], i) = 1.0;
    for (std::size_t f = 0; f < rs.factors.size(); ++f) {
        int lo = rs.offset[f], n = rs.factors[f];
        if (factor_block(rs, k, f).determinant() > 0) continue;
        // flip the column of the last moved point
        int last = -1;
        for (int i = lo; i < lo + n; ++i)
            if (w.perm[i] != i) last = i;
        k.col(last) *= -1.0;
    }
    return k;
}

Mat exp_diag(const QVec& v, double scale) {
    Mat d = Mat::Zero(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i) d(i, i) = std::exp(scale * boost::rational_cast<double>(v[i]));
    return d;
}

Mat to_mat(const QMat& q) {
    Mat m(q.size(), q.empty() ? 0 : q[0].size());
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < q[i].size(); ++j) m(i, j) = boost::rational_cast<double>(q[i][j]);
    return m;
}

double orthogonality_error(const Mat& k) {
    return (k * k.transpose() - Mat::Identity(k.rows(), k.cols())).cwiseAbs().maxCoeff();
}

bool is_upper_unipotent(const Mat& n, double tol) {
    for (int i = 0; i < n.rows(); ++i)
        for (int j = 0; j <= i; ++j)
            if (std::abs(n(i, j) - (i == j ? 1.0 : 0.0)) > tol) return false;
    return true;
}

}  // namespace sat
