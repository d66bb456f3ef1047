#include "reduction.hpp"

#include <algorithm>
#include <complex>

namespace sat {

namespace {
thread_local ReductionStats g_stats;

constexpr int kMaxSteps = 100000;
}  // namespace

ReductionStats& last_reduction_stats() { return g_stats; }

IMat identity_imat(int n) { return IMat::Identity(n, n); }

Mat to_mat(const IMat& m) { return m.cast<double>(); }

long long det(const IMat& m) {
    const int n = int(m.rows());
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    long long s = 0;
    for (int c = 0; c < n; ++c) {
        IMat minor(n - 1, n - 1);
        for (int i = 1; i < n; ++i)
            for (int j = 0, jj = 0; j < n; ++j)
                if (j != c) minor(i - 1, jj++) = m(i, j);
        s += ((c % 2) ? -1 : 1) * m(0, c) * det(minor);
    }
    return s;
}

IMat adjugate_inverse(const IMat& m) {
    const int n = int(m.rows());
    long long d = det(m);
    if (d != 1 && d != -1) throw InputError("matrix is not unimodular");
    IMat inv(n, n);
    if (n == 1) {
        inv(0, 0) = d;
        return inv;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IMat minor(n - 1, n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (int c = 0, cc = 0; c < n; ++c)
                    if (c != i) minor(rr, cc++) = m(r, c);
                ++rr;
            }
            inv(i, j) = (((i + j) % 2) ? -1 : 1) * det(minor) * d;
        }
    return inv;
}

ReducedPoint reduce_sl2(const Mat& g) {
    using C = std::complex<double>;
    C z = (g(0, 0) * C(0, 1) + g(0, 1)) / (g(1, 0) * C(0, 1) + g(1, 1));
    IMat gamma = identity_imat(2);
    for (int step = 0; step < kMaxSteps; ++step) {
        double m = std::round(z.real());
        if (m != 0) {
            z -= m;
            IMat t = identity_imat(2);
            t(0, 1) = -static_cast<long long>(m);
            gamma = t * gamma;
        }
        if (std::norm(z) < 1.0 - 1e-12) {
            z = -1.0 / z;
            IMat s(2, 2);
            s << 0, -1, 1, 0;
            gamma = s * gamma;
            ++g_stats.swaps;
            continue;
        }
        break;
    }
    ReducedPoint rp;
    rp.gamma = gamma;
    rp.rep = to_mat(gamma) * g;
    RootSystem rs = build_type_a(2);
    rp.iw = iwasawa(rs, rp.rep);
    return rp;
}

namespace {

struct Lattice {
    std::vector<Vec> b;        // basis rows, shortest-first ordering
    IMat t;                    // b = t * (reversed g)
    std::vector<Vec> bs;       // Gram-Schmidt vectors
    std::vector<double> norm2;
    Mat mu;

    void gram_schmidt() {
        const int n = int(b.size());
        bs.assign(n, Vec());
        norm2.assign(n, 0.0);
        mu = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            bs[i] = b[i];
            for (int j = 0; j < i; ++j) {
                mu(i, j) = b[i].dot(bs[j]) / norm2[j];
                bs[i] -= mu(i, j) * bs[j];
            }
            norm2[i] = bs[i].squaredNorm();
        }
    }

    // size-reduce b_k against all earlier vectors
    void size_reduce(int k) {
        for (int j = k - 1; j >= 0; --j) {
            double m = b[k].dot(bs[j]) / norm2[j];
            if (std::abs(m) <= 0.5) continue;
            double r = std::round(m);
            b[k] -= r * b[j];
            t.row(k) -= static_cast<long long>(r) * t.row(j);
        }
        gram_schmidt();
    }

    void swap(int k) {
        std::swap(b[k], b[k - 1]);
        t.row(k).swap(t.row(k - 1));
        ++g_stats.swaps;
        gram_schmidt();
    }
};

}  // namespace

ReducedPoint reduce_siegel(const Mat& g) {
    const int n = int(g.rows());
    Lattice L;
    for (int i = n - 1; i >= 0; --i) L.b.push_back(g.row(i).transpose());
    L.t = identity_imat(n);
    L.gram_schmidt();

    const double delta = 0.99;
    int k = 1, steps = 0;
    while (k < n && steps++ < kMaxSteps) {
        L.size_reduce(k);
        double m = L.mu(k, k - 1);
        if (L.norm2[k] >= (delta - m * m) * L.norm2[k - 1]) {
            ++k;
        } else {
            L.swap(k);
            k = std::max(k - 1, 1);
        }
    }
    // delta = 0.99 only guarantees ratios >= 0.74; finish with the Siegel condition 3/4
    for (steps = 0; steps < kMaxSteps; ++steps) {
        for (int i = 1; i < n; ++i) L.size_reduce(i);
        int bad = -1;
        for (int i = 1; i < n && bad < 0; ++i)
            if (L.norm2[i] < 0.75 * (1.0 - 1e-12) * L.norm2[i - 1]) bad = i;
        if (bad < 0) break;
        L.swap(bad);
    }

    ReducedPoint rp;
    rp.rep = Mat(n, n);
    rp.gamma = IMat(n, n);
    for (int i = 0; i < n; ++i) {
        rp.rep.row(i) = L.b[n - 1 - i].transpose();
        // gamma = R t R with R the reversal
        for (int j = 0; j < n; ++j) rp.gamma(i, j) = L.t(n - 1 - i, n - 1 - j);
    }
    if (det(rp.gamma) < 0) {
        rp.gamma.row(0) *= -1;
        rp.rep.row(0) *= -1.0;
    }
    RootSystem rs = build_type_a(n);
    rp.iw = iwasawa(rs, rp.rep);
    return rp;
}

ReducedPoint reduce(const RootSystem& rs, const Mat& g) {
    if (rs.factors.size() == 1) return rs.dim == 2 ? reduce_sl2(g) : reduce_siegel(g);
    ReducedPoint out;
    out.gamma = identity_imat(rs.dim);
    out.rep = Mat::Zero(rs.dim, rs.dim);
    for (std::size_t f = 0; f < rs.factors.size(); ++f) {
        int lo = rs.offset[f], n = rs.factors[f];
        Mat blk = g.block(lo, lo, n, n);
        ReducedPoint part = n == 2 ? reduce_sl2(blk) : reduce_siegel(blk);
        out.gamma.block(lo, lo, n, n) = part.gamma;
        out.rep.block(lo, lo, n, n) = part.rep;
    }
    out.iw = iwasawa(rs, out.rep);
    return out;
}

bool root_bound_ours(const RootSystem& rs, const Mat& a, const SiegelSet& S) {
    Vec r = root_values(rs, a);
    return (r.array() >= S.root_lower()).all();
}

bool root_bound_inverted(const RootSystem& rs, const Mat& a, const SiegelSet& S) {
    Vec r = root_values(rs, a);
    return (r.array().inverse() <= S.t + S.t_slack).all();
}

bool in_siegel(const RootSystem& rs, const Mat& g, const SiegelSet& S) {
    LanglandsParts p = iwasawa(rs, g);
    if (!root_bound_ours(rs, p.a, S)) return false;
    for (int i = 0; i < rs.dim; ++i)
        for (int j = i + 1; j < rs.dim; ++j)
            if (std::abs(p.n(i, j)) > S.u_bound + S.u_slack) return false;
    return true;
}

// ---- enumeration ----

GammaStream::GammaStream(int n, int height, std::uint64_t budget)
    : n_(n), h_(height), budget_(budget), entries_(n * n - 1, -height), current_(n, n) {
    if (n < 2) throw InputError("enumeration needs n >= 2");
    if (height < 0) done_ = true;
}

bool GammaStream::advance() {
    if (!started_) {
        started_ = true;
        return true;
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i] < h_) {
            ++entries_[i];
            return true;
        }
        entries_[i] = -h_;
    }
    return false;
}

bool GammaStream::next(IMat& out) {
    while (!done_) {
        if (pending_ > 0) {
            current_(n_ - 1, n_ - 1) = next_x_++;
            --pending_;
            out = current_;
            return true;
        }
        if (visited_ >= budget_) {
            truncated_ = true;
            done_ = true;
            break;
        }
        if (!advance()) {
            done_ = true;
            break;
        }
        ++visited_;
        for (int i = 0; i < n_ * n_ - 1; ++i) current_(i / n_, i % n_) = entries_[i];
        // det is affine in the last entry x: det = d0 + c x
        current_(n_ - 1, n_ - 1) = 0;
        long long d0 = det(current_);
        IMat minor = current_.topLeftCorner(n_ - 1, n_ - 1);
        long long c = det(minor);
        if (c == 0) {
            if (d0 == 1) {
                pending_ = 2 * h_ + 1;
                next_x_ = -h_;
            }
            continue;
        }
        long long num = 1 - d0;
        if (num % c != 0) continue;
        long long x = num / c;
        if (x < -h_ || x > h_) continue;
        current_(n_ - 1, n_ - 1) = x;
        out = current_;
        return true;
    }
    return false;
}

}  // namespace sat
