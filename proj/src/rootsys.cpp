#include "rootsys.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sat {

int popcount(Subset s) { return __builtin_popcount(s); }

std::string subset_name(Subset s, int rank) {
    std::string out = "{";
    bool first = true;
    for (int k = 0; k < rank; ++k) {
        if (!has(s, k)) continue;
        if (!first) out += ",";
        out += std::to_string(k + 1);
        first = false;
    }
    return out + "}";
}

RootSystem build_product(const std::vector<int>& factors) {
    if (factors.empty()) throw std::invalid_argument("root system needs at least one factor");
    RootSystem rs;
    rs.factors = factors;
    for (std::size_t f = 0; f < factors.size(); ++f) {
        int n = factors[f];
        if (n < 2) throw std::invalid_argument("SL_n factor needs n >= 2");
        if (n > 9) throw std::invalid_argument("SL_n factor limited to n <= 9");
        rs.offset.push_back(rs.dim);
        for (int i = 0; i + 1 < n; ++i) {
            rs.roots.push_back({rs.dim + i, rs.dim + i + 1});
            rs.root_factor.push_back(int(f));
        }
        rs.dim += n;
    }
    rs.rank = int(rs.roots.size());
    if (rs.rank > 31) throw std::invalid_argument("rank too large");

    rs.cartan.assign(rs.rank, QVec(rs.rank, Q(0)));
    rs.pairing.assign(rs.rank, QVec(rs.rank, Q(0)));
    for (int i = 0; i < rs.rank; ++i) {
        for (int j = 0; j < rs.rank; ++j) {
            // Dynkin adjacency: consecutive roots inside one factor
            if (i == j) rs.cartan[i][j] = 2;
            else if (rs.root_factor[i] == rs.root_factor[j] && std::abs(i - j) == 1) rs.cartan[i][j] = -1;
            // trace form: dot product of e_a - e_b vectors
            auto [a1, b1] = rs.roots[i];
            auto [a2, b2] = rs.roots[j];
            long long v = (a1 == a2) - (a1 == b2) - (b1 == a2) + (b1 == b2);
            rs.pairing[i][j] = v;
        }
    }
    return rs;
}

RootSystem build_type_a(int n) {
    if (n < 2) throw std::invalid_argument("build_type_a: n must be >= 2");
    return build_product({n});
}

QMat transpose(const QMat& m) {
    if (m.empty()) return {};
    QMat t(m[0].size(), QVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

QMat inverse(const QMat& m) {
    const std::size_t n = m.size();
    QMat a = m;
    QMat inv(n, QVec(n, Q(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw std::domain_error("singular rational matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Q piv = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Q f = a[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

QVec mat_vec(const QMat& m, const QVec& v) {
    QVec out(m.size(), Q(0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

Q dot(const QVec& a, const QVec& b) {
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Q& q) { return q == 0; });
}

Q pair(const RootSystem& rs, const QVec& x, const QVec& y) { return dot(x, mat_vec(rs.pairing, y)); }

bool positive_definite(const QMat& m) {
    // Gaussian elimination without pivoting; pivots are the ratios of leading minors.
    QMat a = m;
    for (std::size_t c = 0; c < a.size(); ++c) {
        if (a[c][c] <= 0) return false;
        for (std::size_t r = c + 1; r < a.size(); ++r) {
            Q f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < a.size(); ++j) a[r][j] -= f * a[c][j];
        }
    }
    return true;
}

Weights quasi_fundamental_weights(const RootSystem& rs) {
    // chi_k = sum_j G^{-1}[k][j] alpha_j, so pair(chi_k, alpha_j) = delta_kj
    QMat ginv = inverse(rs.pairing);
    Weights w;
    for (int k = 0; k < rs.rank; ++k) {
        w.chi.push_back(ginv[k]);
        w.d.push_back(Q(1));
    }
    return w;
}

namespace {
std::vector<int> members(Subset I, int rank) {
    std::vector<int> out;
    for (int k = 0; k < rank; ++k)
        if (has(I, k)) out.push_back(k);
    return out;
}
}  // namespace

QVec project_span(const RootSystem& rs, const QVec& x, Subset I) {
    auto idx = members(I, rs.rank);
    QVec out(rs.rank, Q(0));
    if (idx.empty()) return out;
    QMat g(idx.size(), QVec(idx.size()));
    QVec rhs(idx.size());
    QVec gx = mat_vec(rs.pairing, x);
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = 0; b < idx.size(); ++b) g[a][b] = rs.pairing[idx[a]][idx[b]];
        rhs[a] = gx[idx[a]];
    }
    QVec c = mat_vec(inverse(g), rhs);
    for (std::size_t a = 0; a < idx.size(); ++a) out[idx[a]] = c[a];
    return out;
}

QVec project_perp(const RootSystem& rs, const QVec& x, Subset I) {
    QVec p = project_span(rs, x, I);
    QVec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - p[i];
    return out;
}

std::vector<QVec> restrict_weights(const RootSystem& rs, Subset I) {
    Weights w = quasi_fundamental_weights(rs);
    std::vector<QVec> out;
    for (int k = 0; k < rs.rank; ++k)
        if (has(I, k)) out.push_back(project_span(rs, w.chi[k], I));
    return out;
}

// ---- Weyl group ----

WeylElement identity_weyl(const RootSystem& rs) {
    WeylElement w;
    w.perm.resize(rs.dim);
    std::iota(w.perm.begin(), w.perm.end(), 0);
    return w;
}

WeylElement compose(const WeylElement& a, const WeylElement& b) {
    WeylElement c;
    c.perm.resize(b.perm.size());
    for (std::size_t i = 0; i < b.perm.size(); ++i) c.perm[i] = a.perm[b.perm[i]];
    return c;
}

WeylElement inverse(const WeylElement& w) {
    WeylElement r;
    r.perm.resize(w.perm.size());
    for (std::size_t i = 0; i < w.perm.size(); ++i) r.perm[w.perm[i]] = int(i);
    return r;
}

bool valid_weyl(const RootSystem& rs, const WeylElement& w) {
    if (int(w.perm.size()) != rs.dim) return false;
    std::vector<int> seen(rs.dim, 0);
    for (std::size_t f = 0; f < rs.factors.size(); ++f) {
        int lo = rs.offset[f], hi = lo + rs.factors[f];
        for (int i = lo; i < hi; ++i) {
            int j = w.perm[i];
            if (j < lo || j >= hi || seen[j]) return false;
            seen[j] = 1;
        }
    }
    return true;
}

std::vector<WeylElement> weyl_group(const RootSystem& rs) {
    std::vector<WeylElement> out{identity_weyl(rs)};
    for (std::size_t f = 0; f < rs.factors.size(); ++f) {
        int lo = rs.offset[f], n = rs.factors[f];
        std::vector<int> local(n);
        std::iota(local.begin(), local.end(), 0);
        std::vector<std::vector<int>> perms;
        do perms.push_back(local);
        while (std::next_permutation(local.begin(), local.end()));
        std::vector<WeylElement> next;
        for (const auto& base : out)
            for (const auto& p : perms) {
                WeylElement w = base;
                for (int i = 0; i < n; ++i) w.perm[lo + i] = lo + p[i];
                next.push_back(w);
            }
        out.swap(next);
    }
    return out;
}

WeylElement longest_element(const RootSystem& rs) {
    WeylElement w = identity_weyl(rs);
    for (std::size_t f = 0; f < rs.factors.size(); ++f) {
        int lo = rs.offset[f], n = rs.factors[f];
        for (int i = 0; i < n; ++i) w.perm[lo + i] = lo + n - 1 - i;
    }
    return w;
}

QVec act(const WeylElement& w, const QVec& v) {
    QVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[w.perm[i]] = v[i];
    return out;
}

Q root_pairing(const RootSystem& rs, const QVec& v, int k) {
    return v[rs.roots[k].first] - v[rs.roots[k].second];
}

Q root_pairing(const RootSystem& rs, const QVec& v, const WeylElement& w, int k) {
    return v[w.perm[rs.roots[k].first]] - v[w.perm[rs.roots[k].second]];
}

Q weight_pairing(const RootSystem& rs, const Weights& W, const QVec& v, int k) {
    Q s = 0;
    for (int j = 0; j < rs.rank; ++j) s += W.chi[k][j] * root_pairing(rs, v, j);
    return s;
}

bool in_lie_a(const RootSystem& rs, const QVec& v) {
    if (int(v.size()) != rs.dim) return false;
    for (std::size_t f = 0; f < rs.factors.size(); ++f) {
        Q s = 0;
        for (int i = 0; i < rs.factors[f]; ++i) s += v[rs.offset[f] + i];
        if (s != 0) return false;
    }
    return true;
}

QVec coweight(const RootSystem& rs, int k) {
    QVec out(rs.dim, Q(0));
    int f = rs.root_factor[k];
    int lo = rs.offset[f], n = rs.factors[f];
    int p = rs.roots[k].first - lo;   // local position of the root
    for (int i = 0; i < n; ++i) out[lo + i] = (i <= p) ? Q(n - p - 1, n) : Q(-(p + 1), n);
    return out;
}

std::vector<std::vector<int>> blocks(const RootSystem& rs, Subset I) {
    std::vector<std::vector<int>> out;
    std::vector<int> link(rs.dim, 0);   // link[i] = 1 if i-1 and i joined by a root of I
    for (int k = 0; k < rs.rank; ++k)
        if (has(I, k)) link[rs.roots[k].second] = 1;
    for (int i = 0; i < rs.dim; ++i) {
        if (out.empty() || !link[i]) out.emplace_back();
        out.back().push_back(i);
    }
    return out;
}

QVec levi_component(const RootSystem& rs, const QVec& v, Subset I) {
    QVec out(rs.dim, Q(0));
    for (const auto& b : blocks(rs, I)) {
        if (b.size() < 2) continue;
        Q mean = 0;
        for (int i : b) mean += v[i];
        mean /= Q(static_cast<long long>(b.size()));
        for (int i : b) out[i] = v[i] - mean;
    }
    return out;
}

QVec center_component(const RootSystem& rs, const QVec& v, Subset I) {
    QVec l = levi_component(rs, v, I);
    QVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - l[i];
    return out;
}

// ---- chamber complex ----

ChamberFace canonical(const RootSystem& rs, const ChamberFace& f) {
    ChamberFace c = f;
    // the stabilizer of C_I permutes positions inside each I-block
    for (const auto& b : blocks(rs, f.I)) {
        std::vector<int> vals;
        for (int pos : b) vals.push_back(c.w.perm[pos]);
        std::sort(vals.begin(), vals.end());
        for (std::size_t t = 0; t < b.size(); ++t) c.w.perm[b[t]] = vals[t];
    }
    return c;
}

bool in_face(const RootSystem& rs, const QVec& v, const ChamberFace& f) {
    for (int k = 0; k < rs.rank; ++k) {
        Q p = root_pairing(rs, v, f.w, k);
        if (has(f.I, k) ? p != 0 : p <= 0) return false;
    }
    return true;
}

ChamberFace locate_chamber(const RootSystem& rs, const QVec& v) {
    ChamberFace f;
    f.w = identity_weyl(rs);
    for (std::size_t fi = 0; fi < rs.factors.size(); ++fi) {
        int lo = rs.offset[fi], n = rs.factors[fi];
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), lo);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] > v[b]; });
        for (int i = 0; i < n; ++i) f.w.perm[lo + i] = idx[i];
    }
    for (int k = 0; k < rs.rank; ++k)
        if (root_pairing(rs, v, f.w, k) == 0) f.I = with(f.I, k);
    return f;
}

ChamberFace act(const RootSystem& rs, const WeylElement& w, const ChamberFace& f) {
    return canonical(rs, ChamberFace{compose(w, f.w), f.I});
}

std::vector<ChamberFace> all_faces(const RootSystem& rs) {
    std::set<ChamberFace> seen;
    auto W = weyl_group(rs);
    for (Subset I = 0; I <= full_subset(rs.rank); ++I)
        for (const auto& w : W) seen.insert(canonical(rs, ChamberFace{w, I}));
    return {seen.begin(), seen.end()};
}

int face_dimension(const RootSystem& rs, const ChamberFace& f) { return rs.rank - popcount(f.I); }

std::vector<ChamberFace> levi_sphere(const RootSystem& rs, Subset I) {
    std::vector<ChamberFace> out;
    for (const auto& f : all_faces(rs)) {
        std::vector<int> block_of(rs.dim);
        auto bl = blocks(rs, f.I);
        for (std::size_t b = 0; b < bl.size(); ++b)
            for (int pos : bl[b]) block_of[pos] = int(b);
        WeylElement winv = inverse(f.w);
        bool inside = true;
        for (int k = 0; k < rs.rank && inside; ++k) {
            if (!has(I, k)) continue;
            auto [i, j] = rs.roots[k];
            inside = block_of[winv.perm[i]] == block_of[winv.perm[j]];
        }
        if (inside) out.push_back(f);
    }
    return out;
}

std::string to_string(const Q& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::string to_string(const QVec& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + to_string(v[i]);
    return out + ")";
}

std::string to_string(const WeylElement& w) {
    std::string out = "[";
    for (std::size_t i = 0; i < w.perm.size(); ++i) out += (i ? " " : "") + std::to_string(w.perm[i] + 1);
    return out + "]";
}

}  // namespace sat
