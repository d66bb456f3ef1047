#include "limits.hpp"

#include <algorithm>
#include <numeric>

namespace sat {

namespace {

int sgn(const Q& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

Subset swap12(Subset s) { return (has(s, 0) ? 2u : 0u) | (has(s, 1) ? 1u : 0u); }

IMat to_imat(const Mat& m) {
    IMat out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = static_cast<long long>(std::llround(m(i, j)));
    return out;
}

IMat integer_generator(const QMat& x) {
    IMat out(x.size(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (x[i][j].denominator() != 1) throw InputError("generator is not integral");
            out(i, j) = x[i][j].numerator();
        }
    return out;
}

// Ad(gamma^-1) X in p_I for integer data; single simple factor
bool int_in_parabolic(const std::vector<IMat>& gens, const std::vector<int>& block, const IMat& gamma,
                      const IMat& gamma_inv) {
    for (const IMat& x : gens) {
        IMat y = gamma_inv * x * gamma;
        for (int i = 0; i < y.rows(); ++i)
            for (int j = 0; j < i; ++j)
                if (y(i, j) != 0 && block[i] > block[j]) return false;
    }
    return true;
}

SurdMat surd_mul(const SurdMat& a, const SurdMat& b) {
    const std::size_t n = a.size();
    SurdMat c(n, std::vector<Surd>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (!a[i][k].is_zero() && !b[k][j].is_zero()) c[i][j] = c[i][j] + a[i][k] * b[k][j];
    return c;
}

SurdMat signed_perm_conj(const SurdMat& s, const Mat& eta) {
    const int n = int(s.size());
    SurdMat e(n, std::vector<Surd>(n)), et(n, std::vector<Surd>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            e[i][j] = Surd(Q(static_cast<long long>(std::llround(eta(i, j)))));
            et[j][i] = e[i][j];
        }
    return surd_mul(surd_mul(e, s), et);
}

QMat signed_perm_conj(const QMat& x, const Mat& eta) {
    QMat e = to_qmat(to_imat(eta)), et = transpose(e);
    return mat_mul(mat_mul(e, x), et);
}

// outer symmetry g -> J g^{-T} J of SL_3
QMat theta(const QMat& x) {
    QMat y(3, QVec(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) y[i][j] = -x[2 - j][2 - i];
    return y;
}

SurdMat theta(const SurdMat& s) {
    const Surd &a = s[0][1], &b = s[1][2], &c = s[0][2];
    SurdMat inv = identity_surd(3);
    inv[0][1] = -a;
    inv[1][2] = -b;
    inv[0][2] = a * b - c;
    SurdMat y = identity_surd(3);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) y[i][j] = inv[2 - j][2 - i];
    return y;
}

QVec theta(const QVec& v) { return {-v[2], -v[1], -v[0]}; }

bool only_entries(const std::vector<QMat>& gens, std::initializer_list<std::pair<int, int>> allowed) {
    for (const QMat& x : gens)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (x[i][j] == 0) continue;
                bool ok = false;
                for (auto [a, b] : allowed) ok = ok || (a == i && b == j);
                if (!ok) return false;
            }
    return true;
}

LimitDescriptor boundary(Subset label, std::string slug) {
    LimitDescriptor d;
    d.label = label;
    d.support = SupportKind::boundary_homogeneous;
    d.trace.push_back(std::move(slug));
    return d;
}

LimitDescriptor interior(const RootSystem& rs, std::string slug) {
    LimitDescriptor d;
    d.label = full_subset(rs.rank);
    d.support = SupportKind::interior;
    d.trace.push_back(std::move(slug));
    return d;
}

SurdMat offset_or_identity(const RootSystem& rs, const SequenceSpec& seq) {
    return seq.offset.empty() ? identity_surd(rs.dim) : seq.offset;
}

bool all_zero(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Q& q) { return q == 0; });
}

const Surd& offset_entry(const SurdMat& s, int i, int j) { return s[i][j]; }

}  // namespace

SurdMat identity_surd(int n) {
    SurdMat s(n, std::vector<Surd>(n));
    for (int i = 0; i < n; ++i) s[i][i] = Surd(Q(1));
    return s;
}

Mat to_mat(const SurdMat& s) {
    Mat m(s.size(), s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) m(i, j) = s[i][j].value();
    return m;
}

void validate(const RootSystem& rs, const SequenceSpec& seq) {
    validate(rs, seq.subgroup);
    if (!in_lie_a(rs, seq.direction)) throw InputError("direction must have one entry per coordinate, summing to 0 per factor");
    if (!seq.log_offset.empty() && !in_lie_a(rs, seq.log_offset))
        throw InputError("log offset must have one entry per coordinate, summing to 0 per factor");
    if (!seq.offset.empty()) {
        if (int(seq.offset.size()) != rs.dim) throw InputError("offset has the wrong size");
        std::vector<int> factor(rs.dim);
        for (std::size_t f = 0; f < rs.factors.size(); ++f)
            for (int i = 0; i < rs.factors[f]; ++i) factor[rs.offset[f] + i] = int(f);
        for (int i = 0; i < rs.dim; ++i)
            for (int j = 0; j < rs.dim; ++j) {
                const Surd& e = seq.offset[i][j];
                if (i == j && !(e == Surd(Q(1)))) throw InputError("offset must be unipotent");
                if (i != j && !e.is_zero() && (i > j || factor[i] != factor[j]))
                    throw InputError("offset entries must be strictly upper triangular inside a factor");
            }
    }
    if (seq.indices.empty()) throw InputError("at least one index is required");
    for (std::size_t t = 0; t < seq.indices.size(); ++t) {
        if (seq.indices[t] < 0) throw InputError("indices must be non-negative");
        if (t && seq.indices[t] <= seq.indices[t - 1]) throw InputError("indices must be strictly increasing");
    }
}

Mat sequence_element(const RootSystem& rs, const SequenceSpec& seq, int n) {
    QVec t(rs.dim);
    for (int i = 0; i < rs.dim; ++i) t[i] = Q(n) * seq.direction[i] + (seq.log_offset.empty() ? Q(0) : seq.log_offset[i]);
    Mat g = to_mat(offset_or_identity(rs, seq)) * exp_diag(t);
    if (seq.subgroup.conjugator) g = to_mat(*seq.subgroup.conjugator) * g;
    return g;
}

std::string support_name(SupportKind k) {
    switch (k) {
    case SupportKind::interior: return "interior";
    case SupportKind::boundary_homogeneous: return "boundary_homogeneous";
    case SupportKind::dirac_point: return "dirac_point";
    }
    return "?";
}

// ---- delta ----

DeltaResult delta_truncated(const RootSystem& rs, const SubgroupSpec& spec, const Mat& g, int height,
                            std::uint64_t budget) {
    if (rs.factors.size() != 1) throw InputError("delta is computed for a simple factor only");
    validate(rs, spec);
    std::vector<IMat> gens;
    for (const QMat& x : lie_generators(rs, spec)) gens.push_back(integer_generator(x));
    std::vector<std::vector<int>> block(rs.rank, std::vector<int>(rs.dim));
    for (int a = 0; a < rs.rank; ++a) {
        auto bl = blocks(rs, full_subset(rs.rank) & ~(Subset(1) << a));
        for (std::size_t b = 0; b < bl.size(); ++b)
            for (int i : bl[b]) block[a][i] = int(b);
    }
    Mat ginv = g.inverse();
    DeltaResult r;
    GammaStream stream(rs.dim, height, budget);
    IMat gamma;
    while (stream.next(gamma)) {
        IMat inv = adjugate_inverse(gamma);
        for (int a = 0; a < rs.rank; ++a) {
            if (!int_in_parabolic(gens, block[a], gamma, inv)) continue;
            Subset I = full_subset(rs.rank) & ~(Subset(1) << a);
            double d = d_function(rs, I, ginv * to_mat(gamma));
            if (d < r.value) {
                r.value = d;
                r.alpha = a;
                r.witness = gamma;
            }
        }
    }
    r.truncated = stream.truncated();
    r.visited = stream.visited();
    return r;
}

std::vector<ParabolicIndex> parabolics_containing(const RootSystem& rs, const SubgroupSpec& spec) {
    validate(rs, spec);
    std::vector<QMat> gens = base_generators(rs, spec);
    std::vector<ParabolicIndex> out;
    for (Subset I = 0; I <= full_subset(rs.rank); ++I) {
        if (!lie_in_parabolic(rs, gens, I)) continue;
        ParabolicIndex P = standard_parabolic(rs, I);
        if (spec.conjugator) P.conjugator = to_mat(*spec.conjugator);
        out.push_back(P);
    }
    return out;
}

// ---- unipotent radical ----

bool unip_bounded(const RootSystem& rs, const QVec& v, Subset I) {
    static thread_local std::vector<std::pair<std::vector<int>, Weights>> cache;
    const Weights* W = nullptr;
    for (auto& [f, w] : cache)
        if (f == rs.factors) W = &w;
    if (!W) {
        cache.push_back({rs.factors, quasi_fundamental_weights(rs)});
        W = &cache.back().second;
    }
    QVec vi = levi_component(rs, v, I);
    for (int k = 0; k < rs.rank; ++k)
        if (weight_pairing(rs, *W, vi, k) > 0) return false;
    return true;
}

UnipResult unip_limit_I(const RootSystem& rs, const QVec& v) {
    if (!in_lie_a(rs, v)) throw InputError("direction is not in Lie(A)");
    // the split v = v_I + v^I with v^I a non-positive coroot combination and v_I strictly
    // positive off I singles out one subset; it is the maximal bounded one
    for (Subset I = 0; I <= full_subset(rs.rank); ++I) {
        if (!unip_bounded(rs, v, I)) continue;
        QVec c = center_component(rs, v, I);
        UnipResult r;
        r.I = I;
        bool ok = true;
        for (int k = 0; k < rs.rank && ok; ++k) {
            if (has(I, k)) continue;
            Q p = root_pairing(rs, c, k);
            ok = p > 0;
            r.certificate.push_back({k, p});
        }
        if (ok) return r;
    }
    throw std::logic_error("no subset satisfies the splitting conditions");
}

// ---- A_I translates ----

MaSplit ma_split(const RootSystem& rs, const QVec& v, const QVec& b_in, Subset I) {
    QVec b = b_in.empty() ? QVec(rs.dim, Q(0)) : b_in;
    if (!in_lie_a(rs, v) || !in_lie_a(rs, b)) throw InputError("direction and offset must lie in Lie(A)");
    for (int k = 0; k < rs.rank; ++k)
        if (has(I, k) && (root_pairing(rs, v, k) != 0 || root_pairing(rs, b, k) != 0))
            throw InputError("direction and offset must lie in Lie(A_I)");

    // chamber of n v + b for large n: order by (v, b) lexicographically
    ChamberFace f;
    f.w = identity_weyl(rs);
    for (std::size_t fi = 0; fi < rs.factors.size(); ++fi) {
        int lo = rs.offset[fi], n = rs.factors[fi];
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), lo);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int x, int y) { return v[x] != v[y] ? v[x] > v[y] : b[x] > b[y]; });
        for (int i = 0; i < n; ++i) f.w.perm[lo + i] = idx[i];
    }
    for (int k = 0; k < rs.rank; ++k)
        if (root_pairing(rs, v, f.w, k) == 0 && root_pairing(rs, b, f.w, k) == 0) f.I = with(f.I, k);
    f = canonical(rs, f);

    MaSplit s;
    s.face = f;
    s.v_inf.assign(rs.dim, Q(0));
    s.v_0.assign(rs.dim, Q(0));
    for (int k = 0; k < rs.rank; ++k) {
        if (has(f.I, k)) continue;
        Q pv = root_pairing(rs, v, f.w, k);
        QVec cw = act(f.w, coweight(rs, k));
        if (pv > 0) {
            s.r_inf = with(s.r_inf, k);
            for (int i = 0; i < rs.dim; ++i) s.v_inf[i] += pv * cw[i];
        } else {
            s.r_0 = with(s.r_0, k);
            Q pb = root_pairing(rs, b, f.w, k);
            for (int i = 0; i < rs.dim; ++i) s.v_0[i] += pb * cw[i];
        }
    }
    s.label = f.I | s.r_0;
    return s;
}

bool ma_torus_inclusion(const RootSystem& rs, const ChamberFace& f, Subset I) {
    for (int a = 0; a < rs.rank; ++a) {
        if (has(f.I, a)) continue;
        QVec cw = act(f.w, coweight(rs, a));
        for (int b = 0; b < rs.rank; ++b)
            if (has(I, b) && root_pairing(rs, cw, b) != 0) return false;
    }
    return true;
}

// ---- SL_3 ----

std::vector<std::string> sl3_branch_slugs() {
    return {"beta-levi-projection-unipotent", "beta-limit-positive",   "weyl-conjugate-escape",
            "bounded-reduced-height",         "reduced-height-escape", "finite-beta-limit",
            "vanishing-beta-noncentral",      "vanishing-beta-central"};
}

LimitDescriptor sl3_tree(const Sl3LimitData& d) {
    const Subset p_alpha = 1, p_beta = 2, p_min = 0;
    auto slug = sl3_branch_slugs();
    if (d.alpha_rate > 0) return boundary(p_min, "both-roots-escape");
    if (!d.h_in_n_beta) return boundary(p_beta, slug[0]);
    if (d.alpha_rate == 0) return boundary(p_beta, slug[1]);
    using O = Sl3LimitData::Offset;
    if (d.s23 == O::zero) return boundary(p_min, slug[2]);
    if (d.s23 == O::irrational) return boundary(p_beta, slug[3]);
    if (d.beta_rate > 0) return boundary(p_min, slug[4]);
    if (d.beta_rate == 0) return boundary(p_alpha, slug[5]);
    if (!d.h_central) return boundary(p_alpha, slug[6]);
    LimitDescriptor out = boundary(p_min, slug[7]);
    out.support = SupportKind::dirac_point;
    out.label_from_data = true;
    return out;
}

LimitDescriptor sl3_classify(const RootSystem& rs, const SequenceSpec& seq) {
    if (rs.factors != std::vector<int>{3}) throw InputError("the SL_3 model needs group sl 3");
    validate(rs, seq);
    const SubgroupSpec& spec = seq.subgroup;
    if (spec.kind == SubgroupKind::product) throw NotCovered("product subgroups are outside the SL_3 tree");
    if (!seq.log_offset.empty() && !all_zero(seq.log_offset))
        throw NotCovered("diagonal offsets are outside the SL_3 tree as encoded");
    if (spec.kind == SubgroupKind::full_group) return interior(rs, "no-proper-parabolic");
    if (all_zero(seq.direction)) return interior(rs, "bounded-translate");

    // choose the escaping maximal parabolic; the outer symmetry swaps the two
    std::vector<QMat> gens = base_generators(rs, spec);
    SurdMat s = offset_or_identity(rs, seq);
    QVec v = seq.direction;
    bool sym = false, found = false;
    for (int attempt = 0; attempt < 2 && !found; ++attempt) {
        if (attempt == 1) {
            for (QMat& x : gens) x = theta(x);
            s = theta(s);
            v = theta(v);
            sym = true;
        }
        found = lie_in_parabolic(rs, gens, 1) && v[2] < 0;
    }
    if (!found) {
        if (spec.kind == SubgroupKind::full_unipotent_radical && spec.I == 0)
            return interior(rs, "no-escaping-parabolic");
        throw NotCovered("no standard maximal parabolic witnesses escape; other witnesses are outside the tree");
    }
    auto finish = [&](LimitDescriptor d, std::vector<std::string> pre) {
        if (sym) {
            d.label = swap12(d.label);
            pre.push_back("outer-symmetry");
        }
        d.trace.insert(d.trace.begin(), pre.begin(), pre.end());
        return d;
    };
    std::vector<std::string> pre;

    // projection of Lie(H) to the Levi factor on coordinates 1, 2
    bool upper = false, lower = false, diag = false;
    for (const QMat& x : gens) {
        upper = upper || x[0][1] != 0;
        lower = lower || x[1][0] != 0;
        diag = diag || x[0][0] != x[1][1];
    }
    Q lx = -v[2] / Q(2), ly = v[0] - lx;
    if (upper && lower) return finish(boundary(1, "levi-projection-full"), pre);
    if (lower || diag) throw NotCovered("projection to the Levi factor is not of catalog type");
    if (upper && ly <= 0) return finish(boundary(1, "levi-projection-nonescaping"), pre);
    if (!upper && ly == 0) return finish(boundary(1, "levi-projection-fixed"), pre);
    if (!upper && ly < 0) {
        if (!s[0][1].is_zero()) throw NotCovered("contracting Levi direction with a nonzero Levi offset");
        WeylElement w = identity_weyl(rs);
        std::swap(w.perm[0], w.perm[1]);
        Mat eta = weyl_representative(rs, w);
        for (QMat& x : gens) x = signed_perm_conj(x, eta);
        s = signed_perm_conj(s, eta);
        std::swap(v[0], v[1]);
        ly = v[0] - lx;
        pre.push_back("levi-weyl-flip");
    }
    if (!only_entries(gens, {{0, 1}, {0, 2}, {1, 2}})) throw NotCovered("subgroup is not unipotent after reduction");

    Sl3LimitData d;
    d.alpha_rate = sgn(Q(3) * lx - ly);
    d.h_in_n_beta = only_entries(gens, {{0, 1}, {0, 2}});
    const Surd& t = offset_entry(s, 1, 2);
    d.s23 = t.is_zero() ? Sl3LimitData::Offset::zero
                        : (t.is_rational() ? Sl3LimitData::Offset::rational : Sl3LimitData::Offset::irrational);
    // reduced Levi height grows like the inverse Levi root, so beta(c_n alpha_n) has rate 3 lx + ly
    d.beta_rate = sgn(Q(3) * lx + ly);
    d.h_central = only_entries(gens, {{0, 2}});
    return finish(sl3_tree(d), pre);
}

double sl3_growth_law_error(const QVec& v, int n) {
    RootSystem rs = build_type_a(3);
    Mat a = exp_diag(v, double(n));
    double lx = -boost::rational_cast<double>(v[2]) / 2.0;
    double ly = boost::rational_cast<double>(v[0]) - lx;
    double x = std::exp(n * lx), y = std::exp(n * ly);

    LanglandsParts lp = langlands(rs, a, 2);   // Levi roots {alpha_2}: blocks {1}, {2,3}
    double beta_alpha = lp.a(0, 0) / lp.a(1, 1);
    double err = std::abs(beta_alpha - std::pow(y * x, 1.5)) / std::pow(y * x, 1.5);

    // beta_n = a * alpha_n^{-1}; flip coordinates 2 and 3
    Mat beta_n = a * lp.a.inverse();
    WeylElement w = identity_weyl(rs);
    std::swap(w.perm[1], w.perm[2]);
    Mat eta = weyl_representative(rs, w);
    Mat flipped = eta * a * eta.transpose();
    Vec r = root_values(rs, iwasawa(rs, flipped).a);
    double alpha_beta_n = beta_n(1, 1) / beta_n(2, 2);
    err = std::max(err, std::abs(r(1) - 1.0 / alpha_beta_n) / r(1));
    err = std::max(err, std::abs(r(0) - y * x * x * x) / r(0));
    return err;
}

// ---- SL_2^r ----

LimitDescriptor sl2r_classify(const RootSystem& rs, const SequenceSpec& seq) {
    for (int n : rs.factors)
        if (n != 2) throw InputError("the product model needs group sl2^r");
    validate(rs, seq);
    const int r = int(rs.factors.size());
    const SubgroupSpec& spec = seq.subgroup;
    std::vector<SubgroupKind> kinds(r);
    switch (spec.kind) {
    case SubgroupKind::product:
        for (int f = 0; f < r; ++f) {
            if (spec.parts[f].conjugator) throw NotCovered("per-factor conjugators are outside the encoded partition");
            kinds[f] = spec.parts[f].kind;
        }
        break;
    case SubgroupKind::trivial:
    case SubgroupKind::full_group: std::fill(kinds.begin(), kinds.end(), spec.kind); break;
    case SubgroupKind::full_unipotent_radical:
        for (int f = 0; f < r; ++f)
            kinds[f] = has(spec.I, f) ? SubgroupKind::trivial : SubgroupKind::full_unipotent_radical;
        break;
    default: throw NotCovered("subgroup kind is outside the SL_2^r partition");
    }
    SurdMat s = offset_or_identity(rs, seq);
    LimitDescriptor d;
    d.support = SupportKind::boundary_homogeneous;
    Subset J = 0;
    for (int f = 0; f < r; ++f) {
        int lo = rs.offset[f];
        const Q& v = seq.direction[lo];
        const Surd& t = s[lo][lo + 1];
        std::string tag = "factor " + std::to_string(f + 1) + ": ";
        bool stays;
        switch (kinds[f]) {
        case SubgroupKind::full_group:
            stays = true;
            tag += "full";
            break;
        case SubgroupKind::full_unipotent_radical:
        case SubgroupKind::embedded_sl2:
            if (kinds[f] == SubgroupKind::embedded_sl2) {
                stays = true;
                tag += "full";
                break;
            }
            stays = v <= 0;
            tag += stays ? "unipotent-bounded" : "unipotent-escaping";
            break;
        case SubgroupKind::one_param_unipotent:
            stays = v <= 0;
            tag += stays ? "unipotent-bounded" : "unipotent-escaping";
            break;
        case SubgroupKind::trivial:
            // a contracting direction escapes unless the offset is badly approximable
            stays = v == 0 || (v < 0 && !t.is_rational());
            tag += stays ? "trivial-bounded" : "trivial-escaping";
            break;
        default: throw NotCovered("factor kind is outside the SL_2^r partition");
        }
        if (stays) J = with(J, f);
        d.trace.push_back(tag);
    }
    d.label = J;
    if (J == full_subset(rs.rank)) d.support = SupportKind::interior;
    return d;
}

// ---- unipotent radical translates ----

LimitDescriptor unip_classify(const RootSystem& rs, const SequenceSpec& seq) {
    validate(rs, seq);
    const SubgroupSpec& spec = seq.subgroup;
    if (spec.kind != SubgroupKind::full_unipotent_radical || spec.I != 0)
        throw NotCovered("the unipotent model needs the radical of the minimal parabolic");
    UnipResult u = unip_limit_I(rs, seq.direction);
    LimitDescriptor d = u.I == full_subset(rs.rank) ? interior(rs, "maximal-bounded-subset")
                                                     : boundary(u.I, "maximal-bounded-subset");
    return d;
}

// ---- Levi of a maximal parabolic ----

LimitDescriptor levi_translate_classify(const RootSystem& rs, const SequenceSpec& seq) {
    validate(rs, seq);
    const SubgroupSpec& spec = seq.subgroup;
    if (rs.factors.size() != 1 || spec.kind != SubgroupKind::levi_semisimple_nc ||
        popcount(spec.I) != rs.rank - 1)
        throw NotCovered("the Levi model needs the semisimple Levi part of a maximal parabolic");
    std::vector<QMat> gens = base_generators(rs, spec);
    Weights W = quasi_fundamental_weights(rs);
    for (const WeylElement& w : weyl_group(rs)) {
        IMat rep = to_imat(weyl_representative(rs, w));
        QVec wv = act(inverse(w), seq.direction);
        for (int b = 0; b < rs.rank; ++b) {
            Subset I = full_subset(rs.rank) & ~(Subset(1) << b);
            if (!lie_in_parabolic(rs, gens, I, rep)) continue;
            if (weight_pairing(rs, W, wv, b) <= 0) continue;
            LimitDescriptor d = boundary(I, "escape-toward-maximal-parabolic");
            d.conjugator = rep;
            return d;
        }
    }
    return interior(rs, "no-escaping-parabolic");
}

// ---- subgroups of M_I translated inside A_I ----

LimitDescriptor ma_classify(const RootSystem& rs, const SequenceSpec& seq) {
    validate(rs, seq);
    QVec b = seq.log_offset.empty() ? QVec(rs.dim, Q(0)) : seq.log_offset;
    if (!seq.offset.empty())
        for (int i = 0; i < rs.dim; ++i)
            for (int j = i + 1; j < rs.dim; ++j)
                if (!seq.offset[i][j].is_zero()) throw NotCovered("the A_I model takes no unipotent offset");
    Subset I = 0;
    for (int k = 0; k < rs.rank; ++k)
        if (root_pairing(rs, seq.direction, k) == 0 && root_pairing(rs, b, k) == 0) I = with(I, k);
    if (!lie_in_levi(rs, base_generators(rs, seq.subgroup), I))
        throw NotCovered("subgroup is not inside M_I for the torus of the translate");
    MaSplit s = ma_split(rs, seq.direction, b, I);
    LimitDescriptor d = s.label == full_subset(rs.rank) ? interior(rs, "chamber-split")
                                                        : boundary(s.label, "chamber-split");
    d.conjugator = to_imat(weyl_representative(rs, s.face.w));
    return d;
}

}  // namespace sat
