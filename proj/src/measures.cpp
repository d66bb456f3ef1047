#include "measures.hpp"

#include <atomic>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace sat {

namespace {

QMat zero_qmat(int n) { return QMat(n, QVec(n, Q(0))); }

QMat unit(int n, int i, int j) {
    QMat m = zero_qmat(n);
    m[i][j] = 1;
    return m;
}

QMat cartan_element(int n, int i) {
    QMat m = zero_qmat(n);
    m[i][i] = 1;
    m[i + 1][i + 1] = -1;
    return m;
}

int factor_of(const RootSystem& rs, int coord) {
    for (std::size_t f = 0; f < rs.factors.size(); ++f)
        if (coord >= rs.offset[f] && coord < rs.offset[f] + rs.factors[f]) return int(f);
    return -1;
}

std::vector<int> block_index(const RootSystem& rs, Subset I) {
    std::vector<int> out(rs.dim, 0);
    auto bl = blocks(rs, I);
    for (std::size_t b = 0; b < bl.size(); ++b)
        for (int i : bl[b]) out[i] = int(b);
    return out;
}

// (i, j), i < j, spanning the nilradical of P_I
std::vector<std::pair<int, int>> nilradical_positions(const RootSystem& rs, Subset I) {
    auto bi = block_index(rs, I);
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < rs.dim; ++i)
        for (int j = i + 1; j < rs.dim; ++j)
            if (factor_of(rs, i) == factor_of(rs, j) && bi[i] != bi[j]) out.push_back({i, j});
    return out;
}

void append_sl_block(std::vector<QMat>& gens, int dim, const std::vector<int>& b) {
    for (int x : b)
        for (int y : b)
            if (x != y) gens.push_back(unit(dim, x, y));
    for (std::size_t t = 0; t + 1 < b.size(); ++t) gens.push_back(cartan_element(dim, b[t]));
}

QMat conjugate(const QMat& x, const IMat& g, const IMat& ginv) {
    return mat_mul(mat_mul(to_qmat(g), x), to_qmat(ginv));
}

// sampled SL_2 element n(x) a(y) k(theta) with (x, y) in the truncated modular domain
Eigen::Matrix2d sample_sl2(std::mt19937_64& rng, double ycap) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double y0 = std::sqrt(3.0) / 2.0;
    double x, y;
    do {
        double u = uni(rng);
        y = 1.0 / (1.0 / y0 - u * (1.0 / y0 - 1.0 / ycap));
        x = uni(rng) - 0.5;
    } while (x * x + y * y < 1.0);
    double th = 2.0 * std::numbers::pi * uni(rng);
    Eigen::Matrix2d n, a, k;
    n << 1, x, 0, 1;
    a << std::sqrt(y), 0, 0, 1.0 / std::sqrt(y);
    k << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    return n * a * k;
}

}  // namespace

std::string kind_name(SubgroupKind k) {
    switch (k) {
    case SubgroupKind::trivial: return "trivial";
    case SubgroupKind::full_unipotent_radical: return "full_unipotent_radical";
    case SubgroupKind::levi_semisimple_nc: return "levi_semisimple_nc";
    case SubgroupKind::embedded_sl2: return "embedded_sl2";
    case SubgroupKind::one_param_unipotent: return "one_param_unipotent";
    case SubgroupKind::full_group: return "full_group";
    case SubgroupKind::product: return "product";
    }
    return "?";
}

std::string describe(const RootSystem& rs, const SubgroupSpec& s) {
    std::string out = kind_name(s.kind);
    switch (s.kind) {
    case SubgroupKind::full_unipotent_radical:
    case SubgroupKind::levi_semisimple_nc: out += subset_name(s.I, rs.rank); break;
    case SubgroupKind::embedded_sl2: out += "(" + std::to_string(s.p + 1) + ")"; break;
    case SubgroupKind::one_param_unipotent:
        out += "(" + std::to_string(s.i + 1) + "," + std::to_string(s.j + 1) + ")";
        break;
    case SubgroupKind::product: {
        out += "(";
        for (std::size_t f = 0; f < s.parts.size(); ++f) {
            if (f) out += ",";
            out += describe(build_type_a(rs.factors[f]), s.parts[f]);
        }
        out += ")";
        break;
    }
    default: break;
    }
    if (s.conjugator) out += " conjugated";
    return out;
}

void validate(const RootSystem& rs, const SubgroupSpec& s) {
    switch (s.kind) {
    case SubgroupKind::full_unipotent_radical:
    case SubgroupKind::levi_semisimple_nc:
        if (s.I & ~full_subset(rs.rank)) throw InputError("root subset out of range");
        break;
    case SubgroupKind::embedded_sl2:
        if (s.p < 0 || s.p + 1 >= rs.dim || factor_of(rs, s.p) != factor_of(rs, s.p + 1))
            throw InputError("embedded_sl2 position out of range");
        break;
    case SubgroupKind::one_param_unipotent:
        if (s.i < 0 || s.j < 0 || s.i >= rs.dim || s.j >= rs.dim || s.i >= s.j ||
            factor_of(rs, s.i) != factor_of(rs, s.j))
            throw InputError("one_param_unipotent needs i < j inside one factor");
        break;
    case SubgroupKind::product:
        if (s.parts.size() != rs.factors.size()) throw InputError("product needs one part per factor");
        for (std::size_t f = 0; f < s.parts.size(); ++f) {
            if (s.parts[f].kind == SubgroupKind::product) throw InputError("nested product");
            validate(build_type_a(rs.factors[f]), s.parts[f]);
        }
        break;
    default: break;
    }
    if (s.conjugator) {
        if (s.conjugator->rows() != rs.dim || s.conjugator->cols() != rs.dim)
            throw InputError("conjugator has the wrong size");
        for (std::size_t f = 0; f < rs.factors.size(); ++f) {
            int lo = rs.offset[f], n = rs.factors[f];
            if (det(IMat(s.conjugator->block(lo, lo, n, n))) != 1) throw InputError("conjugator is not in Gamma");
        }
        for (int i = 0; i < rs.dim; ++i)
            for (int j = 0; j < rs.dim; ++j)
                if (factor_of(rs, i) != factor_of(rs, j) && (*s.conjugator)(i, j) != 0)
                    throw InputError("conjugator must be block diagonal");
    }
}

QMat to_qmat(const IMat& m) {
    QMat q(m.rows(), QVec(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) q[i][j] = m(i, j);
    return q;
}

QMat mat_mul(const QMat& a, const QMat& b) {
    QMat c(a.size(), QVec(b[0].size(), Q(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

std::vector<QMat> base_generators(const RootSystem& rs, const SubgroupSpec& s) {
    std::vector<QMat> gens;
    const int n = rs.dim;
    switch (s.kind) {
    case SubgroupKind::trivial: break;
    case SubgroupKind::full_unipotent_radical:
        for (auto [i, j] : nilradical_positions(rs, s.I)) gens.push_back(unit(n, i, j));
        break;
    case SubgroupKind::levi_semisimple_nc:
        for (const auto& b : blocks(rs, s.I))
            if (b.size() > 1) append_sl_block(gens, n, b);
        break;
    case SubgroupKind::embedded_sl2: append_sl_block(gens, n, {s.p, s.p + 1}); break;
    case SubgroupKind::one_param_unipotent: gens.push_back(unit(n, s.i, s.j)); break;
    case SubgroupKind::full_group:
        for (std::size_t f = 0; f < rs.factors.size(); ++f) {
            std::vector<int> b;
            for (int i = 0; i < rs.factors[f]; ++i) b.push_back(rs.offset[f] + i);
            append_sl_block(gens, n, b);
        }
        break;
    case SubgroupKind::product:
        for (std::size_t f = 0; f < s.parts.size(); ++f) {
            RootSystem sub = build_type_a(rs.factors[f]);
            int lo = rs.offset[f];
            for (const QMat& x : lie_generators(sub, s.parts[f])) {
                QMat big = zero_qmat(n);
                for (std::size_t i = 0; i < x.size(); ++i)
                    for (std::size_t j = 0; j < x.size(); ++j) big[lo + i][lo + j] = x[i][j];
                gens.push_back(big);
            }
        }
        break;
    }
    return gens;
}

std::vector<QMat> lie_generators(const RootSystem& rs, const SubgroupSpec& s) {
    std::vector<QMat> gens = base_generators(rs, s);
    if (!s.conjugator) return gens;
    IMat inv = adjugate_inverse(*s.conjugator);
    for (QMat& x : gens) x = conjugate(x, *s.conjugator, inv);
    return gens;
}

bool lie_in_parabolic(const RootSystem& rs, const std::vector<QMat>& gens, Subset I, const std::optional<IMat>& gamma) {
    auto bi = block_index(rs, I);
    std::optional<IMat> inv;
    if (gamma) inv = adjugate_inverse(*gamma);
    for (const QMat& g0 : gens) {
        QMat x = gamma ? conjugate(g0, *inv, *gamma) : g0;
        for (int i = 0; i < rs.dim; ++i)
            for (int j = 0; j < rs.dim; ++j)
                if (x[i][j] != 0 && (factor_of(rs, i) != factor_of(rs, j) || bi[i] > bi[j])) return false;
    }
    return true;
}

bool lie_in_levi(const RootSystem& rs, const std::vector<QMat>& gens, Subset I) {
    auto bi = block_index(rs, I);
    for (const QMat& x : gens)
        for (int i = 0; i < rs.dim; ++i)
            for (int j = 0; j < rs.dim; ++j)
                if (x[i][j] != 0 && bi[i] != bi[j]) return false;
    return true;
}

bool sampleable(const RootSystem& rs, const SubgroupSpec& s) {
    switch (s.kind) {
    case SubgroupKind::full_group:
        // SL_2 factors of a product are sampled with the modular domain
        return rs.factors.size() == 1 && rs.factors[0] == 2;
    case SubgroupKind::levi_semisimple_nc:
        for (const auto& b : blocks(rs, s.I))
            if (b.size() > 2) return false;
        return true;
    case SubgroupKind::product:
        for (std::size_t f = 0; f < s.parts.size(); ++f)
            if (!sampleable(build_type_a(rs.factors[f]), s.parts[f])) return false;
        return true;
    default: return true;
    }
}

double truncation_loss(const RootSystem& rs, const SubgroupSpec& s, double ycap) {
    // each truncated SL_2 factor loses 3/(pi Y) of its mass; report the union bound
    int factors = 0;
    switch (s.kind) {
    case SubgroupKind::embedded_sl2: factors = 1; break;
    case SubgroupKind::full_group: factors = 1; break;
    case SubgroupKind::levi_semisimple_nc:
        for (const auto& b : blocks(rs, s.I)) factors += b.size() == 2;
        break;
    case SubgroupKind::product: {
        double sum = 0;
        for (std::size_t f = 0; f < s.parts.size(); ++f)
            sum += truncation_loss(build_type_a(rs.factors[f]), s.parts[f], ycap);
        return sum;
    }
    default: break;
    }
    return factors * 3.0 / (std::numbers::pi * ycap);
}

Mat sample_element(const RootSystem& rs, const SubgroupSpec& s, std::mt19937_64& rng, double ycap) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Mat h = Mat::Identity(rs.dim, rs.dim);
    auto put_sl2 = [&](int p) { h.block(p, p, 2, 2) = sample_sl2(rng, ycap); };
    switch (s.kind) {
    case SubgroupKind::trivial: break;
    case SubgroupKind::full_unipotent_radical:
        for (auto [i, j] : nilradical_positions(rs, s.I)) h(i, j) = uni(rng);
        break;
    case SubgroupKind::levi_semisimple_nc:
        for (const auto& b : blocks(rs, s.I)) {
            if (b.size() > 2) throw InputError("no sampler for Levi blocks larger than 2");
            if (b.size() == 2) put_sl2(b[0]);
        }
        break;
    case SubgroupKind::embedded_sl2: put_sl2(s.p); break;
    case SubgroupKind::one_param_unipotent: h(s.i, s.j) = uni(rng); break;
    case SubgroupKind::full_group:
        if (!sampleable(rs, s)) throw InputError("no sampler for the full group");
        put_sl2(0);
        break;
    case SubgroupKind::product:
        for (std::size_t f = 0; f < s.parts.size(); ++f) {
            int lo = rs.offset[f], n = rs.factors[f];
            h.block(lo, lo, n, n) = sample_element(build_type_a(n), s.parts[f], rng, ycap);
        }
        break;
    }
    if (s.conjugator) h = to_mat(*s.conjugator) * h * to_mat(adjugate_inverse(*s.conjugator));
    return h;
}

std::vector<Mat> sample_subgroup(const RootSystem& rs, const SubgroupSpec& s, std::size_t count, std::uint64_t seed,
                                 double ycap) {
    if (count < 1) throw InputError("sample count must be >= 1");
    std::vector<Mat> out;
    out.reserve(count);
    for (std::size_t c = 0; c * kChunk < count; ++c) {
        std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(c)};
        std::mt19937_64 rng(seq);
        for (std::size_t i = c * kChunk; i < std::min(count, (c + 1) * kChunk); ++i)
            out.push_back(sample_element(rs, s, rng, ycap));
    }
    return out;
}

std::vector<Mat> pushforward(const std::vector<Mat>& samples, const Mat& g) {
    std::vector<Mat> out;
    out.reserve(samples.size());
    for (const Mat& h : samples) out.push_back(h * g);
    return out;
}

PointRecord record_point(const RootSystem& rs, const Mat& x) {
    ReducedPoint rp = reduce(rs, x);
    PointRecord p;
    p.gamma = rp.gamma;
    int nu = 0;
    for (int n : rs.factors) nu += n * (n - 1) / 2;
    p.u.resize(nu);
    int t = 0;
    for (std::size_t f = 0; f < rs.factors.size(); ++f)
        for (int i = 0; i < rs.factors[f]; ++i)
            for (int j = i + 1; j < rs.factors[f]; ++j) p.u(t++) = rp.iw.n(rs.offset[f] + i, rs.offset[f] + j);
    p.loga = rp.iw.a.diagonal().array().log();
    p.logroot = log_root_values(rs, rp.iw.a);
    return p;
}

EmpiricalMeasure sample_pushforward(const RootSystem& rs, const SubgroupSpec& s, const Mat& g, const SampleConfig& cfg) {
    if (cfg.count < 1) throw InputError("sample count must be >= 1");
    if (!sampleable(rs, s)) throw InputError("subgroup " + describe(rs, s) + " has no sampler");
    EmpiricalMeasure m;
    m.seed = cfg.seed;
    m.truncation_loss = truncation_loss(rs, s, cfg.ycap);
    m.points.resize(cfg.count);
    const std::size_t chunks = (cfg.count + kChunk - 1) / kChunk;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        try {
            for (std::size_t c; (c = next.fetch_add(1)) < chunks;) {
                std::seed_seq seq{std::uint32_t(cfg.seed), std::uint32_t(cfg.seed >> 32), std::uint32_t(c)};
                std::mt19937_64 rng(seq);
                std::size_t end = std::min(cfg.count, (c + 1) * kChunk);
                for (std::size_t i = c * kChunk; i < end; ++i)
                    m.points[i] = record_point(rs, sample_element(rs, s, rng, cfg.ycap) * g);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = chunks;
        }
    };
    int jobs = std::max(1, std::min<int>(cfg.jobs, int(chunks)));
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return m;
}

Subset point_label(const PointRecord& p, double t_esc) {
    const double lt = std::log(t_esc);
    Subset I = 0;
    for (int k = 0; k < p.logroot.size(); ++k)
        if (p.logroot(k) <= lt) I = with(I, k);
    return I;
}

double BoundaryHistogram::at(Subset I) const {
    auto it = mass.find(I);
    return it == mass.end() ? 0.0 : it->second;
}

Subset BoundaryHistogram::argmax() const {
    Subset best = 0;
    double m = -1;
    for (auto [I, v] : mass)
        if (v > m) {
            m = v;
            best = I;
        }
    return best;
}

BoundaryHistogram boundary_histogram(const EmpiricalMeasure& m, double t_esc) {
    if (!(t_esc > 2.0 / std::sqrt(3.0))) throw InputError("T_esc must exceed 2/sqrt(3)");
    BoundaryHistogram h;
    h.t_esc = t_esc;
    h.count = m.points.size();
    std::map<Subset, std::size_t> counts;
    for (const auto& p : m.points) ++counts[point_label(p, t_esc)];
    for (auto [I, c] : counts) h.mass[I] = double(c) / double(h.count);
    return h;
}

std::vector<double> coordinates(const PointRecord& p) {
    std::vector<double> c(p.u.data(), p.u.data() + p.u.size());
    c.insert(c.end(), p.logroot.data(), p.logroot.data() + p.logroot.size());
    return c;
}

double window_mass(const EmpiricalMeasure& m, const Box& box) {
    if (m.points.empty()) return 0.0;
    std::size_t inside = 0;
    for (const auto& p : m.points) {
        auto c = coordinates(p);
        bool ok = true;
        for (std::size_t t = 0; t < c.size() && ok; ++t) {
            if (t < box.lo.size() && c[t] < box.lo[t]) ok = false;
            if (t < box.hi.size() && c[t] > box.hi[t]) ok = false;
        }
        inside += ok;
    }
    return double(inside) / double(m.points.size());
}

std::string points_tsv(const EmpiricalMeasure& m) {
    std::ostringstream os;
    if (m.points.empty()) return "";
    const auto& p0 = m.points[0];
    int n = int(p0.gamma.rows());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) os << "gamma_" << i + 1 << j + 1 << '\t';
    for (int t = 0; t < p0.u.size(); ++t) os << "u" << t + 1 << '\t';
    for (int t = 0; t < p0.loga.size(); ++t) os << "loga" << t + 1 << (t + 1 < p0.loga.size() ? "\t" : "\n");
    os << std::setprecision(17);
    for (const auto& p : m.points) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) os << p.gamma(i, j) << '\t';
        for (int t = 0; t < p.u.size(); ++t) os << p.u(t) << '\t';
        for (int t = 0; t < p.loga.size(); ++t) os << p.loga(t) << (t + 1 < p.loga.size() ? "\t" : "\n");
    }
    return os.str();
}

}  // namespace sat
