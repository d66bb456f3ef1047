// Catalog of subgroups of type H, fundamental-domain samplers, and empirical boundary statistics.
#pragma once

#include "reduction.hpp"

#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace sat {

enum class SubgroupKind {
    trivial,
    full_unipotent_radical,   // N_I, unipotent radical of the standard P_I
    levi_semisimple_nc,       // semisimple part of the Levi of P_I (I = Levi roots)
    embedded_sl2,             // SL_2 on coordinates p, p+1
    one_param_unipotent,      // exp(t E_ij)
    full_group,               // G itself; not sampleable
    product,                  // one part per simple factor
};

struct SubgroupSpec {
    SubgroupKind kind = SubgroupKind::trivial;
    Subset I = 0;
    int p = 0;
    int i = 0, j = 0;
    std::vector<SubgroupSpec> parts;
    std::optional<IMat> conjugator;   // H = gamma H0 gamma^-1
};

std::string kind_name(SubgroupKind k);
std::string describe(const RootSystem& rs, const SubgroupSpec& s);
// Structural validity for rs; throws InputError.
void validate(const RootSystem& rs, const SubgroupSpec& s);

// Exact Lie algebra generators of H0 (conjugator not applied) and of H.
std::vector<QMat> base_generators(const RootSystem& rs, const SubgroupSpec& s);
std::vector<QMat> lie_generators(const RootSystem& rs, const SubgroupSpec& s);

QMat to_qmat(const IMat& m);
QMat mat_mul(const QMat& a, const QMat& b);
// Ad(gamma^-1) X in p_I for every generator X, i.e. Lie(H) inside gamma P_I gamma^-1.
bool lie_in_parabolic(const RootSystem& rs, const std::vector<QMat>& gens, Subset I,
                      const std::optional<IMat>& gamma = std::nullopt);
// Lie(H) inside the Levi m_I (block diagonal).
bool lie_in_levi(const RootSystem& rs, const std::vector<QMat>& gens, Subset I);

constexpr double kDefaultYCap = 1e4;
constexpr std::size_t kChunk = 4096;

bool sampleable(const RootSystem& rs, const SubgroupSpec& s);
// Truncated mass fraction lost by the SL_2 samplers (0 for unipotent kinds).
double truncation_loss(const RootSystem& rs, const SubgroupSpec& s, double ycap);

// One Haar sample from a fundamental domain of (Gamma cap H) \ H.
Mat sample_element(const RootSystem& rs, const SubgroupSpec& s, std::mt19937_64& rng, double ycap = kDefaultYCap);
std::vector<Mat> sample_subgroup(const RootSystem& rs, const SubgroupSpec& s, std::size_t count, std::uint64_t seed,
                                 double ycap = kDefaultYCap);
std::vector<Mat> pushforward(const std::vector<Mat>& samples, const Mat& g);

// Reduced coordinates of one point of Gamma \ G.
struct PointRecord {
    IMat gamma;
    Vec u;         // upper-triangular entries of n, per factor, row-major
    Vec loga;      // log of the Iwasawa a-part
    Vec logroot;   // log alpha_k(a)
};

PointRecord record_point(const RootSystem& rs, const Mat& x);

struct SampleConfig {
    std::size_t count = 10000;
    std::uint64_t seed = 1;
    int jobs = 1;
    double ycap = kDefaultYCap;
};

struct EmpiricalMeasure {
    std::vector<PointRecord> points;
    std::uint64_t seed = 0;
    double truncation_loss = 0;
};

// Samples H, pushes by g, reduces. Chunked RNG streams make the result independent of jobs.
EmpiricalMeasure sample_pushforward(const RootSystem& rs, const SubgroupSpec& s, const Mat& g, const SampleConfig& cfg);

// Label of a point: {alpha : alpha(a) <= T}; the full set means interior.
Subset point_label(const PointRecord& p, double t_esc);

struct BoundaryHistogram {
    std::map<Subset, double> mass;
    double t_esc = 1e3;
    std::size_t count = 0;
    double at(Subset I) const;
    Subset argmax() const;
};

BoundaryHistogram boundary_histogram(const EmpiricalMeasure& m, double t_esc);

// Box over the concatenated coordinates (u..., logroot...); empty bounds mean unbounded.
struct Box {
    std::vector<double> lo, hi;
};
std::vector<double> coordinates(const PointRecord& p);
double window_mass(const EmpiricalMeasure& m, const Box& box);

// Columnar dump: gamma entries, u coordinates, log-a coordinates.
std::string points_tsv(const EmpiricalMeasure& m);

}  // namespace sat
