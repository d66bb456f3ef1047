// Exact limit-component classifiers and the truncated delta quantity.
#pragma once

#include "measures.hpp"
#include "surd.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace sat {

// The input lies outside the case analysis as encoded here.
struct NotCovered : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using SurdMat = std::vector<std::vector<Surd>>;

SurdMat identity_surd(int n);
Mat to_mat(const SurdMat& s);

// g_n = gamma * s * exp(n v + b), with gamma the subgroup's conjugator; H fixed.
struct SequenceSpec {
    SubgroupSpec subgroup;
    QVec direction;    // v, zero sum per factor
    SurdMat offset;    // s, upper unipotent; empty means identity
    QVec log_offset;   // b, zero sum per factor; empty means zero
    std::vector<int> indices;
};

void validate(const RootSystem& rs, const SequenceSpec& seq);
Mat sequence_element(const RootSystem& rs, const SequenceSpec& seq, int n);

enum class SupportKind { interior, boundary_homogeneous, dirac_point };
std::string support_name(SupportKind k);

struct LimitDescriptor {
    Subset label = 0;   // the predicted P_I up to Gamma-conjugacy; full set = interior
    SupportKind support = SupportKind::interior;
    bool label_from_data = false;   // label left to the empirical argmax
    std::optional<IMat> conjugator;
    std::vector<std::string> trace;
};

// ---- delta and containment ----

struct DeltaResult {
    double value = INFINITY;
    bool truncated = false;
    int alpha = -1;
    IMat witness;
    std::uint64_t visited = 0;
};

// min over enumerated gamma and alpha with Lie(H) in gamma P_alpha gamma^-1 of d_alpha(g^-1 gamma),
// P_alpha the maximal parabolic with Levi roots Delta minus alpha. Simple factors only.
DeltaResult delta_truncated(const RootSystem& rs, const SubgroupSpec& spec, const Mat& g, int height,
                            std::uint64_t budget = 50'000'000);

// Standard parabolics gamma P_I gamma^-1 containing H (gamma = the spec's conjugator).
std::vector<ParabolicIndex> parabolics_containing(const RootSystem& rs, const SubgroupSpec& spec);

// ---- unipotent radical translates ----

// <v^I, chi_alpha> <= 0 for all alpha, v^I the Levi component of v.
bool unip_bounded(const RootSystem& rs, const QVec& v, Subset I);

struct UnipResult {
    Subset I = 0;
    std::vector<std::pair<int, Q>> certificate;   // (alpha, <v_I, alpha>) for alpha outside I
};
UnipResult unip_limit_I(const RootSystem& rs, const QVec& v);

// ---- translates inside A_I ----

struct MaSplit {
    ChamberFace face;
    Subset r_inf = 0, r_0 = 0;
    QVec v_inf, v_0;   // growing part of v, bounded part carried by b
    Subset label = 0;  // J union R_0
};
// a_n = exp(n v + b) with v, b in Lie(A_I).
MaSplit ma_split(const RootSystem& rs, const QVec& v, const QVec& b, Subset I);
// <w coweight_alpha, beta> = 0 for alpha outside J and beta in I
bool ma_torus_inclusion(const RootSystem& rs, const ChamberFace& f, Subset I);

// ---- classifiers ----

// Intermediate data of the SL_3 tree, in the frame where the escaping maximal parabolic has
// Levi roots {alpha_1}.
struct Sl3LimitData {
    int alpha_rate = 0;        // sign of the growth rate of alpha_2(b_n a_n)
    bool h_in_n_beta = false;  // H inside the radical with entries (1,2), (1,3)
    enum class Offset { zero, irrational, rational } s23 = Offset::zero;
    int beta_rate = 0;         // sign of the rate of beta(c_n alpha_n) when s23 is rational
    bool h_central = false;    // H inside the one-parameter group at (1,3)
};

LimitDescriptor sl3_tree(const Sl3LimitData& d);
std::vector<std::string> sl3_branch_slugs();   // the eight terminal branches, tree order

LimitDescriptor sl3_classify(const RootSystem& rs, const SequenceSpec& seq);
LimitDescriptor sl2r_classify(const RootSystem& rs, const SequenceSpec& seq);
LimitDescriptor unip_classify(const RootSystem& rs, const SequenceSpec& seq);
LimitDescriptor levi_translate_classify(const RootSystem& rs, const SequenceSpec& seq);
LimitDescriptor ma_classify(const RootSystem& rs, const SequenceSpec& seq);

// Evaluated root values against the closed forms for b_n a_n = exp(n v) in SL_3 with
// x = exp(n lx), y = exp(n ly): beta(alpha_n) = (yx)^{3/2}, and after the Weyl flip
// alpha -> alpha(beta_n)^{-1}, beta -> y x^3. Returns the worst relative error.
double sl3_growth_law_error(const QVec& v, int n);

}  // namespace sat
