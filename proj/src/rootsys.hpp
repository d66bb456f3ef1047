// Exact type-A root systems, Weyl groups and the chamber complex.
#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

// Boost 1.74 defines int == rational through the reversed comparison, which C++20 rewrites
// back into itself. Exact-match overloads take precedence.
namespace boost {
inline bool operator==(const rational<long long>& a, int b) { return a == rational<long long>(b); }
inline bool operator==(int a, const rational<long long>& b) { return b == rational<long long>(a); }
inline bool operator!=(const rational<long long>& a, int b) { return !(a == rational<long long>(b)); }
inline bool operator!=(int a, const rational<long long>& b) { return !(b == rational<long long>(a)); }
}  // namespace boost

namespace sat {

using Q = boost::rational<long long>;
using QVec = std::vector<Q>;
using QMat = std::vector<QVec>;

// Subsets of the simple roots are bitmasks over root indices.
using Subset = std::uint32_t;

inline bool has(Subset s, int k) { return (s >> k) & 1u; }
inline Subset with(Subset s, int k) { return s | (Subset(1) << k); }
inline Subset full_subset(int rank) { return rank >= 32 ? ~Subset(0) : (Subset(1) << rank) - 1; }
int popcount(Subset s);
std::string subset_name(Subset s, int rank);   // "{1,3}" with 1-based labels

struct RootSystem {
    std::vector<int> factors;   // SL_n sizes, one per simple factor
    int dim = 0;                // total number of diagonal coordinates
    int rank = 0;
    // simple root k is e_first - e_second in diagonal coordinates
    std::vector<std::pair<int, int>> roots;
    std::vector<int> root_factor;
    std::vector<int> offset;    // first coordinate of each factor
    QMat cartan;
    QMat pairing;               // trace form on the root lattice, in the simple-root basis
};

RootSystem build_type_a(int n);
RootSystem build_product(const std::vector<int>& factors);

// Exact linear algebra helpers.
QMat inverse(const QMat& m);             // throws on singular input
QVec mat_vec(const QMat& m, const QVec& v);
QMat transpose(const QMat& m);
Q dot(const QVec& a, const QVec& b);
bool is_zero(const QVec& v);

Q pair(const RootSystem& rs, const QVec& x, const QVec& y);   // both in the simple-root basis
bool positive_definite(const QMat& m);                         // leading principal minors

// Quasi-fundamental weights chi_k in the simple-root basis; pair(chi_k, alpha_j) = d[k] delta_kj.
struct Weights {
    std::vector<QVec> chi;
    QVec d;
};
Weights quasi_fundamental_weights(const RootSystem& rs);

// Orthogonal projection onto span(I) (pi1) and its complement (pi2), simple-root basis.
QVec project_span(const RootSystem& rs, const QVec& x, Subset I);
QVec project_perp(const RootSystem& rs, const QVec& x, Subset I);
// pi1(chi_k) for k in I, in the order of increasing k.
std::vector<QVec> restrict_weights(const RootSystem& rs, Subset I);

// ---- V = Lie(A) in diagonal log coordinates (length dim, zero sum per factor) ----

struct WeylElement {
    std::vector<int> perm;   // perm[i] = w(i), block preserving
    bool operator==(const WeylElement& o) const { return perm == o.perm; }
    bool operator<(const WeylElement& o) const { return perm < o.perm; }
};

WeylElement identity_weyl(const RootSystem& rs);
WeylElement compose(const WeylElement& a, const WeylElement& b);   // a after b
WeylElement inverse(const WeylElement& w);
bool valid_weyl(const RootSystem& rs, const WeylElement& w);
std::vector<WeylElement> weyl_group(const RootSystem& rs);
WeylElement longest_element(const RootSystem& rs);
QVec act(const WeylElement& w, const QVec& v);                   // (w v)[w(i)] = v[i]

Q root_pairing(const RootSystem& rs, const QVec& v, int k);              // <v, alpha_k>
Q root_pairing(const RootSystem& rs, const QVec& v, const WeylElement& w, int k);  // <v, w alpha_k>
// <v, chi_k> using the quasi-fundamental weights
Q weight_pairing(const RootSystem& rs, const Weights& W, const QVec& v, int k);
bool in_lie_a(const RootSystem& rs, const QVec& v);

// Coweight basis of V dual to the simple roots.
QVec coweight(const RootSystem& rs, int k);
// Trace-orthogonal split v = v_I + v^I with v^I in the span of the coroots of I.
QVec levi_component(const RootSystem& rs, const QVec& v, Subset I);   // v^I
QVec center_component(const RootSystem& rs, const QVec& v, Subset I); // v_I

struct ChamberFace {
    WeylElement w;
    Subset I = 0;
    bool operator==(const ChamberFace& o) const { return I == o.I && w == o.w; }
    bool operator<(const ChamberFace& o) const { return I != o.I ? I < o.I : w < o.w; }
};

ChamberFace canonical(const RootSystem& rs, const ChamberFace& f);
bool in_face(const RootSystem& rs, const QVec& v, const ChamberFace& f);
ChamberFace locate_chamber(const RootSystem& rs, const QVec& v);
ChamberFace act(const RootSystem& rs, const WeylElement& w, const ChamberFace& f);
std::vector<ChamberFace> all_faces(const RootSystem& rs);
int face_dimension(const RootSystem& rs, const ChamberFace& f);
std::vector<ChamberFace> levi_sphere(const RootSystem& rs, Subset I);

// Block partition of the coordinates induced by I (blocks of a standard flag).
std::vector<std::vector<int>> blocks(const RootSystem& rs, Subset I);

std::string to_string(const Q& q);
std::string to_string(const QVec& v);
std::string to_string(const WeylElement& w);

}  // namespace sat
