// Numeric kernel for SL_n(R) and products: Iwasawa / Langlands parts, roots, d-functions.
#pragma once

#include "rootsys.hpp"

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sat {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A real matrix in SL_n(R), or a block-diagonal element of a product group.
struct GroupElement {
    Mat m;
};

constexpr double kDetTolerance = 1e-9;
constexpr double kMaxCondition = 1e12;

// Checks |det - 1| per factor; throws InputError otherwise.
GroupElement make_element(const RootSystem& rs, const Mat& m);
// Rescales each factor block by det^{-1/n}; throws InputError on det <= 0.
GroupElement normalize_det(const RootSystem& rs, const Mat& m);

struct ParabolicIndex {
    Subset I = 0;
    std::optional<Mat> conjugator;
    std::vector<int> flag_shape;   // block sizes, all factors concatenated
};

ParabolicIndex standard_parabolic(const RootSystem& rs, Subset I);
bool is_proper(const RootSystem& rs, const ParabolicIndex& P);

struct LanglandsParts {
    Mat n, m, a, k;
};

// g = n a k, n upper unipotent, a positive diagonal, k in SO(n) (per factor).
LanglandsParts iwasawa(const RootSystem& rs, const Mat& g);
// g = n m a k relative to the standard parabolic P_I.
LanglandsParts langlands(const RootSystem& rs, const Mat& g, Subset I);

double condition_number(const Mat& g);

// alpha_k(a) = a_i / a_j for each simple root
Vec root_values(const RootSystem& rs, const Mat& a);
// log alpha_k(a)
Vec log_root_values(const RootSystem& rs, const Mat& a);

// Frobenius-norm volume of Ad(g) applied to a basis of the Lie algebra of N_P.
double d_function(const RootSystem& rs, Subset I, const Mat& g);
// prod over roots of N_P of alpha(a_P(g))^{-1}, from the Langlands a-part
double dalpha_product(const RootSystem& rs, Subset I, const Mat& g);
// |d(g^{-1}) - prod| / d(g^{-1})
double verify_dalpha(const RootSystem& rs, Subset I, const Mat& g);

// Signed permutation matrix in SO(n) per factor with k e_i = +-e_{w(i)}.
Mat weyl_representative(const RootSystem& rs, const WeylElement& w);

Mat exp_diag(const QVec& v, double scale = 1.0);   // diag(exp(scale * v_i))
Mat to_mat(const QMat& q);

double orthogonality_error(const Mat& k);   // max |k k^T - 1|
bool is_upper_unipotent(const Mat& n, double tol);

}  // namespace sat
