// Reduction of points of Gamma\G into Siegel sets, and bounded enumeration of Gamma.
#pragma once

#include "lingrp.hpp"

#include <cmath>
#include <cstdint>

namespace sat {

using IMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

// Root bounds are kept in two conventions. In ours, escape means alpha(a) -> infinity and a
// reduced point has alpha(a) >= 1/t. Inverting the chamber gives the bound alpha'(a) <= t with
// alpha' = 1/alpha.
struct SiegelSet {
    double t = 2.0 / std::sqrt(3.0);
    double u_bound = 0.5;
    double t_slack = 1e-6;
    double u_slack = 1e-9;
    double root_lower() const { return 1.0 / (t + t_slack); }
};

struct ReducedPoint {
    IMat gamma;
    Mat rep;
    LanglandsParts iw;
};

IMat identity_imat(int n);
Mat to_mat(const IMat& m);
long long det(const IMat& m);
IMat adjugate_inverse(const IMat& m);   // exact inverse of a unimodular matrix

// Gauss reduction of one SL_2 factor: |Re z| <= 1/2 and |z| >= 1 for z = g.i
ReducedPoint reduce_sl2(const Mat& g);
// LLL (delta = 0.99) on the rows of g, then Siegel swaps and size reduction.
ReducedPoint reduce_siegel(const Mat& g);
// Per-factor dispatch for SL_n and products.
ReducedPoint reduce(const RootSystem& rs, const Mat& g);

bool in_siegel(const RootSystem& rs, const Mat& g, const SiegelSet& S = {});
// Both bound conventions on an a-part; they must agree.
bool root_bound_ours(const RootSystem& rs, const Mat& a, const SiegelSet& S);
bool root_bound_inverted(const RootSystem& rs, const Mat& a, const SiegelSet& S);

struct ReductionStats {
    long swaps = 0;
};
ReductionStats& last_reduction_stats();   // thread-local

// All gamma in SL_n(Z) with max |entry| <= height, each once. Visiting more than `budget`
// candidates stops the stream and marks it truncated.
class GammaStream {
public:
    GammaStream(int n, int height, std::uint64_t budget = 50'000'000);
    bool next(IMat& out);
    bool truncated() const { return truncated_; }
    std::uint64_t visited() const { return visited_; }

private:
    int n_, h_;
    std::uint64_t budget_, visited_ = 0;
    bool truncated_ = false, done_ = false, started_ = false;
    std::vector<int> entries_;   // all entries except the last one
    int pending_ = 0;            // when the last cofactor vanishes, every x is a solution
    int next_x_ = 0;
    IMat current_;
    bool advance();
};

}  // namespace sat
