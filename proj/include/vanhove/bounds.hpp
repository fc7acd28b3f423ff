// bounds.hpp - simplex moments, xi constants, K_n bound constants, gapped permutations

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vanhove/model.hpp"
#include "vanhove/presets.hpp"

namespace vanhove {

struct Kernel {
    std::string name;
    std::function<double(double)> f;

    double operator()(double s) const { return f(s); }
    // s -> g(-s)
    Kernel reflect() const;
};

Kernel kernel_by_name(const std::string& name, double scale = 1.0);
// "one", "zero", "exp" = exp(-|s|/scale), "exp_right" = exp(-s/scale) for s >= 0 else 0,
// "inverse_square" = (1 + |s|/scale)^-2
std::vector<std::string> kernel_names();

// int_R |g(s)| (1 + |s|)^eps ds; eps = 0 gives the L1 norm.
double weighted_l1_norm(const Kernel& g, double eps);

// int_0^t g(s) s^a / a! (t - s)^b / b! ds with a = k-i-1, b = m-k+i+1.
double simplex_moment(const Kernel& g, int m, int k, int i, double t);
// Iterated Gauss-Legendre over the simplex of dimension m + 1 (m <= 4) of g(z_k - z_i), z_0 = 0.
double simplex_moment_bruteforce(const Kernel& g, int m, int k, int i, double t, int nodes = 16);

struct MonteCarloEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
};
MonteCarloEstimate simplex_moment_mc(const Kernel& g, int m, int k, int i, double t, std::size_t samples,
                                     std::uint64_t seed);

// One candidate of the xi maximum for gap a = k-i-1 >= 1, b = m - a, with 0^0 = 1.
double xi_candidate(int m, int k, int i, double eps);
double xi_eps(int m, double eps);
// max over s in [0, t] of s^{a-eps} (t-s)^b by Brent minimization, endpoints included.
double xi_numeric_max(int a, int b, double eps, double t);
// (a-eps)^{a-eps} b^b t^{m-eps} / (m-eps)^{m-eps}
double xi_closed_max(int a, int b, double eps, double t);

struct EstimateCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass() const { return lhs <= rhs; }
};

// lhs = simplex moment, rhs = |g|_{1,eps} xi_m t^{m-eps}; rejects k = i + 1.
EstimateCheck eps_estimate_check(const Kernel& g, int m, int k, int i, double t, double eps);

struct ClusteringData {
    double C = 0.0;
    Kernel f;
    double epsilon = 0.5;

    ClusteringData(double C, Kernel f, double epsilon);
    double l1() const { return weighted_l1_norm(f, 0.0); }
    double l1_eps() const { return weighted_l1_norm(f, epsilon); }
};

ClusteringData clustering_from(const CertificateSpec& spec);

// log c_n with c_n = (2C|W|)^{n+2} / [n/2]! |f|_1^{[(n+1)/2]+1}
double log_c_n(const ClusteringData& cd, double W_norm, int n);
double c_n(const ClusteringData& cd, double W_norm, int n);
// d_m = (2C|W|)^{2m+2} / m! (2m+2)! |f|_{1,eps} xi_m
double log_d_m(const ClusteringData& cd, double W_norm, int m);
double d_m(const ClusteringData& cd, double W_norm, int m);
// c_{n+2} s^{n+2} t / (c_n s^n)
double c_ratio(const ClusteringData& cd, double W_norm, int n, double s, double t);
// power of lambda left in lambda^n c_n (tau/lambda^2)^{[n/2]}
int lambda_exponent(int n);

// Permutations p of {0..n+1} with |p(1) - p(0)| >= 2; full list for n <= 7.
std::vector<std::vector<int>> enumerate_gapped(int n);
// Count by enumerating the first two slots; valid for any n with (n+2)! in range.
std::uint64_t gapped_count(int n);

struct BoundRow {
    int n = 0;
    double t = 0.0;
    std::string bound;  // "c_n" or "d_m"
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

// Probe norm of brute-force K_n(t) against c_n t^{[n/2]} (and d_m t^{m-eps} for n = 2m).
std::vector<BoundRow> verify_kn_bound(const SystemBathModel& model, const ClusteringData& cd, int n,
                                      const std::vector<double>& t_grid, int grid_order = 12);

}  // namespace vanhove
