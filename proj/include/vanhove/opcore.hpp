// opcore.hpp - dense operators and superoperators (column-stacking convention)

#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace vanhove {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr cplx I{0.0, 1.0};

// Square operator; the hermitian flag is asserted by the caller and checked.
struct Operator {
    Mat m;
    bool hermitian = false;

    Operator() = default;
    Operator(Mat mat, bool is_hermitian = false);
    Index dim() const { return m.rows(); }
};

// Linear map on d x d matrices, vec(S(X)) = m * vec(X) with vec stacking columns.
struct SuperOp {
    Mat m;
    Index d = 0;

    SuperOp() = default;
    explicit SuperOp(Mat mat);

    Mat apply(const Mat& X) const;
    SuperOp operator*(const SuperOp& o) const;
    SuperOp operator+(const SuperOp& o) const;
    SuperOp operator-(const SuperOp& o) const;
    SuperOp operator*(cplx c) const;

    static SuperOp identity(Index d);
    static SuperOp zero(Index d);
};

Vec vectorize(const Mat& A);
Mat devectorize(const Vec& v);

Mat kron(const Mat& A, const Mat& B);

// exp(t*A) by scaling and squaring with Pade approximants.
Mat mat_exp(const Mat& A, double t);
SuperOp mat_exp(const SuperOp& S, double t);
// exp(c*H) for Hermitian H via eigendecomposition.
Mat exp_hermitian(const Mat& H, cplx c);
Mat exp_hermitian(const Operator& H, cplx c);

Mat partial_trace_R(const Mat& rho, Index dS, Index dR);

SuperOp left_mult(const Mat& A);
SuperOp right_mult(const Mat& A);
SuperOp commutator_superop(const Mat& A);

double trace_norm(const Mat& A);
double spectral_norm(const Mat& A);
double max_abs(const Mat& A);
double hermiticity_residual(const Mat& A);

struct ProbeOptions {
    int n_probe = 64;
    std::uint64_t seed = 0;
};

// Lower bound on the trace-norm induced norm: max of |S(X)|_1/|X|_1 over all
// matrix units and n_probe seeded random rank-one operators.
double superop_norm_estimate(const SuperOp& S, const ProbeOptions& opts = {});

Vec random_unit_vector(Index d, std::mt19937_64& rng);
Mat random_matrix(Index rows, Index cols, std::mt19937_64& rng);
Mat random_hermitian(Index d, std::mt19937_64& rng);
Mat random_density(Index d, std::mt19937_64& rng);

}  // namespace vanhove
