#include "vanhove/opcore.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "vanhove/error.hpp"

namespace vanhove {

namespace {

Index perfect_sqrt(Index n) {
    auto r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
    if (r * r != n) fail(ErrorKind::Dimension, "length " + std::to_string(n) + " is not a perfect square");
    return r;
}

void require_finite(const Mat& A) {
    if (!A.allFinite()) fail(ErrorKind::Numeric, "matrix has non-finite entries");
}

}  // namespace

Operator::Operator(Mat mat, bool is_hermitian) : m(std::move(mat)), hermitian(is_hermitian) {
    require(m.rows() >= 1 && m.rows() == m.cols(), ErrorKind::Dimension, "operator must be square with dim >= 1");
    if (hermitian && hermiticity_residual(m) > 1e-12)
        fail(ErrorKind::Precondition, "operator flagged Hermitian but |A - A^dag| = " +
                                          std::to_string(hermiticity_residual(m)));
}

SuperOp::SuperOp(Mat mat) : m(std::move(mat)) {
    require(m.rows() == m.cols(), ErrorKind::Dimension, "superoperator matrix must be square");
    d = perfect_sqrt(m.rows());
}

Mat SuperOp::apply(const Mat& X) const {
    require(X.rows() == d && X.cols() == d, ErrorKind::Dimension, "operand dimension mismatch");
    return devectorize(m * vectorize(X));
}

SuperOp SuperOp::operator*(const SuperOp& o) const {
    require(d == o.d, ErrorKind::Dimension, "superoperator dimension mismatch");
    return SuperOp(m * o.m);
}

SuperOp SuperOp::operator+(const SuperOp& o) const {
    require(d == o.d, ErrorKind::Dimension, "superoperator dimension mismatch");
    return SuperOp(m + o.m);
}

SuperOp SuperOp::operator-(const SuperOp& o) const {
    require(d == o.d, ErrorKind::Dimension, "superoperator dimension mismatch");
    return SuperOp(m - o.m);
}

SuperOp SuperOp::operator*(cplx c) const { return SuperOp(m * c); }

SuperOp SuperOp::identity(Index d) { return SuperOp(Mat::Identity(d * d, d * d)); }
SuperOp SuperOp::zero(Index d) { return SuperOp(Mat::Zero(d * d, d * d)); }

Vec vectorize(const Mat& A) { return Eigen::Map<const Vec>(A.data(), A.size()); }

Mat devectorize(const Vec& v) {
    Index n = perfect_sqrt(v.size());
    return Eigen::Map<const Mat>(v.data(), n, n);
}

Mat kron(const Mat& A, const Mat& B) { return Eigen::kroneckerProduct(A, B).eval(); }

Mat mat_exp(const Mat& A, double t) {
    require(A.rows() == A.cols(), ErrorKind::Dimension, "mat_exp needs a square matrix");
    require_finite(A);
    require(std::isfinite(t), ErrorKind::Numeric, "mat_exp: non-finite t");
    Mat tA = A * cplx(t);
    return tA.exp();
}

SuperOp mat_exp(const SuperOp& S, double t) { return SuperOp(mat_exp(S.m, t)); }

Mat exp_hermitian(const Mat& H, cplx c) {
    require_finite(H);
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    const Mat& U = es.eigenvectors();
    Vec ev = (es.eigenvalues().cast<cplx>() * c).array().exp();
    return U * ev.asDiagonal() * U.adjoint();
}

Mat exp_hermitian(const Operator& H, cplx c) {
    if (!H.hermitian) fail(ErrorKind::Precondition, "exp_hermitian needs an operator flagged Hermitian");
    return exp_hermitian(H.m, c);
}

Mat partial_trace_R(const Mat& rho, Index dS, Index dR) {
    require(dS >= 1 && dR >= 1 && rho.rows() == dS * dR && rho.cols() == dS * dR, ErrorKind::Dimension,
            "partial_trace_R: dimension mismatch");
    Mat out = Mat::Zero(dS, dS);
    for (Index b = 0; b < dS; ++b)
        for (Index a = 0; a < dS; ++a) {
            cplx s = 0.0;
            for (Index r = 0; r < dR; ++r) s += rho(a * dR + r, b * dR + r);
            out(a, b) = s;
        }
    return out;
}

SuperOp left_mult(const Mat& A) {
    return SuperOp(kron(Mat::Identity(A.rows(), A.rows()), A));
}

SuperOp right_mult(const Mat& A) {
    return SuperOp(kron(A.transpose(), Mat::Identity(A.rows(), A.rows())));
}

SuperOp commutator_superop(const Mat& A) {
    Mat id = Mat::Identity(A.rows(), A.rows());
    return SuperOp(kron(id, A) - kron(A.transpose(), id));
}

double trace_norm(const Mat& A) {
    if (A.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(A);
    return svd.singularValues().sum();
}

double spectral_norm(const Mat& A) {
    if (A.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(A);
    return svd.singularValues()(0);
}

double max_abs(const Mat& A) { return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff(); }

double hermiticity_residual(const Mat& A) { return max_abs(A - A.adjoint()); }

double superop_norm_estimate(const SuperOp& S, const ProbeOptions& opts) {
    const Index d = S.d;
    double best = 0.0;
    for (Index c = 0; c < d * d; ++c) {
        Vec col = S.m.col(c);
        best = std::max(best, trace_norm(devectorize(col)));
    }
    std::mt19937_64 rng(opts.seed);
    for (int p = 0; p < opts.n_probe; ++p) {
        Vec psi = random_unit_vector(d, rng);
        Vec phi = random_unit_vector(d, rng);
        Mat X = psi * phi.adjoint();
        best = std::max(best, trace_norm(S.apply(X)));
    }
    return best;
}

Vec random_unit_vector(Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> N(0.0, 1.0);
    Vec v(d);
    for (Index i = 0; i < d; ++i) {
        double re = N(rng);
        double im = N(rng);
        v(i) = cplx(re, im);
    }
    return v / v.norm();
}

Mat random_matrix(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> N(0.0, 1.0);
    Mat A(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) {
            double re = N(rng);
            double im = N(rng);
            A(i, j) = cplx(re, im);
        }
    return A;
}

Mat random_hermitian(Index d, std::mt19937_64& rng) {
    Mat A = random_matrix(d, d, rng);
    return 0.5 * (A + A.adjoint());
}

Mat random_density(Index d, std::mt19937_64& rng) {
    Mat A = random_matrix(d, d, rng);
    Mat rho = A * A.adjoint();
    return rho / rho.trace();
}

}  // namespace vanhove
