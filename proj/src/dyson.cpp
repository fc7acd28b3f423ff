#include "vanhove/dyson.hpp"

#include <cmath>
#include <numbers>

#include "vanhove/error.hpp"
#include "vanhove/parallel.hpp"

namespace vanhove {

namespace {

void require_sorted(const std::vector<double>& z) {
    require(!z.empty(), ErrorKind::Precondition, "time vector must hold z_1..z_{n+1}");
    double prev = 0.0;
    for (double zk : z) {
        require(zk >= prev, ErrorKind::Precondition, "time vector must be nondecreasing from z_0 = 0");
        prev = zk;
    }
}

Mat commute(const Mat& A, const Mat& X) { return A * X - X * A; }

// exp(i t H_S) sigma exp(-i t H_S) as a d_S^2 x d_S^2 matrix
Mat system_rotation(const HeisenbergEvolution& sys, double t) {
    Mat A = sys.propagator(-t);
    return kron(A.conjugate(), A);
}

double frequency_scale(const SystemBathModel& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m.H0(), Eigen::EigenvaluesOnly);
    const double spread = es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
    return spread + 2.0 * std::abs(m.lambda) * spectral_norm(m.W) * spectral_norm(m.V) + 1e-12;
}

}  // namespace

InteractionPicture::InteractionPicture(const SystemBathModel& model)
    : model_(&model), sys_(model.H_S), bath_(model.H_R) {}

Mat dyson_integrand_reduced(const SystemBathModel& m, const std::vector<double>& z) {
    require_sorted(z);
    const Index dS = m.dS(), dR = m.dR();
    InteractionPicture ip(m);
    std::vector<Mat> A;
    A.reserve(z.size() + 1);
    A.push_back(kron(m.W, m.V));
    for (double zk : z) A.push_back(ip.coupling(zk));
    const Mat w = m.omega_R_proj();

    Mat M(dS * dS, dS * dS);
    for (Index b = 0; b < dS; ++b)
        for (Index a = 0; a < dS; ++a) {
            Mat sigma = Mat::Zero(dS, dS);
            sigma(a, b) = 1.0;
            Mat X = commute(A[0], kron(sigma, w));
            for (std::size_t k = 1; k < A.size(); ++k) {
                X -= kron(partial_trace_R(X, dS, dR), w);
                X = commute(A[k], X);
            }
            M.col(a + b * dS) = vectorize(partial_trace_R(X, dS, dR));
        }
    return M;
}

SuperOp dyson_integrand(const SystemBathModel& m, const ProjectionPair& pair, const std::vector<double>& z) {
    return pair.lift(dyson_integrand_reduced(m, z));
}

Mat k_n_bruteforce_reduced(const SystemBathModel& m, int n, const SimplexGrid& grid) {
    require(n >= 0, ErrorKind::Precondition, "n must be >= 0");
    if (n > 3) fail(ErrorKind::Capability, "brute-force K_n is limited to n <= 3");
    require(grid.dim == n + 1, ErrorKind::Precondition, "simplex grid dimension must be n + 1");
    require_valid(m);
    const Index s2 = m.dS() * m.dS();
    return deterministic_sum<Mat>(
        grid.size(),
        [&](std::size_t k) {
            std::vector<double> z(grid.node(k), grid.node(k) + grid.dim);
            return Mat(grid.weights[k] * dyson_integrand_reduced(m, z));
        },
        Mat::Zero(s2, s2));
}

SuperOp k_n_bruteforce(const SystemBathModel& m, const ProjectionPair& pair, int n, double t,
                       const SimplexGrid& grid) {
    require(std::abs(grid.t - t) <= 1e-14 * (1.0 + t), ErrorKind::Precondition, "grid horizon differs from t");
    return pair.lift(k_n_bruteforce_reduced(m, n, grid));
}

Mat u_lambda_reduced(const SystemBathModel& m, double tau) {
    require(m.lambda != 0.0, ErrorKind::Precondition, "u_lambda needs lambda != 0; use gkls_semigroup for the limit");
    require(tau >= 0.0, ErrorKind::Precondition, "tau must be >= 0");
    require_valid(m);
    const Index dS = m.dS(), dR = m.dR();
    const double t = tau / (m.lambda * m.lambda);
    const Mat H = m.H0() + m.lambda * m.H_SR();
    const Mat U = HeisenbergEvolution(H).propagator(t);

    // u_a = U (e_a (x) Omega_R)
    std::vector<Vec> u(dS);
    for (Index a = 0; a < dS; ++a) {
        Vec in = Vec::Zero(dS * dR);
        in.segment(a * dR, dR) = m.omega_R;
        u[a] = U * in;
    }
    Mat M(dS * dS, dS * dS);
    for (Index b = 0; b < dS; ++b)
        for (Index a = 0; a < dS; ++a) {
            Mat red(dS, dS);
            for (Index j = 0; j < dS; ++j)
                for (Index i = 0; i < dS; ++i)
                    red(i, j) = u[b].segment(j * dR, dR).dot(u[a].segment(i * dR, dR));
            M.col(a + b * dS) = vectorize(red);
        }
    return system_rotation(HeisenbergEvolution(m.H_S), t) * M;
}

SuperOp u_lambda(const SystemBathModel& m, const ProjectionPair& pair, double tau) {
    return pair.lift(u_lambda_reduced(m, tau));
}

Mat k_lambda_reduced(const SystemBathModel& m, const ProjectionPair& pair, double tau, int quad_order) {
    require(m.lambda != 0.0, ErrorKind::Precondition, "k_lambda needs lambda != 0");
    require(quad_order >= 2, ErrorKind::Precondition, "quadrature order must be >= 2");
    require(tau >= 0.0, ErrorKind::Precondition, "tau must be >= 0");
    const Index s2 = m.dS() * m.dS();
    if (tau == 0.0) return Mat::Zero(s2, s2);
    const LiouvillianParts lp = liouvillian_parts(m);
    const Mat& Q = pair.Q.m;
    const Mat G = lp.L0.m + cplx(m.lambda) * (Q * lp.LSR.m * Q);
    const Mat B = Q * lp.LSR.m * pair.E;
    const Mat left = lp.LSR.m * Q;

    const double t = tau / (m.lambda * m.lambda);
    const double hmax = std::numbers::pi / frequency_scale(m);
    const int panels = std::max(1, static_cast<int>(std::ceil(t / hmax)));
    const double h = t / panels;
    const Rule r = gauss_legendre(quad_order, 0.0, h);
    const Mat minusIG = -I * G;
    std::vector<Mat> Ex;
    for (double x : r.x) Ex.push_back(mat_exp(minusIG, x));
    const Mat Eh = mat_exp(minusIG, h);
    const HeisenbergEvolution free(m.H0());

    Mat C = B;  // exp(-i p h G) Q L_SR E
    Mat acc = Mat::Zero(s2, s2);
    for (int p = 0; p < panels; ++p) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            const double s = p * h + r.x[j];
            const Mat A = free.propagator(-s);
            const Mat S0 = kron(A.conjugate(), A);
            acc += r.w[j] * (pair.T * (S0 * (left * (Ex[j] * C))));
        }
        C = Eh * C;
    }
    return acc;
}

SuperOp k_lambda(const SystemBathModel& m, const ProjectionPair& pair, double tau, int quad_order) {
    return pair.lift(k_lambda_reduced(m, pair, tau, quad_order));
}

double verify_integral_equation(const SystemBathModel& m0, const ProjectionPair& pair, double tau, double lambda,
                                int quad_order) {
    SystemBathModel m = m0;
    m.lambda = lambda;
    const Index s2 = m.dS() * m.dS();
    const Mat lhs = u_lambda_reduced(m, tau);
    Mat rhs = Mat::Identity(s2, s2);
    if (tau > 0.0) {
        const double l2 = lambda * lambda;
        const double hmax = std::numbers::pi * l2 / frequency_scale(m);
        const int panels = std::max(1, static_cast<int>(std::ceil(tau / hmax)));
        const Rule r = composite_gauss_legendre(quad_order, 0.0, tau, panels);
        const HeisenbergEvolution sys(m.H_S);
        const Mat integral = deterministic_sum<Mat>(
            r.size(),
            [&](std::size_t k) {
                const double u = r.x[k];
                return Mat(r.w[k] * (system_rotation(sys, u / l2) * k_lambda_reduced(m, pair, tau - u, quad_order) *
                                     system_rotation(sys, -u / l2) * u_lambda_reduced(m, u)));
            },
            Mat::Zero(s2, s2));
        rhs -= integral;
    }
    return superop_norm_estimate(SuperOp(Mat(lhs - rhs)));
}

SuperOp k_lambda_series(const SystemBathModel& m0, const ProjectionPair& pair, double tau, double lambda, int N_max,
                        int grid_order) {
    require(lambda != 0.0, ErrorKind::Precondition, "series needs lambda != 0");
    require(N_max >= 0 && N_max <= 3, ErrorKind::Capability, "series truncation is limited to N_max <= 3");
    SystemBathModel m = m0;
    m.lambda = lambda;
    const Index s2 = m.dS() * m.dS();
    if (tau == 0.0) return pair.lift(Mat::Zero(s2, s2));
    const double t = tau / (lambda * lambda);
    Mat sum = k_n_bruteforce_reduced(m, 0, make_simplex_grid(1, t, grid_order));
    cplx coef = 1.0;
    for (int n = 1; n <= N_max; ++n) {
        coef *= -I * lambda;
        sum += coef * k_n_bruteforce_reduced(m, n, make_simplex_grid(n + 1, t, grid_order));
    }
    return pair.lift(sum);
}

}  // namespace vanhove
