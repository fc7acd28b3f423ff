#include "vanhove/davies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vanhove/dyson.hpp"
#include "vanhove/error.hpp"
#include "vanhove/parallel.hpp"
#include "vanhove/quadrature.hpp"

namespace vanhove {

Index DaviesGenerator::dS() const {
    return static_cast<Index>(std::llround(std::sqrt(static_cast<double>(K_reduced.rows()))));
}

namespace {

// Reduced matrix of sigma -> p[W(z), W sigma] - m[W(z), sigma W].
Mat davies_integrand(const Mat& Wz, const Mat& W, cplx p, cplx m) {
    const Index d = W.rows();
    const Mat id = Mat::Identity(d, d);
    return p * (kron(id, Mat(Wz * W)) - kron(Wz.transpose(), W)) -
           m * (kron(W.transpose(), Wz) - kron(Mat(W * Wz).transpose(), id));
}

double bohr_extent(const Mat& H_S) {
    Eigen::SelfAdjointEigenSolver<Mat> es(H_S, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
}

Mat integrate_K(const Mat& H_S, const Mat& W, const std::function<cplx(double)>& phi, double T, double nu,
                int quad_order) {
    const Index s2 = W.rows() * W.rows();
    if (T <= 0.0) return Mat::Zero(s2, s2);
    const double hmax = std::numbers::pi / std::max(nu, 1e-12);
    const int panels = std::max(1, static_cast<int>(std::ceil(T / hmax)));
    const Rule r = composite_gauss_legendre(quad_order, 0.0, T, panels);
    const HeisenbergEvolution sys(H_S);
    return deterministic_sum<Mat>(
        r.size(),
        [&](std::size_t k) {
            const double z = r.x[k];
            return Mat(r.w[k] * davies_integrand(sys(W, z), W, phi(z), phi(-z)));
        },
        Mat::Zero(s2, s2));
}

}  // namespace

DaviesGenerator davies_K(const Mat& H_S, const Mat& W, const AnalyticCorrelation& phi, const DaviesOptions& o) {
    require(H_S.rows() == W.rows(), ErrorKind::Dimension, "W must match H_S");
    require(o.quad_order >= 2, ErrorKind::Precondition, "quadrature order must be >= 2");
    const double w2 = std::pow(spectral_norm(W), 2);
    DaviesGenerator g;
    if (o.cutoff > 0.0) {
        g.cutoff = o.cutoff;
    } else {
        g.cutoff = (w2 > 0.0) ? phi.tail_time(o.tail_tol / (4.0 * w2)) : 0.0;
    }
    g.tail_bound = 4.0 * w2 * phi.tail_integral(g.cutoff);
    const double nu = phi.max_frequency() + bohr_extent(H_S);
    g.K_reduced = integrate_K(H_S, W, [&](double t) { return phi(t); }, g.cutoff, nu, o.quad_order);
    return g;
}

DaviesGenerator davies_K(const SystemBathModel& m, double cutoff, int quad_order) {
    require_valid(m);
    require(cutoff > 0.0, ErrorKind::Precondition, "finite-bath cutoff must be > 0");
    Eigen::SelfAdjointEigenSolver<Mat> es(m.H_R);
    const Vec c = es.eigenvectors().adjoint() * (m.V * m.omega_R);
    const Eigen::VectorXd e = es.eigenvalues();
    auto phi = [&](double t) {
        cplx s = 0.0;
        for (Index k = 0; k < e.size(); ++k) s += std::norm(c(k)) * std::exp(-I * (e(k) * t));
        return s;
    };
    DaviesGenerator g;
    g.cutoff = cutoff;
    g.window_limited = true;
    g.tail_bound = std::numeric_limits<double>::infinity();
    const double nu = e.cwiseAbs().maxCoeff() + bohr_extent(m.H_S);
    g.K_reduced = integrate_K(m.H_S, m.W, phi, cutoff, nu, quad_order);
    return g;
}

cplx one_sided_transform(const AnalyticCorrelation& phi, double omega) {
    if (phi.family != "exponential") fail(ErrorKind::Config, "unknown correlation family '" + phi.family + "'");
    return phi.gamma * phi.tau_c / (1.0 - I * ((omega - phi.Omega) * phi.tau_c));
}

Mat davies_K_frequency(const Mat& H_S, const Mat& W, const AnalyticCorrelation& phi) {
    const BohrSpectrum b = bohr_decomposition(H_S);
    const Index d = H_S.rows();
    Mat Gp = Mat::Zero(d, d), Gm = Mat::Zero(d, d);
    for (std::size_t j = 0; j < b.energies.size(); ++j)
        for (std::size_t k = 0; k < b.energies.size(); ++k) {
            const double w = b.energies[j] - b.energies[k];
            const Mat block = b.eigenprojections[j] * W * b.eigenprojections[k];
            Gp += one_sided_transform(phi, w) * block;
            Gm += std::conj(one_sided_transform(phi, -w)) * block;
        }
    const Mat id = Mat::Identity(d, d);
    // [Gp, W s] - [Gm, s W]
    return kron(id, Mat(Gp * W)) - kron(Gp.transpose(), W) - kron(W.transpose(), Gm) +
           kron(Mat(W * Gm).transpose(), id);
}

SuperOp spectral_average(const SuperOp& X, const BohrSpectrum& b) {
    Mat out = Mat::Zero(X.m.rows(), X.m.cols());
    if (X.d == b.dS) {
        for (const auto& Q : b.reduced) out += Q.m * X.m * Q.m;
    } else if (X.d == b.dS * b.dR) {
        for (std::size_t a = 0; a < b.frequencies.size(); ++a) {
            const SuperOp Q = b.full_projector(a);
            out += Q.m * X.m * Q.m;
        }
    } else {
        fail(ErrorKind::Dimension, "superoperator does not act on the system or the full space");
    }
    return SuperOp(out);
}

DaviesGenerator natural_average(const DaviesGenerator& gen, const BohrSpectrum& b) {
    DaviesGenerator out = gen;
    out.K_reduced = spectral_average(gen.reduced(), b).m;
    out.natural_averaged = true;
    return out;
}

SuperOp time_average(const SuperOp& X, const Mat& H_S, double T, int quad_order) {
    require(T > 0.0, ErrorKind::Precondition, "time_average needs T > 0");
    require(X.d == H_S.rows(), ErrorKind::Dimension, "time_average acts on reduced superoperators");
    const Index d = H_S.rows();
    const Mat id = Mat::Identity(d, d);
    const Mat LS = kron(id, H_S) - kron(H_S.transpose(), id);
    const double nu = 2.0 * bohr_extent(H_S);
    const int panels = nu > 0.0 ? std::max(1, static_cast<int>(std::ceil(T * nu / std::numbers::pi))) : 1;
    const double h = T / panels;
    const Rule r = gauss_legendre(quad_order, 0.0, h);
    const Mat iLS = I * LS;
    const Mat miLS = -I * LS;
    std::vector<Mat> Ep, Em;
    for (double x : r.x) {
        Ep.push_back(mat_exp(iLS, x));
        Em.push_back(mat_exp(miLS, x));
    }
    const Mat Hp = mat_exp(iLS, h), Hm = mat_exp(miLS, h);
    Mat Cp = Mat::Identity(d * d, d * d), Cm = Cp;
    Mat acc = Mat::Zero(d * d, d * d);
    for (int p = 0; p < panels; ++p) {
        for (std::size_t j = 0; j < r.size(); ++j) acc += r.w[j] * (Ep[j] * Cp) * X.m * (Cm * Em[j]);
        Cp = Hp * Cp;
        Cm = Cm * Hm;
    }
    return SuperOp(acc / T);
}

Mat gkls_semigroup(const DaviesGenerator& gen, double tau) {
    require(gen.natural_averaged, ErrorKind::Precondition,
            "gkls_semigroup needs a spectrally averaged generator; complete positivity is not guaranteed otherwise");
    return mat_exp(gen.K_reduced, -tau);
}

Mat unaveraged_semigroup(const DaviesGenerator& gen, double tau) { return mat_exp(gen.K_reduced, -tau); }

Mat choi_matrix(const Mat& map) {
    const SuperOp S(map);
    const Index d = S.d;
    Mat C = Mat::Zero(d * d, d * d);
    for (Index j = 0; j < d; ++j)
        for (Index i = 0; i < d; ++i) {
            Mat e = Mat::Zero(d, d);
            e(i, j) = 1.0;
            C += kron(S.apply(e), e);
        }
    return C;
}

CptpReport cptp_check(const Mat& map) {
    const SuperOp S(map);
    const Index d = S.d;
    const Mat C = choi_matrix(map);
    Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (C + C.adjoint())), Eigen::EigenvaluesOnly);
    CptpReport r;
    r.min_choi_eigenvalue = es.eigenvalues().minCoeff();
    for (Index j = 0; j < d; ++j)
        for (Index i = 0; i < d; ++i) {
            Mat e = Mat::Zero(d, d);
            e(i, j) = 1.0;
            const cplx tr = S.apply(e).trace();
            r.trace_residual = std::max(r.trace_residual, std::abs(tr - (i == j ? 1.0 : 0.0)));
        }
    return r;
}

std::vector<Mat> probe_states(Index dS, std::uint64_t seed) {
    std::vector<Mat> out;
    auto pure = [&](const Vec& v) { out.push_back(v * v.adjoint()); };
    if (dS == 2) {
        const double s = 1.0 / std::sqrt(2.0);
        Vec v(2);
        v << 1.0, 0.0;
        pure(v);
        v << 0.0, 1.0;
        pure(v);
        v << s, s;
        pure(v);
        v << s, -s;
        pure(v);
        v << s, cplx(0.0, s);
        pure(v);
        v << s, cplx(0.0, -s);
        pure(v);
    } else {
        for (Index k = 0; k < dS; ++k) pure(Vec::Unit(dS, k));
        std::mt19937_64 rng(seed);
        for (Index k = 0; k < 2 * dS; ++k) pure(random_unit_vector(dS, rng));
    }
    out.push_back(Mat::Identity(dS, dS) / static_cast<double>(dS));
    return out;
}

std::vector<ConvergenceRow> vanhove_convergence(const SystemBathModel& model, const DaviesGenerator& gen,
                                                const std::vector<double>& taus,
                                                const std::vector<double>& lambdas, double window,
                                                std::uint64_t seed) {
    require(gen.natural_averaged, ErrorKind::Precondition, "convergence is measured against the averaged generator");
    require(gen.dS() == model.dS(), ErrorKind::Dimension, "generator does not match the model");
    require(!taus.empty() && !lambdas.empty(), ErrorKind::Precondition, "tau and lambda grids must be nonempty");
    for (double l : lambdas) require(l != 0.0, ErrorKind::Precondition, "lambda grid must not contain 0");
    require_valid(model);

    std::vector<ConvergenceRow> rows;
    for (double tau : taus)
        for (double l : lambdas) rows.push_back({l, tau, 0.0, tau / (l * l) > window});
    std::sort(rows.begin(), rows.end(), [](const ConvergenceRow& a, const ConvergenceRow& b) {
        if (a.tau != b.tau) return a.tau < b.tau;
        return a.lambda > b.lambda;
    });

    const std::vector<Mat> probes = probe_states(model.dS(), seed);
    parallel_for(rows.size(), [&](std::size_t k) {
        ConvergenceRow& row = rows[k];
        SystemBathModel m = model;
        m.lambda = row.lambda;
        const SuperOp U(u_lambda_reduced(m, row.tau));
        const SuperOp G(gkls_semigroup(gen, row.tau));
        double err = 0.0;
        for (const Mat& s : probes) err = std::max(err, 0.5 * trace_norm(U.apply(s) - G.apply(s)));
        row.error = err;
    });
    return rows;
}

}  // namespace vanhove
