#include "vanhove/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vanhove/error.hpp"

namespace vanhove {

Mat SystemBathModel::H0() const {
    return kron(H_S, Mat::Identity(dR(), dR())) + kron(Mat::Identity(dS(), dS()), H_R);
}

Mat SystemBathModel::H_SR() const { return kron(W, V); }

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.pass; });
}

std::string ValidationReport::failed_assumptions() const {
    std::string out;
    for (const auto& c : checks) {
        if (c.pass) continue;
        if (out.find(c.assumption) != std::string::npos) continue;
        if (!out.empty()) out += ", ";
        out += c.assumption;
    }
    return out;
}

ValidationReport validate(const SystemBathModel& m) {
    require(m.H_S.rows() >= 1 && m.H_S.rows() == m.H_S.cols(), ErrorKind::Dimension, "H_S must be square");
    require(m.H_R.rows() >= 1 && m.H_R.rows() == m.H_R.cols(), ErrorKind::Dimension, "H_R must be square");
    require(m.W.rows() == m.dS() && m.W.cols() == m.dS(), ErrorKind::Dimension, "W must match H_S");
    require(m.V.rows() == m.dR() && m.V.cols() == m.dR(), ErrorKind::Dimension, "V must match H_R");
    require(m.omega_R.size() == m.dR(), ErrorKind::Dimension, "Omega_R must have length d_R");

    ValidationReport r;
    auto add = [&](std::string name, std::string assumption, double residual, double tol) {
        r.checks.push_back({std::move(name), std::move(assumption), residual, tol, residual <= tol});
    };
    add("H_S hermitian", "A1-selfadjoint", hermiticity_residual(m.H_S), 1e-12);
    add("H_R hermitian", "A1-selfadjoint", hermiticity_residual(m.H_R), 1e-12);
    add("W hermitian", "A1-selfadjoint", hermiticity_residual(m.W), 1e-12);
    add("V hermitian", "A1-selfadjoint", hermiticity_residual(m.V), 1e-12);
    add("|Omega_R| = 1", "normalization", std::abs(m.omega_R.norm() - 1.0), 1e-12);
    add("H_R Omega_R = 0", "A2-invariance", (m.H_R * m.omega_R).norm(), 1e-10);
    add("<Omega_R|V Omega_R> = 0", "A4-centering", std::abs(m.omega_R.dot(m.V * m.omega_R)), 1e-10);
    return r;
}

void require_valid(const SystemBathModel& m) {
    ValidationReport r = validate(m);
    if (!r.ok()) fail(ErrorKind::Assumption, "model violates " + r.failed_assumptions());
}

LiouvillianParts liouvillian_parts(const SystemBathModel& m) {
    require_valid(m);
    require(m.d() <= 64, ErrorKind::Capability, "full Liouvillian needs d_S d_R <= 64");
    LiouvillianParts p;
    p.L0 = commutator_superop(m.H0());
    p.LSR = commutator_superop(m.H_SR());
    p.L = p.L0 + p.LSR * cplx(m.lambda);
    return p;
}

HeisenbergEvolution::HeisenbergEvolution(const Mat& H) {
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    U_ = es.eigenvectors();
    e_ = es.eigenvalues();
}

Mat HeisenbergEvolution::operator()(const Mat& X, double t) const {
    Mat Xe = U_.adjoint() * X * U_;
    for (Index k = 0; k < Xe.cols(); ++k)
        for (Index j = 0; j < Xe.rows(); ++j) Xe(j, k) *= std::exp(I * ((e_(j) - e_(k)) * t));
    return U_ * Xe * U_.adjoint();
}

Mat HeisenbergEvolution::propagator(double t) const {
    Vec ph = (e_.cast<cplx>() * (-I * t)).array().exp();
    return U_ * ph.asDiagonal() * U_.adjoint();
}

Mat heisenberg_V(const SystemBathModel& m, double t) { return HeisenbergEvolution(m.H_R)(m.V, t); }
Mat heisenberg_W(const SystemBathModel& m, double t) { return HeisenbergEvolution(m.H_S)(m.W, t); }

SuperOp BohrSpectrum::full_projector(std::size_t alpha) const {
    const double w = frequencies.at(alpha);
    const Mat idR = Mat::Identity(dR, dR);
    const Index d = dS * dR;
    Mat Q = Mat::Zero(d * d, d * d);
    for (std::size_t j = 0; j < energies.size(); ++j)
        for (std::size_t k = 0; k < energies.size(); ++k)
            if (std::abs(energies[j] - energies[k] - w) <= tolerance)
                Q += kron(kron(eigenprojections[k], idR).transpose(), kron(eigenprojections[j], idR));
    return SuperOp(Q);
}

std::size_t BohrSpectrum::index_of(double omega) const {
    for (std::size_t a = 0; a < frequencies.size(); ++a)
        if (std::abs(frequencies[a] - omega) <= tolerance) return a;
    fail(ErrorKind::Precondition, "not a Bohr frequency");
}

double BohrSpectrum::min_gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t a = 1; a < frequencies.size(); ++a) g = std::min(g, frequencies[a] - frequencies[a - 1]);
    return std::isfinite(g) ? g : 0.0;
}

double BohrSpectrum::max_abs_frequency() const {
    double m = 0.0;
    for (double w : frequencies) m = std::max(m, std::abs(w));
    return m;
}

BohrSpectrum bohr_decomposition(const Mat& H_S, Index dR) {
    require(H_S.rows() >= 1 && H_S.rows() == H_S.cols(), ErrorKind::Dimension, "H_S must be square");
    require(hermiticity_residual(H_S) <= 1e-12, ErrorKind::Precondition, "H_S must be Hermitian");
    require(dR >= 1, ErrorKind::Dimension, "d_R must be >= 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(H_S);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const Mat& U = es.eigenvectors();

    BohrSpectrum b;
    b.dS = H_S.rows();
    b.dR = dR;
    b.tolerance = std::max(1e-9 * ev.cwiseAbs().maxCoeff(), 1e-13);

    std::vector<std::vector<Index>> groups;
    for (Index i = 0; i < ev.size(); ++i) {
        if (!groups.empty() && ev(i) - ev(groups.back().front()) <= b.tolerance)
            groups.back().push_back(i);
        else
            groups.push_back({i});
    }
    for (const auto& g : groups) {
        double e = 0.0;
        Mat P = Mat::Zero(b.dS, b.dS);
        for (Index i : g) {
            e += ev(i);
            P += U.col(i) * U.col(i).adjoint();
        }
        b.energies.push_back(e / static_cast<double>(g.size()));
        b.eigenprojections.push_back(P);
    }

    std::vector<double> diffs;
    for (double ej : b.energies)
        for (double ek : b.energies) diffs.push_back(ej - ek);
    std::sort(diffs.begin(), diffs.end());
    for (double w : diffs) {
        if (!b.frequencies.empty() && w - b.frequencies.back() <= b.tolerance) continue;
        b.frequencies.push_back(std::abs(w) <= b.tolerance ? 0.0 : w);
    }

    for (double w : b.frequencies) {
        Mat Q = Mat::Zero(b.dS * b.dS, b.dS * b.dS);
        for (std::size_t j = 0; j < b.energies.size(); ++j)
            for (std::size_t k = 0; k < b.energies.size(); ++k)
                if (std::abs(b.energies[j] - b.energies[k] - w) <= b.tolerance)
                    Q += kron(b.eigenprojections[k].transpose(), b.eigenprojections[j]);
        b.reduced.emplace_back(Q);
    }
    return b;
}

cplx AnalyticCorrelation::operator()(double t) const {
    return gamma * std::exp(-std::abs(t) / tau_c) * std::exp(-I * (Omega * t));
}

double AnalyticCorrelation::l1_norm() const { return 2.0 * gamma * tau_c; }

double AnalyticCorrelation::spectral_density(double e) const {
    const double a = 1.0 / tau_c;
    return gamma * a / std::numbers::pi / ((e - Omega) * (e - Omega) + a * a);
}

double AnalyticCorrelation::max_frequency() const { return std::abs(Omega) + 1.0 / tau_c; }

double AnalyticCorrelation::tail_integral(double T) const { return gamma * tau_c * std::exp(-T / tau_c); }

double AnalyticCorrelation::tail_time(double tol) const {
    if (gamma <= 0.0) return 0.0;
    return std::max(0.0, tau_c * std::log(gamma * tau_c / tol));
}

AnalyticCorrelation make_analytic_correlation(const std::string& family, double gamma, double tau_c,
                                              double Omega) {
    if (family != "exponential") fail(ErrorKind::Config, "unknown correlation family '" + family + "'");
    require(gamma >= 0.0, ErrorKind::Config, "correlation gamma must be >= 0");
    require(tau_c > 0.0, ErrorKind::Config, "correlation tau_c must be > 0");
    AnalyticCorrelation c;
    c.family = family;
    c.gamma = gamma;
    c.tau_c = tau_c;
    c.Omega = Omega;
    return c;
}

cplx correlation_phi(const SystemBathModel& m, double t) {
    Mat Vt = heisenberg_V(m, t);
    return m.omega_R.dot(Vt * (m.V * m.omega_R));
}

cplx correlation_phi_analytic(const AnalyticCorrelation& phi, double t) { return phi(t); }

double TabulatedCorrelation::hermitian_residual() const {
    double r = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j < t.size(); ++j)
            if (std::abs(t[i] + t[j]) <= 1e-14 * (1.0 + std::abs(t[i])))
                r = std::max(r, std::abs(value[j] - std::conj(value[i])));
    return r;
}

TabulatedCorrelation tabulate_correlation(const SystemBathModel& m, const std::vector<double>& times) {
    require_valid(m);
    HeisenbergEvolution ev(m.H_R);
    Vec VOmega = m.V * m.omega_R;
    TabulatedCorrelation tab;
    tab.t = times;
    for (double t : times) tab.value.push_back(m.omega_R.dot(ev(m.V, t) * VOmega));
    return tab;
}

std::vector<double> mixing_probe(const SystemBathModel& m, const Mat& A, const Mat& B,
                                 const std::vector<double>& T_grid) {
    require(A.rows() == m.dR() && B.rows() == m.dR(), ErrorKind::Dimension, "probe operators must act on the bath");
    HeisenbergEvolution ev(m.H_R);
    const Vec& w = m.omega_R;
    const cplx a = w.dot(A * w), b = w.dot(B * w);
    std::vector<double> out;
    for (double t : T_grid) out.push_back(std::abs(w.dot(ev(A, t) * (B * w)) - a * b));
    return out;
}

double recurrence_window(const SystemBathModel& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m.H_R, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& e = es.eigenvalues();
    const double tol = std::max(1e-9 * e.cwiseAbs().maxCoeff(), 1e-13);
    double gap = std::numeric_limits<double>::infinity();
    for (Index i = 1; i < e.size(); ++i) {
        double g = e(i) - e(i - 1);
        if (g > tol) gap = std::min(gap, g);
    }
    return std::isfinite(gap) ? 2.0 * std::numbers::pi / gap : std::numeric_limits<double>::infinity();
}

}  // namespace vanhove
