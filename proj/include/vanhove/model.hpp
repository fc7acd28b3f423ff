// model.hpp - system (x) bath models, Liouvillians, Bohr spectrum, correlations

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vanhove/opcore.hpp"

namespace vanhove {

// H = H_S (x) 1 + 1 (x) H_R + lambda W (x) V, reference state |Omega_R><Omega_R|.
struct SystemBathModel {
    std::string name;
    Mat H_S, H_R, W, V;
    Vec omega_R;
    double lambda = 0.0;

    Index dS() const { return H_S.rows(); }
    Index dR() const { return H_R.rows(); }
    Index d() const { return dS() * dR(); }
    Mat omega_R_proj() const { return omega_R * omega_R.adjoint(); }
    Mat H0() const;
    Mat H_SR() const;
};

struct ValidationCheck {
    std::string name;
    std::string assumption;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool ok() const;
    // comma-separated assumption labels of failed checks
    std::string failed_assumptions() const;
};

ValidationReport validate(const SystemBathModel& model);
// Throws an Assumption error naming every failed check.
void require_valid(const SystemBathModel& model);

struct LiouvillianParts {
    SuperOp L0, LSR, L;
};

// Full d^2 x d^2 matrices; d = d_S d_R is capped at 64.
LiouvillianParts liouvillian_parts(const SystemBathModel& model);

// X(t) = e^{itH} X e^{-itH} through a cached eigendecomposition of H.
class HeisenbergEvolution {
public:
    explicit HeisenbergEvolution(const Mat& H);
    Mat operator()(const Mat& X, double t) const;
    // e^{-itH}
    Mat propagator(double t) const;
    const Eigen::VectorXd& energies() const { return e_; }
    const Mat& basis() const { return U_; }

private:
    Mat U_;
    Eigen::VectorXd e_;
};

Mat heisenberg_V(const SystemBathModel& model, double t);
Mat heisenberg_W(const SystemBathModel& model, double t);

struct BohrSpectrum {
    Index dS = 0, dR = 1;
    double tolerance = 0.0;
    std::vector<double> energies;  // distinct eigenvalues of H_S, ascending
    std::vector<Mat> eigenprojections;
    std::vector<double> frequencies;  // distinct Bohr frequencies, ascending
    std::vector<SuperOp> reduced;     // Q_alpha acting on d_S x d_S operators

    SuperOp full_projector(std::size_t alpha) const;
    std::size_t index_of(double omega) const;
    // smallest positive distance between two Bohr frequencies (0 if only one)
    double min_gap() const;
    double max_abs_frequency() const;
};

// Differences closer than 1e-9 max|eps| are merged.
BohrSpectrum bohr_decomposition(const Mat& H_S, Index dR = 1);

// phi(t) = gamma exp(-|t|/tau_c) exp(-i Omega t)
struct AnalyticCorrelation {
    std::string family = "exponential";
    double gamma = 0.0;
    double tau_c = 1.0;
    double Omega = 0.0;

    cplx operator()(double t) const;
    double l1_norm() const;
    double spectral_density(double e) const;
    double max_frequency() const;
    // T with integral_T^inf |phi| <= tol
    double tail_time(double tol) const;
    double tail_integral(double T) const;
};

AnalyticCorrelation make_analytic_correlation(const std::string& family, double gamma, double tau_c,
                                              double Omega);

cplx correlation_phi(const SystemBathModel& model, double t);
cplx correlation_phi_analytic(const AnalyticCorrelation& phi, double t);

struct TabulatedCorrelation {
    std::vector<double> t;
    std::vector<cplx> value;
    // max |phi(-t) - conj(phi(t))| over mirrored grid pairs
    double hermitian_residual() const;
};

TabulatedCorrelation tabulate_correlation(const SystemBathModel& model, const std::vector<double>& times);

std::vector<double> mixing_probe(const SystemBathModel& model, const Mat& A, const Mat& B,
                                 const std::vector<double>& T_grid);

// 2 pi over the smallest gap between distinct H_R eigenvalues; infinity for a one-level bath.
double recurrence_window(const SystemBathModel& model);

}  // namespace vanhove
