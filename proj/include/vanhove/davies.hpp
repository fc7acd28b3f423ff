// davies.hpp - weak-coupling generator, spectral averaging, GKLS semigroup

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "vanhove/model.hpp"

namespace vanhove {

// Reduced generator on d_S x d_S operators; the full form is E K T.
struct DaviesGenerator {
    Mat K_reduced;
    bool natural_averaged = false;
    bool window_limited = false;
    double cutoff = 0.0;
    double tail_bound = 0.0;  // bound on the neglected tail; infinity when unavailable

    Index dS() const;
    SuperOp reduced() const { return SuperOp(K_reduced); }
};

struct DaviesOptions {
    double cutoff = 0.0;  // <= 0 selects T with tail bound <= tail_tol
    double tail_tol = 1e-8;
    int quad_order = 16;
};

// K sigma = int_0^T phi(z)[W(z), W sigma] - phi(-z)[W(z), sigma W] dz
DaviesGenerator davies_K(const Mat& H_S, const Mat& W, const AnalyticCorrelation& phi,
                         const DaviesOptions& opts = {});
// Finite-bath correlation; always window-limited.
DaviesGenerator davies_K(const SystemBathModel& model, double cutoff, int quad_order = 16);

// Gamma(omega) = int_0^inf phi(s) e^{i omega s} ds
cplx one_sided_transform(const AnalyticCorrelation& phi, double omega);

// Infinite-horizon K from Gamma at the Bohr frequencies:
// K sigma = [G+, W sigma] - [G-, sigma W], G+ = sum Gamma(e_j - e_k) P_j W P_k,
// G- = sum conj(Gamma(e_k - e_j)) P_j W P_k.
Mat davies_K_frequency(const Mat& H_S, const Mat& W, const AnalyticCorrelation& phi);

// sum_alpha Q_alpha X Q_alpha; X may be reduced (d_S) or full (d_S d_R).
SuperOp spectral_average(const SuperOp& X, const BohrSpectrum& spectrum);
DaviesGenerator natural_average(const DaviesGenerator& gen, const BohrSpectrum& spectrum);

// (1/T) int_0^T e^{itL_S} X e^{-itL_S} dt on reduced superoperators.
SuperOp time_average(const SuperOp& X, const Mat& H_S, double T, int quad_order = 16);

// exp(-tau K); rejects generators that were not spectrally averaged.
Mat gkls_semigroup(const DaviesGenerator& gen, double tau);
// exp(-tau K) without the averaging requirement (diagnostics only).
Mat unaveraged_semigroup(const DaviesGenerator& gen, double tau);

struct CptpReport {
    double min_choi_eigenvalue = 0.0;
    double trace_residual = 0.0;
};

// Choi(L) = sum_ij L(|i><j|) (x) |i><j|
Mat choi_matrix(const Mat& map_reduced);
CptpReport cptp_check(const Mat& map_reduced);

// Qubit: the six Pauli eigenstates plus 1/2; larger d_S: basis states,
// 2 d_S seeded random pure states and the maximally mixed state.
std::vector<Mat> probe_states(Index dS, std::uint64_t seed = 0);

struct ConvergenceRow {
    double lambda = 0.0;
    double tau = 0.0;
    double error = 0.0;
    bool flagged = false;
};

// Max trace distance between tr_R U(tau)(sigma (x) omega_R) and exp(-tau K)sigma over
// probe states. Rows with tau / lambda^2 beyond `window` are flagged.
// Rows are sorted by tau, then lambda descending.
std::vector<ConvergenceRow> vanhove_convergence(const SystemBathModel& model, const DaviesGenerator& averaged,
                                                const std::vector<double>& taus,
                                                const std::vector<double>& lambdas, double window,
                                                std::uint64_t seed = 0);

}  // namespace vanhove
