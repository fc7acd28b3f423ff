// dyson.hpp - reduced propagator, memory kernel and its Dyson-series terms

#pragma once

#include <vector>

#include "vanhove/model.hpp"
#include "vanhove/nz.hpp"
#include "vanhove/quadrature.hpp"

namespace vanhove {

// W(t) (x) V(t) in the interaction picture of H_0.
class InteractionPicture {
public:
    explicit InteractionPicture(const SystemBathModel& model);
    Mat W(double t) const { return sys_(model_->W, t); }
    Mat V(double t) const { return bath_(model_->V, t); }
    Mat coupling(double t) const { return kron(W(t), V(t)); }

private:
    const SystemBathModel* model_;
    HeisenbergEvolution sys_, bath_;
};

// P L_SR(z_{n+1}) Q ... Q L_SR(z_1) Q L_SR(z_0) P with z_0 = 0 implicit:
// `z` holds z_1 <= ... <= z_{n+1}. n = z.size() - 1 may be 0.
// The reduced form is the d_S^2 x d_S^2 matrix M with result = E M T.
Mat dyson_integrand_reduced(const SystemBathModel& model, const std::vector<double>& z);
SuperOp dyson_integrand(const SystemBathModel& model, const ProjectionPair& pair, const std::vector<double>& z);

// Grid-weighted sum of the integrand; the grid must have dimension n + 1.
// n <= 3 is enforced because the node count grows as order^(n+1).
Mat k_n_bruteforce_reduced(const SystemBathModel& model, int n, const SimplexGrid& grid);
SuperOp k_n_bruteforce(const SystemBathModel& model, const ProjectionPair& pair, int n, double t,
                       const SimplexGrid& grid);

// U(tau) = exp(i t L_S) P exp(-i t L) P, t = tau / lambda^2, using model.lambda.
Mat u_lambda_reduced(const SystemBathModel& model, double tau);
SuperOp u_lambda(const SystemBathModel& model, const ProjectionPair& pair, double tau);

// K(tau) = int_0^{tau/lambda^2} P e^{isL_0} L_SR Q e^{-is(L_0 + lambda Q L_SR Q)} Q L_SR P ds,
// composite Gauss-Legendre with quad_order nodes per panel.
Mat k_lambda_reduced(const SystemBathModel& model, const ProjectionPair& pair, double tau, int quad_order = 16);
SuperOp k_lambda(const SystemBathModel& model, const ProjectionPair& pair, double tau, int quad_order = 16);

// Probe-norm residual of U(tau) = P - int_0^tau e^{iuL_S/l^2} K(tau-u) e^{-iuL_S/l^2} U(u) du.
double verify_integral_equation(const SystemBathModel& model, const ProjectionPair& pair, double tau,
                                double lambda, int quad_order = 16);

// int_0^t P L_SR(s) Q L_SR P ds + sum_{n=1}^{N_max} (-i lambda)^n K_n(t), t = tau / lambda^2.
SuperOp k_lambda_series(const SystemBathModel& model, const ProjectionPair& pair, double tau, double lambda,
                        int N_max, int grid_order = 12);

}  // namespace vanhove
