#include "vanhove/nz.hpp"

#include <cmath>

#include "vanhove/error.hpp"

namespace vanhove {

SuperOp ProjectionPair::lift(const Mat& reduced) const {
    require(reduced.rows() == dS * dS && reduced.cols() == dS * dS, ErrorKind::Dimension, "lift: reduced size mismatch");
    return SuperOp(E * reduced * T);
}

Mat ProjectionPair::embed(const Mat& sigma) const { return kron(sigma, omega_R * omega_R.adjoint()); }

Mat ProjectionPair::reduce(const Mat& X) const { return partial_trace_R(X, dS, dR); }

Mat ProjectionPair::apply_Q(const Mat& X) const { return X - embed(reduce(X)); }

ProjectionPair build_projections(const SystemBathModel& m) {
    require(m.d() <= 64, ErrorKind::Capability, "materialized projections need d_S d_R <= 64");
    require(m.omega_R.size() == m.dR(), ErrorKind::Dimension, "Omega_R must have length d_R");
    ProjectionPair p;
    p.dS = m.dS();
    p.dR = m.dR();
    p.omega_R = m.omega_R;
    const Index dS = p.dS, dR = p.dR, d = p.d();
    const Mat w = m.omega_R_proj();
    p.E = Mat::Zero(d * d, dS * dS);
    p.T = Mat::Zero(dS * dS, d * d);
    for (Index b = 0; b < dS; ++b)
        for (Index a = 0; a < dS; ++a) {
            const Index col = a + b * dS;
            for (Index s = 0; s < dR; ++s)
                for (Index r = 0; r < dR; ++r) p.E((a * dR + r) + (b * dR + s) * d, col) = w(r, s);
            for (Index r = 0; r < dR; ++r) p.T(col, (a * dR + r) + (b * dR + r) * d) = 1.0;
        }
    p.P = SuperOp(p.E * p.T);
    p.Q = SuperOp::identity(d) - p.P;
    return p;
}

std::vector<ValidationCheck> verify_projection_algebra(const SystemBathModel& m, const ProjectionPair& pair) {
    require(m.d() == pair.d(), ErrorKind::Dimension, "projection pair does not match model");
    const Index dS = m.dS(), dR = m.dR();
    const Mat idS = Mat::Identity(dS, dS), idR = Mat::Identity(dR, dR);
    const SuperOp LS = commutator_superop(kron(m.H_S, idR));
    const SuperOp LSR = commutator_superop(m.H_SR());
    const SuperOp& P = pair.P;

    std::vector<ValidationCheck> out;
    auto add = [&](std::string name, double residual) {
        out.push_back({std::move(name), "projection-algebra", residual, 1e-10, residual <= 1e-10});
    };
    add("[P, L_S] = 0", superop_norm_estimate(P * LS - LS * P));
    HeisenbergEvolution bath(m.H_R);
    double left = 0.0, right = 0.0;
    for (double t : {0.37, 1.3, 4.1}) {
        const Mat U = kron(idS, bath.propagator(t));
        const SuperOp prop(kron(U.conjugate(), U));
        left = std::max(left, superop_norm_estimate(prop * P - P));
        right = std::max(right, superop_norm_estimate(P * prop - P));
    }
    add("exp(-it L_R) P = P", left);
    add("P exp(-it L_R) = P", right);
    const Mat w = m.omega_R_proj();
    add("L_R omega_R = 0", max_abs(m.H_R * w - w * m.H_R));
    ValidationCheck plp{"P L_SR P = 0", "A4-centering", superop_norm_estimate(P * LSR * P), 1e-10, false};
    plp.pass = plp.residual <= plp.tolerance;
    out.push_back(plp);
    ValidationCheck mean{"tr(V omega_R) = 0", "A4-centering", std::abs(m.omega_R.dot(m.V * m.omega_R)), 1e-10, false};
    mean.pass = mean.residual <= mean.tolerance;
    out.push_back(mean);
    return out;
}

SuperOp LiouvillianBlocks::sum() const { return PLSP + QL0Q + QLSRQ + PLSRQ + QLSRP; }

LiouvillianBlocks decompose_liouvillian(const SystemBathModel& m, const ProjectionPair& pair) {
    require_valid(m);
    require(m.d() == pair.d(), ErrorKind::Dimension, "projection pair does not match model");
    const Index dR = m.dR(), dS = m.dS();
    const SuperOp LS = commutator_superop(kron(m.H_S, Mat::Identity(dR, dR)));
    const SuperOp LR = commutator_superop(kron(Mat::Identity(dS, dS), m.H_R));
    const SuperOp LSR = commutator_superop(m.H_SR()) * cplx(m.lambda);
    const SuperOp &P = pair.P, &Q = pair.Q;
    LiouvillianBlocks b;
    b.PLSP = P * LS * P;
    b.QL0Q = Q * (LS + LR) * Q;
    b.QLSRQ = Q * LSR * Q;
    b.PLSRQ = P * LSR * Q;
    b.QLSRP = Q * LSR * P;
    return b;
}

}  // namespace vanhove
