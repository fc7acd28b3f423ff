#pragma once

#include <vector>

#include "vanhove/model.hpp"

namespace vanhove {

// P rho = tr_R(rho) (x) omega_R, Q = 1 - P. E and T are the embedding and the
// partial trace, so P = E T and T E = 1; reduced superoperators M on d_S lift
// to E M T on the full space.
struct ProjectionPair {
    Index dS = 0, dR = 0;
    Vec omega_R;
    Mat E;  // d^2 x d_S^2
    Mat T;  // d_S^2 x d^2
    SuperOp P, Q;

    Index d() const { return dS * dR; }
    SuperOp lift(const Mat& reduced) const;
    Mat embed(const Mat& sigma) const;
    Mat reduce(const Mat& X) const;
    // X - tr_R(X) (x) omega_R
    Mat apply_Q(const Mat& X) const;
};

// Materializes P and Q; needs d_S d_R <= 64.
ProjectionPair build_projections(const SystemBathModel& model);

std::vector<ValidationCheck> verify_projection_algebra(const SystemBathModel& model, const ProjectionPair& pair);

struct LiouvillianBlocks {
    SuperOp PLSP;    // P L_S P
    SuperOp QL0Q;    // Q L_0 Q = Q (L_S + L_R) Q
    SuperOp QLSRQ;   // lambda Q L_SR Q
    SuperOp PLSRQ;   // lambda P L_SR Q
    SuperOp QLSRP;   // lambda Q L_SR P
    SuperOp sum() const;
};

LiouvillianBlocks decompose_liouvillian(const SystemBathModel& model, const ProjectionPair& pair);

}  // namespace vanhove
