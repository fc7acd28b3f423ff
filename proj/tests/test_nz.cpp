#include "doctest.h"
#include "helpers.hpp"
#include "vanhove/error.hpp"
#include "vanhove/nz.hpp"

using namespace vanhove;
using namespace vh_test;

TEST_SUITE("nz") {

TEST_CASE("P and Q are complementary projections") {
    for (const auto& name : preset_names()) {
        INFO(name);
        const SystemBathModel m = preset_model(name);
        const ProjectionPair p = build_projections(m);
        const Index d2 = p.d() * p.d();
        CHECK(max_abs((p.P * p.P).m - p.P.m) <= 1e-12);
        CHECK(max_abs((p.Q * p.Q).m - p.Q.m) <= 1e-12);
        CHECK(max_abs((p.P * p.Q).m) <= 1e-12);
        CHECK(max_abs((p.Q * p.P).m) <= 1e-12);
        CHECK(max_abs(p.P.m + p.Q.m - Mat::Identity(d2, d2)) == 0.0);
        CHECK(max_abs(p.T * p.E - Mat::Identity(p.dS * p.dS, p.dS * p.dS)) <= 1e-14);
    }
}

TEST_CASE("P acts as reduce-then-embed") {
    const SystemBathModel m = preset_model("random", 3);
    const ProjectionPair p = build_projections(m);
    std::mt19937_64 rng(1);
    const Mat sigma = random_density(2, rng);
    const Mat prod = kron(sigma, m.omega_R_proj());
    CHECK(max_abs(p.P.apply(prod) - prod) <= 1e-14);

    const Mat rho = random_density(8, rng);
    CHECK(max_abs(p.P.apply(rho) - kron(partial_trace_R(rho, 2, 4), m.omega_R_proj())) <= 1e-14);
    CHECK(max_abs(p.P.apply(p.P.apply(rho)) - p.P.apply(rho)) <= 1e-12);
    CHECK(max_abs(p.apply_Q(rho) - p.Q.apply(rho)) <= 1e-14);
    CHECK(trace_norm(p.P.apply(rho)) == doctest::Approx(trace_norm(partial_trace_R(rho, 2, 4))).epsilon(1e-12));
}

TEST_CASE("projection algebra holds on every preset") {
    for (const auto& name : preset_names()) {
        INFO(name);
        const SystemBathModel m = preset_model(name);
        for (const auto& c : verify_projection_algebra(m, build_projections(m))) {
            INFO(c.name);
            CHECK(c.residual <= 1e-10);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("shifted V breaks P L_SR P = 0 by |c| times the commutator norm") {
    SystemBathModel m = preset_model("dephasing");
    const double c = 0.3;
    m.V += c * Mat::Identity(4, 4);
    const auto checks = verify_projection_algebra(m, build_projections(m));
    double plp = -1.0, mean = -1.0;
    for (const auto& ch : checks) {
        if (ch.name == "P L_SR P = 0") plp = ch.residual;
        if (ch.name == "tr(V omega_R) = 0") mean = ch.residual;
    }
    CHECK(mean == doctest::Approx(c).epsilon(1e-12));
    // P L_SR P = c E [W, .] T, whose induced norm is at most 2 c |W|
    CHECK(plp > 1e-3);
    CHECK(plp <= 2.0 * c * spectral_norm(m.W) * (1 + 1e-12));
}

TEST_CASE("Liouvillian decomposition reassembles L") {
    for (std::uint64_t seed : {1u, 2u}) {
        const SystemBathModel m = preset_model("random", seed, 3, 0.37);
        const ProjectionPair p = build_projections(m);
        const LiouvillianBlocks b = decompose_liouvillian(m, p);
        CHECK(max_abs(b.sum().m - liouvillian_parts(m).L.m) <= 1e-10);
        CHECK(max_abs((p.P * b.QLSRQ * p.P).m) <= 1e-14);
    }
    SystemBathModel m = preset_model("parity", 0, -1, 0.0);
    const LiouvillianBlocks b = decompose_liouvillian(m, build_projections(m));
    CHECK(max_abs(b.QLSRQ.m) == 0.0);
    CHECK(max_abs(b.PLSRQ.m) == 0.0);
    CHECK(max_abs(b.QLSRP.m) == 0.0);
    CHECK(max_abs(b.PLSP.m) > 0.0);
}

TEST_CASE("projections are capped at d = 64") {
    const SystemBathModel m = preset_model("star-bath", 0, 40);
    CHECK_THROWS_AS(build_projections(m), Error);
}

}
