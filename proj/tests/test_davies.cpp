#include "doctest.h"
#include "helpers.hpp"
#include "vanhove/davies.hpp"
#include "vanhove/error.hpp"

using namespace vanhove;
using namespace vh_test;

namespace {

Mat transpose_map(Index d) {
    Mat M = Mat::Zero(d * d, d * d);
    for (Index j = 0; j < d; ++j)
        for (Index i = 0; i < d; ++i) M(j + i * d, i + j * d) = 1.0;
    return M;
}

double probe(const Mat& M) { return superop_norm_estimate(SuperOp(M)); }

Preset preset(const std::string& name) { return make_preset(name); }

}  // namespace

TEST_SUITE("davies") {

TEST_CASE("one-sided transform of the exponential family") {
    const AnalyticCorrelation phi = make_analytic_correlation("exponential", 0.7, 1.3, 0.0);
    for (double w : {-3.0, -0.4, 0.0, 0.9, 5.0}) {
        const cplx expect = 0.7 * 1.3 * cplx(1.0, w * 1.3) / (1.0 + w * w * 1.69);
        CHECK(std::abs(one_sided_transform(phi, w) - expect) <= 1e-14);
    }
    const AnalyticCorrelation rot = make_analytic_correlation("exponential", 0.5, 2.0, 4.0);
    for (double w = -20.0; w <= 20.0; w += 0.37) CHECK(one_sided_transform(rot, w).real() >= 0.0);
    // direct quadrature of the defining integral
    double re = 0.0, im = 0.0;
    const double h = 1e-4, w = 1.7;
    for (double s = h / 2; s < 60.0; s += h) {
        const cplx v = rot(s) * std::exp(I * (w * s));
        re += v.real() * h;
        im += v.imag() * h;
    }
    CHECK(std::abs(one_sided_transform(rot, w) - cplx(re, im)) <= 1e-7);
    CHECK(one_sided_transform(make_analytic_correlation("exponential", 0.0, 1.0, 0.0), 2.0) == cplx(0.0));
    AnalyticCorrelation bad = phi;
    bad.family = "gaussian";
    CHECK_THROWS_AS(one_sided_transform(bad, 0.0), Error);
}

TEST_CASE("Davies generator examples") {
    const Preset p = preset("dephasing");
    const SystemBathModel& m = p.model;
    const DaviesGenerator K = davies_K(m.H_S, m.W, *p.phi);
    CHECK(K.tail_bound <= 1e-8);
    CHECK_FALSE(K.window_limited);
    CHECK(probe(K.K_reduced) <= 4.0 * std::pow(spectral_norm(m.W), 2) * p.phi->l1_norm());
    CHECK(max_abs(davies_K(m.H_S, Mat::Zero(2, 2), *p.phi).K_reduced) == 0.0);
    CHECK(max_abs(K.K_reduced - davies_K_frequency(m.H_S, m.W, *p.phi)) <= 1e-8);

    // dephasing: populations fixed, coherences decay at 4 Re Gamma(0)
    const DaviesGenerator A = natural_average(K, bohr_decomposition(m.H_S));
    const double rate = 4.0 * one_sided_transform(*p.phi, 0.0).real();
    for (double tau : {0.1, 1.0, 3.0}) {
        Mat s(2, 2);
        s << 0.3, cplx(0.2, 0.1), cplx(0.2, -0.1), 0.7;
        const Mat out = devectorize(gkls_semigroup(A, tau) * vectorize(s));
        CHECK(std::abs(out(0, 0) - 0.3) <= 1e-10);
        CHECK(std::abs(out(1, 1) - 0.7) <= 1e-10);
        CHECK(std::abs(out(0, 1) - s(0, 1) * std::exp(-rate * tau)) <= 1e-8);
    }
}

TEST_CASE("generator is trace-annihilating and the average commutes with free motion") {
    for (const char* name : {"dephasing", "star-bath"}) {
        const Preset p = preset(name);
        const BohrSpectrum b = bohr_decomposition(p.model.H_S);
        const DaviesGenerator K = natural_average(davies_K(p.model.H_S, p.model.W, *p.phi), b);
        CHECK(K.natural_averaged);
        const Vec tr = vectorize(Mat::Identity(2, 2));
        CHECK((tr.adjoint() * K.K_reduced).cwiseAbs().maxCoeff() <= 1e-12);
        const SuperOp LS = commutator_superop(p.model.H_S);
        for (double t : {0.3, 1.7, 11.0}) {
            const Mat R = mat_exp(Mat(-I * LS.m), t);
            CHECK(max_abs(R * K.K_reduced - K.K_reduced * R) <= 1e-10);
        }
    }
}

TEST_CASE("spectral average") {
    std::mt19937_64 rng(1);
    const Mat H = random_hermitian(3, rng);
    const BohrSpectrum b = bohr_decomposition(H);
    const SuperOp X(random_matrix(9, 9, rng));
    const SuperOp A = spectral_average(X, b);
    CHECK(max_abs(spectral_average(A, b).m - A.m) <= 1e-12);
    CHECK(max_abs(spectral_average(SuperOp::identity(3), b).m - Mat::Identity(9, 9)) <= 1e-12);
    const std::size_t a0 = 0, a1 = b.frequencies.size() - 1;
    const SuperOp off = b.reduced[a0] * X * b.reduced[a1];
    CHECK(max_abs(spectral_average(off, b).m) <= 1e-12);
    const SuperOp diag = b.reduced[a0] * X * b.reduced[a0] + b.reduced[a1] * X * b.reduced[a1];
    CHECK(max_abs(spectral_average(diag, b).m - diag.m) <= 1e-12);

    // full-space projectors when d_R > 1
    const BohrSpectrum b2 = bohr_decomposition(H, 2);
    const SuperOp Y(random_matrix(36, 36, rng));
    const SuperOp B = spectral_average(Y, b2);
    CHECK(max_abs(spectral_average(B, b2).m - B.m) <= 1e-12);
    CHECK_THROWS_AS(spectral_average(SuperOp(random_matrix(16, 16, rng)), b), Error);
}

TEST_CASE("time average") {
    std::mt19937_64 rng(2);
    Mat H = Mat::Zero(2, 2);
    H(1, 1) = 1.0;
    const BohrSpectrum b = bohr_decomposition(H);
    const SuperOp X(random_matrix(4, 4, rng));
    const SuperOp A = spectral_average(X, b);
    for (double T : {0.5, 3.0}) CHECK(max_abs(time_average(A, H, T).m - A.m) <= 1e-10);
    CHECK(max_abs(time_average(X, Mat::Identity(2, 2) * 0.4, 2.0).m - X.m) <= 1e-12);

    // T = 2 pi (k + 1/4) avoids the exact zeros of sin(T) / T
    const double T1 = 2.0 * std::numbers::pi * 10.25, T10 = 2.0 * std::numbers::pi * 100.25;
    const double e1 = max_abs(time_average(X, H, T1, 400).m - A.m);
    const double e10 = max_abs(time_average(X, H, T10, 4000).m - A.m);
    CHECK(e10 / e1 == doctest::Approx(T1 / T10).epsilon(0.05));

    double prev = std::numeric_limits<double>::infinity();
    for (double T = 1.3; T < 200.0; T *= 2.0) {
        const double e = max_abs(time_average(X, H, T, 2000).m - A.m);
        CHECK(e < prev);
        prev = e;
    }
    CHECK_THROWS_AS(time_average(X, H, 0.0), Error);
}

TEST_CASE("semigroup guards and trace preservation") {
    const Preset p = preset("dephasing");
    const DaviesGenerator raw = davies_K(p.model.H_S, p.model.W, *p.phi);
    CHECK_THROWS_AS(gkls_semigroup(raw, 1.0), Error);
    CHECK_NOTHROW(unaveraged_semigroup(raw, 1.0));
    const DaviesGenerator A = natural_average(raw, bohr_decomposition(p.model.H_S));
    CHECK(max_abs(gkls_semigroup(A, 0.0) - Mat::Identity(4, 4)) == 0.0);
    CHECK(cptp_check(gkls_semigroup(A, 1.0)).trace_residual <= 1e-10);
}

TEST_CASE("Choi test") {
    const CptpReport id = cptp_check(Mat::Identity(4, 4));
    CHECK(id.min_choi_eigenvalue == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(id.trace_residual == 0.0);
    Vec omega = Vec::Zero(4);
    omega(0) = omega(3) = 1.0;
    CHECK(max_abs(choi_matrix(Mat::Identity(4, 4)) - omega * omega.adjoint()) == 0.0);
    CHECK(cptp_check(transpose_map(2)).min_choi_eigenvalue == doctest::Approx(-1.0));
    // amplitude damping with a trace-increasing error
    Mat M = Mat::Identity(4, 4);
    M(0, 0) = 1.1;
    CHECK(cptp_check(M).trace_residual == doctest::Approx(0.1));
}

TEST_CASE("GKLS semigroups of analytic presets are CPTP") {
    for (const char* name : {"dephasing", "star-bath"}) {
        const Preset p = preset(name);
        const DaviesGenerator A =
            natural_average(davies_K(p.model.H_S, p.model.W, *p.phi), bohr_decomposition(p.model.H_S));
        for (double tau : {0.1, 1.0, 10.0}) {
            const CptpReport r = cptp_check(gkls_semigroup(A, tau));
            CHECK(r.min_choi_eigenvalue >= -1e-8);
            CHECK(r.trace_residual <= 1e-10);
        }
    }
}

TEST_CASE("cutoff doubling stays within the tail bound") {
    const Preset p = preset("star-bath");
    DaviesOptions o;
    o.cutoff = 15.0;
    const DaviesGenerator a = davies_K(p.model.H_S, p.model.W, *p.phi, o);
    o.cutoff = 30.0;
    const DaviesGenerator b = davies_K(p.model.H_S, p.model.W, *p.phi, o);
    CHECK(a.tail_bound > 0.0);
    CHECK(probe(a.K_reduced - b.K_reduced) <= a.tail_bound);
}

TEST_CASE("finite-bath generator is window-limited") {
    const SystemBathModel m = preset_model("dephasing");
    const DaviesGenerator K = davies_K(m, 5.0);
    CHECK(K.window_limited);
    CHECK(std::isinf(K.tail_bound));
    CHECK_THROWS_AS(davies_K(m, 0.0), Error);
}

TEST_CASE("probe states") {
    const auto q = probe_states(2);
    CHECK(q.size() == 7u);
    for (const Mat& s : q) {
        CHECK(std::abs(s.trace() - 1.0) <= 1e-14);
        CHECK(hermiticity_residual(s) <= 1e-14);
    }
    CHECK(probe_states(3, 4).size() == 3u + 6u + 1u);
}

TEST_CASE("convergence sweep trivial cases") {
    const Preset p = preset("dephasing");
    SystemBathModel m = p.model;
    m.W = Mat::Zero(2, 2);
    const DaviesGenerator A =
        natural_average(davies_K(m.H_S, m.W, *p.phi), bohr_decomposition(m.H_S));
    for (const auto& r : vanhove_convergence(m, A, {0.5, 1.0}, {0.4, 0.2}, 100.0)) CHECK(r.error <= 1e-10);

    const DaviesGenerator B =
        natural_average(davies_K(p.model.H_S, p.model.W, *p.phi), bohr_decomposition(p.model.H_S));
    const auto rows = vanhove_convergence(p.model, B, {0.0, 0.2}, {0.2, 0.4}, 4.0);
    REQUIRE(rows.size() == 4u);
    CHECK(rows[0].tau == 0.0);
    CHECK(rows[0].lambda == 0.4);
    CHECK(rows[0].error <= 1e-12);
    CHECK(rows[1].error <= 1e-12);
    CHECK_FALSE(rows[2].flagged);
    CHECK(rows[3].flagged);  // 0.2 / 0.2^2 = 5 > 4
    CHECK_THROWS_AS(vanhove_convergence(p.model, B, {1.0}, {0.0}, 4.0), Error);
}

TEST_CASE("star-bath convergence decreases in lambda") {
    const Preset p = make_preset("star-bath", PresetOptions{0, 160, 0.1});
    const DaviesGenerator A =
        natural_average(davies_K(p.model.H_S, p.model.W, *p.phi), bohr_decomposition(p.model.H_S));
    const auto rows = vanhove_convergence(p.model, A, {1.0}, {0.4, 0.2, 0.1}, recurrence_window(p.model));
    REQUIRE(rows.size() == 3u);
    CHECK(rows[1].error < rows[0].error);
    CHECK(rows[2].error < rows[1].error);
    for (const auto& r : rows) CHECK_FALSE(r.flagged);
}

}
