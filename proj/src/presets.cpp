#include "vanhove/presets.hpp"

#include <cmath>
#include <random>

#include "vanhove/error.hpp"

namespace vanhove {

namespace {

Mat pauli_x() {
    Mat m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Mat pauli_z() {
    Mat m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Vec basis_vector(Index d, Index k) {
    Vec v = Vec::Zero(d);
    v(k) = 1.0;
    return v;
}

Mat diag(std::initializer_list<double> e) {
    Mat m = Mat::Zero(static_cast<Index>(e.size()), static_cast<Index>(e.size()));
    Index i = 0;
    for (double x : e) {
        m(i, i) = x;
        ++i;
    }
    return m;
}

void fixed_bath_size(const std::string& name, const PresetOptions& o, int size) {
    if (o.bath_levels >= 0 && o.bath_levels != size)
        fail(ErrorKind::Config, "preset '" + name + "' has a fixed bath of " + std::to_string(size) + " levels");
}

// [W, H_S] = 0 qubit over a generic four-level bath.
Preset dephasing(const PresetOptions& o) {
    fixed_bath_size("dephasing", o, 4);
    Preset p;
    SystemBathModel& m = p.model;
    m.name = "dephasing";
    m.H_S = diag({0.0, 1.0});
    m.W = pauli_z();
    m.H_R = diag({0.0, 0.7, 1.3, 2.1});
    m.V = Mat(4, 4);
    m.V << cplx(0.0, 0.0), cplx(0.5, 0.0), cplx(0.3, 0.2), cplx(0.0, 0.4),
           cplx(0.5, 0.0), cplx(0.1, 0.0), cplx(0.2, -0.1), cplx(0.3, 0.0),
           cplx(0.3, -0.2), cplx(0.2, 0.1), cplx(-0.2, 0.0), cplx(0.25, 0.15),
           cplx(0.0, -0.4), cplx(0.3, 0.0), cplx(0.25, -0.15), cplx(0.05, 0.0);
    m.omega_R = basis_vector(4, 0);
    m.lambda = o.lambda;
    p.phi = make_analytic_correlation("exponential", 0.5, 1.0, 0.0);
    p.certificate = CertificateSpec{0.35, "exponential", 1.0, 0.5};
    return p;
}

// Qubit exchanging excitations with a band of levels around its splitting.
// Level 0 is the bath reference; band levels sit at midpoints of
// [Omega - B, Omega + B] with couplings sqrt(J(e_k) delta).
Preset star_bath(const PresetOptions& o) {
    const int N = o.bath_levels < 0 ? 5 : o.bath_levels;
    require(N >= 1, ErrorKind::Config, "star-bath needs at least one band level");
    constexpr double omega0 = 20.0, band = 4.0;
    Preset p;
    p.phi = make_analytic_correlation("exponential", 0.5, 1.0, omega0);
    SystemBathModel& m = p.model;
    m.name = "star-bath";
    m.H_S = diag({0.0, omega0});
    m.W = pauli_x();
    const Index dR = N + 1;
    m.H_R = Mat::Zero(dR, dR);
    m.V = Mat::Zero(dR, dR);
    const double delta = 2.0 * band / N;
    for (int k = 0; k < N; ++k) {
        const double e = omega0 - band + (k + 0.5) * delta;
        const double g = std::sqrt(p.phi->spectral_density(e) * delta);
        m.H_R(k + 1, k + 1) = e;
        m.V(k + 1, 0) = g;
        m.V(0, k + 1) = g;
    }
    m.omega_R = basis_vector(dR, 0);
    m.lambda = o.lambda;
    return p;
}

// V maps even bath levels {0,1} to odd {2,3}; U = diag(1,1,-1,-1) flips its sign.
Preset parity(const PresetOptions& o) {
    fixed_bath_size("parity", o, 4);
    Preset p;
    SystemBathModel& m = p.model;
    m.name = "parity";
    m.H_S = diag({0.0, 1.0});
    m.W = pauli_x();
    m.H_R = diag({0.0, 0.8, 1.1, 1.9});
    m.V = Mat::Zero(4, 4);
    m.V(0, 2) = cplx(0.6, 0.1);
    m.V(0, 3) = cplx(0.3, -0.2);
    m.V(1, 2) = cplx(0.4, 0.0);
    m.V(1, 3) = cplx(-0.2, 0.3);
    m.V = (m.V + m.V.adjoint()).eval();
    m.omega_R = basis_vector(4, 0);
    m.lambda = o.lambda;
    return p;
}

// Seeded Hermitian draws; H_R is compressed to kill Omega_R and V is centred.
Preset random_model(const PresetOptions& o) {
    const Index dR = o.bath_levels < 0 ? 4 : o.bath_levels;
    require(dR >= 2, ErrorKind::Config, "random preset needs at least two bath levels");
    std::mt19937_64 rng(o.seed);
    Preset p;
    SystemBathModel& m = p.model;
    m.name = "random";
    m.H_S = random_hermitian(2, rng);
    m.W = random_hermitian(2, rng);
    m.omega_R = random_unit_vector(dR, rng);
    const Mat Q = Mat::Identity(dR, dR) - m.omega_R * m.omega_R.adjoint();
    Mat HR = Q * random_hermitian(dR, rng) * Q;
    m.H_R = 0.5 * (HR + HR.adjoint());
    Mat V = random_hermitian(dR, rng);
    V -= m.omega_R.dot(V * m.omega_R) * Mat::Identity(dR, dR);
    m.V = 0.5 * (V + V.adjoint());
    m.lambda = o.lambda;
    return p;
}

}  // namespace

std::vector<std::string> preset_names() { return {"dephasing", "star-bath", "parity", "random"}; }

Preset make_preset(const std::string& name, const PresetOptions& opts) {
    if (name == "dephasing") return dephasing(opts);
    if (name == "star-bath") return star_bath(opts);
    if (name == "parity") return parity(opts);
    if (name == "random") return random_model(opts);
    fail(ErrorKind::Config, "unknown preset '" + name + "'");
}

}  // namespace vanhove
