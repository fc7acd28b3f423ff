#include <cmath>
#include <numeric>

#include "doctest.h"
#include "vanhove/parallel.hpp"
#include "vanhove/quadrature.hpp"

using namespace vanhove;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {1, 2, 5, 12, 16, 33}) {
        const Rule r = gauss_legendre(n, 0.0, 2.0);
        CHECK(r.size() == static_cast<std::size_t>(n));
        const int deg = 2 * n - 1;
        double s = 0.0;
        for (std::size_t k = 0; k < r.size(); ++k) s += r.w[k] * std::pow(r.x[k], deg);
        const double exact = std::pow(2.0, deg + 1) / (deg + 1);
        CHECK(s == doctest::Approx(exact).epsilon(1e-13));
        CHECK(std::is_sorted(r.x.begin(), r.x.end()));
    }
}

TEST_CASE("composite rule") {
    const Rule r = composite_gauss_legendre(8, 0.0, 10.0, 5);
    CHECK(r.size() == 40u);
    double s = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) s += r.w[k] * std::sin(r.x[k]);
    CHECK(s == doctest::Approx(1.0 - std::cos(10.0)).epsilon(1e-13));
}

TEST_CASE("simplex grid nodes are ordered and weights sum to the volume") {
    for (int dim = 1; dim <= 4; ++dim) {
        const double t = 1.7;
        const SimplexGrid g = make_simplex_grid(dim, t, 6);
        double vol = 0.0;
        bool ordered = true;
        for (std::size_t k = 0; k < g.size(); ++k) {
            vol += g.weights[k];
            const double* z = g.node(k);
            if (z[0] < 0.0 || z[dim - 1] > t) ordered = false;
            for (int j = 0; j + 1 < dim; ++j)
                if (z[j] > z[j + 1]) ordered = false;
        }
        CHECK(ordered);
        CHECK(vol == doctest::Approx(std::pow(t, dim) / std::tgamma(dim + 1.0)).epsilon(1e-10));
    }
}

TEST_CASE("simplex grid integrates z_1 z_2 exactly") {
    // int_{0<=z1<=z2<=t} z1 z2 = t^4 / 8
    const SimplexGrid g = make_simplex_grid(2, 2.0, 4);
    double s = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) s += g.weights[k] * g.node(k)[0] * g.node(k)[1];
    CHECK(s == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("deterministic_sum does not depend on the worker count") {
    auto term = [](std::size_t k) { return 1.0 / (1.0 + static_cast<double>(k) * 0.37); };
    const double a = deterministic_sum<double>(1000, term, 0.0);
    std::vector<double> chunks;
    for (std::size_t c = 0; c < 1000; c += 32) {
        double acc = 0.0;
        for (std::size_t k = c; k < std::min<std::size_t>(1000, c + 32); ++k) acc += term(k);
        chunks.push_back(acc);
    }
    for (std::size_t stride = 1; stride < chunks.size(); stride *= 2)
        for (std::size_t i = 0; i + stride < chunks.size(); i += 2 * stride) chunks[i] += chunks[i + stride];
    CHECK(a == chunks[0]);
}

TEST_CASE("parallel_for visits every index once and propagates exceptions") {
    std::vector<int> hits(200, 0);
    parallel_for(hits.size(), [&](std::size_t k) { hits[k] += 1; });
    CHECK(std::accumulate(hits.begin(), hits.end(), 0) == 200);
    CHECK_THROWS(parallel_for(10, [](std::size_t k) {
        if (k == 3) throw std::runtime_error("boom");
    }));
}

}
