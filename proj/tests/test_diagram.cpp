#include <algorithm>
#include <optional>

#include "doctest.h"
#include "helpers.hpp"
#include "vanhove/diagram.hpp"
#include "vanhove/dyson.hpp"
#include "vanhove/error.hpp"

using namespace vanhove;
using namespace vh_test;

namespace {

using Blocks = std::vector<std::vector<int>>;

// All ways to cut (0..n) into contiguous runs, keeping those with every run >= 2.
std::vector<Blocks> exhaustive_nc(int n) {
    std::vector<Blocks> out;
    for (std::uint32_t cuts = 0; cuts < (1u << n); ++cuts) {
        Blocks b{{0}};
        for (int k = 1; k <= n; ++k) {
            if ((cuts >> (k - 1)) & 1u) b.emplace_back();
            b.back().push_back(k);
        }
        if (std::all_of(b.begin(), b.end(), [](const auto& x) { return x.size() >= 2; })) out.push_back(b);
    }
    return out;
}

std::vector<double> with_zero(const std::vector<double>& z) {
    std::vector<double> out{0.0};
    out.insert(out.end(), z.begin(), z.end());
    return out;
}

cplx tr_omega(const Mat& M, const SystemBathModel& m) { return m.omega_R.dot(M * m.omega_R); }

}  // namespace

TEST_SUITE("diagram") {

TEST_CASE("NC examples") {
    auto nc = enumerate_nc(2);
    REQUIRE(nc.size() == 1u);
    CHECK(nc[0].blocks == Blocks{{0, 1, 2}});

    nc = enumerate_nc(3);
    REQUIRE(nc.size() == 2u);
    const auto has = [&](const Blocks& b) {
        return std::any_of(nc.begin(), nc.end(), [&](const auto& d) { return d.blocks == b; });
    };
    CHECK(has({{0, 1, 2, 3}}));
    CHECK(has({{0, 1}, {2, 3}}));

    nc = enumerate_nc(7);
    CHECK(has({{0, 1}, {2, 3, 4}, {5, 6, 7}}));
    CHECK(has({{0, 1, 2}, {3, 4, 5}, {6, 7}}));

    CHECK(enumerate_nc(4).size() == 3u);
    CHECK(enumerate_nc(1).size() == 1u);
    CHECK_THROWS_AS(enumerate_nc(0), Error);
}

TEST_CASE("NC enumeration matches exhaustive generation and the composition recurrence") {
    for (int n = 1; n <= 12; ++n) {
        INFO(n);
        const auto nc = enumerate_nc(n);
        const auto ex = exhaustive_nc(n);
        CHECK(nc.size() == ex.size());
        CHECK(count_nc(n) == ex.size());
        for (const auto& d : nc) {
            CHECK(std::find(ex.begin(), ex.end(), d.blocks) != ex.end());
            int next = 0, total = 0;
            for (const auto& b : d.blocks) {
                CHECK(b.size() >= 2u);
                for (int k : b) CHECK(k == next++);
                total += static_cast<int>(b.size());
            }
            CHECK(total == n + 1);
        }
        // count(n) = count(n-2) + count(n-3) + ... + 1
        if (n >= 3) {
            std::uint64_t s = 1;
            for (int j = 1; j <= n - 2; ++j) s += count_nc(j);
            CHECK(count_nc(n) == s);
        }
    }
}

TEST_CASE("rearrangement") {
    const IndexSubset A = IndexSubset::of(7, {1, 3, 5, 6});
    CHECK(rearrange({0, 1}, A) == std::vector<int>{1, 0});
    CHECK(rearrange({5, 6, 7, 8}, A) == std::vector<int>{5, 6, 8, 7});
    const IndexSubset none = IndexSubset::of(7, {});
    CHECK(rearrange({2, 3, 4}, none) == std::vector<int>{4, 3, 2});
    const IndexSubset all = IndexSubset::of(3, {0, 1, 2, 3, 4});
    CHECK(rearrange({0, 1, 2, 3, 4}, all) == std::vector<int>{0, 1, 2, 3, 4});
    CHECK_THROWS_AS(rearrange({2, 1}, A), Error);
    CHECK_THROWS_AS(IndexSubset::of(2, {4}), Error);
}

TEST_CASE("G_1 and G_2 examples") {
    const SystemBathModel m = preset_model("random", 8, 3);
    std::mt19937_64 rng(1);
    const auto z = random_sorted_z(2, 2.0, rng);
    const auto zz = with_zero(z);
    std::vector<Mat> V;
    for (double t : zz) V.push_back(heisenberg_V(m, t));
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
        IndexSubset A{1, mask};
        Mat prod = Mat::Identity(3, 3);
        for (int k : rearrange({0, 1, 2}, A)) prod = prod * V[k];
        CHECK(std::abs(g_n(m, A, z) - tr_omega(prod, m)) <= 1e-13);
    }

    const auto z3 = random_sorted_z(3, 2.0, rng);
    std::vector<Mat> U;
    for (double t : with_zero(z3)) U.push_back(heisenberg_V(m, t));
    const cplx expect = tr_omega(U[3] * U[2] * U[1] * U[0], m) - tr_omega(U[3] * U[2], m) * tr_omega(U[1] * U[0], m);
    CHECK(std::abs(g_n(m, IndexSubset::of(2, {}), z3) - expect) <= 1e-13);

    SystemBathModel zero = m;
    zero.V = Mat::Zero(3, 3);
    CHECK(g_n(zero, IndexSubset::of(2, {1}), z3) == cplx(0.0));
    CHECK_THROWS_AS(g_n(m, IndexSubset::of(2, {}), z), Error);
}

TEST_CASE("G_n at coincident times is the signed moment sum") {
    const SystemBathModel m = preset_model("dephasing");
    for (int n = 1; n <= 5; ++n) {
        std::vector<double> mom(n + 3, 0.0);
        Mat Vk = Mat::Identity(4, 4);
        for (int k = 0; k <= n + 2; ++k, Vk = Vk * m.V) mom[k] = tr_omega(Vk, m).real();
        double expect = 0.0;
        for (const auto& d : enumerate_nc(n + 1)) {
            double p = d.size() % 2 == 1 ? 1.0 : -1.0;
            for (const auto& b : d.blocks) p *= mom[b.size()];
            expect += p;
        }
        const std::vector<double> z(n + 1, 0.0);
        for (std::uint64_t mask : {0ull, 1ull, 5ull}) CHECK(std::abs(g_n(m, IndexSubset{n, mask}, z) - expect) <= 1e-12);
    }
}

TEST_CASE("integrand identity on every preset") {
    std::mt19937_64 rng(2);
    for (const auto& name : preset_names()) {
        const SystemBathModel m = preset_model(name, 3);
        for (int n = 1; n <= 3; ++n)
            for (int s = 0; s < 50; ++s) {
                const auto z = random_sorted_z(n + 1, 3.0, rng);
                const double dev =
                    integrand_deviation(m, n, dyson_integrand_reduced(m, z), diagram_integrand_reduced(m, z));
                INFO(name << " n=" << n);
                CHECK(dev <= 1e-10);
            }
    }
}

TEST_CASE("n = 1 integrand reproduces the eight-term expansion") {
    const SystemBathModel m = preset_model("random", 9, 3);
    std::mt19937_64 rng(3);
    const auto z = random_sorted_z(2, 1.5, rng);
    const auto zz = with_zero(z);
    std::vector<Mat> V, W;
    for (double t : zz) {
        V.push_back(heisenberg_V(m, t));
        W.push_back(heisenberg_W(m, t));
    }
    const Mat w = m.omega_R_proj();
    auto tr = [](const Mat& M) { return M.trace(); };
    const Mat sigma = random_density(2, rng);
    const Mat expect = tr(V[2] * V[1] * V[0] * w) * W[2] * W[1] * W[0] * sigma -
                       tr(V[1] * V[0] * w * V[2]) * W[1] * W[0] * sigma * W[2] -
                       tr(V[2] * V[0] * w * V[1]) * W[2] * W[0] * sigma * W[1] +
                       tr(V[0] * w * V[1] * V[2]) * W[0] * sigma * W[1] * W[2] -
                       tr(V[2] * V[1] * w * V[0]) * W[2] * W[1] * sigma * W[0] +
                       tr(V[1] * w * V[0] * V[2]) * W[1] * sigma * W[0] * W[2] +
                       tr(V[2] * w * V[0] * V[1]) * W[2] * sigma * W[0] * W[1] -
                       tr(w * V[0] * V[1] * V[2]) * sigma * W[0] * W[1] * W[2];
    const Mat diag = devectorize(diagram_integrand_reduced(m, z) * vectorize(sigma));
    const Mat dys = devectorize(dyson_integrand_reduced(m, z) * vectorize(sigma));
    CHECK(max_abs(diag - expect) <= 1e-12);
    CHECK(max_abs(dys - expect) <= 1e-12);
}

TEST_CASE("W = 1 collapses the integrand and the signed sum over A vanishes") {
    SystemBathModel m = preset_model("random", 10, 3);
    m.W = Mat::Identity(2, 2);
    std::mt19937_64 rng(4);
    for (int n = 1; n <= 3; ++n) {
        const auto z = random_sorted_z(n + 1, 2.0, rng);
        cplx s = 0.0;
        for (std::uint64_t mask = 0; mask < (1ull << (n + 2)); ++mask) {
            const IndexSubset A{n, mask};
            s += (A.size() % 2 == 0 ? 1.0 : -1.0) * g_n(m, A, z);
        }
        CHECK(std::abs(s) <= 1e-12);
        CHECK(max_abs(diagram_integrand_reduced(m, z)) <= 1e-12);
    }
}

TEST_CASE("combinatorial K_n equals brute force on the same grid") {
    const SystemBathModel m = preset_model("random", 11, 3);
    for (int n = 1; n <= 2; ++n) {
        const SimplexGrid g = make_simplex_grid(n + 1, 1.3, 6);
        const Mat a = k_n_bruteforce_reduced(m, n, g), b = k_n_combinatorial_reduced(m, n, g);
        CHECK(max_abs(a - b) <= 1e-10 * std::max(1.0, max_abs(a)));
    }
    const SimplexGrid g2 = make_simplex_grid(2, 1.3, 8);
    CHECK(max_abs(k_n_combinatorial_reduced(preset_model("parity"), 1, g2)) <= 1e-12);
    SystemBathModel f = m;
    f.W = Mat::Zero(2, 2);
    CHECK(max_abs(k_n_combinatorial_reduced(f, 2, make_simplex_grid(3, 1.0, 4))) == 0.0);
}

TEST_CASE("PQP expansion over partitions") {
    std::mt19937_64 rng(5);
    const SystemBathModel m = preset_model("random", 12, 2);
    const ProjectionPair p = build_projections(m);
    for (int n = 1; n <= 3; ++n)
        for (int s = 0; s < 10; ++s) CHECK(verify_pqp_expansion(m, p, random_sorted_z(n + 1, 2.0, rng)) <= 1e-10);
}

TEST_CASE("rendering") {
    const std::string art =
        render_diagram(4, parse_subset(4, "2,4"), parse_partition(4, "0-1/2-5"));
    CHECK(art.find("d2^A = (2,4,5,3)") != std::string::npos);
    CHECK(art.find("W5 W3 W1 W0 [sigma] W2 W4") != std::string::npos);
    CHECK(art.find("  V  o---o ") != std::string::npos);
    CHECK(art == render_diagram(4, parse_subset(4, "2,4"), parse_partition(4, "0-1/2-5")));

    const std::string one = render_diagram(1, parse_subset(1, "-"), parse_partition(1, "0-2"));
    CHECK(one.find("d1^A = (2,1,0)") != std::string::npos);
    CHECK(one.find("W2 W1 W0 [sigma]\n") != std::string::npos);
}

TEST_CASE("parse errors") {
    auto kind = [](auto f) -> std::optional<ErrorKind> {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return std::nullopt;
    };
    CHECK(kind([] { parse_partition(4, "0/1-5"); }) == ErrorKind::Parse);
    CHECK(kind([] { parse_partition(4, "0-1/3-5"); }) == ErrorKind::Parse);
    CHECK(kind([] { parse_partition(4, "0-1/2-4"); }) == ErrorKind::Parse);
    CHECK(kind([] { parse_partition(4, "0-x"); }) == ErrorKind::Parse);
    CHECK(kind([] { parse_subset(4, "2,a"); }) == ErrorKind::Parse);
    CHECK(kind([] { parse_subset(4, "7"); }) == ErrorKind::Precondition);
    CHECK(parse_subset(4, "none").size() == 0);
}

}
