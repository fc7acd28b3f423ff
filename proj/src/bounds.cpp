#include "vanhove/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "vanhove/dyson.hpp"
#include "vanhove/error.hpp"
#include "vanhove/nz.hpp"
#include "vanhove/quadrature.hpp"

namespace vanhove {

namespace {

double log_factorial(int n) { return std::lgamma(n + 1.0); }

// x^x with 0^0 = 1
double self_power(double x) { return x == 0.0 ? 1.0 : std::pow(x, x); }

void require_pair(int m, int k, int i) {
    require(m >= 0, ErrorKind::Precondition, "m must be >= 0");
    if (k <= i) fail(ErrorKind::Precondition, "simplex moment needs k > i");
    require(i >= 0 && k <= m + 1, ErrorKind::Precondition, "simplex moment needs 0 <= i < k <= m + 1");
}

}  // namespace

Kernel Kernel::reflect() const {
    auto g = f;
    return {name + "~", [g](double s) { return g(-s); }};
}

Kernel kernel_by_name(const std::string& name, double scale) {
    require(scale > 0.0, ErrorKind::Config, "kernel scale must be > 0");
    if (name == "one") return {name, [](double) { return 1.0; }};
    if (name == "zero") return {name, [](double) { return 0.0; }};
    if (name == "exp" || name == "exponential")
        return {"exp", [scale](double s) { return std::exp(-std::abs(s) / scale); }};
    if (name == "exp_right")
        return {name, [scale](double s) { return s >= 0.0 ? std::exp(-s / scale) : 0.0; }};
    if (name == "inverse_square")
        return {name, [scale](double s) {
                    const double u = 1.0 + std::abs(s) / scale;
                    return 1.0 / (u * u);
                }};
    fail(ErrorKind::Config, "unknown kernel '" + name + "'");
}

std::vector<std::string> kernel_names() { return {"one", "zero", "exp", "exp_right", "inverse_square"}; }

double weighted_l1_norm(const Kernel& g, double eps) {
    if (g.name == "one") return std::numeric_limits<double>::infinity();
    boost::math::quadrature::exp_sinh<double> integrator;
    auto half = [&](double sign) {
        auto h = [&](double s) { return std::abs(g(sign * s)) * std::pow(1.0 + s, eps); };
        try {
            return integrator.integrate(h, 1e-12);
        } catch (const std::exception&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    return half(1.0) + half(-1.0);
}

double simplex_moment(const Kernel& g, int m, int k, int i, double t) {
    require_pair(m, k, i);
    require(t >= 0.0, ErrorKind::Precondition, "t must be >= 0");
    if (t == 0.0) return 0.0;
    const int a = k - i - 1, b = m - k + i + 1;
    const double la = log_factorial(a), lb = log_factorial(b);
    const double norm = std::exp(-la - lb);
    auto f = [&](double s) {
        const double ps = (a == 0) ? 1.0 : std::pow(s, a);
        const double pt = (b == 0) ? 1.0 : std::pow(t - s, b);
        return g(s) * ps * pt * norm;
    };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, t, 20, 1e-14);
}

double simplex_moment_bruteforce(const Kernel& g, int m, int k, int i, double t, int nodes) {
    require_pair(m, k, i);
    if (m > 4) fail(ErrorKind::Capability, "nested simplex quadrature is limited to m <= 4");
    const SimplexGrid grid = make_simplex_grid(m + 1, t, nodes);
    double sum = 0.0;
    for (std::size_t p = 0; p < grid.size(); ++p) {
        const double* z = grid.node(p);
        const double zk = z[k - 1];
        const double zi = (i == 0) ? 0.0 : z[i - 1];
        sum += grid.weights[p] * g(zk - zi);
    }
    return sum;
}

MonteCarloEstimate simplex_moment_mc(const Kernel& g, int m, int k, int i, double t, std::size_t samples,
                                     std::uint64_t seed) {
    require_pair(m, k, i);
    require(samples >= 2, ErrorKind::Precondition, "Monte Carlo needs at least two samples");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, t);
    std::vector<double> z(m + 2, 0.0);
    double mean = 0.0, m2 = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (int j = 1; j <= m + 1; ++j) z[j] = U(rng);
        std::sort(z.begin() + 1, z.end());
        const double x = g(z[k] - z[i]);
        const double delta = x - mean;
        mean += delta / static_cast<double>(s + 1);
        m2 += delta * (x - mean);
    }
    const double vol = std::exp((m + 1) * std::log(t) - log_factorial(m + 1));
    const double var = m2 / static_cast<double>(samples - 1);
    return {vol * mean, vol * std::sqrt(var / static_cast<double>(samples))};
}

double xi_candidate(int m, int k, int i, double eps) {
    require(k > i + 1 && i >= 0 && k <= m + 1, ErrorKind::Precondition, "xi candidate needs a gapped pair k > i + 1");
    const int a = k - i - 1, b = m - k + i + 1;
    return self_power(a - eps) * self_power(b) /
           (self_power(m - eps) * std::exp(log_factorial(a) + log_factorial(b)));
}

double xi_eps(int m, double eps) {
    require(m >= 1, ErrorKind::Precondition, "xi needs m >= 1");
    require(eps > 0.0 && eps < 1.0, ErrorKind::Precondition, "xi needs eps in (0, 1)");
    double best = 0.0;
    for (int k = 0; k <= m + 1; ++k)
        for (int i = 0; i + 1 < k; ++i) best = std::max(best, xi_candidate(m, k, i, eps));
    return best;
}

double xi_closed_max(int a, int b, double eps, double t) {
    const double m = a + b;
    return self_power(a - eps) * self_power(b) * std::pow(t, m - eps) / self_power(m - eps);
}

double xi_numeric_max(int a, int b, double eps, double t) {
    require(a >= 1 && b >= 0, ErrorKind::Precondition, "need a >= 1 and b >= 0");
    auto f = [&](double s) { return std::pow(s, a - eps) * (b == 0 ? 1.0 : std::pow(t - s, b)); };
    double best = std::max(f(0.0), f(t));
    if (b > 0) {
        // maximize the concave log on the open interval
        auto neg_log = [&](double s) { return -((a - eps) * std::log(s) + b * std::log(t - s)); };
        auto r = boost::math::tools::brent_find_minima(neg_log, 1e-300, t * (1.0 - 1e-16),
                                                       std::numeric_limits<double>::digits);
        best = std::max(best, f(r.first));
    }
    return best;
}

EstimateCheck eps_estimate_check(const Kernel& g, int m, int k, int i, double t, double eps) {
    require_pair(m, k, i);
    if (k == i + 1)
        fail(ErrorKind::Precondition,
             "k = i + 1 leaves no gap between z_i and z_k; the epsilon estimate is only claimed for k > i + 1");
    EstimateCheck c;
    c.lhs = simplex_moment(g, m, k, i, t);
    c.rhs = weighted_l1_norm(g, eps) * xi_eps(m, eps) * std::pow(t, m - eps);
    return c;
}

ClusteringData::ClusteringData(double C_, Kernel f_, double eps_) : C(C_), f(std::move(f_)), epsilon(eps_) {
    require(C >= 0.0, ErrorKind::Config, "clustering constant C must be >= 0");
    require(epsilon > 0.0 && epsilon < 1.0, ErrorKind::Config, "clustering epsilon must lie in (0, 1)");
}

ClusteringData clustering_from(const CertificateSpec& s) {
    return ClusteringData(s.C, kernel_by_name(s.f_family, s.f_scale), s.epsilon);
}

double log_c_n(const ClusteringData& cd, double W_norm, int n) {
    require(n >= 0, ErrorKind::Precondition, "n must be >= 0");
    return (n + 2) * std::log(2.0 * cd.C * W_norm) - log_factorial(n / 2) + ((n + 1) / 2 + 1) * std::log(cd.l1());
}

double c_n(const ClusteringData& cd, double W_norm, int n) { return std::exp(log_c_n(cd, W_norm, n)); }

double log_d_m(const ClusteringData& cd, double W_norm, int m) {
    require(m >= 1, ErrorKind::Precondition, "m must be >= 1");
    return (2 * m + 2) * std::log(2.0 * cd.C * W_norm) - log_factorial(m) + log_factorial(2 * m + 2) +
           std::log(cd.l1_eps()) + std::log(xi_eps(m, cd.epsilon));
}

double d_m(const ClusteringData& cd, double W_norm, int m) { return std::exp(log_d_m(cd, W_norm, m)); }

double c_ratio(const ClusteringData& cd, double W_norm, int n, double s, double t) {
    return std::exp(log_c_n(cd, W_norm, n + 2) - log_c_n(cd, W_norm, n)) * s * s * t;
}

int lambda_exponent(int n) { return n - 2 * (n / 2); }

std::vector<std::vector<int>> enumerate_gapped(int n) {
    require(n >= 0, ErrorKind::Precondition, "n must be >= 0");
    if (n > 7) fail(ErrorKind::Capability, "full enumeration of gapped permutations is limited to n <= 7");
    std::vector<int> p(n + 2);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        if (std::abs(p[1] - p[0]) >= 2) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::uint64_t gapped_count(int n) {
    require(n >= 0 && n <= 18, ErrorKind::Capability, "gapped permutation count overflows beyond n = 18");
    const int N = n + 2;
    std::uint64_t pairs = 0;
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y)
            if (std::abs(x - y) >= 2) ++pairs;
    std::uint64_t rest = 1;
    for (int k = 2; k <= N - 2; ++k) rest *= static_cast<std::uint64_t>(k);
    return pairs * rest;
}

std::vector<BoundRow> verify_kn_bound(const SystemBathModel& model, const ClusteringData& cd, int n,
                                      const std::vector<double>& t_grid, int grid_order) {
    require(n >= 1 && n <= 3, ErrorKind::Capability, "bound check covers 1 <= n <= 3");
    const ProjectionPair pair = build_projections(model);
    const double w = spectral_norm(model.W);
    std::vector<BoundRow> rows;
    for (double t : t_grid) {
        const SuperOp K = pair.lift(k_n_bruteforce_reduced(model, n, make_simplex_grid(n + 1, t, grid_order)));
        const double lhs = superop_norm_estimate(K);
        const double rc = c_n(cd, w, n) * std::pow(t, n / 2);
        rows.push_back({n, t, "c_n", lhs, rc, lhs <= rc});
        if (n % 2 == 0) {
            const int m = n / 2;
            const double rd = d_m(cd, w, m) * std::pow(t, m - cd.epsilon);
            rows.push_back({n, t, "d_m", lhs, rd, lhs <= rd});
        }
    }
    return rows;
}

}  // namespace vanhove
