#include "vanhove/quadrature.hpp"

#include <algorithm>

#include <boost/math/special_functions/legendre.hpp>

#include "vanhove/error.hpp"

namespace vanhove {

Rule gauss_legendre(int n, double a, double b) {
    require(n >= 1, ErrorKind::Precondition, "Gauss-Legendre order must be >= 1");
    std::vector<double> pos = boost::math::legendre_p_zeros<double>(n);
    std::vector<double> x, w;
    x.reserve(n);
    w.reserve(n);
    auto weight = [n](double r) {
        double dp = boost::math::legendre_p_prime(n, r);
        return 2.0 / ((1.0 - r * r) * dp * dp);
    };
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
        if (*it == 0.0) continue;
        x.push_back(-*it);
        w.push_back(weight(*it));
    }
    for (double r : pos) {
        x.push_back(r);
        w.push_back(weight(r));
    }
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t k = 0; k < x.size(); ++k) {
        x[k] = mid + half * x[k];
        w[k] *= half;
    }
    return {x, w};
}

Rule composite_gauss_legendre(int n, double a, double b, int panels) {
    require(panels >= 1, ErrorKind::Precondition, "panel count must be >= 1");
    Rule out;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        Rule r = gauss_legendre(n, a + p * h, a + (p + 1) * h);
        out.x.insert(out.x.end(), r.x.begin(), r.x.end());
        out.w.insert(out.w.end(), r.w.begin(), r.w.end());
    }
    return out;
}

SimplexGrid make_simplex_grid(int dim, double t, int order) {
    require(dim >= 1, ErrorKind::Precondition, "simplex dimension must be >= 1");
    require(t >= 0.0, ErrorKind::Precondition, "simplex horizon must be >= 0");
    Rule r = gauss_legendre(order, 0.0, 1.0);
    SimplexGrid g;
    g.dim = dim;
    g.t = t;
    g.order = order;
    std::size_t total = 1;
    for (int k = 0; k < dim; ++k) total *= r.size();
    g.nodes.resize(total * dim);
    g.weights.resize(total);
    std::vector<std::size_t> idx(dim, 0);
    std::vector<double> z(dim);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t rem = k;
        for (int j = 0; j < dim; ++j) {
            idx[j] = rem % r.size();
            rem /= r.size();
        }
        // z_dim = t u_dim, z_j = z_{j+1} u_j; Jacobian t * prod_{j>=2} z_j
        double w = t;
        double upper = t;
        for (int j = dim - 1; j >= 0; --j) {
            z[j] = upper * r.x[idx[j]];
            w *= r.w[idx[j]];
            if (j >= 1) w *= z[j];
            upper = z[j];
        }
        std::copy(z.begin(), z.end(), g.nodes.begin() + k * dim);
        g.weights[k] = w;
    }
    return g;
}

}  // namespace vanhove
