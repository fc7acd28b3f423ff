#pragma once

#include <cstddef>
#include <vector>

namespace vanhove {

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
    std::size_t size() const { return x.size(); }
};

// Gauss-Legendre rule of runtime order n on [a, b].
Rule gauss_legendre(int n, double a = -1.0, double b = 1.0);
// n-point rule repeated on `panels` equal subintervals of [a, b].
Rule composite_gauss_legendre(int n, double a, double b, int panels);

// Tensor Gauss-Legendre on [0,1]^dim pushed onto the ordered simplex
// 0 <= z_1 <= ... <= z_dim <= t.
struct SimplexGrid {
    int dim = 0;
    double t = 0.0;
    int order = 0;
    std::vector<double> nodes;  // row-major, size() * dim entries
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
    const double* node(std::size_t k) const { return nodes.data() + k * dim; }
};

SimplexGrid make_simplex_grid(int dim, double t, int order = 12);

}  // namespace vanhove
