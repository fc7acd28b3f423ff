// diagram.hpp - contiguous noncrossing partitions and the diagrammatic K_n

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vanhove/model.hpp"
#include "vanhove/nz.hpp"
#include "vanhove/quadrature.hpp"

namespace vanhove {

// Ordered contiguous blocks of (0, 1, ..., n), each of length >= 2.
// These are compositions of n + 1 into parts >= 2.
struct NoncrossingPartition {
    int n = 0;
    std::vector<std::vector<int>> blocks;
    std::size_t size() const { return blocks.size(); }
    bool operator==(const NoncrossingPartition&) const = default;
};

std::vector<NoncrossingPartition> enumerate_nc(int n);
// |NC_n| from count(k) = sum_{j>=2} count(k - j) over compositions of n + 1
std::uint64_t count_nc(int n);

// Subset of {0, ..., n+1}.
struct IndexSubset {
    int n = 0;
    std::uint64_t mask = 0;

    bool contains(int k) const { return (mask >> k) & 1u; }
    int size() const;
    std::vector<int> members() const;
    static IndexSubset of(int n, const std::vector<int>& members);
};

// Members of block in A ascending, then the rest descending.
std::vector<int> rearrange(const std::vector<int>& block, const IndexSubset& A);

// Connected coefficient sum_{d in NC_{n+1}} (-1)^{|d|+1} prod_s tr(prod_{k in d_s^A} V_k omega_R)
// for z = (z_1, ..., z_{n+1}) with z_0 = 0. n <= 6.
cplx g_n(const SystemBathModel& model, const IndexSubset& A, const std::vector<double>& z);

// sum_A (-1)^{|A|} G_n(A, z) [sigma -> (prod_{j not in A, decreasing} W_j) sigma (prod_{k in A, increasing} W_k)]
Mat diagram_integrand_reduced(const SystemBathModel& model, const std::vector<double>& z);
SuperOp diagram_integrand(const SystemBathModel& model, const ProjectionPair& pair, const std::vector<double>& z);

Mat k_n_combinatorial_reduced(const SystemBathModel& model, int n, const SimplexGrid& grid);
SuperOp k_n_combinatorial(const SystemBathModel& model, const ProjectionPair& pair, int n, double t,
                          const SimplexGrid& grid);

// Scale (|W| |V|)^{n+2} used as the floor of relative integrand deviations.
double integrand_scale(const SystemBathModel& model, int n);
// |A - B|_F / max(|A|_F, integrand_scale)
double integrand_deviation(const SystemBathModel& model, int n, const Mat& A, const Mat& B);

// Deviation between P L Q ... Q L P and the signed sum over NC_{n+1} of
// P-sandwiched block products with reversed blocks.
double verify_pqp_expansion(const SystemBathModel& model, const ProjectionPair& pair, const std::vector<double>& z);

// Text rendering of the (A, d) term of K_n; d partitions (0, ..., n+1).
std::string render_diagram(int n, const IndexSubset& A, const NoncrossingPartition& d);

// "2,4" (empty, "-" or "none" for the empty set)
IndexSubset parse_subset(int n, const std::string& spec);
// "0-1/2-5"
NoncrossingPartition parse_partition(int n, const std::string& spec);

}  // namespace vanhove
