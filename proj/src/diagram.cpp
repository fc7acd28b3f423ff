#include "vanhove/diagram.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

#include "vanhove/dyson.hpp"
#include "vanhove/error.hpp"
#include "vanhove/parallel.hpp"

namespace vanhove {

namespace {

void compositions(int start, int last, std::vector<std::vector<int>>& cur, std::vector<NoncrossingPartition>& out,
                  int n) {
    if (start == last + 1) {
        out.push_back({n, cur});
        return;
    }
    for (int len = 2; start + len - 1 <= last; ++len) {
        std::vector<int> block(len);
        for (int k = 0; k < len; ++k) block[k] = start + k;
        cur.push_back(std::move(block));
        compositions(start + len, last, cur, out, n);
        cur.pop_back();
    }
}

std::vector<double> with_origin(const std::vector<double>& z) {
    std::vector<double> full{0.0};
    full.insert(full.end(), z.begin(), z.end());
    return full;
}

}  // namespace

std::vector<NoncrossingPartition> enumerate_nc(int n) {
    require(n >= 1, ErrorKind::Precondition, "NC_n needs n >= 1");
    std::vector<NoncrossingPartition> out;
    std::vector<std::vector<int>> cur;
    compositions(0, n, cur, out, n);
    return out;
}

std::uint64_t count_nc(int n) {
    require(n >= 1, ErrorKind::Precondition, "NC_n needs n >= 1");
    std::vector<std::uint64_t> c(n + 2, 0);
    c[0] = 1;
    for (int k = 2; k <= n + 1; ++k)
        for (int j = 2; j <= k; ++j) c[k] += c[k - j];
    return c[n + 1];
}

int IndexSubset::size() const { return std::popcount(mask); }

std::vector<int> IndexSubset::members() const {
    std::vector<int> out;
    for (int k = 0; k <= n + 1; ++k)
        if (contains(k)) out.push_back(k);
    return out;
}

IndexSubset IndexSubset::of(int n, const std::vector<int>& members) {
    require(n >= 0 && n + 2 <= 62, ErrorKind::Precondition, "index subset order out of range");
    IndexSubset A{n, 0};
    for (int k : members) {
        require(k >= 0 && k <= n + 1, ErrorKind::Precondition,
                "subset member " + std::to_string(k) + " outside 0.." + std::to_string(n + 1));
        A.mask |= std::uint64_t{1} << k;
    }
    return A;
}

std::vector<int> rearrange(const std::vector<int>& block, const IndexSubset& A) {
    for (std::size_t i = 1; i < block.size(); ++i)
        require(block[i] > block[i - 1], ErrorKind::Precondition, "block must be strictly increasing");
    std::vector<int> out;
    for (int k : block)
        if (A.contains(k)) out.push_back(k);
    for (auto it = block.rbegin(); it != block.rend(); ++it)
        if (!A.contains(*it)) out.push_back(*it);
    return out;
}

namespace {

struct BathTimes {
    std::vector<Mat> V;
    Vec omega;

    cplx correlator(const std::vector<int>& order) const {
        Vec v = omega;
        for (auto it = order.rbegin(); it != order.rend(); ++it) v = V[*it] * v;
        return omega.dot(v);
    }
};

BathTimes bath_times(const SystemBathModel& m, const std::vector<double>& z) {
    HeisenbergEvolution bath(m.H_R);
    BathTimes b;
    b.omega = m.omega_R;
    for (double t : with_origin(z)) b.V.push_back(bath(m.V, t));
    return b;
}

cplx g_from(const BathTimes& b, const std::vector<NoncrossingPartition>& parts, const IndexSubset& A) {
    cplx total = 0.0;
    for (const auto& d : parts) {
        cplx prod = (d.size() % 2 == 1) ? 1.0 : -1.0;  // (-1)^{|d|+1}
        for (const auto& block : d.blocks) prod *= b.correlator(rearrange(block, A));
        total += prod;
    }
    return total;
}

void require_times(const std::vector<double>& z) {
    require(!z.empty(), ErrorKind::Precondition, "time vector must hold z_1..z_{n+1}");
    double prev = 0.0;
    for (double zk : z) {
        require(zk >= prev, ErrorKind::Precondition, "time vector must be nondecreasing from z_0 = 0");
        prev = zk;
    }
}

}  // namespace

cplx g_n(const SystemBathModel& m, const IndexSubset& A, const std::vector<double>& z) {
    require_times(z);
    const int n = static_cast<int>(z.size()) - 1;
    require(n >= 0 && n <= 6, ErrorKind::Capability, "G_n evaluation is limited to n <= 6");
    require(A.n == n, ErrorKind::Precondition, "subset order differs from time vector");
    return g_from(bath_times(m, z), enumerate_nc(n + 1), A);
}

Mat diagram_integrand_reduced(const SystemBathModel& m, const std::vector<double>& z) {
    require_times(z);
    const int n = static_cast<int>(z.size()) - 1;
    require(n >= 0 && n <= 6, ErrorKind::Capability, "G_n evaluation is limited to n <= 6");
    const Index dS = m.dS();
    const BathTimes bath = bath_times(m, z);
    const auto parts = enumerate_nc(n + 1);
    HeisenbergEvolution sys(m.H_S);
    std::vector<Mat> W;
    for (double t : with_origin(z)) W.push_back(sys(m.W, t));

    const int K = n + 2;
    Mat M = Mat::Zero(dS * dS, dS * dS);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << K); ++mask) {
        const IndexSubset A{n, mask};
        const cplx g = g_from(bath, parts, A);
        Mat L = Mat::Identity(dS, dS), R = Mat::Identity(dS, dS);
        for (int j = K - 1; j >= 0; --j)
            if (!A.contains(j)) L = L * W[j];
        for (int k = 0; k < K; ++k)
            if (A.contains(k)) R = R * W[k];
        const double sign = (A.size() % 2 == 0) ? 1.0 : -1.0;
        M += (sign * g) * kron(R.transpose(), L);
    }
    return M;
}

SuperOp diagram_integrand(const SystemBathModel& m, const ProjectionPair& pair, const std::vector<double>& z) {
    return pair.lift(diagram_integrand_reduced(m, z));
}

Mat k_n_combinatorial_reduced(const SystemBathModel& m, int n, const SimplexGrid& grid) {
    require(n >= 1, ErrorKind::Precondition, "K_n needs n >= 1");
    require(grid.dim == n + 1, ErrorKind::Precondition, "simplex grid dimension must be n + 1");
    require_valid(m);
    const Index s2 = m.dS() * m.dS();
    return deterministic_sum<Mat>(
        grid.size(),
        [&](std::size_t k) {
            std::vector<double> z(grid.node(k), grid.node(k) + grid.dim);
            return Mat(grid.weights[k] * diagram_integrand_reduced(m, z));
        },
        Mat::Zero(s2, s2));
}

SuperOp k_n_combinatorial(const SystemBathModel& m, const ProjectionPair& pair, int n, double t,
                          const SimplexGrid& grid) {
    require(std::abs(grid.t - t) <= 1e-14 * (1.0 + t), ErrorKind::Precondition, "grid horizon differs from t");
    return pair.lift(k_n_combinatorial_reduced(m, n, grid));
}

double integrand_scale(const SystemBathModel& m, int n) {
    return std::pow(spectral_norm(m.W) * spectral_norm(m.V), n + 2);
}

double integrand_deviation(const SystemBathModel& m, int n, const Mat& A, const Mat& B) {
    const double floor = integrand_scale(m, n);
    const double denom = std::max(A.norm(), floor);
    return denom > 0.0 ? (A - B).norm() / denom : (A - B).norm();
}

double verify_pqp_expansion(const SystemBathModel& m, const ProjectionPair& pair, const std::vector<double>& z) {
    require_times(z);
    const int n = static_cast<int>(z.size()) - 1;
    require(n >= 1, ErrorKind::Precondition, "expansion needs n >= 1");
    InteractionPicture ip(m);
    std::vector<SuperOp> L;
    for (double t : with_origin(z)) L.push_back(commutator_superop(ip.coupling(t)));
    const SuperOp lhs = dyson_integrand(m, pair, z);
    const SuperOp& P = pair.P;
    Mat rhs = Mat::Zero(lhs.m.rows(), lhs.m.cols());
    for (const auto& d : enumerate_nc(n + 1)) {
        Mat chain = Mat::Identity(lhs.m.rows(), lhs.m.cols());
        for (auto bj = d.blocks.rbegin(); bj != d.blocks.rend(); ++bj) {
            Mat f = P.m;
            for (auto k = bj->rbegin(); k != bj->rend(); ++k) f = f * L[*k].m;
            chain = chain * (f * P.m);
        }
        rhs += (d.size() % 2 == 1 ? 1.0 : -1.0) * chain;
    }
    return integrand_deviation(m, n, lhs.m, rhs);
}

std::string render_diagram(int n, const IndexSubset& A, const NoncrossingPartition& d) {
    require(n >= 1, ErrorKind::Precondition, "diagram needs n >= 1");
    require(A.n == n, ErrorKind::Precondition, "subset order differs from n");
    require(d.n == n + 1, ErrorKind::Precondition, "partition must cover 0.." + std::to_string(n + 1));
    const int K = n + 2;
    std::ostringstream os;
    auto tuple = [](const std::vector<int>& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + ")";
    };
    os << "K_" << n << " term  A = {";
    auto am = A.members();
    for (std::size_t i = 0; i < am.size(); ++i) os << (i ? "," : "") << am[i];
    os << "}  d = ";
    for (const auto& b : d.blocks) os << tuple(b);
    os << "\n\n";

    std::string rail;
    for (int j = K - 1; j >= 0; --j)
        if (!A.contains(j)) rail += "W" + std::to_string(j) + " ";
    rail += "[sigma]";
    for (int k = 0; k < K; ++k)
        if (A.contains(k)) rail += " W" + std::to_string(k);
    os << "  W  " << rail << "\n\n";

    constexpr int col = 4;
    std::string axis = "  z  ";
    for (int k = 0; k < K; ++k) {
        std::string lab = std::to_string(k);
        axis += lab + std::string(col - lab.size(), ' ');
    }
    while (!axis.empty() && axis.back() == ' ') axis.pop_back();
    os << axis << "\n";

    for (std::size_t s = 0; s < d.size(); ++s) {
        const auto& block = d.blocks[s];
        std::string row = "  V  ";
        for (int k = 0; k < K; ++k) {
            const bool in = std::find(block.begin(), block.end(), k) != block.end();
            const bool inside = k >= block.front() && k < block.back();
            row += in ? 'o' : (k > block.front() && k < block.back() ? '-' : ' ');
            row += std::string(col - 1, inside ? '-' : ' ');
        }
        while (!row.empty() && row.back() == ' ') row.pop_back();
        const std::string label = "d" + std::to_string(s + 1) + "^A = " + tuple(rearrange(block, A));
        const std::size_t width = 5 + col * K;
        if (row.size() < width) row += std::string(width - row.size(), ' ');
        os << row << label << "\n";
    }
    return os.str();
}

IndexSubset parse_subset(int n, const std::string& spec) {
    std::vector<int> members;
    if (!(spec.empty() || spec == "-" || spec == "none")) {
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                std::size_t used = 0;
                int k = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                members.push_back(k);
            } catch (const std::logic_error&) {
                fail(ErrorKind::Parse, "bad subset entry '" + tok + "'");
            }
        }
    }
    IndexSubset A = IndexSubset::of(n, members);
    return A;
}

NoncrossingPartition parse_partition(int n, const std::string& spec) {
    NoncrossingPartition d;
    d.n = n + 1;
    std::stringstream ss(spec);
    std::string tok;
    int expect = 0;
    while (std::getline(ss, tok, '/')) {
        int lo = 0, hi = 0;
        const auto dash = tok.find('-');
        try {
            std::size_t u1 = 0, u2 = 0;
            if (dash == std::string::npos) {
                lo = hi = std::stoi(tok, &u1);
                if (u1 != tok.size()) throw std::invalid_argument(tok);
            } else {
                std::string a = tok.substr(0, dash), b = tok.substr(dash + 1);
                lo = std::stoi(a, &u1);
                hi = std::stoi(b, &u2);
                if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument(tok);
            }
        } catch (const std::logic_error&) {
            fail(ErrorKind::Parse, "bad block '" + tok + "'; expected a-b");
        }
        if (hi - lo + 1 < 2)
            fail(ErrorKind::Parse, "block '" + tok + "' has length " + std::to_string(std::max(0, hi - lo + 1)) +
                                       "; every block must have length >= 2");
        if (lo != expect)
            fail(ErrorKind::Parse, "block '" + tok + "' must start at " + std::to_string(expect) +
                                       "; blocks must be contiguous and in order");
        std::vector<int> block;
        for (int k = lo; k <= hi; ++k) block.push_back(k);
        d.blocks.push_back(std::move(block));
        expect = hi + 1;
    }
    if (expect != n + 2)
        fail(ErrorKind::Parse, "blocks must cover 0.." + std::to_string(n + 1));
    return d;
}

}  // namespace vanhove
