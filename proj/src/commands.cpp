#include "vanhove/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "vanhove/bounds.hpp"
#include "vanhove/davies.hpp"
#include "vanhove/diagram.hpp"
#include "vanhove/dyson.hpp"
#include "vanhove/error.hpp"
#include "vanhove/nz.hpp"

namespace vanhove {

const char* version_string() { return "1.0.0"; }

KnMode parse_kn_mode(const std::string& s) {
    if (s == "brute") return KnMode::Brute;
    if (s == "diagram") return KnMode::Diagram;
    if (s == "both") return KnMode::Both;
    fail(ErrorKind::Config, "unknown kn mode '" + s + "' (expected brute, diagram or both)");
}

BoundsWhich parse_bounds_which(const std::string& s) {
    if (s == "lemmaA") return BoundsWhich::LemmaA;
    if (s == "xi") return BoundsWhich::Xi;
    if (s == "kn") return BoundsWhich::Kn;
    if (s == "constants") return BoundsWhich::Constants;
    fail(ErrorKind::Config, "unknown bounds check '" + s + "' (expected lemmaA, xi, kn or constants)");
}

namespace {

std::string num(double x) { return format_number(x); }
std::string num(long long x) { return std::to_string(x); }
std::string flag(bool b) { return b ? "true" : "false"; }

double rel_err(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

int count_failures(const Table& t) {
    const auto it = std::find(t.header.begin(), t.header.end(), "pass");
    if (it == t.header.end()) return 0;
    const std::size_t c = static_cast<std::size_t>(it - t.header.begin());
    int n = 0;
    for (const auto& r : t.rows)
        if (r[c] == "false") ++n;
    return n;
}

void finish(CommandResult& r) {
    const int f = count_failures(r.table);
    r.status = f > 0 ? 1 : 0;
    r.message = std::to_string(r.table.rows.size()) + " checks, " + std::to_string(f) + " failed";
}

std::vector<std::pair<int, int>> gapped_pairs(int m) {
    std::vector<std::pair<int, int>> out;
    for (int k = 0; k <= m + 1; ++k)
        for (int i = 0; i + 1 < k; ++i) out.emplace_back(k, i);
    return out;
}

Table lemma_a_table(const BoundsSection& b, std::uint64_t seed) {
    Table t{{"check", "kernel", "m", "k", "i", "t", "eps", "lhs", "rhs", "pass"}, {}};
    const int m_max = std::min(b.m_max, 4);
    for (const auto& name : b.kernels) {
        const Kernel g = kernel_by_name(name);
        for (int m = 0; m <= m_max; ++m)
            for (int k = 1; k <= m + 1; ++k)
                for (int i = 0; i < k; ++i)
                    for (double tt : b.t_grid) {
                        const double closed = simplex_moment(g, m, k, i, tt);
                        const double brute = simplex_moment_bruteforce(g, m, k, i, tt);
                        t.add({"identity", name, num(static_cast<long long>(m)), num(static_cast<long long>(k)),
                               num(static_cast<long long>(i)), num(tt), "", num(brute), num(closed),
                               flag(rel_err(brute, closed) <= 1e-6)});
                    }
        // one Monte Carlo row per (m, k, i) at t = 1
        for (int m = 0; m <= m_max; ++m)
            for (int k = 1; k <= m + 1; ++k)
                for (int i = 0; i < k; ++i) {
                    const double closed = simplex_moment(g, m, k, i, 1.0);
                    const auto mc = simplex_moment_mc(g, m, k, i, 1.0, b.mc_samples,
                                                      seed + static_cast<std::uint64_t>(100 * m + 10 * k + i));
                    const double dev = std::abs(mc.mean - closed);
                    const double tol = 3.0 * mc.stderr_ + 1e-12 * std::abs(closed);
                    t.add({"monte_carlo", name, num(static_cast<long long>(m)), num(static_cast<long long>(k)),
                           num(static_cast<long long>(i)), "1", "", num(dev), num(tol), flag(dev <= tol)});
                }
    }
    for (const auto& name : b.estimate_kernels) {
        const Kernel g = kernel_by_name(name);
        for (int m = 1; m <= std::min(b.m_max, 4); ++m) {
            for (const auto& [k, i] : gapped_pairs(m))
                for (double eps : b.eps_grid)
                    for (double tt : b.t_grid) {
                        const EstimateCheck c = eps_estimate_check(g, m, k, i, tt, eps);
                        t.add({"estimate", name, num(static_cast<long long>(m)), num(static_cast<long long>(k)),
                               num(static_cast<long long>(i)), num(tt), num(eps), num(c.lhs), num(c.rhs),
                               flag(c.pass())});
                    }
            for (int i = 0; i <= m; ++i) {
                bool rejected = false;
                try {
                    eps_estimate_check(g, m, i + 1, i, 1.0, b.eps_grid.front());
                } catch (const Error& e) {
                    rejected = e.kind() == ErrorKind::Precondition;
                }
                t.add({"estimate_rejects_adjacent", name, num(static_cast<long long>(m)),
                       num(static_cast<long long>(i + 1)), num(static_cast<long long>(i)), "1",
                       num(b.eps_grid.front()), "", "", flag(rejected)});
            }
        }
    }
    return t;
}

Table xi_table(const BoundsSection& b) {
    Table t{{"check", "m", "k", "i", "t", "eps", "lhs", "rhs", "pass"}, {}};
    for (int m = 1; m <= b.xi_m_max; ++m)
        for (double eps : b.eps_grid) {
            double best = 0.0;
            for (const auto& [k, i] : gapped_pairs(m)) {
                const int a = k - i - 1, bb = m - a;
                const double fact = std::exp(std::lgamma(a + 1.0) + std::lgamma(bb + 1.0));
                for (double tt : b.t_grid) {
                    const double numeric = xi_numeric_max(a, bb, eps, tt) / (std::pow(tt, m - eps) * fact);
                    const double cand = xi_candidate(m, k, i, eps);
                    if (tt == b.t_grid.front()) best = std::max(best, numeric);
                    t.add({"candidate", num(static_cast<long long>(m)), num(static_cast<long long>(k)),
                           num(static_cast<long long>(i)), num(tt), num(eps), num(numeric), num(cand),
                           flag(rel_err(numeric, cand) <= 1e-8)});
                }
            }
            const double xi = xi_eps(m, eps);
            t.add({"xi_value", num(static_cast<long long>(m)), "", "", num(b.t_grid.front()), num(eps), num(best),
                   num(xi), flag(rel_err(best, xi) <= 1e-8)});
        }
    return t;
}

Table constants_table(const BoundsSection& b, const ClusteringData& cd, double w) {
    Table t{{"check", "n", "lhs", "rhs", "pass"}, {}};
    double prev = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= b.constants_n_max; ++n) {
        const double r = c_ratio(cd, w, n, 1.0, 1.0);
        t.add({"c_ratio_nonincreasing", num(static_cast<long long>(n)), num(r), num(prev), flag(r <= prev * (1.0 + 1e-12))});
        prev = r;
    }
    {
        const int N = b.constants_n_max;
        const double r0 = c_ratio(cd, w, 0, 1.0, 1.0), rN = c_ratio(cd, w, N, 1.0, 1.0);
        const double bound = r0 / (N / 2 + 1) * (1.0 + 1e-9);
        t.add({"c_ratio_decay", num(static_cast<long long>(N)), num(rN), num(bound), flag(rN <= bound)});
    }
    for (int n = 0; n <= b.constants_n_max; ++n) {
        // lambda^n (tau / lambda^2)^{[n/2]}
        const int e = n - 2 * (n / 2);
        t.add({"lambda_exponent", num(static_cast<long long>(n)), num(static_cast<long long>(lambda_exponent(n))),
               num(static_cast<long long>(e)), flag(lambda_exponent(n) == e && e == n % 2)});
    }
    for (int n = 0; n <= 7; ++n) {
        const auto list = enumerate_gapped(n);
        const auto cnt = gapped_count(n);
        t.add({"gapped_count", num(static_cast<long long>(n)), num(static_cast<long long>(list.size())),
               num(static_cast<long long>(cnt)), flag(list.size() == cnt)});
    }
    return t;
}

}  // namespace

CommandResult cmd_validate(const RunConfig& cfg) {
    const Preset p = build_preset(cfg);
    const ValidationReport rep = validate(p.model);
    CommandResult r;
    r.table.header = {"check", "assumption", "residual", "tolerance", "pass"};
    std::vector<ValidationCheck> checks = rep.checks;
    if (p.model.d() <= 64) {
        const auto alg = verify_projection_algebra(p.model, build_projections(p.model));
        checks.insert(checks.end(), alg.begin(), alg.end());
    }
    std::vector<std::string> failed;
    for (const auto& c : checks) {
        r.table.add({c.name, c.assumption, num(c.residual), num(c.tolerance), flag(c.pass)});
        if (!c.pass && std::find(failed.begin(), failed.end(), c.assumption) == failed.end())
            failed.push_back(c.assumption);
    }
    r.status = failed.empty() ? 0 : 1;
    if (failed.empty()) {
        r.message = "model '" + p.model.name + "': all assumption checks pass";
    } else {
        r.message = "model '" + p.model.name + "' violates";
        for (const auto& f : failed) r.message += " " + f;
    }
    return r;
}

CommandResult cmd_kn(const RunConfig& cfg, int n, double t, KnMode mode) {
    require(n >= 0, ErrorKind::Precondition, "n must be >= 0");
    require(t >= 0.0, ErrorKind::Precondition, "t must be >= 0");
    if (mode != KnMode::Diagram && n > 3)
        fail(ErrorKind::Capability, "brute-force K_n is limited to n <= 3 (requested n = " + std::to_string(n) + ")");
    if (mode != KnMode::Brute && (n < 1 || n > 6))
        fail(ErrorKind::Capability, "diagrammatic K_n is available for 1 <= n <= 6");
    const Preset p = build_preset(cfg);
    require_valid(p.model);
    const SimplexGrid grid = make_simplex_grid(n + 1, t, cfg.quadrature.simplex_nodes);

    std::optional<Mat> brute, diag;
    if (mode != KnMode::Diagram) brute = k_n_bruteforce_reduced(p.model, n, grid);
    if (mode != KnMode::Brute) diag = k_n_combinatorial_reduced(p.model, n, grid);

    CommandResult r;
    r.table.header = {"row", "col"};
    if (brute) r.table.header.insert(r.table.header.end(), {"brute_re", "brute_im"});
    if (diag) r.table.header.insert(r.table.header.end(), {"diagram_re", "diagram_im"});
    const Mat& ref = brute ? *brute : *diag;
    for (Index c = 0; c < ref.cols(); ++c)
        for (Index row = 0; row < ref.rows(); ++row) {
            std::vector<std::string> cells{num(static_cast<long long>(row)), num(static_cast<long long>(c))};
            for (const auto* M : {brute ? &*brute : nullptr, diag ? &*diag : nullptr})
                if (M) {
                    cells.push_back(num((*M)(row, c).real()));
                    cells.push_back(num((*M)(row, c).imag()));
                }
            r.table.add(std::move(cells));
        }
    if (mode == KnMode::Both) {
        const Mat diff = *brute - *diag;
        const double residual =
            p.model.d() <= 64 ? max_abs(build_projections(p.model).lift(diff).m) : max_abs(diff);
        r.status = residual > 1e-8 ? 1 : 0;
        r.message = "max entrywise residual " + num(residual);
    } else {
        r.message = "K_" + std::to_string(n) + "(" + num(t) + ") max entry " + num(max_abs(ref));
    }
    return r;
}

CommandResult cmd_converge(const RunConfig& cfg) {
    const Preset p = build_preset(cfg);
    require_valid(p.model);
    const double window = effective_window(cfg, p);
    DaviesGenerator gen;
    if (p.phi) {
        DaviesOptions o;
        o.cutoff = cfg.sweep.cutoff;
        o.quad_order = cfg.quadrature.order;
        gen = davies_K(p.model.H_S, p.model.W, *p.phi, o);
    } else {
        const double T = cfg.sweep.cutoff > 0.0 ? cfg.sweep.cutoff : window;
        if (!std::isfinite(T))
            fail(ErrorKind::Config, "finite bath without recurrence time: set sweep.cutoff or a correlation family");
        gen = davies_K(p.model, T, cfg.quadrature.order);
    }
    gen = natural_average(gen, bohr_decomposition(p.model.H_S));
    const auto rows = vanhove_convergence(p.model, gen, cfg.sweep.tau_grid, cfg.sweep.lambda_grid, window,
                                          cfg.quadrature.seed);

    CommandResult r;
    r.table.header = {"lambda", "tau", "error", "flagged"};
    Table lt{{"lambda", "tau", "quantity", "value"}, {}};
    int flagged = 0;
    for (const auto& row : rows) {
        r.table.add({num(row.lambda), num(row.tau), num(row.error), flag(row.flagged)});
        lt.add({num(row.lambda), num(row.tau), "error", num(row.error)});
        lt.add({num(row.lambda), num(row.tau), "bath_time", num(row.tau / (row.lambda * row.lambda))});
        lt.add({num(row.lambda), num(row.tau), "flagged", row.flagged ? "1" : "0"});
        flagged += row.flagged ? 1 : 0;
    }
    r.long_table = std::move(lt);
    if (flagged > 0)
        r.warnings.push_back(std::to_string(flagged) + " row(s) have tau/lambda^2 beyond the recurrence window " +
                             num(window) + "; their errors are not meaningful for the limit");
    if (gen.window_limited)
        r.warnings.push_back("generator uses the finite-bath correlation cut at T = " + num(gen.cutoff) +
                             " (window-limited)");
    r.message = "preset=" + (cfg.model.explicit_model ? std::string("explicit") : cfg.model.preset) +
                " seed=" + std::to_string(cfg.quadrature.seed) + " version=" + version_string();
    return r;
}

CommandResult cmd_bounds(const RunConfig& cfg, BoundsWhich which) {
    CommandResult r;
    switch (which) {
        case BoundsWhich::LemmaA:
            r.table = lemma_a_table(cfg.bounds, cfg.quadrature.seed);
            break;
        case BoundsWhich::Xi:
            r.table = xi_table(cfg.bounds);
            break;
        case BoundsWhich::Kn: {
            const Preset p = build_preset(cfg);
            r.table.header = {"check", "n", "t", "lhs", "rhs", "pass"};
            if (!p.certificate) {
                r.status = 1;
                r.message = "kn bounds need a clustering certificate (model.certificate with C, f, epsilon)";
                return r;
            }
            require_valid(p.model);
            const ClusteringData cd = clustering_from(*p.certificate);
            for (int n = 1; n <= cfg.bounds.kn_max; ++n)
                for (const auto& b : verify_kn_bound(p.model, cd, n, cfg.sweep.t_grid, cfg.quadrature.simplex_nodes))
                    r.table.add({b.bound, num(static_cast<long long>(b.n)), num(b.t), num(b.lhs), num(b.rhs),
                                 flag(b.pass)});
            break;
        }
        case BoundsWhich::Constants: {
            const Preset p = build_preset(cfg);
            CertificateSpec spec;
            spec.C = 1.0;
            spec.epsilon = cfg.sweep.epsilon;
            if (p.certificate) spec = *p.certificate;
            r.table = constants_table(cfg.bounds, clustering_from(spec), spectral_norm(p.model.W));
            break;
        }
    }
    finish(r);
    return r;
}

std::string cmd_diagram(int n, const std::string& A_spec, const std::string& d_spec) {
    return render_diagram(n, parse_subset(n, A_spec), parse_partition(n, d_spec));
}

}  // namespace vanhove
