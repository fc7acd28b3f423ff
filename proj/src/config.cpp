#include "vanhove/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "vanhove/error.hpp"

namespace vanhove {

namespace {

struct Ctx {
    std::string origin;

    [[noreturn]] void error(const YAML::Node& n, const std::string& msg) const {
        std::ostringstream os;
        os << origin;
        if (n.IsDefined() && n.Mark().line >= 0) os << ":" << n.Mark().line + 1 << ":" << n.Mark().column + 1;
        os << ": " << msg;
        fail(ErrorKind::Parse, os.str());
    }

    void check_keys(const YAML::Node& n, const std::string& section, std::set<std::string> allowed) const {
        if (!n.IsMap()) error(n, "section '" + section + "' must be a mapping");
        for (const auto& kv : n) {
            const std::string key = kv.first.as<std::string>();
            if (!allowed.count(key)) error(kv.first, "unknown key '" + key + "' in section '" + section + "'");
        }
    }

    template <class T>
    T scalar(const YAML::Node& n, const std::string& what) const {
        if (!n.IsScalar()) error(n, what + " must be a scalar");
        try {
            return n.as<T>();
        } catch (const YAML::Exception&) {
            error(n, "cannot read " + what + " from '" + n.Scalar() + "'");
        }
    }

    template <class T>
    void maybe(const YAML::Node& parent, const char* key, T& out) const {
        const YAML::Node n = parent[key];
        if (n) out = scalar<T>(n, key);
    }

    std::vector<double> real_list(const YAML::Node& n, const std::string& what) const {
        if (!n.IsSequence()) error(n, what + " must be a list");
        if (n.size() == 0) error(n, what + " must be nonempty");
        std::vector<double> out;
        for (const auto& x : n) out.push_back(scalar<double>(x, what + " entry"));
        return out;
    }

    std::vector<std::string> string_list(const YAML::Node& n, const std::string& what) const {
        if (!n.IsSequence()) error(n, what + " must be a list");
        if (n.size() == 0) error(n, what + " must be nonempty");
        std::vector<std::string> out;
        for (const auto& x : n) out.push_back(scalar<std::string>(x, what + " entry"));
        return out;
    }

    cplx entry(const YAML::Node& n, const std::string& what) const {
        if (n.IsScalar()) return {scalar<double>(n, what), 0.0};
        if (!n.IsSequence() || n.size() != 2) error(n, what + " must be an [re, im] pair");
        return {scalar<double>(n[0], what + " real part"), scalar<double>(n[1], what + " imaginary part")};
    }

    Mat matrix(const YAML::Node& n, const std::string& name) const {
        if (!n.IsSequence() || n.size() == 0) error(n, "matrix '" + name + "' must be a nonempty list of rows");
        const Index rows = static_cast<Index>(n.size());
        Mat M(rows, rows);
        for (Index r = 0; r < rows; ++r) {
            const YAML::Node row = n[static_cast<std::size_t>(r)];
            if (!row.IsSequence())
                error(row, "matrix '" + name + "' row " + std::to_string(r) + " must be a list");
            if (static_cast<Index>(row.size()) != rows)
                error(row, "matrix '" + name + "' row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                               " entries, expected " + std::to_string(rows));
            for (Index c = 0; c < rows; ++c)
                M(r, c) = entry(row[static_cast<std::size_t>(c)], name + "[" + std::to_string(r) + "][" +
                                                                     std::to_string(c) + "]");
        }
        return M;
    }

    Vec vector(const YAML::Node& n, const std::string& name) const {
        if (!n.IsSequence() || n.size() == 0) error(n, "vector '" + name + "' must be a nonempty list");
        Vec v(static_cast<Index>(n.size()));
        for (std::size_t k = 0; k < n.size(); ++k) v(static_cast<Index>(k)) = entry(n[k], name);
        return v;
    }
};

void parse_model(const Ctx& c, const YAML::Node& n, ModelSection& m) {
    c.check_keys(n, "model", {"preset", "seed", "bath_levels", "lambda", "name", "H_S", "H_R", "W", "V", "omega_R",
                              "correlation", "certificate", "window"});
    c.maybe(n, "preset", m.preset);
    c.maybe(n, "seed", m.options.seed);
    c.maybe(n, "bath_levels", m.options.bath_levels);
    c.maybe(n, "lambda", m.options.lambda);

    const bool any_matrix = n["H_S"] || n["H_R"] || n["W"] || n["V"] || n["omega_R"];
    if (any_matrix) {
        if (!m.preset.empty()) c.error(n["preset"], "give either a preset or explicit matrices, not both");
        for (const char* k : {"H_S", "H_R", "W", "V", "omega_R"})
            if (!n[k]) c.error(n, std::string("explicit model is missing '") + k + "'");
        SystemBathModel model;
        model.name = "explicit";
        c.maybe(n, "name", model.name);
        model.H_S = c.matrix(n["H_S"], "H_S");
        model.H_R = c.matrix(n["H_R"], "H_R");
        model.W = c.matrix(n["W"], "W");
        model.V = c.matrix(n["V"], "V");
        model.omega_R = c.vector(n["omega_R"], "omega_R");
        model.lambda = m.options.lambda;
        if (model.W.rows() != model.H_S.rows()) c.error(n["W"], "W must have the size of H_S");
        if (model.V.rows() != model.H_R.rows()) c.error(n["V"], "V must have the size of H_R");
        if (model.omega_R.size() != model.H_R.rows()) c.error(n["omega_R"], "omega_R must have the size of H_R");
        m.explicit_model = std::move(model);
    } else if (m.preset.empty()) {
        c.error(n, "model needs a preset name or explicit matrices");
    }

    if (const YAML::Node cn = n["correlation"]) {
        c.check_keys(cn, "model.correlation", {"family", "gamma", "tau_c", "Omega"});
        std::string family = "exponential";
        double gamma = 0.5, tau_c = 1.0, Omega = 0.0;
        c.maybe(cn, "family", family);
        c.maybe(cn, "gamma", gamma);
        c.maybe(cn, "tau_c", tau_c);
        c.maybe(cn, "Omega", Omega);
        try {
            m.correlation = make_analytic_correlation(family, gamma, tau_c, Omega);
        } catch (const Error& e) {
            c.error(cn, e.what());
        }
    }
    if (const YAML::Node cn = n["certificate"]) {
        c.check_keys(cn, "model.certificate", {"C", "f", "f_scale", "epsilon"});
        CertificateSpec s;
        if (!cn["C"]) c.error(cn, "certificate needs C");
        c.maybe(cn, "C", s.C);
        c.maybe(cn, "f", s.f_family);
        c.maybe(cn, "f_scale", s.f_scale);
        c.maybe(cn, "epsilon", s.epsilon);
        m.certificate = s;
    }
    if (n["window"]) {
        double w = 0.0;
        c.maybe(n, "window", w);
        if (!(w > 0.0)) c.error(n["window"], "window must be > 0");
        m.window = w;
    }
}

void parse_quadrature(const Ctx& c, const YAML::Node& n, QuadratureSection& q) {
    c.check_keys(n, "quadrature", {"simplex_nodes", "order", "probes", "seed"});
    c.maybe(n, "simplex_nodes", q.simplex_nodes);
    c.maybe(n, "order", q.order);
    c.maybe(n, "probes", q.probes);
    c.maybe(n, "seed", q.seed);
    if (q.simplex_nodes < 1) c.error(n["simplex_nodes"], "simplex_nodes must be >= 1");
    if (q.order < 2) c.error(n["order"], "order must be >= 2");
    if (q.probes < 0) c.error(n["probes"], "probes must be >= 0");
}

void parse_sweep(const Ctx& c, const YAML::Node& n, SweepSection& s) {
    c.check_keys(n, "sweep", {"lambda_grid", "tau_grid", "t_grid", "epsilon", "cutoff"});
    if (n["lambda_grid"]) s.lambda_grid = c.real_list(n["lambda_grid"], "lambda_grid");
    if (n["tau_grid"]) s.tau_grid = c.real_list(n["tau_grid"], "tau_grid");
    if (n["t_grid"]) s.t_grid = c.real_list(n["t_grid"], "t_grid");
    c.maybe(n, "epsilon", s.epsilon);
    c.maybe(n, "cutoff", s.cutoff);
    for (double l : s.lambda_grid)
        if (l == 0.0) c.error(n["lambda_grid"], "lambda_grid must not contain 0");
    for (double t : s.tau_grid)
        if (t < 0.0) c.error(n["tau_grid"], "tau_grid entries must be >= 0");
    if (!(s.epsilon > 0.0 && s.epsilon < 1.0)) c.error(n["epsilon"], "epsilon must lie in (0, 1)");
}

void parse_bounds(const Ctx& c, const YAML::Node& n, BoundsSection& b) {
    c.check_keys(n, "bounds", {"m_max", "xi_m_max", "kernels", "estimate_kernels", "eps_grid", "t_grid", "kn_max",
                               "constants_n_max", "mc_samples"});
    c.maybe(n, "m_max", b.m_max);
    c.maybe(n, "xi_m_max", b.xi_m_max);
    if (n["kernels"]) b.kernels = c.string_list(n["kernels"], "kernels");
    if (n["estimate_kernels"]) b.estimate_kernels = c.string_list(n["estimate_kernels"], "estimate_kernels");
    if (n["eps_grid"]) b.eps_grid = c.real_list(n["eps_grid"], "eps_grid");
    if (n["t_grid"]) b.t_grid = c.real_list(n["t_grid"], "t_grid");
    c.maybe(n, "kn_max", b.kn_max);
    c.maybe(n, "constants_n_max", b.constants_n_max);
    c.maybe(n, "mc_samples", b.mc_samples);
    if (b.m_max < 1 || b.m_max > 4) c.error(n["m_max"], "m_max must lie in 1..4");
    if (b.xi_m_max < 1 || b.xi_m_max > 12) c.error(n["xi_m_max"], "xi_m_max must lie in 1..12");
    if (b.kn_max < 1 || b.kn_max > 3) c.error(n["kn_max"], "kn_max must lie in 1..3");
    if (b.constants_n_max < 0) c.error(n["constants_n_max"], "constants_n_max must be >= 0");
    if (b.mc_samples < 2) c.error(n["mc_samples"], "mc_samples must be >= 2");
}

void parse_output(const Ctx& c, const YAML::Node& n, OutputSection& o) {
    c.check_keys(n, "output", {"directory", "long_format"});
    c.maybe(n, "directory", o.directory);
    c.maybe(n, "long_format", o.long_format);
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
    const Ctx c{origin};
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        fail(ErrorKind::Parse, origin + ":" + std::to_string(e.mark.line + 1) + ":" +
                                   std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
    if (!root.IsMap()) fail(ErrorKind::Parse, origin + ": top level must be a mapping");
    RunConfig cfg;
    cfg.origin = origin;
    c.check_keys(root, "top level", {"model", "quadrature", "sweep", "bounds", "output"});
    if (!root["model"]) fail(ErrorKind::Parse, origin + ": missing 'model' section");
    parse_model(c, root["model"], cfg.model);
    if (root["quadrature"]) parse_quadrature(c, root["quadrature"], cfg.quadrature);
    if (root["sweep"]) parse_sweep(c, root["sweep"], cfg.sweep);
    if (root["bounds"]) parse_bounds(c, root["bounds"], cfg.bounds);
    if (root["output"]) parse_output(c, root["output"], cfg.output);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Parse, path + ": cannot open config file");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str(), path);
}

Preset build_preset(const RunConfig& cfg) {
    Preset p;
    if (cfg.model.explicit_model) {
        p.model = *cfg.model.explicit_model;
    } else {
        p = make_preset(cfg.model.preset, cfg.model.options);
    }
    if (cfg.model.correlation) p.phi = cfg.model.correlation;
    if (cfg.model.certificate) p.certificate = cfg.model.certificate;
    if (cfg.model.window) p.window = cfg.model.window;
    return p;
}

double effective_window(const RunConfig& cfg, const Preset& preset) {
    if (cfg.model.window) return *cfg.model.window;
    if (preset.window) return *preset.window;
    return recurrence_window(preset.model);
}

}  // namespace vanhove
