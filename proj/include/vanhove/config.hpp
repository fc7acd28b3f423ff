#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vanhove/presets.hpp"

namespace vanhove {

struct ModelSection {
    std::string preset;  // empty when matrices are given explicitly
    PresetOptions options;
    std::optional<SystemBathModel> explicit_model;
    std::optional<AnalyticCorrelation> correlation;
    std::optional<CertificateSpec> certificate;
    std::optional<double> window;
};

struct QuadratureSection {
    int simplex_nodes = 12;
    int order = 16;
    int probes = 64;
    std::uint64_t seed = 0;
};

struct SweepSection {
    std::vector<double> lambda_grid{0.4, 0.2, 0.1};
    std::vector<double> tau_grid{1.0};
    std::vector<double> t_grid{0.5, 1.0, 2.0};
    double epsilon = 0.5;
    double cutoff = 0.0;  // <= 0: automatic
};

struct BoundsSection {
    int m_max = 3;
    int xi_m_max = 4;
    std::vector<std::string> kernels{"one", "exp", "inverse_square"};
    std::vector<std::string> estimate_kernels{"exp", "exp_right", "inverse_square"};
    std::vector<double> eps_grid{0.25, 0.5, 0.75};
    std::vector<double> t_grid{0.5, 1.0, 5.0};
    int kn_max = 2;
    int constants_n_max = 60;
    std::size_t mc_samples = 200000;
};

struct OutputSection {
    std::string directory = ".";
    bool long_format = false;
};

struct RunConfig {
    std::string origin;
    ModelSection model;
    QuadratureSection quadrature;
    SweepSection sweep;
    BoundsSection bounds;
    OutputSection output;
};

// Parse errors carry "origin:line:column:" prefixes.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text, const std::string& origin = "<string>");

// Preset or explicit model with config overrides applied; not validated.
Preset build_preset(const RunConfig& cfg);
// Window from the config, else the preset, else the bath recurrence time.
double effective_window(const RunConfig& cfg, const Preset& preset);

}  // namespace vanhove
