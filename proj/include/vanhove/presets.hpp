#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vanhove/model.hpp"

namespace vanhove {

// Clustering certificate: constant C, kernel f(s) = exp(-|s|/scale), exponent epsilon.
struct CertificateSpec {
    double C = 0.0;
    std::string f_family = "exponential";
    double f_scale = 1.0;
    double epsilon = 0.5;
};

struct Preset {
    SystemBathModel model;
    std::optional<AnalyticCorrelation> phi;
    std::optional<CertificateSpec> certificate;
    std::optional<double> window;  // overrides recurrence_window when set
};

struct PresetOptions {
    std::uint64_t seed = 0;
    int bath_levels = -1;  // preset default when < 0
    double lambda = 0.1;
};

std::vector<std::string> preset_names();
Preset make_preset(const std::string& name, const PresetOptions& opts = {});

}  // namespace vanhove
