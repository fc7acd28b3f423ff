#include "vanhove/vanhove.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "vanhove/commands.hpp"
#include "vanhove/davies.hpp"
#include "vanhove/diagram.hpp"
#include "vanhove/dyson.hpp"
#include "vanhove/error.hpp"

struct vh_config {
    vanhove::RunConfig cfg;
};

struct vh_model {
    vanhove::Preset preset;
};

struct vh_superop {
    vanhove::Mat m;
};

struct vh_result {
    vanhove::CommandResult r;
};

namespace {

thread_local std::string g_last_error;

vh_status from_kind(vanhove::ErrorKind k) {
    using vanhove::ErrorKind;
    switch (k) {
        case ErrorKind::Dimension: return VH_ERR_DIMENSION;
        case ErrorKind::Numeric: return VH_ERR_NUMERIC;
        case ErrorKind::Config: return VH_ERR_CONFIG;
        case ErrorKind::Parse: return VH_ERR_PARSE;
        case ErrorKind::Precondition: return VH_ERR_PRECONDITION;
        case ErrorKind::Capability: return VH_ERR_CAPABILITY;
        case ErrorKind::Assumption: return VH_ERR_ASSUMPTION;
    }
    return VH_ERR_INTERNAL;
}

template <class F>
vh_status guard(F&& f) {
    g_last_error.clear();
    try {
        return f();
    } catch (const vanhove::Error& e) {
        g_last_error = e.what();
        return from_kind(e.kind());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return VH_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return VH_ERR_INTERNAL;
    }
}

vh_status invalid(const char* msg) {
    g_last_error = msg;
    return VH_ERR_INVALID_ARGUMENT;
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

vh_status result_status(vh_result* res, vh_result** out) {
    const int st = res->r.status;
    *out = res;
    return st == 0 ? VH_OK : VH_PROPERTY_FAILED;
}

}  // namespace

extern "C" {

const char* vh_version(void) { return vanhove::version_string(); }

const char* vh_status_name(vh_status s) {
    switch (s) {
        case VH_OK: return "ok";
        case VH_PROPERTY_FAILED: return "property failed";
        case VH_ERR_PARSE: return "parse error";
        case VH_ERR_CONFIG: return "configuration error";
        case VH_ERR_DIMENSION: return "dimension error";
        case VH_ERR_PRECONDITION: return "precondition violated";
        case VH_ERR_CAPABILITY: return "capability limit";
        case VH_ERR_ASSUMPTION: return "model assumption violated";
        case VH_ERR_NUMERIC: return "numeric failure";
        case VH_ERR_INVALID_ARGUMENT: return "invalid argument";
        case VH_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* vh_last_error(void) { return g_last_error.c_str(); }

void vh_string_free(char* s) { std::free(s); }

vh_status vh_config_load(const char* path, vh_config** out) {
    if (!path || !out) return invalid("vh_config_load: null argument");
    return guard([&] {
        *out = new vh_config{vanhove::load_config(path)};
        return VH_OK;
    });
}

vh_status vh_config_parse(const char* text, vh_config** out) {
    if (!text || !out) return invalid("vh_config_parse: null argument");
    return guard([&] {
        *out = new vh_config{vanhove::parse_config(text)};
        return VH_OK;
    });
}

vh_status vh_config_output_dir(const vh_config* cfg, char** out) {
    if (!cfg || !out) return invalid("vh_config_output_dir: null argument");
    return guard([&] {
        *out = dup(cfg->cfg.output.directory);
        return VH_OK;
    });
}

int vh_config_long_format(const vh_config* cfg) { return cfg && cfg->cfg.output.long_format ? 1 : 0; }

void vh_config_free(vh_config* cfg) { delete cfg; }

vh_status vh_model_preset(const char* name, uint64_t seed, int bath_levels, double lambda, vh_model** out) {
    if (!name || !out) return invalid("vh_model_preset: null argument");
    return guard([&] {
        vanhove::PresetOptions o;
        o.seed = seed;
        o.bath_levels = bath_levels;
        o.lambda = lambda;
        *out = new vh_model{vanhove::make_preset(name, o)};
        return VH_OK;
    });
}

vh_status vh_model_from_config(const vh_config* cfg, vh_model** out) {
    if (!cfg || !out) return invalid("vh_model_from_config: null argument");
    return guard([&] {
        *out = new vh_model{vanhove::build_preset(cfg->cfg)};
        return VH_OK;
    });
}

vh_status vh_model_dims(const vh_model* m, int* dS, int* dR) {
    if (!m || !dS || !dR) return invalid("vh_model_dims: null argument");
    *dS = static_cast<int>(m->preset.model.dS());
    *dR = static_cast<int>(m->preset.model.dR());
    return VH_OK;
}

vh_status vh_model_validate(const vh_model* m) {
    if (!m) return invalid("vh_model_validate: null argument");
    return guard([&] {
        const auto rep = vanhove::validate(m->preset.model);
        if (rep.ok()) return VH_OK;
        std::string msg = "model violates";
        for (const auto& a : rep.failed_assumptions()) msg += " " + a;
        g_last_error = msg;
        return VH_PROPERTY_FAILED;
    });
}

void vh_model_free(vh_model* m) { delete m; }

vh_status vh_kn(const vh_model* m, int n, double t, int nodes, vh_kn_mode mode, vh_superop** out) {
    if (!m || !out) return invalid("vh_kn: null argument");
    if (mode == VH_KN_BOTH) return invalid("vh_kn: choose brute or diagram");
    return guard([&] {
        vanhove::require_valid(m->preset.model);
        const auto grid = vanhove::make_simplex_grid(n + 1, t, nodes);
        vanhove::Mat K = mode == VH_KN_BRUTE ? vanhove::k_n_bruteforce_reduced(m->preset.model, n, grid)
                                             : vanhove::k_n_combinatorial_reduced(m->preset.model, n, grid);
        *out = new vh_superop{std::move(K)};
        return VH_OK;
    });
}

vh_status vh_davies_averaged(const vh_model* m, vh_superop** out) {
    if (!m || !out) return invalid("vh_davies_averaged: null argument");
    return guard([&] {
        const auto& p = m->preset;
        if (!p.phi) vanhove::fail(vanhove::ErrorKind::Capability, "model has no analytic correlation function");
        auto gen = vanhove::davies_K(p.model.H_S, p.model.W, *p.phi);
        gen = vanhove::natural_average(gen, vanhove::bohr_decomposition(p.model.H_S));
        *out = new vh_superop{gen.K_reduced};
        return VH_OK;
    });
}

int vh_superop_size(const vh_superop* op) { return op ? static_cast<int>(op->m.rows()) : 0; }

vh_status vh_superop_entry(const vh_superop* op, int row, int col, double* re, double* im) {
    if (!op || !re || !im) return invalid("vh_superop_entry: null argument");
    if (row < 0 || col < 0 || row >= op->m.rows() || col >= op->m.cols())
        return invalid("vh_superop_entry: index out of range");
    *re = op->m(row, col).real();
    *im = op->m(row, col).imag();
    return VH_OK;
}

double vh_superop_norm_estimate(const vh_superop* op, int n_probe, uint64_t seed) {
    if (!op) return -1.0;
    try {
        vanhove::ProbeOptions o;
        o.n_probe = n_probe;
        o.seed = seed;
        return vanhove::superop_norm_estimate(vanhove::SuperOp(op->m), o);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return -1.0;
    }
}

void vh_superop_free(vh_superop* op) { delete op; }

vh_status vh_cmd_validate(const vh_config* cfg, vh_result** out) {
    if (!cfg || !out) return invalid("vh_cmd_validate: null argument");
    return guard([&] { return result_status(new vh_result{vanhove::cmd_validate(cfg->cfg)}, out); });
}

vh_status vh_cmd_kn(const vh_config* cfg, int n, double t, vh_kn_mode mode, vh_result** out) {
    if (!cfg || !out) return invalid("vh_cmd_kn: null argument");
    return guard([&] {
        const auto m = mode == VH_KN_BRUTE     ? vanhove::KnMode::Brute
                       : mode == VH_KN_DIAGRAM ? vanhove::KnMode::Diagram
                                               : vanhove::KnMode::Both;
        return result_status(new vh_result{vanhove::cmd_kn(cfg->cfg, n, t, m)}, out);
    });
}

vh_status vh_cmd_converge(const vh_config* cfg, vh_result** out) {
    if (!cfg || !out) return invalid("vh_cmd_converge: null argument");
    return guard([&] { return result_status(new vh_result{vanhove::cmd_converge(cfg->cfg)}, out); });
}

vh_status vh_cmd_bounds(const vh_config* cfg, vh_bounds_which which, vh_result** out) {
    if (!cfg || !out) return invalid("vh_cmd_bounds: null argument");
    return guard([&] {
        vanhove::BoundsWhich w = vanhove::BoundsWhich::LemmaA;
        switch (which) {
            case VH_BOUNDS_LEMMA_A: w = vanhove::BoundsWhich::LemmaA; break;
            case VH_BOUNDS_XI: w = vanhove::BoundsWhich::Xi; break;
            case VH_BOUNDS_KN: w = vanhove::BoundsWhich::Kn; break;
            case VH_BOUNDS_CONSTANTS: w = vanhove::BoundsWhich::Constants; break;
            default: vanhove::fail(vanhove::ErrorKind::Config, "unknown bounds selector");
        }
        vh_result* res = new vh_result{vanhove::cmd_bounds(cfg->cfg, w)};
        if (res->r.status != 0 && res->r.table.rows.empty()) g_last_error = res->r.message;
        return result_status(res, out);
    });
}

vh_status vh_cmd_diagram(int n, const char* a_spec, const char* d_spec, char** out) {
    if (!a_spec || !d_spec || !out) return invalid("vh_cmd_diagram: null argument");
    return guard([&] {
        *out = dup(vanhove::cmd_diagram(n, a_spec, d_spec));
        return VH_OK;
    });
}

vh_status vh_parse_kn_mode(const char* s, vh_kn_mode* out) {
    if (!s || !out) return invalid("vh_parse_kn_mode: null argument");
    return guard([&] {
        switch (vanhove::parse_kn_mode(s)) {
            case vanhove::KnMode::Brute: *out = VH_KN_BRUTE; break;
            case vanhove::KnMode::Diagram: *out = VH_KN_DIAGRAM; break;
            case vanhove::KnMode::Both: *out = VH_KN_BOTH; break;
        }
        return VH_OK;
    });
}

vh_status vh_parse_bounds_which(const char* s, vh_bounds_which* out) {
    if (!s || !out) return invalid("vh_parse_bounds_which: null argument");
    return guard([&] {
        switch (vanhove::parse_bounds_which(s)) {
            case vanhove::BoundsWhich::LemmaA: *out = VH_BOUNDS_LEMMA_A; break;
            case vanhove::BoundsWhich::Xi: *out = VH_BOUNDS_XI; break;
            case vanhove::BoundsWhich::Kn: *out = VH_BOUNDS_KN; break;
            case vanhove::BoundsWhich::Constants: *out = VH_BOUNDS_CONSTANTS; break;
        }
        return VH_OK;
    });
}

size_t vh_result_rows(const vh_result* r) { return r ? r->r.table.rows.size() : 0; }
size_t vh_result_cols(const vh_result* r) { return r ? r->r.table.header.size() : 0; }

const char* vh_result_header(const vh_result* r, size_t col) {
    if (!r || col >= r->r.table.header.size()) return nullptr;
    return r->r.table.header[col].c_str();
}

const char* vh_result_cell(const vh_result* r, size_t row, size_t col) {
    if (!r || row >= r->r.table.rows.size() || col >= r->r.table.header.size()) return nullptr;
    return r->r.table.rows[row][col].c_str();
}

const char* vh_result_message(const vh_result* r) { return r ? r->r.message.c_str() : ""; }
size_t vh_result_warning_count(const vh_result* r) { return r ? r->r.warnings.size() : 0; }

const char* vh_result_warning(const vh_result* r, size_t k) {
    if (!r || k >= r->r.warnings.size()) return nullptr;
    return r->r.warnings[k].c_str();
}

vh_status vh_result_csv(const vh_result* r, char** out) {
    if (!r || !out) return invalid("vh_result_csv: null argument");
    return guard([&] {
        *out = dup(r->r.table.to_csv());
        return VH_OK;
    });
}

vh_status vh_result_text(const vh_result* r, char** out) {
    if (!r || !out) return invalid("vh_result_text: null argument");
    return guard([&] {
        *out = dup(r->r.table.to_text());
        return VH_OK;
    });
}

vh_status vh_result_long_csv(const vh_result* r, char** out) {
    if (!r || !out) return invalid("vh_result_long_csv: null argument");
    if (!r->r.long_table) {
        g_last_error = "command produced no long-format table";
        return VH_ERR_CAPABILITY;
    }
    return guard([&] {
        *out = dup(r->r.long_table->to_csv());
        return VH_OK;
    });
}

void vh_result_free(vh_result* r) { delete r; }

}  // extern "C"
