// vanhove command-line front end; talks to the library only through vanhove.h

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "vanhove/vanhove.h"

namespace {

constexpr int kPass = 0;
constexpr int kPropertyFailure = 1;
constexpr int kUsageError = 2;

int exit_code(vh_status s) {
    if (s == VH_OK) return kPass;
    if (s == VH_PROPERTY_FAILED || s == VH_ERR_ASSUMPTION) return kPropertyFailure;
    return kUsageError;
}

int report_error(vh_status s) {
    std::cerr << "vanhove: " << vh_status_name(s) << ": " << vh_last_error() << "\n";
    return exit_code(s);
}

struct ConfigPtr {
    vh_config* p = nullptr;
    ~ConfigPtr() { vh_config_free(p); }
};

struct ResultPtr {
    vh_result* p = nullptr;
    ~ResultPtr() { vh_result_free(p); }
};

struct OwnedString {
    char* p = nullptr;
    ~OwnedString() { vh_string_free(p); }
};

bool write_text(const std::string& path, const char* text) {
    if (path.empty() || path == "-") {
        std::fwrite(text, 1, std::char_traits<char>::length(text), stdout);
        std::fflush(stdout);
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "vanhove: cannot write '" << path << "'\n";
        return false;
    }
    out << text;
    return static_cast<bool>(out);
}

// CSV of the result to `path` (stdout when empty), message and warnings to stderr.
int emit(vh_status st, const ResultPtr& res, const std::string& path) {
    if (st != VH_OK && st != VH_PROPERTY_FAILED) return report_error(st);
    OwnedString csv;
    if (const vh_status s = vh_result_csv(res.p, &csv.p); s != VH_OK) return report_error(s);
    if (vh_result_rows(res.p) > 0 && !write_text(path, csv.p)) return kUsageError;
    for (size_t k = 0; k < vh_result_warning_count(res.p); ++k)
        std::cerr << "warning: " << vh_result_warning(res.p, k) << "\n";
    if (*vh_result_message(res.p)) std::cerr << vh_result_message(res.p) << "\n";
    return exit_code(st);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weak-coupling (van Hove) limit toolkit for finite system-bath models"};
    app.set_version_flag("--version", std::string(vh_version()));
    app.require_subcommand(1);

    std::string config, out_path, long_path, mode = "both", which, a_spec, d_spec;
    int n = 1;
    double t = 1.0;

    auto* validate = app.add_subcommand("validate", "Check model assumptions and projection algebra");
    validate->add_option("config", config, "YAML run configuration")->required();

    auto* kn = app.add_subcommand("kn", "Dyson kernel term K_n(t) by brute force and/or diagrams");
    kn->add_option("config", config, "YAML run configuration")->required();
    kn->add_option("-n,--n", n, "order n")->required();
    kn->add_option("-t,--t", t, "time t")->required();
    kn->add_option("--mode", mode, "brute, diagram or both")->check(CLI::IsMember({"brute", "diagram", "both"}));
    kn->add_option("-o,--out", out_path, "CSV output path (default stdout)");

    auto* converge = app.add_subcommand("converge", "Convergence of the reduced dynamics to the GKLS semigroup");
    converge->add_option("config", config, "YAML run configuration")->required();
    converge->add_option("-o,--out", out_path, "CSV output path (default stdout)");
    converge->add_option("--long", long_path, "plot-ready long-format CSV path");

    auto* bounds = app.add_subcommand("bounds", "Simplex-moment, xi, K_n bound and constant checks");
    bounds->add_option("config", config, "YAML run configuration")->required();
    bounds->add_option("--which", which, "lemmaA, xi, kn or constants")
        ->required()
        ->check(CLI::IsMember({"lemmaA", "xi", "kn", "constants"}));
    bounds->add_option("-o,--out", out_path, "CSV output path (default stdout)");

    auto* diagram = app.add_subcommand("diagram", "Text rendering of one diagram term of K_n");
    diagram->add_option("-n,--n", n, "order n")->required();
    diagram->add_option("-A,--A", a_spec, "subset A, e.g. 2,4 (empty or - for none)")->required();
    diagram->add_option("-d,--d", d_spec, "partition d, e.g. 0-1/2-5")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    if (*diagram) {
        OwnedString art;
        const vh_status s = vh_cmd_diagram(n, a_spec.c_str(), d_spec.c_str(), &art.p);
        if (s != VH_OK) return report_error(s);
        write_text("", art.p);
        return kPass;
    }

    ConfigPtr cfg;
    if (const vh_status s = vh_config_load(config.c_str(), &cfg.p); s != VH_OK) return report_error(s);
    ResultPtr res;

    if (*validate) {
        const vh_status st = vh_cmd_validate(cfg.p, &res.p);
        if (st != VH_OK && st != VH_PROPERTY_FAILED) return report_error(st);
        OwnedString text;
        if (const vh_status s = vh_result_text(res.p, &text.p); s != VH_OK) return report_error(s);
        write_text("", text.p);
        std::cout << vh_result_message(res.p) << "\n";
        if (st == VH_PROPERTY_FAILED) std::cerr << "vanhove: assumption failure: " << vh_result_message(res.p) << "\n";
        return exit_code(st);
    }

    if (*kn) {
        vh_kn_mode m = VH_KN_BOTH;
        if (const vh_status s = vh_parse_kn_mode(mode.c_str(), &m); s != VH_OK) return report_error(s);
        const vh_status st = vh_cmd_kn(cfg.p, n, t, m, &res.p);
        return emit(st, res, out_path);
    }

    if (*converge) {
        const vh_status st = vh_cmd_converge(cfg.p, &res.p);
        const int code = emit(st, res, out_path);
        if (st != VH_OK && st != VH_PROPERTY_FAILED) return code;
        std::string lp = long_path;
        if (lp.empty() && vh_config_long_format(cfg.p)) {
            OwnedString dir;
            if (const vh_status s = vh_config_output_dir(cfg.p, &dir.p); s != VH_OK) return report_error(s);
            lp = std::string(dir.p) + "/converge_long.csv";
        }
        if (!lp.empty()) {
            OwnedString lcsv;
            if (const vh_status s = vh_result_long_csv(res.p, &lcsv.p); s != VH_OK) return report_error(s);
            if (!write_text(lp, lcsv.p)) return kUsageError;
        }
        return code;
    }

    if (*bounds) {
        vh_bounds_which w = VH_BOUNDS_LEMMA_A;
        if (const vh_status s = vh_parse_bounds_which(which.c_str(), &w); s != VH_OK) return report_error(s);
        const vh_status st = vh_cmd_bounds(cfg.p, w, &res.p);
        return emit(st, res, out_path);
    }
    return kUsageError;
}
