// commands.hpp - the CLI subcommands as library calls returning tables

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vanhove/config.hpp"
#include "vanhove/csv.hpp"

namespace vanhove {

const char* version_string();

enum class KnMode { Brute, Diagram, Both };
enum class BoundsWhich { LemmaA, Xi, Kn, Constants };

KnMode parse_kn_mode(const std::string& s);
BoundsWhich parse_bounds_which(const std::string& s);

struct CommandResult {
    int status = 0;  // 0 pass, 1 checked-property failure
    Table table;
    std::optional<Table> long_table;
    std::string message;
    std::vector<std::string> warnings;
};

// Assumption checks, then projection algebra when d <= 64.
CommandResult cmd_validate(const RunConfig& cfg);
// Reduced K_n(t) entries; in Both mode the message carries the max entrywise residual of the lifted difference.
CommandResult cmd_kn(const RunConfig& cfg, int n, double t, KnMode mode);
// lambda,tau,error,flagged rows; long_table holds lambda,tau,quantity,value.
CommandResult cmd_converge(const RunConfig& cfg);
CommandResult cmd_bounds(const RunConfig& cfg, BoundsWhich which);
std::string cmd_diagram(int n, const std::string& A_spec, const std::string& d_spec);

}  // namespace vanhove
