#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "biheig/mesh.hpp"
#include "biheig/operators.hpp"

namespace biheig {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    DomainKind domain = DomainKind::UnitSquare;
    bool domain_set = false;
    MethodKind method = MethodKind::Modified;
    int levels = 4;
    int num_eigs = 6;
    double eig_tol = 1e-8;
    double linear_tol = 1e-10;
    uint64_t seed = 0;
    std::string output;     // empty: stdout only
    std::string format = "csv";  // csv | markdown
    std::string dump_mesh;  // path; empty: off
};

/// Apply a `key = value` config file (`#` starts a comment) on top of cfg.
/// Unknown keys and malformed values are hard errors.
void load_config_file(std::istream& is, RunConfig& cfg);
void load_config_file(const std::string& path, RunConfig& cfg);

/// Invariant checks (num_eigs >= 1, levels >= 0, tolerances in (0,1),
/// domain present); throws ConfigError.
void validate_config(const RunConfig& cfg);

/// Effective-configuration echo: one `# key = value` line per setting plus
/// the corner frames, cutoff parameters, quadrature orders and solver
/// choices in effect. Emitted at the top of every output.
std::string echo_config(const RunConfig& cfg);

}  // namespace biheig
