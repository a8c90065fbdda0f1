#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biheig/eigensolve.hpp"
#include "biheig/mesh.hpp"
#include "biheig/operators.hpp"

namespace biheig {

struct SweepRow {
    int level = 0;
    double h = 0.0;
    int n_int = 0;
    std::vector<double> lambdas;

    bool operator==(const SweepRow&) const = default;
};

/// One refinement study: eigenvalues per level plus the derived difference
/// and rate columns. `rate_at_row[r][i]` is log2(d_{r-1}/d_r), placed on the
/// finer row; absent on the first difference row and on zero denominators.
struct ConvergenceReport {
    DomainKind domain = DomainKind::UnitSquare;
    MethodKind method = MethodKind::Modified;
    int k = 6;
    bool complete = true;
    std::vector<SweepRow> rows;
    std::vector<std::vector<double>> diffs;  // diffs[r][i], r = 1..rows-1
    std::vector<std::vector<std::optional<double>>> rate_at_row;
    std::vector<double> extrapolated;  // Richardson limit from the last two rows

    bool operator==(const ConvergenceReport&) const = default;
};

struct SweepOptions {
    int k = 6;
    double eig_tol = 1e-8;
    double linear_tol = 1e-10;
    int block_extra = 4;
    uint64_t seed = 0;
};

/// Refine from the initial mesh to max_level, solving the eigenproblem on
/// every level whose interior dof count can host the iteration block. An
/// eigensolver failure stops the sweep and marks the report incomplete.
ConvergenceReport run_sweep(DomainKind domain, MethodKind method, int max_level,
                            const SweepOptions& opts);

/// R_j = log2(diffs[j] / diffs[j+1]); absent on a zero denominator.
std::vector<std::optional<double>> rate_indicator(const std::vector<double>& diffs);

/// Limit estimate assuming second-order convergence: (4 fine − coarse)/3.
double richardson(double lambda_coarse, double lambda_fine);

/// Recomputes diffs, rates and the extrapolated column from `rows`.
void finalize_report(ConvergenceReport& report);

struct Comparison {
    DomainKind domain = DomainKind::UnitSquare;
    int level = 0;
    int k = 6;
    int dof = 0;
    std::vector<double> lambda_modified;
    std::vector<double> lambda_usual;
    /// Usual-method eigenvalues farther than 5% from every modified one.
    std::vector<bool> spurious;
};

Comparison compare_methods(DomainKind domain, int level, const SweepOptions& opts);

// Serialization. CSV carries full-precision values and the report metadata
// as leading `# key = value` lines; parse_report(emit_csv_eigs(r)) == r.
std::string emit_csv_eigs(const ConvergenceReport& report);
std::string emit_csv_rates(const ConvergenceReport& report);
ConvergenceReport parse_report(const std::string& csv_eigs);
std::string emit_markdown(const ConvergenceReport& report);

std::string emit_csv(const Comparison& cmp);
std::string emit_markdown(const Comparison& cmp);

}  // namespace biheig
