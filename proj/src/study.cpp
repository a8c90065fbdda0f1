#include "biheig/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace biheig {

namespace {

std::string fmt(const char* format, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

int min_dofs_for_block(const SweepOptions& opts) {
    const int p = opts.k + opts.block_extra;
    return std::max(2 * p, 12);
}

EigenOptions eigen_options(const SweepOptions& opts) {
    EigenOptions eo;
    eo.k = opts.k;
    eo.tol = opts.eig_tol;
    eo.block_extra = opts.block_extra;
    eo.seed = opts.seed;
    return eo;
}

}  // namespace

std::vector<std::optional<double>> rate_indicator(const std::vector<double>& diffs) {
    std::vector<std::optional<double>> rates;
    for (size_t j = 0; j + 1 < diffs.size(); ++j) {
        if (diffs[j + 1] == 0.0) {
            rates.push_back(std::nullopt);
            continue;
        }
        const double r = std::log2(diffs[j] / diffs[j + 1]);
        rates.push_back(std::isfinite(r) ? std::optional<double>(r) : std::nullopt);
    }
    return rates;
}

double richardson(double lambda_coarse, double lambda_fine) {
    return (4.0 * lambda_fine - lambda_coarse) / 3.0;
}

void finalize_report(ConvergenceReport& report) {
    report.diffs.clear();
    report.rate_at_row.clear();
    report.extrapolated.clear();
    const size_t m = report.rows.size();
    if (m < 2) return;
    const size_t k = static_cast<size_t>(report.k);

    for (size_t r = 1; r < m; ++r) {
        std::vector<double> d(k);
        for (size_t i = 0; i < k; ++i) {
            d[i] = std::abs(report.rows[r].lambdas[i] - report.rows[r - 1].lambdas[i]);
        }
        report.diffs.push_back(std::move(d));
    }
    for (size_t r = 0; r < report.diffs.size(); ++r) {
        std::vector<std::optional<double>> rates(k);
        if (r > 0) {
            for (size_t i = 0; i < k; ++i) {
                const double num = report.diffs[r - 1][i];
                const double den = report.diffs[r][i];
                if (den != 0.0) {
                    const double rate = std::log2(num / den);
                    if (std::isfinite(rate)) rates[i] = rate;
                }
            }
        }
        report.rate_at_row.push_back(std::move(rates));
    }
    report.extrapolated.resize(k);
    for (size_t i = 0; i < k; ++i) {
        report.extrapolated[i] =
            richardson(report.rows[m - 2].lambdas[i], report.rows[m - 1].lambdas[i]);
    }
}

ConvergenceReport run_sweep(DomainKind domain, MethodKind method, int max_level,
                            const SweepOptions& opts) {
    ConvergenceReport report;
    report.domain = domain;
    report.method = method;
    report.k = opts.k;

    TriangleMesh mesh = build_initial_mesh(domain);
    for (int level = 0; level <= max_level; ++level) {
        if (level > 0) mesh = refine_red(mesh);
        const DofMap dofs = interior_index(mesh);
        if (dofs.n_dofs >= min_dofs_for_block(opts)) {
            try {
                const DiscreteOperator op = make_operator(mesh, method, opts.linear_tol);
                const EigenResult eig = eigs_smallest(op, eigen_options(opts));
                report.rows.push_back({level, mesh.mesh_size(), dofs.n_dofs, eig.lambdas});
            } catch (const SolverError&) {
                report.complete = false;
                break;
            }
        }
    }
    finalize_report(report);
    return report;
}

Comparison compare_methods(DomainKind domain, int level, const SweepOptions& opts) {
    TriangleMesh mesh = build_initial_mesh(domain);
    for (int l = 0; l < level; ++l) mesh = refine_red(mesh);

    Comparison cmp;
    cmp.domain = domain;
    cmp.level = level;
    cmp.k = opts.k;
    cmp.dof = interior_index(mesh).n_dofs;

    for (MethodKind method : {MethodKind::Modified, MethodKind::Usual}) {
        const DiscreteOperator op = make_operator(mesh, method, opts.linear_tol);
        const EigenResult eig = eigs_smallest(op, eigen_options(opts));
        (method == MethodKind::Modified ? cmp.lambda_modified : cmp.lambda_usual) = eig.lambdas;
    }

    cmp.spurious.assign(static_cast<size_t>(opts.k), false);
    for (size_t i = 0; i < cmp.lambda_usual.size(); ++i) {
        double gap = 1e300;
        for (double m : cmp.lambda_modified) {
            gap = std::min(gap, std::abs(cmp.lambda_usual[i] - m) / m);
        }
        cmp.spurious[i] = gap > 0.05;
    }
    return cmp;
}

std::string emit_csv_eigs(const ConvergenceReport& report) {
    std::ostringstream os;
    os << "# domain = " << domain_name(report.domain) << "\n";
    os << "# method = " << method_name(report.method) << "\n";
    os << "# k = " << report.k << "\n";
    os << "# complete = " << (report.complete ? 1 : 0) << "\n";
    os << "level,h,dof";
    for (int i = 1; i <= report.k; ++i) os << ",lambda" << i;
    os << "\n";
    for (const auto& row : report.rows) {
        os << row.level << "," << fmt("%.17g", row.h) << "," << row.n_int;
        for (double v : row.lambdas) os << "," << fmt("%.17g", v);
        os << "\n";
    }
    return os.str();
}

std::string emit_csv_rates(const ConvergenceReport& report) {
    std::ostringstream os;
    os << "# domain = " << domain_name(report.domain) << "\n";
    os << "# method = " << method_name(report.method) << "\n";
    os << "h";
    for (int i = 1; i <= report.k; ++i) os << ",diff_" << i << ",rate_" << i;
    os << "\n";
    for (size_t r = 0; r < report.diffs.size(); ++r) {
        os << fmt("%.17g", report.rows[r + 1].h);
        for (int i = 0; i < report.k; ++i) {
            os << "," << fmt("%.17g", report.diffs[r][static_cast<size_t>(i)]) << ",";
            const auto& rate = report.rate_at_row[r][static_cast<size_t>(i)];
            if (rate) os << fmt("%.17g", *rate);
        }
        os << "\n";
    }
    return os.str();
}

ConvergenceReport parse_report(const std::string& csv_eigs) {
    ConvergenceReport report;
    std::istringstream is(csv_eigs);
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string key, eq, value;
            ls >> key >> eq >> value;
            if (eq != "=") continue;
            if (key == "domain") {
                report.domain = domain_from_name(value);
            } else if (key == "method") {
                report.method = method_from_name(value);
            } else if (key == "k") {
                report.k = std::stoi(value);
            } else if (key == "complete") {
                report.complete = value != "0";
            }
            continue;
        }
        if (!header_seen) {  // column header line
            header_seen = true;
            continue;
        }
        SweepRow row;
        std::istringstream ls(line);
        std::string field;
        if (!std::getline(ls, field, ',')) throw std::runtime_error("parse_report: bad row");
        row.level = std::stoi(field);
        if (!std::getline(ls, field, ',')) throw std::runtime_error("parse_report: bad row");
        row.h = std::stod(field);
        if (!std::getline(ls, field, ',')) throw std::runtime_error("parse_report: bad row");
        row.n_int = std::stoi(field);
        while (std::getline(ls, field, ',')) row.lambdas.push_back(std::stod(field));
        if (static_cast<int>(row.lambdas.size()) != report.k) {
            throw std::runtime_error("parse_report: eigenvalue count mismatch");
        }
        report.rows.push_back(std::move(row));
    }
    finalize_report(report);
    return report;
}

std::string emit_markdown(const ConvergenceReport& report) {
    std::ostringstream os;
    os << "Eigenvalues (" << domain_name(report.domain) << ", " << method_name(report.method)
       << " mixed method" << (report.complete ? "" : ", incomplete sweep") << ")\n\n";
    os << "| level | h | dof |";
    for (int i = 1; i <= report.k; ++i) os << " lambda_" << i << " |";
    os << "\n|---|---|---|";
    for (int i = 0; i < report.k; ++i) os << "---|";
    os << "\n";
    for (const auto& row : report.rows) {
        os << "| " << row.level << " | " << fmt("%.4f", row.h) << " | " << row.n_int << " |";
        for (double v : row.lambdas) os << " " << fmt("%.10g", v) << " |";
        os << "\n";
    }
    os << "\nConvergence history\n\n";
    os << "| h |";
    for (int i = 1; i <= report.k; ++i) os << " diff_" << i << " | R_" << i << " |";
    os << "\n|---|";
    for (int i = 0; i < report.k; ++i) os << "---|---|";
    os << "\n";
    for (size_t r = 0; r < report.diffs.size(); ++r) {
        os << "| " << fmt("%.4f", report.rows[r + 1].h) << " |";
        for (int i = 0; i < report.k; ++i) {
            os << " " << fmt("%.3e", report.diffs[r][static_cast<size_t>(i)]) << " |";
            const auto& rate = report.rate_at_row[r][static_cast<size_t>(i)];
            os << " " << (rate ? fmt("%.2f", *rate) : std::string()) << " |";
        }
        os << "\n";
    }
    if (!report.extrapolated.empty()) {
        os << "\nExtrapolated limits:";
        for (double v : report.extrapolated) os << " " << fmt("%.10g", v);
        os << "\n";
    }
    return os.str();
}

std::string emit_csv(const Comparison& cmp) {
    std::ostringstream os;
    os << "# domain = " << domain_name(cmp.domain) << "\n";
    os << "# level = " << cmp.level << "\n";
    os << "method,dof";
    for (int i = 1; i <= cmp.k; ++i) os << ",lambda" << i;
    os << "\n";
    os << "modified," << cmp.dof;
    for (double v : cmp.lambda_modified) os << "," << fmt("%.17g", v);
    os << "\nusual," << cmp.dof;
    for (double v : cmp.lambda_usual) os << "," << fmt("%.17g", v);
    os << "\nspurious,";
    for (bool s : cmp.spurious) os << "," << (s ? 1 : 0);
    os << "\n";
    return os.str();
}

std::string emit_markdown(const Comparison& cmp) {
    std::ostringstream os;
    os << "Method comparison (" << domain_name(cmp.domain) << ", level " << cmp.level
       << "); `*` marks usual-method eigenvalues more than 5% from every "
          "modified-method one\n\n";
    os << "| method | dof |";
    for (int i = 1; i <= cmp.k; ++i) os << " lambda_" << i << " |";
    os << "\n|---|---|";
    for (int i = 0; i < cmp.k; ++i) os << "---|";
    os << "\n| modified | " << cmp.dof << " |";
    for (double v : cmp.lambda_modified) os << " " << fmt("%.10g", v) << " |";
    os << "\n| usual | " << cmp.dof << " |";
    for (size_t i = 0; i < cmp.lambda_usual.size(); ++i) {
        os << " " << fmt("%.10g", cmp.lambda_usual[i]) << (cmp.spurious[i] ? "*" : "") << " |";
    }
    os << "\n";
    return os.str();
}

}  // namespace biheig
