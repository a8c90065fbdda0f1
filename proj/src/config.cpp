#include "biheig/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace biheig {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("malformed integer for '" + key + "': " + value);
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("malformed number for '" + key + "': " + value);
    }
}

}  // namespace

void load_config_file(std::istream& is, RunConfig& cfg) {
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        }

        if (key == "domain") {
            try {
                cfg.domain = domain_from_name(value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
            cfg.domain_set = true;
        } else if (key == "method") {
            try {
                cfg.method = method_from_name(value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        } else if (key == "levels") {
            cfg.levels = parse_int(key, value);
        } else if (key == "num_eigs") {
            cfg.num_eigs = parse_int(key, value);
        } else if (key == "eig_tol") {
            cfg.eig_tol = parse_double(key, value);
        } else if (key == "linear_tol") {
            cfg.linear_tol = parse_double(key, value);
        } else if (key == "seed") {
            cfg.seed = static_cast<uint64_t>(parse_int(key, value));
        } else if (key == "output") {
            cfg.output = value;
        } else if (key == "format") {
            cfg.format = value;
        } else if (key == "dump_mesh") {
            cfg.dump_mesh = value;
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    load_config_file(is, cfg);
}

void validate_config(const RunConfig& cfg) {
    if (!cfg.domain_set) throw ConfigError("missing required 'domain'");
    if (cfg.num_eigs < 1) throw ConfigError("num_eigs must be >= 1");
    if (cfg.levels < 0) throw ConfigError("levels must be >= 0");
    if (!(cfg.eig_tol > 0.0 && cfg.eig_tol < 1.0)) throw ConfigError("eig_tol must be in (0,1)");
    if (!(cfg.linear_tol > 0.0 && cfg.linear_tol < 1.0)) {
        throw ConfigError("linear_tol must be in (0,1)");
    }
    if (cfg.format != "csv" && cfg.format != "markdown") {
        throw ConfigError("format must be csv or markdown");
    }
}

std::string echo_config(const RunConfig& cfg) {
    std::ostringstream os;
    char buf[160];
    os << "# domain = " << domain_name(cfg.domain) << "\n";
    os << "# method = " << method_name(cfg.method) << "\n";
    os << "# levels = " << cfg.levels << "\n";
    os << "# num_eigs = " << cfg.num_eigs << "\n";
    std::snprintf(buf, sizeof buf, "# eig_tol = %.17g\n# linear_tol = %.17g\n", cfg.eig_tol,
                  cfg.linear_tol);
    os << buf;
    os << "# seed = " << cfg.seed << "\n";
    os << "# output = " << (cfg.output.empty() ? "(stdout)" : cfg.output) << "\n";
    os << "# format = " << cfg.format << "\n";
    os << "# dump_mesh = " << (cfg.dump_mesh.empty() ? "(off)" : cfg.dump_mesh) << "\n";
    os << "# solver = pcg+ic0, block = num_eigs+4, lambda_change_tol = 1e-10\n";
    os << "# quadrature: p1 products order 2, singular integrands order 6 "
          "(graded depth 40 at corners)\n";

    const TriangleMesh initial = build_initial_mesh(cfg.domain);
    if (initial.corners.empty()) {
        os << "# corners: none (convex domain)\n";
    }
    for (size_t c = 0; c < initial.corners.size(); ++c) {
        const ReentrantCorner& rc = initial.corners[c];
        std::snprintf(buf, sizeof buf,
                      "# corner%zu: Q = (%.17g, %.17g), omega = %.17g, frame = %.17g, "
                      "tau = %.17g, R = %.17g\n",
                      c, rc.origin.x, rc.origin.y, rc.omega, rc.frame_angle, rc.tau, rc.radius);
        os << buf;
    }
    if (cfg.method == MethodKind::Usual && !initial.corners.empty()) {
        os << "# warning: usual mixed method on a re-entrant domain is known to "
              "produce spurious eigenvalues; compare against the modified method\n";
    }
    return os.str();
}

}  // namespace biheig
