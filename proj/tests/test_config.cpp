#include "doctest.h"

#include <sstream>

#include "biheig/config.hpp"

using namespace biheig;

namespace {
RunConfig from_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    load_config_file(is, cfg);
    return cfg;
}
}  // namespace

TEST_CASE("config file parsing and flag-style override") {
    RunConfig cfg = from_text("domain = lshape\nlevels = 3\n# a comment\nnum_eigs = 4\n");
    CHECK(cfg.domain == DomainKind::LShape);
    CHECK(cfg.domain_set);
    CHECK(cfg.levels == 3);
    CHECK(cfg.num_eigs == 4);

    cfg.levels = 5;  // what a --levels 5 flag does after the file is loaded
    CHECK(cfg.levels == 5);
    CHECK(cfg.domain == DomainKind::LShape);
    validate_config(cfg);
}

TEST_CASE("malformed configs are hard errors") {
    CHECK_THROWS_AS(from_text("unknown_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(from_text("levels = abc\n"), ConfigError);
    CHECK_THROWS_AS(from_text("eig_tol = 1e-8x\n"), ConfigError);
    CHECK_THROWS_AS(from_text("domain = pentagon\n"), ConfigError);
    CHECK_THROWS_AS(from_text("domain\n"), ConfigError);

    RunConfig no_domain;
    CHECK_THROWS_AS(validate_config(no_domain), ConfigError);

    RunConfig bad = from_text("domain = square\nnum_eigs = 0\n");
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    bad = from_text("domain = square\nlinear_tol = 2\n");
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    bad = from_text("domain = square\nformat = yaml\n");
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
}

TEST_CASE("config echo lists corners and warns about the usual method") {
    RunConfig ring = from_text("domain = ring\n");
    const std::string echo = echo_config(ring);
    CHECK(echo.find("# domain = ring") != std::string::npos);
    CHECK(echo.find("corner0") != std::string::npos);
    CHECK(echo.find("corner3") != std::string::npos);
    CHECK(echo.find("R = 0.16666666666666666") != std::string::npos);
    CHECK(echo.find("tau = 0.125") != std::string::npos);
    CHECK(echo.find("warning") == std::string::npos);

    RunConfig usual = from_text("domain = lshape\nmethod = usual\n");
    CHECK(echo_config(usual).find("warning") != std::string::npos);

    RunConfig square = from_text("domain = square\nmethod = usual\n");
    CHECK(echo_config(square).find("warning") == std::string::npos);
    CHECK(echo_config(square).find("none (convex domain)") != std::string::npos);

    // Echo carries every config key.
    for (const char* key : {"# domain", "# method", "# levels", "# num_eigs", "# eig_tol",
                            "# linear_tol", "# seed", "# output", "# format", "# dump_mesh",
                            "# quadrature", "# solver"}) {
        CHECK(echo.find(key) != std::string::npos);
    }
}
