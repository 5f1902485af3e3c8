#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdinv/config.hpp"
#include "fdinv/serialize.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace fdinv;

namespace {

const char* kText = R"(# sample
[model]
alpha = 0.7
kappa = 1
varkappa = 2
t0 = 1
t1 = 2.5
model.c = 0.1

[discretization]
K = 3
M = 2
time = 0:2:5

[data]
phi = parabola
psi = 0, 1+2i
f = 1, 2; ; 0, 0, -3e-1
seed = 9

[task]
s = 1; 2-1i
)";

}  // namespace

TEST_CASE("ini parsing") {
    const IniFile ini = IniFile::parse(kText);
    CHECK(ini.get("model.alpha") == "0.7");
    CHECK(ini.has("model.c"));
    CHECK(ini.number("model.d", 4.0) == 4.0);
    CHECK_THROWS_AS(IniFile::parse("alpha = 1"), ConfigError);
    CHECK_THROWS_AS(IniFile::parse("[model]\nalpha 1"), ConfigError);
    CHECK_THROWS_AS(IniFile::parse("model.a = 1\nmodel.a = 2"), ConfigError);
    CHECK_THROWS_AS(IniFile::load("/nonexistent/file.ini"), ConfigError);
}

TEST_CASE("value parsers") {
    CHECK(parse_complex("2+1i") == complex(2.0, 1.0));
    CHECK(parse_complex("0.5-0.25i") == complex(0.5, -0.25));
    CHECK(parse_complex("-3i") == complex(0.0, -3.0));
    CHECK(parse_complex("1e-3-2e+1j") == complex(1e-3, -20.0));
    CHECK(parse_complex("-i") == complex(0.0, -1.0));
    CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
    const Eigen::VectorXd g = parse_grid("0:1:5");
    REQUIRE(g.size() == 5);
    CHECK(g(1) == 0.25);
    CHECK(parse_grid("0.5, 1, 4").size() == 3);
    CHECK_THROWS_AS(parse_grid("0:1"), ConfigError);
    CHECK_THROWS_AS(parse_grid("0:1:0"), ConfigError);
}

TEST_CASE("experiment config") {
    const ExperimentConfig cfg = parse_config(IniFile::parse(kText));
    CHECK(cfg.model.alpha == 0.7);
    CHECK(cfg.model.c == 0.1);
    CHECK(cfg.K == 3);
    CHECK(cfg.M == 2);
    CHECK(cfg.time.size() == 5);
    CHECK(cfg.phi.coeffs(0).real() == doctest::Approx(std::sqrt(2.0 / std::numbers::pi) * 4.0));
    CHECK(cfg.psi.coeffs(1) == complex(1.0, 2.0));
    CHECK(cfg.src.f(0, 1) == complex(2.0, 0.0));
    CHECK(cfg.src.f(1, 0) == complex(0.0, 0.0));
    CHECK(cfg.src.f(2, 2) == complex(-0.3, 0.0));
    CHECK(cfg.seed == 9u);
    CHECK(cfg.task_value("s", "") == "1; 2-1i");
    CHECK(parse_field("sine:2", 3).coeffs(1) == complex(1.0, 0.0));
    CHECK(parse_field("sine:7", 3).coeffs.norm() == 0.0);
}

TEST_CASE("config rejections name the rule") {
    std::string bad = kText;
    bad.replace(bad.find("kappa = 1"), 9, "kappa = 0");
    try {
        parse_config(IniFile::parse(bad));
        FAIL("accepted kappa = 0");
    } catch (const AdmissibilityError& e) {
        CHECK(std::string(e.what()).find("kappa > 0") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config(IniFile::parse(std::string(kText) + "model.bogus = 1\n")), ConfigError);
    CHECK_THROWS_AS(parse_config(IniFile::parse(std::string(kText) + "data.noise = -1\n")), ConfigError);
    CHECK_THROWS_AS(parse_table("1;2;3;4", 3, 0), ConfigError);
    CHECK_THROWS_AS(parse_table("1,2,3,4", 3, 2), ConfigError);
}

TEST_CASE("csv and json round trips") {
    const auto dir = std::filesystem::temp_directory_path() / "fdinv_test_config";
    std::filesystem::remove_all(dir);
    FluxTrace h;
    h.time = Eigen::VectorXd::LinSpaced(4, 1.1, 1.9);
    h.values = Eigen::VectorXcd::Zero(4);
    h.values(1) = complex(1.0 / 3.0, -2e-17);
    const std::string path = (dir / "flux.csv").string();
    io::write_atomic(path, io::flux_csv(h));
    const FluxTrace back = io::read_flux_csv(path);
    CHECK(back.time == h.time);
    CHECK(back.values == h.values);
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    {
        std::ofstream out(dir / "bad.csv");
        out << "a,b\n1,2\n";
    }
    CHECK_THROWS_AS(io::read_flux_csv((dir / "bad.csv").string()), std::invalid_argument);

    ResidueReport r;
    r.mode = 2;
    r.pole = complex(-1.0, 0.5);
    const io::json j = io::to_json(r);
    CHECK(j.begin().key() == "mode");
    CHECK(j["pole"][1].get<double>() == 0.5);
    CHECK(io::real(0.1) == "0.10000000000000001");
    std::filesystem::remove_all(dir);
}
