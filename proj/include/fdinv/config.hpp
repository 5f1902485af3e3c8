#pragma once

#include "fdinv/forward.hpp"
#include "fdinv/modes.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdinv {

class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Flat `section.key = value` file. '#' and ';' at line start are comments; an
/// optional `[section]` header prefixes later bare keys.
class IniFile {
public:
    static IniFile parse(const std::string& text);
    static IniFile load(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback) const;
    double number(const std::string& key) const;
    double number(const std::string& key, double fallback) const;
    long integer(const std::string& key, long fallback) const;
    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// "start:stop:count" (inclusive, evenly spaced) or a comma list.
Eigen::VectorXd parse_grid(const std::string& text);

/// "1.5", "-2e-3", "2+1i", "0.5-0.25i", "3i".
complex parse_complex(const std::string& text);

/// Values separated by ',' (or ';').
std::vector<complex> parse_complex_list(const std::string& text);

struct ExperimentConfig {
    ModelParams model;
    int K{5};
    int M{0};
    Eigen::VectorXd time;  // forward grid
    int x_points{33};      // state output grid on [0, pi]
    SpectralField phi;
    SpectralField psi;
    SourceSpec src;
    double noise{0.0};  // relative to the rms of the flux
    std::uint64_t seed{0};
    std::map<std::string, std::string> task;  // task.* keys without the prefix

    std::string task_value(const std::string& key, const std::string& fallback) const;
};

/// Initial field from a preset ("zero", "parabola", "sine:k") or coefficient list.
SpectralField parse_field(const std::string& text, int K);

/// Rows split by ';', entries by ','. Missing rows and entries are zero.
Eigen::MatrixXcd parse_table(const std::string& text, int K, int M);

ExperimentConfig parse_config(const IniFile& ini);
ExperimentConfig load_config(const std::string& path);

}  // namespace fdinv
