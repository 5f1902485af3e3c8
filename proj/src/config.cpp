#include "fdinv/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace fdinv {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    if (!s.empty() && s.back() == sep) {
        out.emplace_back();
    }
    return out;
}

double to_double(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    double value = 0.0;
    const auto* end = t.data() + t.size();
    const char* begin = t.data();
    if (!t.empty() && t.front() == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (t.empty() || ec != std::errc() || ptr != end) {
        throw ConfigError(what + ": cannot parse number '" + text + "'");
    }
    return value;
}

long to_long(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    long value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw ConfigError(what + ": cannot parse integer '" + text + "'");
    }
    return value;
}

const std::set<std::string> kKnown = {
    "model.alpha", "model.kappa", "model.varkappa", "model.a", "model.b", "model.c", "model.d", "model.t0",
    "model.t1", "discretization.K", "discretization.M", "discretization.time", "discretization.x", "data.phi",
    "data.psi", "data.f", "data.chi", "data.noise", "data.seed",
};

}  // namespace

IniFile IniFile::parse(const std::string& text) {
    IniFile ini;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#' || t.front() == ';') {
            continue;
        }
        if (t.front() == '[') {
            if (t.back() != ']') {
                throw ConfigError("line " + std::to_string(number) + ": unterminated section header");
            }
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(number) + ": expected key = value");
        }
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (const auto hash = value.find(" #"); hash != std::string::npos) {
            value = trim(value.substr(0, hash));
        }
        if (key.find('.') == std::string::npos) {
            if (section.empty()) {
                throw ConfigError("line " + std::to_string(number) + ": key '" + key + "' needs a section");
            }
            key = section + "." + key;
        }
        if (ini.values_.count(key) != 0) {
            throw ConfigError("line " + std::to_string(number) + ": duplicate key '" + key + "'");
        }
        ini.values_[key] = value;
    }
    return ini;
}

IniFile IniFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string IniFile::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw ConfigError("missing key '" + key + "'");
    }
    return it->second;
}

std::string IniFile::get(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double IniFile::number(const std::string& key) const { return to_double(get(key), key); }

double IniFile::number(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

long IniFile::integer(const std::string& key, long fallback) const {
    return has(key) ? to_long(get(key), key) : fallback;
}

Eigen::VectorXd parse_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() == 3) {
        const double a = to_double(parts[0], "grid");
        const double b = to_double(parts[1], "grid");
        const long n = to_long(parts[2], "grid");
        if (n < 1) {
            throw ConfigError("grid '" + text + "': count must be >= 1");
        }
        if (n == 1) {
            return Eigen::VectorXd::Constant(1, a);
        }
        return Eigen::VectorXd::LinSpaced(n, a, b);
    }
    if (parts.size() != 1) {
        throw ConfigError("grid '" + text + "': expected start:stop:count or a list");
    }
    std::vector<double> v;
    for (const auto& item : split(text, ',')) {
        v.push_back(to_double(item, "grid"));
    }
    return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

complex parse_complex(const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) {
        throw ConfigError("empty complex value");
    }
    if (t.back() != 'i' && t.back() != 'j') {
        return {to_double(t, "complex"), 0.0};
    }
    t.pop_back();
    std::size_t cut = std::string::npos;
    for (std::size_t i = t.size(); i-- > 1;) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
            cut = i;
            break;
        }
    }
    const auto imag = [&](const std::string& s) {
        const std::string u = trim(s);
        if (u.empty() || u == "+") {
            return 1.0;
        }
        if (u == "-") {
            return -1.0;
        }
        return to_double(u, "complex");
    };
    if (cut == std::string::npos) {
        return {0.0, imag(t)};
    }
    return {to_double(t.substr(0, cut), "complex"), imag(t.substr(cut))};
}

std::vector<complex> parse_complex_list(const std::string& text) {
    std::string t = text;
    std::replace(t.begin(), t.end(), ';', ',');
    std::vector<complex> out;
    for (const auto& item : split(t, ',')) {
        if (!item.empty()) {
            out.push_back(parse_complex(item));
        }
    }
    return out;
}

std::string ExperimentConfig::task_value(const std::string& key, const std::string& fallback) const {
    const auto it = task.find(key);
    return it == task.end() ? fallback : it->second;
}

SpectralField parse_field(const std::string& text, int K) {
    const std::string t = trim(text);
    if (t.empty() || t == "zero") {
        return SpectralField::zero(K);
    }
    if (t == "parabola") {
        return analyze([](double x) { return complex(x * (std::numbers::pi - x), 0.0); }, K);
    }
    if (t.rfind("sine:", 0) == 0) {
        const long k = to_long(t.substr(5), "sine preset");
        if (k < 1) {
            throw ConfigError("sine preset: mode index must be >= 1");
        }
        SpectralField f = SpectralField::zero(K);
        if (k <= K) {
            f.coeffs(k - 1) = 1.0;
        }
        return f;
    }
    const auto values = parse_complex_list(t);
    if (static_cast<int>(values.size()) > K) {
        throw ConfigError("coefficient list longer than K = " + std::to_string(K));
    }
    SpectralField f = SpectralField::zero(K);
    for (std::size_t i = 0; i < values.size(); ++i) {
        f.coeffs(static_cast<Eigen::Index>(i)) = values[i];
    }
    return f;
}

Eigen::MatrixXcd parse_table(const std::string& text, int K, int M) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(K, M + 1);
    const std::string t = trim(text);
    if (t.empty() || t == "zero") {
        return out;
    }
    const auto rows = split(t, ';');
    if (static_cast<int>(rows.size()) > K) {
        throw ConfigError("source table has more rows than K = " + std::to_string(K));
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].empty()) {
            continue;
        }
        const auto entries = split(rows[r], ',');
        if (static_cast<int>(entries.size()) > M + 1) {
            throw ConfigError("source table row " + std::to_string(r + 1) + " has more than M + 1 entries");
        }
        for (std::size_t m = 0; m < entries.size(); ++m) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(m)) = parse_complex(entries[m]);
        }
    }
    return out;
}

ExperimentConfig parse_config(const IniFile& ini) {
    for (const auto& [key, value] : ini.values()) {
        if (key.rfind("task.", 0) != 0 && kKnown.count(key) == 0) {
            throw ConfigError("unknown key '" + key + "'");
        }
    }
    ExperimentConfig cfg;
    ModelParams& p = cfg.model;
    p.alpha = ini.number("model.alpha");
    p.kappa = ini.number("model.kappa", p.kappa);
    p.varkappa = ini.number("model.varkappa", p.varkappa);
    p.a = ini.number("model.a", 0.0);
    p.b = ini.number("model.b", 0.0);
    p.c = ini.number("model.c", 0.0);
    p.d = ini.number("model.d", 0.0);
    p.t0 = ini.number("model.t0");
    p.t1 = ini.number("model.t1");
    p.validate();

    const long K = ini.integer("discretization.K", 5);
    const long M = ini.integer("discretization.M", 0);
    if (K < 1 || K > 100000) {
        throw ConfigError("discretization.K must be in [1, 100000]");
    }
    if (M < 0 || M > 20) {
        throw ConfigError("discretization.M must be in [0, 20]");
    }
    cfg.K = static_cast<int>(K);
    cfg.M = static_cast<int>(M);
    if (ini.has("discretization.time")) {
        cfg.time = parse_grid(ini.get("discretization.time"));
    } else {
        cfg.time = Eigen::VectorXd::LinSpaced(401, 0.0, p.t1);
    }
    if (cfg.time.size() == 0 || cfg.time.minCoeff() < 0.0) {
        throw ConfigError("discretization.time must be non-empty and non-negative");
    }
    for (Eigen::Index i = 1; i < cfg.time.size(); ++i) {
        if (!(cfg.time(i) > cfg.time(i - 1))) {
            throw ConfigError("discretization.time must be strictly increasing");
        }
    }
    cfg.x_points = static_cast<int>(ini.integer("discretization.x", 33));
    if (cfg.x_points < 2) {
        throw ConfigError("discretization.x must be >= 2");
    }

    cfg.phi = parse_field(ini.get("data.phi", "zero"), cfg.K);
    cfg.psi = parse_field(ini.get("data.psi", "zero"), cfg.K);
    cfg.src = SourceSpec::zero(cfg.K, cfg.M);
    cfg.src.f = parse_table(ini.get("data.f", ""), cfg.K, cfg.M);
    cfg.src.chi = parse_table(ini.get("data.chi", ""), cfg.K, cfg.M);
    cfg.noise = ini.number("data.noise", 0.0);
    if (cfg.noise < 0.0) {
        throw ConfigError("data.noise must be >= 0");
    }
    const long seed = ini.integer("data.seed", 0);
    if (seed < 0) {
        throw ConfigError("data.seed must be >= 0");
    }
    cfg.seed = static_cast<std::uint64_t>(seed);
    for (const auto& [key, value] : ini.values()) {
        if (key.rfind("task.", 0) == 0) {
            cfg.task[key.substr(5)] = value;
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) { return parse_config(IniFile::load(path)); }

}  // namespace fdinv
