#include "fdinv/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fdinv::io {

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path());
    }
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write '" + tmp.string() + "'");
        }
        out << content;
        out.flush();
        if (!out) {
            throw std::runtime_error("write failed for '" + tmp.string() + "'");
        }
    }
    fs::rename(tmp, target);
}

std::string real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string flux_csv(const FluxTrace& flux) {
    std::string out = "t,re_h,im_h\n";
    for (Eigen::Index i = 0; i < flux.time.size(); ++i) {
        out += real(flux.time(i)) + "," + real(flux.values(i).real()) + "," + real(flux.values(i).imag()) + "\n";
    }
    return out;
}

FluxTrace read_flux_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open flux file '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,re_h,im_h", 0) != 0) {
        throw std::invalid_argument("flux file '" + path + "' lacks the header t,re_h,im_h");
    }
    std::vector<double> t;
    std::vector<complex> h;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") {
            continue;
        }
        double a = 0.0;
        double b = 0.0;
        double c = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &a, &b, &c) != 3) {
            throw std::invalid_argument("flux file '" + path + "' row " + std::to_string(row) + " is malformed");
        }
        t.push_back(a);
        h.emplace_back(b, c);
    }
    FluxTrace flux;
    flux.time = Eigen::Map<Eigen::VectorXd>(t.data(), static_cast<Eigen::Index>(t.size()));
    flux.values = Eigen::Map<Eigen::VectorXcd>(h.data(), static_cast<Eigen::Index>(h.size()));
    return flux;
}

std::string state_csv(const StateTrajectory& traj, const Eigen::VectorXd& x) {
    std::ostringstream out;
    out << "t,x,re_u,im_u,re_v,im_v\n";
    for (Eigen::Index i = 0; i < traj.time.size(); ++i) {
        const Eigen::VectorXcd u = synthesize(SpectralField{traj.u.col(i)}, x);
        const Eigen::VectorXcd v = synthesize(SpectralField{traj.v.col(i)}, x);
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            out << real(traj.time(i)) << ',' << real(x(j)) << ',' << real(u(j).real()) << ',' << real(u(j).imag())
                << ',' << real(v(j).real()) << ',' << real(v(j).imag()) << '\n';
        }
    }
    return out.str();
}

std::string transform_csv(const std::vector<complex>& s, const std::vector<complex>& values) {
    std::string out = "re_s,im_s,re_value,im_value\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += real(s[i].real()) + "," + real(s[i].imag()) + "," + real(values[i].real()) + "," +
               real(values[i].imag()) + "\n";
    }
    return out;
}

json to_json(complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const Eigen::VectorXcd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(to_json(v(i)));
    }
    return out;
}

json to_json(const Eigen::MatrixXcd& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out.push_back(to_json(Eigen::VectorXcd(m.row(i).transpose())));
    }
    return out;
}

json to_json(const ResidueReport& r) {
    json out;
    out["mode"] = r.mode;
    out["pole"] = to_json(r.pole);
    out["contour_value"] = to_json(r.contour_value);
    out["closed_form"] = to_json(r.closed_form);
    out["rel_error"] = r.rel_error;
    out["radius"] = r.radius;
    out["nodes"] = r.nodes;
    return out;
}

json to_json(const ReconstructionResult& r) {
    json out;
    out["phi_hat"] = to_json(r.phi_hat.coeffs);
    out["psi_hat"] = to_json(r.psi_hat.coeffs);
    out["f_hat"] = to_json(r.f_hat);
    out["chi_hat"] = to_json(r.chi_hat);
    out["residual_norm"] = r.residual_norm;
    out["condition_number"] = r.condition_number;
    out["equilibrated_condition"] = r.equilibrated_condition;
    out["regularization"] = r.regularization;
    out["numerical_rank"] = r.numerical_rank;
    out["unknowns"] = r.unknowns;
    out["warnings"] = r.warnings;
    return out;
}

}  // namespace fdinv::io
