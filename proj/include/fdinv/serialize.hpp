#pragma once

#include "fdinv/forward.hpp"
#include "fdinv/inverse.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace fdinv::io {

using json = nlohmann::ordered_json;

/// Writes to a sibling temporary and renames over `path`.
void write_atomic(const std::string& path, const std::string& content);

/// printf("%.17g").
std::string real(double x);

/// Header t,re_h,im_h.
std::string flux_csv(const FluxTrace& flux);
FluxTrace read_flux_csv(const std::string& path);

/// Header t,x,re_u,im_u,re_v,im_v; one row per (time, x) pair.
std::string state_csv(const StateTrajectory& traj, const Eigen::VectorXd& x);

/// Header re_s,im_s,re_value,im_value.
std::string transform_csv(const std::vector<complex>& s, const std::vector<complex>& values);

json to_json(complex z);
json to_json(const Eigen::VectorXcd& v);
json to_json(const Eigen::MatrixXcd& m);  // row-major nested arrays
json to_json(const ResidueReport& r);
json to_json(const ReconstructionResult& r);

}  // namespace fdinv::io
