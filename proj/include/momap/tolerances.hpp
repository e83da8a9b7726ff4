#pragma once

#include <stdexcept>

namespace momap {

/// Numerical thresholds shared by every module. Defaults are the documented
/// contract values; callers may override any field.
struct Tolerances {
  double eig_tol = 1e-10;     // singular/eigen values below this are zero
  double dedupe_tol = 1e-9;   // merging of critical values
  double flow_tol = 1e-8;     // gradient residual for criticality
  double fd_step = 1e-6;      // finite-difference step
  double construct_tol = 1e-12;
  double psd_slack = 1e-10;

  void validate() const {
    if (!(eig_tol > 0 && dedupe_tol > 0 && flow_tol > 0 && fd_step > 0 &&
          construct_tol > 0 && psd_slack > 0))
      throw std::invalid_argument("Tolerances: all thresholds must be positive");
  }
};

}  // namespace momap
