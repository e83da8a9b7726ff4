#pragma once

#include <optional>
#include <string>
#include <vector>

#include "momap/critical_atlas.hpp"
#include "momap/momentum_map.hpp"

namespace momap {

struct FlowOptions {
  int max_iterations = 20000;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double initial_step = 1.0;
  double max_step = 8.0;
  double match_tol = 1e-5;
  bool keep_history = false;
  Tolerances tol{};
};

struct StratumAssignment {
  PureState limit_state;
  SpectraPoint limit_spectra;
  std::optional<CriticalValue> beta{}; // matched critical value (qubit sectors only)
  bool matched = false;
  bool converged = false;              // residual < flow_tol
  bool semistable = false;             // limit at the zero level
  int iterations = 0;
  double final_norm_mu_sq = 0;
  double residual = 0;
  std::vector<double> norm_history{};  // |mu|^2 after every accepted step
};

/// -(A v - <v, A v> v): the descent direction of |mu|^2 on projective space.
CVector descent_direction(const PureState& state);

/// Armijo-controlled retraction along descent_direction until criticality.
StratumAssignment flow_to_critical(const PureState& state, const FlowOptions& opts = {});

/// Atlas of critical values for L qubits without witnesses, computed once.
const Atlas& shared_atlas(int L);

struct NullConeResult {
  bool semistable = false;
  double infimum = 0;                  // smallest |mu|^2 reached on the G-orbit
  int iterations = 0;
  bool budget_exhausted = false;
  std::optional<StratumAssignment> stratum;  // K-flow limit, for unstable states
};

struct NullConeOptions {
  int max_iterations = 20000;
  double threshold = 1e-8;
  FlowOptions flow{};
};

/// Descent of |mu|^2 over exp(xi) . state with per-slot Hermitian traceless xi.
NullConeResult null_cone_test(const PureState& state, const NullConeOptions& opts = {});

enum class Sampler { polar, gaussian };
std::string to_string(Sampler s);
Sampler sampler_from_string(const std::string& s);

struct PolytopeSample {
  std::vector<SpectraPoint> points;
  double min_norm_sq = 0;              // min over samples of sum_k sum_i lambda_{k,i}^2 / 2
};

/// psi of n random SLOCC images of the state. The polar sampler draws
/// exp(s H_k) with H_k Gaussian traceless Hermitian and s ~ U(0, 2); the
/// gaussian sampler draws local operators with i.i.d. complex normal entries.
PolytopeSample polytope_sample(const PureState& state, int n, Rng& rng,
                               Sampler sampler = Sampler::polar);

/// |<W3, A(a)^{(x)3} GHZ3>|^2 with A(a) = [[a, a], [-1/a, 1/a]] / sqrt(2).
double ghz_to_w_demo(double a);

/// Number of singular values above eig_tol of the matricization with the
/// given slots as rows.
int schmidt_rank(const PureState& state, const std::vector<int>& row_slots,
                 const Tolerances& tol = {});

/// 4 |hyperdeterminant| of a three-qubit state; 1 for GHZ, 0 for W.
double three_tangle(const PureState& state);

enum class Slocc3Class { Sep, BiSep_A_BC, BiSep_B_AC, BiSep_C_AB, W, GHZ };
std::string to_string(Slocc3Class c);

Slocc3Class classify_slocc_3qubit(const PureState& state, const Tolerances& tol = {});

}  // namespace momap
