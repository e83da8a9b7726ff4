#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "momap/momentum_map.hpp"
#include "momap/tensor_state.hpp"

namespace momap {

/// Torus weight of a computational basis state of L qubits: coordinate k is
/// +1/2 when bit k is 0 and -1/2 when it is 1.
struct Weight {
  RVector coords;
  std::size_t basis_index = 0;
};

struct CriticalValue {
  RVector beta;                         // canonical: nonnegative, nonincreasing
  double norm_sq = 0;
  std::vector<Weight> support;          // weights on the hyperplane <w,beta> = |beta|^2
  std::vector<std::size_t> z_basis;     // basis indices spanning Z_beta
  bool nonempty = false;                // C_beta realizable
  std::optional<PureState> witness;     // state with mu(witness) = beta
  double witness_residual = 0;          // |mu(witness) - beta| of the best attempt
};

struct AtlasOptions {
  int max_subset_size = 0;              // 0 means L + 1
  std::size_t subset_budget = 20'000'000;
  bool find_witnesses = true;
  int witness_restarts = 50;
  int witness_iterations = 400;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;                 // 0: hardware concurrency
  Tolerances tol{};
};

struct Atlas {
  int qubits = 0;
  std::vector<CriticalValue> values;    // sorted by |beta|^2, then lexicographically
  std::size_t subsets_examined = 0;
  bool partial = false;                 // subset budget was exhausted
};

std::vector<Weight> qubit_weights(int L);

/// Sign flips into the positive chamber followed by a nonincreasing sort.
RVector canonical_beta(const RVector& beta);

/// All coordinate permutations of a canonical beta (distinct, sorted).
std::vector<RVector> expand_permutations(const RVector& beta);

/// Critical values of |mu|^2 for L qubits (2 <= L <= 5), up to qubit permutation.
Atlas enumerate_B(int L, const AtlasOptions& opts = {});

/// Z_beta support for an arbitrary (not necessarily canonical) beta.
std::vector<Weight> hyperplane_support(const RVector& beta, double tol);

struct WitnessResult {
  std::optional<PureState> state;
  double residual = 0;
};

/// Searches a unit vector supported on value.z_basis with mu = beta.
/// Success iff the residual |mu(v) - beta| drops below 1e-7.
WitnessResult find_witness(const CriticalValue& value, int L, const AtlasOptions& opts = {});

struct CriticalityReport {
  bool critical = false;
  double eigenvalue = 0;
  double residual = 0;
};

/// Tests mu([v]).v = lambda v with A = sum_k m_k acting on slot k.
CriticalityReport is_critical(const PureState& state, const Tolerances& tol = {});

/// Index of the canonical value within tol of canonical_beta(lambda), or -1.
int match_critical_value(const Atlas& atlas, const RVector& lambda, double tol);

/// Momentum blocks diag(beta_k, -beta_k) corresponding to a torus point.
MomentumPoint torus_momentum(const RVector& beta);

}  // namespace momap
