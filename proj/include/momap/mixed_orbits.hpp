#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "momap/tensor_state.hpp"

namespace momap {

/// K as a product over the parties of either SU(N_k) (full) or the identity.
struct GroupSpec {
  std::vector<bool> full;

  static GroupSpec full_product(int parties) { return {std::vector<bool>(parties, true)}; }
  /// SU(N_1) x I x ... x I.
  static GroupSpec first_only(int parties);

  /// Throws std::invalid_argument if there is no full factor or the party
  /// count does not match dims.
  void validate(const std::vector<int>& dims) const;
  /// Real dimension of K.
  int dim(const std::vector<int>& dims) const;
};

struct OrbitReport {
  int dim_K = 0;
  int orbit_dim = 0;
  int stabilizer_dim = 0;
  int omega_rank = 0;
  int degeneracy_D = 0;
  int euler_chi = 0;
  bool is_symplectic = false;
  bool is_cq = false;
  bool is_cc = false;
};

/// Relative singular-value threshold for all rank computations here.
inline constexpr double kOrbitRankTol = 1e-8;
/// Commutator norm below which families count as commuting.
inline constexpr double kCommuteTol = 1e-9;

int stabilizer_dim(const DensityMatrix& rho, const GroupSpec& K);
int orbit_dim(const DensityMatrix& rho, const GroupSpec& K);

/// Rank of Omega_ab = -(i/2) Tr(rho [xi_a, xi_b]) over a basis of the Lie algebra of K.
int omega_rank(const DensityMatrix& rho, const GroupSpec& K);

/// orbit_dim minus the dimension of the adjoint orbit of the reduced blocks
/// of the full factors.
int degeneracy_D(const DensityMatrix& rho, const GroupSpec& K);

/// |W_K| / |W_{K_rho}| when the stabilizer contains a maximal torus, else 0.
int euler_characteristic(const DensityMatrix& rho, const GroupSpec& K,
                         std::uint64_t seed = kDefaultSeed);

/// Classical on the first party: the first-party factors A_m of
/// rho = sum_m A_m (x) Y_m pairwise commute. Requires two parties.
bool is_cq(const DensityMatrix& rho);
/// Classical on both parties.
bool is_cc(const DensityMatrix& rho);

OrbitReport analyze_orbit(const DensityMatrix& rho, const GroupSpec& K,
                          std::uint64_t seed = kDefaultSeed);

struct SimplexScanRow {
  std::array<int, 4> counts{};   // p = counts / grid for |00>, |01>, |10>, |11>
  int orbit_dim = 0;
  int omega_rank = 0;
  int degeneracy_D = 0;
  int euler_chi = 0;
};

/// Two-qubit CC states diag(p00, p01, p10, p11) on the lattice p = counts / grid
/// under SU(2) x SU(2).
std::vector<SimplexScanRow> cc_simplex_scan(int grid, unsigned threads = 0);

DensityMatrix cc_density(const std::array<double, 4>& p);

}  // namespace momap
