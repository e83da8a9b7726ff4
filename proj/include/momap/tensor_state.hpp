#pragma once

// Pure and mixed states with tensor-product structure.
//
// Wire convention: subsystems are indexed from 0 and amplitudes are flattened
// row-major with slot 0 the most significant digit, i.e. the amplitude of
// |i_0 i_1 ... i_{L-1}> lives at sum_k i_k * prod_{j>k} N_j. Bosonic and
// fermionic states are stored as the embedded (anti)symmetric tensor in
// (C^d)^{\otimes L}.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "momap/linalg.hpp"
#include "momap/tolerances.hpp"

namespace momap {

enum class ParticleKind { distinguishable, bosonic, fermionic };

std::string to_string(ParticleKind kind);
ParticleKind particle_kind_from_string(const std::string& s);

class SectorSpec {
 public:
  static SectorSpec distinguishable(std::vector<int> dims);
  static SectorSpec bosonic(int d, int particles);
  static SectorSpec fermionic(int d, int particles);

  ParticleKind kind() const { return kind_; }
  bool is_distinguishable() const { return kind_ == ParticleKind::distinguishable; }

  /// Local dimension of every tensor slot (length L).
  const std::vector<int>& slot_dims() const { return dims_; }
  int num_slots() const { return static_cast<int>(dims_.size()); }
  /// Number of independent subsystems carrying a reduced density matrix:
  /// L for distinguishable particles, 1 for bosons and fermions.
  int num_subsystems() const { return is_distinguishable() ? num_slots() : 1; }
  int subsystem_dim(int k) const;

  /// Dimension of the embedding tensor space, prod_k N_k.
  std::size_t tensor_dim() const;
  /// Dimension of the physical space: prod N_k, C(d+L-1, L) or C(d, L).
  std::size_t physical_dim() const;

  bool all_qubits() const;

  friend bool operator==(const SectorSpec&, const SectorSpec&) = default;

 private:
  SectorSpec(ParticleKind kind, std::vector<int> dims);

  ParticleKind kind_;
  std::vector<int> dims_;
};

/// Unit vector of a sector. Construct with make_state.
class PureState {
 public:
  const SectorSpec& sector() const { return sector_; }
  const CVector& amplitudes() const { return amps_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }

 private:
  friend PureState make_state(const SectorSpec&, const CVector&, const Tolerances&);
  PureState(SectorSpec sector, CVector amps)
      : sector_(std::move(sector)), amps_(std::move(amps)) {}

  SectorSpec sector_;
  CVector amps_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity (slack tol.psd_slack).
  static DensityMatrix make(std::vector<int> dims, CMatrix matrix,
                            const Tolerances& tol = {});
  static DensityMatrix from_pure(const PureState& state);

  const std::vector<int>& dims() const { return dims_; }
  const CMatrix& matrix() const { return matrix_; }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }

 private:
  DensityMatrix(std::vector<int> dims, CMatrix m)
      : dims_(std::move(dims)), matrix_(std::move(m)) {}

  std::vector<int> dims_;
  CMatrix matrix_;
};

/// g_0 (x) g_1 (x) ... acting slot-wise. No unitarity or determinant constraint.
/// For bosons/fermions a single factor is broadcast to every slot.
struct LocalOperator {
  std::vector<CMatrix> factors;
};

/// Element sum_k 1 (x) ... (x) xi_k (x) ... (x) 1 of the local Lie algebra.
struct LocalAlgebraElement {
  std::vector<CMatrix> factors;
};

/// Normalizes (and for bosons/fermions first (anti)symmetrizes) the amplitude
/// tensor. Throws std::invalid_argument on length mismatch or zero vector.
PureState make_state(const SectorSpec& sector, const CVector& amplitudes,
                     const Tolerances& tol = {});

/// Trace-one reduced density matrix of subsystem k.
CMatrix reduced_density_matrix(const PureState& state, int k);
DensityMatrix reduced_density(const PureState& state, int k);

/// Projective action: slot-wise application then renormalization.
PureState apply_local(const LocalOperator& op, const PureState& state,
                      const Tolerances& tol = {});

cplx overlap(const PureState& a, const PureState& b);
double fidelity(const PureState& a, const PureState& b);

// Tensor kernels shared by the other modules.
namespace tensor {

/// Partial trace of |v><v| onto slot k (no normalization).
CMatrix slot_reduced(const CVector& v, const std::vector<int>& dims, int k);

/// Tr_{slots != k} |u><w|.
CMatrix slot_cross(const CVector& u, const CVector& w, const std::vector<int>& dims, int k);

/// Partial trace of a density matrix onto slot k.
CMatrix slot_reduced(const CMatrix& rho, const std::vector<int>& dims, int k);

/// (1 (x) ... g ... (x) 1) v with g acting on slot k.
CVector apply_slot(const CMatrix& g, const CVector& v, const std::vector<int>& dims,
                   int k);

/// Full operator 1 (x) ... g ... (x) 1 as a dense matrix.
CMatrix embed_slot(const CMatrix& g, const std::vector<int>& dims, int k);

/// Matricization with the listed slots as row index (in the given order).
CMatrix matricize(const CVector& v, const std::vector<int>& dims,
                  const std::vector<int>& row_slots);

/// Projector onto the (anti)symmetric subspace applied to v.
CVector symmetrize(const CVector& v, int d, int particles, bool antisymmetric);

}  // namespace tensor

// Random states for tests, sampling and the CLI.
PureState random_state(const SectorSpec& sector, Rng& rng);
LocalOperator random_local_unitary(const SectorSpec& sector, Rng& rng);
/// Hilbert-Schmidt random full-rank density matrix.
DensityMatrix random_density(const std::vector<int>& dims, Rng& rng);

}  // namespace momap
