#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace momap {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

/// Seed used whenever a caller does not supply one.
inline constexpr std::uint64_t kDefaultSeed = 20140601;

namespace linalg {

/// Eigenvalues of a Hermitian matrix, sorted nonincreasing.
RVector hermitian_eigenvalues_desc(const CMatrix& h);

bool is_hermitian(const CMatrix& m, double tol);

/// exp(h) for Hermitian h via its spectral decomposition.
CMatrix expm_hermitian(const CMatrix& h);

/// Rank of m counting singular values above rel_tol * largest (and above abs_floor).
int numerical_rank(const RMatrix& m, double rel_tol, double abs_floor = 1e-13);

/// Orthonormal basis of the kernel of m (columns), same thresholds as numerical_rank.
RMatrix kernel_basis(const RMatrix& m, double rel_tol, double abs_floor = 1e-13);

/// Orthonormal Hermitian basis of the N x N matrices under Tr(AB); the first
/// element is I/sqrt(N), the remaining N^2-1 are traceless (generalized Gell-Mann).
std::vector<CMatrix> hermitian_basis(int n);

/// The N^2-1 traceless elements of hermitian_basis(n).
std::vector<CMatrix> traceless_hermitian_basis(int n);

/// Counts of eigenvalue clusters (sorted input, gap > tol starts a new cluster).
std::vector<int> multiplicities(const RVector& sorted_values, double tol);

// Random sampling.
cplx complex_normal(Rng& rng);
CVector random_complex_vector(int n, Rng& rng);
CMatrix random_complex_matrix(int n, Rng& rng);
/// Haar-random unitary via QR with phase correction.
CMatrix random_unitary(int n, Rng& rng);
/// Traceless Hermitian with Gaussian entries.
CMatrix random_traceless_hermitian(int n, Rng& rng);

}  // namespace linalg
}  // namespace momap
