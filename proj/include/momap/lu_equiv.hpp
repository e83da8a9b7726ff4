#pragma once

#include <optional>
#include <string>
#include <vector>

#include "momap/tensor_state.hpp"

namespace momap {

enum class Verdict { equivalent, not_equivalent, undecided_necessary_passed };
std::string to_string(Verdict v);

struct LUVerdict {
  Verdict verdict = Verdict::undecided_necessary_passed;
  std::string evidence;
  std::string method;                   // bipartite | two_indistinguishable | necessary
  std::vector<RVector> spectra_a;       // Schmidt coefficients or per-subsystem spectra
  std::vector<RVector> spectra_b;
  double max_spectral_gap = 0;
  std::optional<double> tangle_a;       // three-qubit discriminator, when used
  std::optional<double> tangle_b;
};

inline constexpr double kSpectraTol = 1e-9;

/// Complete test for two distinguishable parties: equal Schmidt coefficients.
LUVerdict lu_equivalent_bipartite(const PureState& a, const PureState& b);

/// Complete test for two bosons or two fermions: equal one-particle spectra.
LUVerdict lu_equivalent_two_indistinguishable(const PureState& a, const PureState& b);

/// Necessary test: per-subsystem spectra in fixed party order, followed by the
/// three-tangle for three qubits. Never returns equivalent.
LUVerdict lu_necessary(const PureState& a, const PureState& b);

/// Picks the complete test when the sector admits one, else lu_necessary.
LUVerdict lu_decide(const PureState& a, const PureState& b);

/// The literature pair x1 = sqrt(2/3)|000> + sqrt(1/3)|111> and x2, with x2 as
/// printed and the single-excitation W state that does share x1's spectra.
struct CounterexampleReport {
  std::vector<RVector> spectra_x1;
  std::vector<RVector> spectra_x2_printed;
  std::vector<RVector> spectra_w_variant;
  bool printed_matches_x1 = false;
  bool w_variant_matches_x1 = false;
  double tangle_x1 = 0;
  double tangle_w_variant = 0;
  LUVerdict verdict;                    // lu_necessary(x1, W variant)
};

CounterexampleReport lu_counterexample_report();

}  // namespace momap
