#pragma once

// Named reference states used by the tests, the acceptance suite and the CLI.

#include <string>
#include <vector>

#include "momap/tensor_state.hpp"

namespace momap::states {

/// Computational basis state |digits> on the given local dimensions.
PureState basis(const std::vector<int>& dims, const std::vector<int>& digits);

/// Normalized qubit state from (bitstring, amplitude) terms, e.g. {"011", 1}.
PureState qubits(const std::vector<std::pair<std::string, cplx>>& terms);

PureState ghz(int L);
/// (|01...1> + |101...1> + ... + |1...10>) normalized.
PureState w(int L);
/// (|10...0> + |010...0> + ... + |0...01>) normalized.
PureState w_single_excitation(int L);
PureState bell_phi_plus();

/// sqrt(2/3)|000> + sqrt(1/3)|111>.
PureState lu_counterexample_x1();
/// (|000> + |010> + |001>)/sqrt(3), exactly as printed in the literature.
PureState lu_counterexample_x2_printed();

struct Rational {
  long num;
  long den;
  double value() const { return double(num) / double(den); }
};

/// One row of the table of critical four-qubit states.
struct CriticalRow {
  std::string name;
  PureState state;
  std::vector<Rational> lambdas;  // one per qubit
  Rational linear_entropy;
};

/// Sep, TriSep, W3 (x) |1>, BiSep, W, Phi3, Phi2, Phi1, GHZ.
std::vector<CriticalRow> four_qubit_critical_table();

}  // namespace momap::states
