#include "momap/states.hpp"

#include <cmath>
#include <stdexcept>

namespace momap::states {

PureState basis(const std::vector<int>& dims, const std::vector<int>& digits) {
  if (dims.size() != digits.size()) throw std::invalid_argument("basis: digit count mismatch");
  const auto sec = SectorSpec::distinguishable(dims);
  std::size_t idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (digits[k] < 0 || digits[k] >= dims[k]) throw std::invalid_argument("basis: bad digit");
    idx = idx * dims[k] + digits[k];
  }
  CVector v = CVector::Zero(static_cast<Eigen::Index>(sec.tensor_dim()));
  v(static_cast<Eigen::Index>(idx)) = 1;
  return make_state(sec, v);
}

PureState qubits(const std::vector<std::pair<std::string, cplx>>& terms) {
  if (terms.empty()) throw std::invalid_argument("qubits: no terms");
  const std::size_t L = terms[0].first.size();
  CVector v = CVector::Zero(Eigen::Index(1) << L);
  for (const auto& [bits, amp] : terms) {
    if (bits.size() != L) throw std::invalid_argument("qubits: ragged bitstrings");
    std::size_t idx = 0;
    for (char c : bits) {
      if (c != '0' && c != '1') throw std::invalid_argument("qubits: bad bitstring");
      idx = 2 * idx + (c == '1');
    }
    v(static_cast<Eigen::Index>(idx)) += amp;
  }
  return make_state(SectorSpec::distinguishable(std::vector<int>(L, 2)), v);
}

PureState ghz(int L) {
  return qubits({{std::string(L, '0'), 1.0}, {std::string(L, '1'), 1.0}});
}

PureState w(int L) {
  std::vector<std::pair<std::string, cplx>> t;
  for (int k = 0; k < L; ++k) {
    std::string s(L, '1');
    s[k] = '0';
    t.emplace_back(s, 1.0);
  }
  return qubits(t);
}

PureState w_single_excitation(int L) {
  std::vector<std::pair<std::string, cplx>> t;
  for (int k = 0; k < L; ++k) {
    std::string s(L, '0');
    s[k] = '1';
    t.emplace_back(s, 1.0);
  }
  return qubits(t);
}

PureState bell_phi_plus() { return qubits({{"00", 1.0}, {"11", 1.0}}); }

PureState lu_counterexample_x1() {
  return qubits({{"000", std::sqrt(2.0 / 3.0)}, {"111", std::sqrt(1.0 / 3.0)}});
}

PureState lu_counterexample_x2_printed() {
  return qubits({{"000", 1.0}, {"010", 1.0}, {"001", 1.0}});
}

std::vector<CriticalRow> four_qubit_critical_table() {
  const double r3 = std::sqrt(3.0);
  std::vector<CriticalRow> rows;
  rows.push_back({"Sep", qubits({{"1111", 1.0}}), {{1, 2}, {1, 2}, {1, 2}, {1, 2}}, {0, 1}});
  rows.push_back({"TriSep", qubits({{"1100", 1.0}, {"1111", 1.0}}),
                  {{1, 2}, {1, 2}, {0, 1}, {0, 1}}, {1, 4}});
  rows.push_back({"W3x1", qubits({{"0111", 1.0}, {"1011", 1.0}, {"1101", 1.0}}),
                  {{1, 6}, {1, 6}, {1, 6}, {1, 2}}, {1, 3}});
  rows.push_back({"BiSep", qubits({{"1000", 1.0}, {"1111", 1.0}}),
                  {{1, 2}, {0, 1}, {0, 1}, {0, 1}}, {3, 8}});
  rows.push_back({"W", w(4), {{1, 4}, {1, 4}, {1, 4}, {1, 4}}, {3, 8}});
  rows.push_back({"Phi3",
                  qubits({{"1101", std::sqrt(0.3)}, {"1110", std::sqrt(0.3)},
                          {"0011", std::sqrt(0.4)}}),
                  {{1, 10}, {1, 10}, {1, 5}, {1, 5}}, {9, 20}});
  // The amplitudes usually quoted for Phi2 do not reproduce its row; this is the
  // critical state with the same support pattern and the tabulated spectra.
  rows.push_back({"Phi2",
                  qubits({{"1101", 0.5}, {"0111", 0.5}, {"1100", 1.0 / (2 * r3)},
                          {"0110", -1.0 / (2 * r3)}, {"1010", 1.0 / r3}}),
                  {{1, 6}, {1, 6}, {1, 6}, {0, 1}}, {11, 24}});
  rows.push_back({"Phi1",
                  qubits({{"0011", std::sqrt(3.0 / 14)}, {"0101", std::sqrt(3.0 / 14)},
                          {"1001", std::sqrt(3.0 / 14)}, {"1110", std::sqrt(5.0 / 14)}}),
                  {{1, 14}, {1, 14}, {1, 14}, {1, 7}}, {27, 56}});
  rows.push_back({"GHZ", ghz(4), {{0, 1}, {0, 1}, {0, 1}, {0, 1}}, {1, 2}});
  return rows;
}

}  // namespace momap::states
