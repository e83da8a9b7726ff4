#include "momap/lu_equiv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "momap/momentum_map.hpp"
#include "momap/slocc_flow.hpp"
#include "momap/states.hpp"

namespace momap {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::equivalent: return "equivalent";
    case Verdict::not_equivalent: return "not_equivalent";
    case Verdict::undecided_necessary_passed: return "undecided_necessary_passed";
  }
  return "?";
}

namespace {

void require_same_sector(const PureState& a, const PureState& b, const char* who) {
  if (!(a.sector() == b.sector()))
    throw std::invalid_argument(std::string(who) + ": states live in different sectors");
}

double max_gap(const std::vector<RVector>& x, const std::vector<RVector>& y) {
  double g = 0;
  for (std::size_t k = 0; k < x.size(); ++k) g = std::max(g, (x[k] - y[k]).cwiseAbs().maxCoeff());
  return g;
}

std::vector<RVector> subsystem_spectra(const PureState& s) {
  std::vector<RVector> out;
  for (int k = 0; k < s.sector().num_subsystems(); ++k)
    out.push_back(linalg::hermitian_eigenvalues_desc(reduced_density_matrix(s, k)));
  return out;
}

RVector schmidt_coefficients(const PureState& s) {
  const CMatrix m = tensor::matricize(s.amplitudes(), s.sector().slot_dims(), {0});
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();  // nonincreasing
}

std::string gap_text(double gap) {
  std::ostringstream os;
  os.precision(3);
  os << gap;
  return os.str();
}

LUVerdict spectral_verdict(LUVerdict v, const std::string& what) {
  v.max_spectral_gap = max_gap(v.spectra_a, v.spectra_b);
  if (v.max_spectral_gap <= kSpectraTol) {
    v.verdict = Verdict::equivalent;
    v.evidence = what + " agree within 1e-9; complete invariant in this sector";
  } else {
    v.verdict = Verdict::not_equivalent;
    v.evidence = what + " differ (max gap " + gap_text(v.max_spectral_gap) + ")";
  }
  return v;
}

}  // namespace

LUVerdict lu_equivalent_bipartite(const PureState& a, const PureState& b) {
  require_same_sector(a, b, "lu_equivalent_bipartite");
  const SectorSpec& sec = a.sector();
  if (!sec.is_distinguishable() || sec.num_slots() != 2)
    throw std::invalid_argument("lu_equivalent_bipartite: requires two distinguishable parties");
  LUVerdict v;
  v.method = "bipartite";
  v.spectra_a = {schmidt_coefficients(a)};
  v.spectra_b = {schmidt_coefficients(b)};
  return spectral_verdict(std::move(v), "Schmidt coefficients");
}

LUVerdict lu_equivalent_two_indistinguishable(const PureState& a, const PureState& b) {
  require_same_sector(a, b, "lu_equivalent_two_indistinguishable");
  const SectorSpec& sec = a.sector();
  if (sec.is_distinguishable() || sec.num_slots() != 2)
    throw std::invalid_argument(
        "lu_equivalent_two_indistinguishable: requires two bosons or two fermions");
  LUVerdict v;
  v.method = "two_indistinguishable";
  v.spectra_a = subsystem_spectra(a);
  v.spectra_b = subsystem_spectra(b);
  return spectral_verdict(std::move(v), "one-particle spectra");
}

LUVerdict lu_necessary(const PureState& a, const PureState& b) {
  require_same_sector(a, b, "lu_necessary");
  LUVerdict v;
  v.method = "necessary";
  v.spectra_a = subsystem_spectra(a);
  v.spectra_b = subsystem_spectra(b);
  v.max_spectral_gap = max_gap(v.spectra_a, v.spectra_b);
  if (v.max_spectral_gap > kSpectraTol) {
    v.verdict = Verdict::not_equivalent;
    v.evidence = "reduced spectra differ (max gap " + gap_text(v.max_spectral_gap) + ")";
    return v;
  }
  const SectorSpec& sec = a.sector();
  if (sec.is_distinguishable() && sec.num_slots() == 3 && sec.all_qubits()) {
    v.tangle_a = three_tangle(a);
    v.tangle_b = three_tangle(b);
    if (std::abs(*v.tangle_a - *v.tangle_b) > kSpectraTol) {
      v.verdict = Verdict::not_equivalent;
      v.evidence = "reduced spectra agree but three-tangles differ (" + gap_text(*v.tangle_a) +
                   " vs " + gap_text(*v.tangle_b) + ")";
      return v;
    }
    v.evidence = "reduced spectra and three-tangle agree; necessary conditions only";
  } else {
    v.evidence = "reduced spectra agree; necessary condition only";
  }
  v.verdict = Verdict::undecided_necessary_passed;
  return v;
}

LUVerdict lu_decide(const PureState& a, const PureState& b) {
  require_same_sector(a, b, "lu_decide");
  const SectorSpec& sec = a.sector();
  if (sec.num_slots() == 2)
    return sec.is_distinguishable() ? lu_equivalent_bipartite(a, b)
                                    : lu_equivalent_two_indistinguishable(a, b);
  return lu_necessary(a, b);
}

CounterexampleReport lu_counterexample_report() {
  const PureState x1 = states::lu_counterexample_x1();
  const PureState x2 = states::lu_counterexample_x2_printed();
  const PureState wv = states::w_single_excitation(3);
  CounterexampleReport r;
  r.spectra_x1 = subsystem_spectra(x1);
  r.spectra_x2_printed = subsystem_spectra(x2);
  r.spectra_w_variant = subsystem_spectra(wv);
  r.printed_matches_x1 = max_gap(r.spectra_x1, r.spectra_x2_printed) <= kSpectraTol;
  r.w_variant_matches_x1 = max_gap(r.spectra_x1, r.spectra_w_variant) <= kSpectraTol;
  r.tangle_x1 = three_tangle(x1);
  r.tangle_w_variant = three_tangle(wv);
  r.verdict = lu_necessary(x1, wv);
  return r;
}

}  // namespace momap
