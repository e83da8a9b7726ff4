#include "momap/slocc_flow.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "momap/numkit.hpp"
#include "momap/states.hpp"

namespace momap {

namespace {

double norm_mu_sq_of(const SectorSpec& sec, const CVector& v) {
  double s = 0;
  const auto& dims = sec.slot_dims();
  for (int k = 0; k < sec.num_subsystems(); ++k) {
    CMatrix m = tensor::slot_reduced(v, dims, k);
    m -= CMatrix::Identity(dims[k], dims[k]) / double(dims[k]);
    s += (m * m).trace().real();
  }
  return s / 4.0;
}

CVector descent_of(const SectorSpec& sec, const CVector& v) {
  const PureState s = make_state(sec, v);
  const CVector av = apply_momentum_operator(momentum(s), s);
  return -tangent_project(s.amplitudes(), av);
}

RVector spectra_as_qubit_lambdas(const SpectraPoint& sp, bool& ok) {
  ok = true;
  for (const auto& l : sp.lambdas) ok = ok && l.size() == 2;
  if (!ok) return {};
  return sp.qubit_lambdas();
}

}  // namespace

CVector descent_direction(const PureState& state) {
  const CVector av = apply_momentum_operator(momentum(state), state);
  return -tangent_project(state.amplitudes(), av);
}

const Atlas& shared_atlas(int L) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Atlas>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[L];
  if (!slot) {
    AtlasOptions o;
    o.find_witnesses = false;
    slot = std::make_unique<Atlas>(enumerate_B(L, o));
  }
  return *slot;
}

StratumAssignment flow_to_critical(const PureState& state, const FlowOptions& opts) {
  opts.tol.validate();
  const SectorSpec& sec = state.sector();
  CVector v = state.amplitudes();
  double f = norm_mu_sq_of(sec, v);
  double t = opts.initial_step;

  StratumAssignment out{.limit_state = state, .limit_spectra = psi(state)};
  int it = 0;
  double residual = 0;
  for (;; ++it) {
    const CVector d = descent_of(sec, v);
    residual = d.norm();
    if (residual < opts.tol.flow_tol) {
      out.converged = true;
      break;
    }
    if (it >= opts.max_iterations) break;
    const double slope = residual * residual;
    bool accepted = false;
    CVector cand;
    double fc = f;
    while (t > 1e-18) {
      cand = v + t * d;
      cand /= cand.norm();
      fc = norm_mu_sq_of(sec, cand);
      if (fc <= f - opts.armijo_c * t * slope) {
        accepted = true;
        break;
      }
      t *= opts.backtrack;
    }
    if (!accepted) break;
    if (!(fc < f)) throw std::logic_error("flow_to_critical: |mu|^2 failed to decrease");
    v = cand;
    f = fc;
    if (opts.keep_history) out.norm_history.push_back(f);
    t = std::min(2 * t, opts.max_step);
  }

  out.limit_state = make_state(sec, v);
  out.limit_spectra = psi(out.limit_state);
  out.iterations = it;
  out.final_norm_mu_sq = f;
  out.residual = residual;
  out.semistable = f < opts.tol.flow_tol;

  bool qubits = false;
  const RVector lambda = spectra_as_qubit_lambdas(out.limit_spectra, qubits);
  const int L = sec.num_subsystems();
  if (qubits && sec.is_distinguishable() && L >= 2 && L <= 5) {
    const Atlas& atlas = shared_atlas(L);
    const int idx = match_critical_value(atlas, lambda, opts.match_tol);
    if (idx >= 0) {
      out.matched = true;
      out.beta = atlas.values[idx];
    }
  }
  return out;
}

NullConeResult null_cone_test(const PureState& state, const NullConeOptions& opts) {
  const SectorSpec& sec = state.sector();
  const auto& dims = sec.slot_dims();
  const int L = sec.num_slots();
  const bool shared = !sec.is_distinguishable();
  const FlowOptions& fo = opts.flow;

  // Gradient of |mu|^2 along exp(xi) at w, per slot: the traceless part of
  // herm(Tr_others(A w w^*)) - <A> rho_k.
  auto gradient = [&](const CVector& w) {
    const PureState s = make_state(sec, w);
    const CVector aw = apply_momentum_operator(momentum(s), s);
    const double ea = w.dot(aw).real();
    std::vector<CMatrix> g;
    for (int k = 0; k < L; ++k) {
      const CMatrix x = tensor::slot_cross(aw, w, dims, k);
      CMatrix h = (x + x.adjoint()) / 2.0 - ea * tensor::slot_reduced(w, dims, k);
      h -= (h.trace() / double(dims[k])) * CMatrix::Identity(dims[k], dims[k]);
      g.push_back(h);
    }
    if (shared) {
      CMatrix sum = CMatrix::Zero(dims[0], dims[0]);
      for (const auto& h : g) sum += h;
      for (auto& h : g) h = sum;
    }
    return g;
  };
  auto act = [&](const std::vector<CMatrix>& g, double t, const CVector& w) {
    CVector x = w;
    for (int k = 0; k < L; ++k) x = tensor::apply_slot(linalg::expm_hermitian(-t * g[k]), x, dims, k);
    return CVector(x / x.norm());
  };

  NullConeResult res;
  CVector w = state.amplitudes();
  double f = norm_mu_sq_of(sec, w);
  double t = fo.initial_step;
  int it = 0;
  bool stationary = false;
  for (; it < opts.max_iterations && f >= opts.threshold; ++it) {
    const auto g = gradient(w);
    double slope = 0;
    for (int k = 0; k < L; ++k) slope += g[k].squaredNorm();
    if (shared) slope /= L;
    if (std::sqrt(slope) < fo.tol.flow_tol) {
      stationary = true;
      break;
    }
    bool accepted = false;
    while (t > 1e-18) {
      const CVector cand = act(g, t, w);
      const double fc = norm_mu_sq_of(sec, cand);
      if (fc <= f - fo.armijo_c * t * slope && fc < f) {
        w = cand;
        f = fc;
        accepted = true;
        break;
      }
      t *= fo.backtrack;
    }
    if (!accepted) {
      stationary = true;
      break;
    }
    t = std::min(2 * t, fo.max_step);
  }
  res.infimum = f;
  res.iterations = it;
  res.semistable = f < opts.threshold;
  res.budget_exhausted = !res.semistable && !stationary;
  if (!res.semistable) res.stratum = flow_to_critical(make_state(sec, w), fo);
  return res;
}

std::string to_string(Sampler s) { return s == Sampler::polar ? "polar" : "gaussian"; }

Sampler sampler_from_string(const std::string& s) {
  if (s == "polar") return Sampler::polar;
  if (s == "gaussian") return Sampler::gaussian;
  throw std::invalid_argument("unknown sampler '" + s + "' (expected polar or gaussian)");
}

PolytopeSample polytope_sample(const PureState& state, int n, Rng& rng, Sampler sampler) {
  if (n < 1) throw std::invalid_argument("polytope_sample: n must be >= 1");
  const SectorSpec& sec = state.sector();
  const int factors = sec.is_distinguishable() ? sec.num_slots() : 1;
  std::uniform_real_distribution<double> scale(0.0, 2.0);

  PolytopeSample out;
  out.min_norm_sq = std::numeric_limits<double>::infinity();
  while (static_cast<int>(out.points.size()) < n) {
    LocalOperator op;
    const double s = scale(rng);
    for (int k = 0; k < factors; ++k) {
      const int d = sec.slot_dims()[k];
      CMatrix g;
      if (sampler == Sampler::polar) {
        g = linalg::expm_hermitian(s * linalg::random_traceless_hermitian(d, rng));
      } else {
        do {
          g = linalg::random_complex_matrix(d, rng);
        } while (std::abs(g.determinant()) < 1e-8 * std::pow(g.norm(), d));
      }
      op.factors.push_back(std::move(g));
    }
    PureState img = state;
    try {
      img = apply_local(op, state);
    } catch (const std::domain_error&) {
      continue;  // annihilated by a near-singular draw
    }
    SpectraPoint sp = psi(img);
    double q = 0;
    for (const auto& l : sp.lambdas) q += l.squaredNorm();
    out.min_norm_sq = std::min(out.min_norm_sq, q / 2.0);
    out.points.push_back(std::move(sp));
  }
  return out;
}

double ghz_to_w_demo(double a) {
  if (!(a > 0) || a > 1) throw std::invalid_argument("ghz_to_w_demo: a must lie in (0, 1]");
  CMatrix g(2, 2);
  g << a, a, -1.0 / a, 1.0 / a;
  g /= std::sqrt(2.0);
  const PureState ghz = states::ghz(3);
  const PureState out = apply_local(LocalOperator{{g, g, g}}, ghz);
  return fidelity(states::w(3), out);
}

int schmidt_rank(const PureState& state, const std::vector<int>& row_slots, const Tolerances& tol) {
  const SectorSpec& sec = state.sector();
  if (!sec.is_distinguishable())
    throw std::invalid_argument("schmidt_rank: requires distinguishable particles");
  const int L = sec.num_slots();
  std::vector<bool> seen(L, false);
  for (int k : row_slots) {
    if (k < 0 || k >= L || seen[k]) throw std::invalid_argument("schmidt_rank: invalid bipartition");
    seen[k] = true;
  }
  if (row_slots.empty() || static_cast<int>(row_slots.size()) == L)
    throw std::invalid_argument("schmidt_rank: both sides of the bipartition must be nonempty");
  const CMatrix m = tensor::matricize(state.amplitudes(), sec.slot_dims(), row_slots);
  Eigen::JacobiSVD<CMatrix> svd(m);
  const RVector s = svd.singularValues();
  return static_cast<int>((s.array() > tol.eig_tol).count());
}

namespace {

void require_three_qubits(const PureState& state, const char* who) {
  const SectorSpec& sec = state.sector();
  if (!sec.is_distinguishable() || sec.num_slots() != 3 || !sec.all_qubits())
    throw std::invalid_argument(std::string(who) + ": requires a three-qubit state");
}

}  // namespace

double three_tangle(const PureState& state) {
  require_three_qubits(state, "three_tangle");
  const CVector& a = state.amplitudes();
  auto c = [&](int i, int j, int k) { return a(4 * i + 2 * j + k); };
  const cplx d1 = c(0, 0, 0) * c(0, 0, 0) * c(1, 1, 1) * c(1, 1, 1) +
                  c(0, 0, 1) * c(0, 0, 1) * c(1, 1, 0) * c(1, 1, 0) +
                  c(0, 1, 0) * c(0, 1, 0) * c(1, 0, 1) * c(1, 0, 1) +
                  c(1, 0, 0) * c(1, 0, 0) * c(0, 1, 1) * c(0, 1, 1);
  const cplx d2 = c(0, 0, 0) * c(1, 1, 1) * c(0, 1, 1) * c(1, 0, 0) +
                  c(0, 0, 0) * c(1, 1, 1) * c(1, 0, 1) * c(0, 1, 0) +
                  c(0, 0, 0) * c(1, 1, 1) * c(1, 1, 0) * c(0, 0, 1) +
                  c(0, 1, 1) * c(1, 0, 0) * c(1, 0, 1) * c(0, 1, 0) +
                  c(0, 1, 1) * c(1, 0, 0) * c(1, 1, 0) * c(0, 0, 1) +
                  c(1, 0, 1) * c(0, 1, 0) * c(1, 1, 0) * c(0, 0, 1);
  const cplx d3 = c(0, 0, 0) * c(1, 1, 0) * c(1, 0, 1) * c(0, 1, 1) +
                  c(1, 1, 1) * c(0, 0, 1) * c(0, 1, 0) * c(1, 0, 0);
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

std::string to_string(Slocc3Class c) {
  switch (c) {
    case Slocc3Class::Sep: return "Sep";
    case Slocc3Class::BiSep_A_BC: return "BiSep_A|BC";
    case Slocc3Class::BiSep_B_AC: return "BiSep_B|AC";
    case Slocc3Class::BiSep_C_AB: return "BiSep_C|AB";
    case Slocc3Class::W: return "W";
    case Slocc3Class::GHZ: return "GHZ";
  }
  return "?";
}

Slocc3Class classify_slocc_3qubit(const PureState& state, const Tolerances& tol) {
  require_three_qubits(state, "classify_slocc_3qubit");
  int ranks[3];
  int product = 0;
  for (int k = 0; k < 3; ++k) {
    ranks[k] = schmidt_rank(state, {k}, tol);
    if (ranks[k] == 1) ++product;
  }
  if (product >= 2) return Slocc3Class::Sep;
  if (product == 1) {
    if (ranks[0] == 1) return Slocc3Class::BiSep_A_BC;
    if (ranks[1] == 1) return Slocc3Class::BiSep_B_AC;
    return Slocc3Class::BiSep_C_AB;
  }
  return three_tangle(state) > 1e-8 ? Slocc3Class::GHZ : Slocc3Class::W;
}

}  // namespace momap
