#include "momap/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "momap/critical_atlas.hpp"
#include "momap/io.hpp"
#include "momap/lu_equiv.hpp"
#include "momap/mixed_orbits.hpp"
#include "momap/momentum_map.hpp"
#include "momap/slocc_flow.hpp"
#include "momap/states.hpp"

namespace momap::cli {

namespace {

using io::Json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reported as a computation failure after the result has been printed.
class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  std::string command;
  std::uint64_t seed = kDefaultSeed;
  Tolerances tol;
  Json inputs = Json::object();
  std::ostream* out = nullptr;

  Json config() const {
    return Json{{"command", command},
                {"seed", seed},
                {"inputs", inputs},
                {"tolerances",
                 {{"construct_tol", tol.construct_tol},
                  {"dedupe_tol", tol.dedupe_tol},
                  {"eig_tol", tol.eig_tol},
                  {"fd_step", tol.fd_step},
                  {"flow_tol", tol.flow_tol},
                  {"psd_slack", tol.psd_slack}}}};
  }

  void emit(Json doc) const {
    doc["config"] = config();
    *out << io::dump(doc);
  }
};

std::string rational_text(const states::Rational& r) {
  if (r.num == 0) return "0";
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

RVector lambda_vector(const std::vector<double>& xs) {
  return Eigen::Map<const RVector>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

Json critical_value_json(const CriticalValue& v) {
  Json j{{"beta", io::vector_to_json(v.beta)},
         {"norm_sq", v.norm_sq},
         {"support_size", v.support.size()},
         {"z_basis", v.z_basis},
         {"realizable", v.nonempty},
         {"witness_residual", v.witness_residual}};
  if (v.witness) j["witness"] = io::state_to_json(*v.witness);
  return j;
}

Json stratum_json(const StratumAssignment& s) {
  Json j{{"converged", s.converged},
         {"iterations", s.iterations},
         {"final_norm_mu_sq", s.final_norm_mu_sq},
         {"residual", s.residual},
         {"semistable", s.semistable},
         {"matched", s.matched},
         {"limit_spectra", io::spectra_to_json(s.limit_spectra)},
         {"limit_state", io::state_to_json(s.limit_state)}};
  j["beta"] = s.beta ? io::vector_to_json(s.beta->beta) : Json(nullptr);
  return j;
}

bool all_qubit_lambdas(const SpectraPoint& p) {
  return std::all_of(p.lambdas.begin(), p.lambdas.end(),
                     [](const RVector& l) { return l.size() == 2; });
}

std::vector<double> flat_lambdas(const SpectraPoint& p) {
  std::vector<double> row;
  if (all_qubit_lambdas(p)) {
    const RVector q = p.qubit_lambdas();
    row.assign(q.data(), q.data() + q.size());
  } else {
    for (const auto& l : p.lambdas) row.insert(row.end(), l.data(), l.data() + l.size());
  }
  return row;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

ReducedCase reduced_case_from_string(const std::string& s) {
  if (s == "interior") return ReducedCase::interior;
  if (s == "i") return ReducedCase::boundary_i;
  if (s == "ii") return ReducedCase::boundary_ii;
  if (s == "iii") return ReducedCase::boundary_iii;
  throw UsageError("unknown case '" + s + "' (expected interior, i, ii or iii)");
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Momentum-map toolkit for multipartite entanglement", "momap"};
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  ctx.out = &out;
  bool json_errors = false;
  app.add_option("--seed", ctx.seed, "Random seed (default 20140601)");
  app.add_flag("--json-errors", json_errors, "Report errors on stderr as JSON");
  app.add_option("--eig-tol", ctx.tol.eig_tol, "Zero threshold for singular/eigenvalues");
  app.add_option("--flow-tol", ctx.tol.flow_tol, "Gradient residual treated as critical");
  app.add_option("--dedupe-tol", ctx.tol.dedupe_tol, "Merge distance for critical values");

  // Options shared by several subcommands live in one place.
  std::string state_path, state_b_path, rho_path, out_path, mode = "auto", group = "full",
                                                             sampler = "polar", case_name;
  std::vector<double> lambda;
  int qubits = 0, max_size = 0, samples = 2000, grid = 40, k_param = 0;
  bool show_all = false, counterexample = false;

  auto* c_momentum = app.add_subcommand("momentum", "Momentum map blocks, |mu|^2 and mean linear entropy");
  c_momentum->add_option("state", state_path, "State JSON file")->required();

  auto* c_psi = app.add_subcommand("psi", "Sorted spectra of the momentum map");
  c_psi->add_option("state", state_path, "State JSON file")->required();

  auto* c_polytope = app.add_subcommand("polytope", "Qubit Kirwan polytope membership");
  c_polytope->add_option("state", state_path, "State JSON file (alternative to --lambda)");
  c_polytope->add_option("--lambda", lambda, "Per-qubit lambdas, comma separated")->delimiter(',');

  auto* c_dim = app.add_subcommand("dim", "Dimension of the reduced space over a polytope point");
  c_dim->add_option("--lambda", lambda, "Per-qubit lambdas, comma separated")->delimiter(',');
  c_dim->add_option("--case", case_name, "Evaluate a formula instead: interior, i, ii or iii");
  c_dim->add_option("--qubits", qubits, "Number of qubits for --case");
  c_dim->add_option("-k", k_param, "Number of saturated coordinates for --case");

  auto* c_critical = app.add_subcommand("critical", "Critical values of |mu|^2 for L qubits");
  c_critical->add_option("--qubits", qubits, "Number of qubits (2..5)")->required();
  c_critical->add_option("--max-size", max_size, "Largest weight subset (default L+1)");
  c_critical->add_option("--json", out_path, "Also write the atlas to this file");
  c_critical->add_flag("--all", show_all, "Include candidates without a witness");

  auto* c_flow = app.add_subcommand("flow", "Gradient flow of -|mu|^2 to a critical orbit");
  c_flow->add_option("state", state_path, "State JSON file")->required();

  auto* c_nullcone = app.add_subcommand("nullcone", "Semistability test along the SLOCC orbit");
  c_nullcone->add_option("state", state_path, "State JSON file")->required();

  auto* c_classify = app.add_subcommand("classify3", "Three-qubit SLOCC class");
  c_classify->add_option("state", state_path, "State JSON file")->required();

  auto* c_sample = app.add_subcommand("polytope-sample", "Sample the entanglement polytope");
  c_sample->add_option("state", state_path, "State JSON file")->required();
  c_sample->add_option("-n", samples, "Number of samples")->check(CLI::PositiveNumber);
  c_sample->add_option("-o,--output", out_path, "CSV output (default stdout)");
  c_sample->add_option("--sampler", sampler, "polar or gaussian");

  auto* c_lu = app.add_subcommand("luequiv", "Local unitary equivalence of two states");
  c_lu->add_option("a", state_path, "First state JSON file");
  c_lu->add_option("b", state_b_path, "Second state JSON file");
  c_lu->add_option("--mode", mode, "auto, bipartite, indistinguishable or necessary");
  c_lu->add_flag("--counterexample", counterexample,
                 "Report on the three-qubit pair with equal spectra");

  auto* c_ccq = app.add_subcommand("ccq", "Orbit geometry and CQ/CC tests of a density matrix");
  c_ccq->add_option("rho", rho_path, "Density JSON file")->required();
  c_ccq->add_option("--group", group, "full or a-only");

  auto* c_scan = app.add_subcommand("ccq-scan", "Scan the two-qubit CC simplex");
  c_scan->add_option("--grid", grid, "Lattice resolution")->check(CLI::PositiveNumber);
  c_scan->add_option("-o,--output", out_path, "CSV output (default stdout)");

  auto* c_table2 = app.add_subcommand("table2", "Critical four-qubit states: computed vs expected");

  auto report = [&](const std::string& kind, const std::string& message) {
    if (json_errors)
      err << Json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
    else
      err << "momap: " << kind << " error: " << message << "\n";
  };

  std::vector<std::string> argv_store{"momap"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report("usage", e.what());
    return kUsageError;
  }

  try {
    ctx.tol.validate();
  } catch (const std::invalid_argument& e) {
    report("usage", e.what());
    return kUsageError;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    ctx.command = sub->get_name();

    if (sub == c_momentum) {
      ctx.inputs["state"] = state_path;
      const PureState s = io::load_state(state_path);
      const MomentumPoint mu = momentum(s);
      Json blocks = Json::array();
      for (const auto& b : mu.blocks) blocks.push_back(io::matrix_to_json(b));
      ctx.emit({{"blocks", blocks},
                {"norm_mu_sq", norm_mu_squared(mu)},
                {"mean_linear_entropy", mean_linear_entropy(s)}});
    } else if (sub == c_psi) {
      ctx.inputs["state"] = state_path;
      const SpectraPoint p = psi(io::load_state(state_path));
      Json doc{{"spectra", io::spectra_to_json(p)}};
      if (all_qubit_lambdas(p)) doc["psi"] = io::vector_to_json(p.qubit_lambdas());
      ctx.emit(doc);
    } else if (sub == c_polytope) {
      RVector l;
      if (!lambda.empty() == !state_path.empty())
        throw UsageError("polytope: give exactly one of a state file or --lambda");
      if (!state_path.empty()) {
        ctx.inputs["state"] = state_path;
        const SpectraPoint p = psi(io::load_state(state_path));
        if (!all_qubit_lambdas(p)) throw UsageError("polytope: the state must consist of qubits");
        l = p.qubit_lambdas();
      } else {
        ctx.inputs["lambda"] = lambda;
        l = lambda_vector(lambda);
      }
      ctx.emit({{"lambda", io::vector_to_json(l)}, {"membership", to_string(kirwan_contains(l))}});
    } else if (sub == c_dim) {
      if (!case_name.empty()) {
        if (qubits < 1) throw UsageError("dim --case needs --qubits");
        ctx.inputs = {{"case", case_name}, {"qubits", qubits}, {"k", k_param}};
        const ReducedCase c = reduced_case_from_string(case_name);
        ctx.emit({{"case", to_string(c)}, {"dim", reduced_space_formula(c, qubits, k_param)}});
      } else {
        if (lambda.empty()) throw UsageError("dim: give --lambda or --case");
        ctx.inputs["lambda"] = lambda;
        const ReducedSpaceReport r = reduced_space_dim(lambda_vector(lambda));
        ctx.emit({{"case", to_string(r.kind)}, {"k", r.k}, {"dim", r.dim}});
      }
    } else if (sub == c_critical) {
      if (qubits < 2 || qubits > 5) throw UsageError("critical: --qubits must be in [2, 5]");
      ctx.inputs = {{"qubits", qubits}, {"max_size", max_size}, {"all", show_all}};
      AtlasOptions o;
      o.max_subset_size = max_size;
      o.seed = ctx.seed;
      o.tol = ctx.tol;
      const Atlas atlas = enumerate_B(qubits, o);
      Json values = Json::array();
      int realizable = 0;
      for (const auto& v : atlas.values) {
        realizable += v.nonempty;
        if (v.nonempty || show_all) values.push_back(critical_value_json(v));
      }
      Json doc{{"qubits", qubits},
               {"partial", atlas.partial},
               {"subsets_examined", atlas.subsets_examined},
               {"candidate_count", atlas.values.size()},
               {"realizable_count", realizable},
               {"values", values}};
      if (!out_path.empty()) {
        ctx.inputs["json"] = out_path;
        doc["config"] = ctx.config();
        write_text_file(out_path, io::dump(doc));
      }
      ctx.emit(doc);
    } else if (sub == c_flow) {
      ctx.inputs["state"] = state_path;
      FlowOptions fo;
      fo.tol = ctx.tol;
      ctx.emit(stratum_json(flow_to_critical(io::load_state(state_path), fo)));
    } else if (sub == c_nullcone) {
      ctx.inputs["state"] = state_path;
      NullConeOptions no;
      no.flow.tol = ctx.tol;
      const NullConeResult r = null_cone_test(io::load_state(state_path), no);
      Json doc{{"semistable", r.semistable},
               {"infimum", r.infimum},
               {"iterations", r.iterations},
               {"budget_exhausted", r.budget_exhausted}};
      doc["stratum"] = r.stratum ? stratum_json(*r.stratum) : Json(nullptr);
      doc["beta"] = (r.stratum && r.stratum->beta) ? io::vector_to_json(r.stratum->beta->beta)
                                                   : Json(nullptr);
      ctx.emit(doc);
    } else if (sub == c_classify) {
      ctx.inputs["state"] = state_path;
      const PureState s = io::load_state(state_path);
      const Slocc3Class c = classify_slocc_3qubit(s, ctx.tol);
      Json ranks = Json::array();
      for (int k = 0; k < 3; ++k) ranks.push_back(schmidt_rank(s, {k}, ctx.tol));
      FlowOptions fo;
      fo.tol = ctx.tol;
      const StratumAssignment st = flow_to_critical(s, fo);
      ctx.emit({{"class", to_string(c)},
                {"local_ranks", ranks},
                {"three_tangle", three_tangle(s)},
                {"stratum_beta", st.beta ? io::vector_to_json(st.beta->beta) : Json(nullptr)},
                {"stratum_matched", st.matched}});
    } else if (sub == c_sample) {
      ctx.inputs = {{"state", state_path}, {"n", samples}, {"sampler", sampler}};
      const Sampler smp = sampler_from_string(sampler);
      const PureState s = io::load_state(state_path);
      Rng rng(ctx.seed);
      const PolytopeSample ps = polytope_sample(s, samples, rng, smp);
      std::vector<std::vector<double>> rows;
      double min_norm = std::numeric_limits<double>::infinity();
      bool inside = true;
      for (const auto& p : ps.points) {
        rows.push_back(flat_lambdas(p));
        if (all_qubit_lambdas(p)) {
          const RVector l = p.qubit_lambdas();
          min_norm = std::min(min_norm, l.norm());
          inside = inside && kirwan_contains(l) != PolytopeMembership::outside;
        }
      }
      std::vector<std::string> header;
      for (std::size_t i = 0; i < rows.front().size(); ++i) header.push_back("lambda_" + std::to_string(i));
      if (out_path.empty()) {
        io::write_csv(out, header, rows);
      } else {
        ctx.inputs["output"] = out_path;
        std::ostringstream csv;
        io::write_csv(csv, header, rows);
        write_text_file(out_path, csv.str());
        Json doc{{"samples", ps.points.size()}, {"min_norm_sq", ps.min_norm_sq}, {"csv", out_path}};
        if (all_qubit_lambdas(ps.points.front())) {
          doc["min_lambda_norm"] = min_norm;
          doc["all_in_polytope"] = inside;
        }
        ctx.emit(doc);
      }
    } else if (sub == c_lu) {
      if (counterexample) {
        ctx.inputs["counterexample"] = true;
        const CounterexampleReport r = lu_counterexample_report();
        auto spectra = [](const std::vector<RVector>& s) {
          Json a = Json::array();
          for (const auto& v : s) a.push_back(io::vector_to_json(v));
          return a;
        };
        ctx.emit({{"spectra_x1", spectra(r.spectra_x1)},
                  {"spectra_x2_printed", spectra(r.spectra_x2_printed)},
                  {"spectra_w_variant", spectra(r.spectra_w_variant)},
                  {"printed_x2_matches_x1", r.printed_matches_x1},
                  {"w_variant_matches_x1", r.w_variant_matches_x1},
                  {"tangle_x1", r.tangle_x1},
                  {"tangle_w_variant", r.tangle_w_variant},
                  {"verdict", to_string(r.verdict.verdict)},
                  {"evidence", r.verdict.evidence},
                  {"note",
                   "the printed x2 has first-qubit spectrum {1, 0} and does not share the spectra "
                   "of x1; the W variant does and is separated by the three-tangle"}});
      } else {
        if (state_path.empty() || state_b_path.empty())
          throw UsageError("luequiv: two state files are required (or --counterexample)");
        ctx.inputs = {{"a", state_path}, {"b", state_b_path}, {"mode", mode}};
        const PureState a = io::load_state(state_path);
        const PureState b = io::load_state(state_b_path);
        LUVerdict v;
        if (mode == "auto") v = lu_decide(a, b);
        else if (mode == "bipartite") v = lu_equivalent_bipartite(a, b);
        else if (mode == "indistinguishable") v = lu_equivalent_two_indistinguishable(a, b);
        else if (mode == "necessary") v = lu_necessary(a, b);
        else throw UsageError("luequiv: unknown mode '" + mode + "'");
        Json sa = Json::array(), sb = Json::array();
        for (const auto& x : v.spectra_a) sa.push_back(io::vector_to_json(x));
        for (const auto& x : v.spectra_b) sb.push_back(io::vector_to_json(x));
        Json doc{{"verdict", to_string(v.verdict)},
                 {"evidence", v.evidence},
                 {"method", v.method},
                 {"spectra_a", sa},
                 {"spectra_b", sb},
                 {"max_spectral_gap", v.max_spectral_gap}};
        if (v.tangle_a) doc["tangle_a"] = *v.tangle_a;
        if (v.tangle_b) doc["tangle_b"] = *v.tangle_b;
        ctx.emit(doc);
      }
    } else if (sub == c_ccq) {
      ctx.inputs = {{"rho", rho_path}, {"group", group}};
      const DensityMatrix rho = io::load_density(rho_path);
      GroupSpec K;
      if (group == "full") K = GroupSpec::full_product(rho.num_subsystems());
      else if (group == "a-only") K = GroupSpec::first_only(rho.num_subsystems());
      else throw UsageError("ccq: unknown group '" + group + "' (expected full or a-only)");
      try {
        K.validate(rho.dims());
      } catch (const std::invalid_argument& e) {
        throw io::InputError(e.what());
      }
      const OrbitReport r = analyze_orbit(rho, K, ctx.seed);
      Json doc{{"dim_K", r.dim_K},
               {"orbit_dim", r.orbit_dim},
               {"stabilizer_dim", r.stabilizer_dim},
               {"omega_rank", r.omega_rank},
               {"degeneracy_D", r.degeneracy_D},
               {"euler_chi", r.euler_chi},
               {"is_symplectic", r.is_symplectic}};
      if (rho.num_subsystems() == 2) {
        doc["is_cq"] = r.is_cq;
        doc["is_cc"] = r.is_cc;
      }
      ctx.emit(doc);
    } else if (sub == c_scan) {
      ctx.inputs = {{"grid", grid}};
      const auto rows = cc_simplex_scan(grid);
      std::vector<std::vector<double>> csv_rows;
      std::map<std::string, int> strata;
      for (const auto& r : rows) {
        std::vector<double> row;
        for (int c : r.counts) row.push_back(double(c) / grid);
        row.insert(row.end(), {double(r.orbit_dim), double(r.omega_rank), double(r.degeneracy_D),
                               double(r.euler_chi)});
        csv_rows.push_back(row);
        strata["(" + std::to_string(r.orbit_dim) + "," + std::to_string(r.omega_rank) + "," +
               std::to_string(r.degeneracy_D) + ")"]++;
      }
      const std::vector<std::string> header{"p00", "p01", "p10", "p11", "orbit_dim",
                                            "omega_rank", "D", "chi"};
      if (out_path.empty()) {
        io::write_csv(out, header, csv_rows);
      } else {
        ctx.inputs["output"] = out_path;
        std::ostringstream csv;
        io::write_csv(csv, header, csv_rows);
        write_text_file(out_path, csv.str());
        ctx.emit({{"points", rows.size()}, {"strata", strata}, {"csv", out_path}});
      }
    } else if (sub == c_table2) {
      Json rows = Json::array();
      bool all_ok = true;
      for (const auto& row : states::four_qubit_critical_table()) {
        const SpectraPoint p = psi(row.state);
        Json expected = Json::array(), computed = Json::array(), shown = Json::array();
        double lambda_err = 0;
        for (std::size_t k = 0; k < row.lambdas.size(); ++k) {
          const double lam = row.lambdas[k].value();
          expected.push_back(Json::array({lam, -lam}));
          shown.push_back(rational_text(row.lambdas[k]));
          computed.push_back(io::vector_to_json(p.lambdas[k]));
          lambda_err = std::max({lambda_err, std::abs(p.lambdas[k](0) - lam),
                                 std::abs(p.lambdas[k](1) + lam)});
        }
        const double e = mean_linear_entropy(row.state);
        const double e_err = std::abs(e - row.linear_entropy.value());
        const CriticalityReport crit = is_critical(row.state, ctx.tol);
        const bool ok = lambda_err <= 1e-10 && e_err <= 1e-12 && crit.critical;
        all_ok = all_ok && ok;
        rows.push_back({{"name", row.name},
                        {"lambda", shown},
                        {"expected_spectra", expected},
                        {"computed_spectra", computed},
                        {"expected_E", rational_text(row.linear_entropy)},
                        {"computed_E", e},
                        {"critical", crit.critical},
                        {"critical_eigenvalue", crit.eigenvalue},
                        {"match", ok}});
      }
      ctx.emit({{"rows", rows}, {"all_match", all_ok}});
      if (!all_ok) throw CheckFailed("table2: some rows do not match");
    }
    return kOk;
  } catch (const UsageError& e) {
    report("usage", e.what());
    return kUsageError;
  } catch (const io::InputError& e) {
    report("input", e.what());
    return kUsageError;
  } catch (const CheckFailed& e) {
    report("computation", e.what());
    return kComputationFailure;
  } catch (const std::invalid_argument& e) {
    // Library precondition violations: the input does not fit the command.
    report("input", e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    report("computation", e.what());
    return kComputationFailure;
  }
}

}  // namespace momap::cli
