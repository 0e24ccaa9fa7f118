#include "app.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "entkit/bell.hpp"
#include "entkit/bipartite.hpp"
#include "entkit/maps.hpp"
#include "entkit/mps.hpp"
#include "entkit/multipartite.hpp"
#include "entkit/states.hpp"
#include "entkit/symmetric.hpp"
#include "io.hpp"

namespace entkit::cli {

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

// Ordered key/value report, printed as "key: value" lines or one JSON object.
class Report {
public:
  void add(const std::string& key, json value) { items_.emplace_back(key, std::move(value)); }

  void print(std::ostream& out, bool as_json) const {
    if (as_json) {
      nlohmann::ordered_json j = nlohmann::ordered_json::object();
      for (const auto& [k, v] : items_) j[k] = nlohmann::ordered_json::parse(rounded(v).dump());
      out << j.dump(2) << '\n';
      return;
    }
    for (const auto& [k, v] : items_) out << k << ": " << text(v) << '\n';
  }

private:
  static json rounded(const json& v) {
    if (v.is_number_float()) return std::stod(format_number(v.get<double>()));
    if (v.is_array()) {
      json a = json::array();
      for (const auto& x : v) a.push_back(rounded(x));
      return a;
    }
    return v;
  }

  static std::string text(const json& v) {
    if (v.is_number_float()) return format_number(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s = "[";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + text(v[i]);
      return s + "]";
    }
    return v.dump();
  }

  std::vector<std::pair<std::string, json>> items_;
};

json to_json(const RVec& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

json to_json(const RMat& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(to_json(RVec(m.row(r).transpose())));
  return a;
}

double psd_tolerance() {
  if (const char* s = std::getenv("ENTKIT_PSD_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0' || !(v >= 0.0)) throw Error("ENTKIT_PSD_TOL must be a nonnegative number");
    return v;
  }
  return kPsdTol;
}

QState load_state(const std::string& path) { return state_from_json(read_json_file(path), psd_tolerance()); }

Bipartition cut_or_default(const std::string& cut, int n) {
  if (!cut.empty()) return Bipartition::parse(cut, n);
  return Bipartition({0}, n);
}

struct Options {
  bool as_json = false;
  std::string state_file, second_file, third_file, cut, output;
  // witness from-map
  std::string map_name = "transpose";
  int dim = 2;
  double alpha = -1.0;
  // scalar witness inputs
  double f = 0.0, sx2 = 0.0, sy = 0.0, s2 = 0.0, spin = 0.5;
  int n = 0;
  // bell
  std::string method = "exhaustive", trace_file;
  std::uint64_t seed = 1;
  int replicas = 8, sweeps = 50, steps = 200;
  // mps / aklt / scaling
  int chi = 1 << 20;
  double tol = 1e-14;
  bool exact = false;
  std::string kind = "vbs";
  int samples = 20;
  // state make
  std::string name;
  int k = 0, rank = 1;
  double theta = 0.0, phi = 0.0;
  std::vector<int> dims, digits;
  std::string convention = "as-printed";
};

int cmd_ppt(const Options& o, Report& r) {
  const QState s = load_state(o.state_file);
  const auto cut = cut_or_default(o.cut, s.dims().size());
  const auto p = ppt_test(s, cut, psd_tolerance());
  r.add("cut", cut.str());
  r.add("verdict", p.verdict == PptVerdict::entangled ? "entangled" : "ppt");
  r.add("min_eigenvalue", p.min_eigenvalue);
  r.add("ppt_implies_separable", p.sufficient);
  return p.verdict == PptVerdict::entangled ? kExitVerdict : kExitOk;
}

int cmd_schmidt(const Options& o, Report& r) {
  const QState s = load_state(o.state_file);
  const auto cut = cut_or_default(o.cut, s.dims().size());
  const auto sd = schmidt(s, cut);
  r.add("cut", cut.str());
  r.add("rank", sd.rank);
  r.add("coefficients", to_json(RVec(sd.coefficients.head(sd.rank))));
  r.add("entropy", shannon_entropy(sd.coefficients));
  return kExitOk;
}

int cmd_entropy(const Options& o, Report& r) {
  const QState s = load_state(o.state_file);
  if (o.cut.empty()) {
    r.add("entropy", von_neumann_entropy(s, psd_tolerance()));
    return kExitOk;
  }
  const auto cut = Bipartition::parse(o.cut, s.dims().size());
  r.add("cut", cut.str());
  if (s.is_pure()) {
    r.add("entropy", entanglement_entropy(s, cut));
  } else {
    r.add("entropy", von_neumann_entropy(reduced_density(s, cut.left()), psd_tolerance()));
  }
  return kExitOk;
}

int cmd_witness_eval(const Options& o, Report& r) {
  const Witness w = witness_from_json(read_json_file(o.state_file));
  const QState s = load_state(o.second_file);
  const double v = evaluate_witness(w, s);
  const bool fired = v < -1e-12;
  r.add("provenance", to_string(w.provenance));
  r.add("value", v);
  r.add("verdict", fired ? "entangled" : "inconclusive");
  return fired ? kExitVerdict : kExitOk;
}

int cmd_witness_from_map(const Options& o, Report& r) {
  LinearMap m;
  if (o.map_name == "transpose") {
    m = transposition_map(o.dim);
  } else if (o.map_name == "reduction") {
    m = reduction_family_map(o.dim, o.alpha);
  } else {
    throw Error("unknown map '" + o.map_name + "' (use transpose or reduction)");
  }
  const Witness w = witness_from_map(m);
  r.add("map", m.name);
  r.add("dims", json(w.dims.values()));
  r.add("provenance", to_string(w.provenance));
  r.add("min_eigenvalue", min_eigenvalue(w.matrix));
  r.add("value_on_phi_plus", evaluate_witness(w, bell_phi_plus(o.dim)));
  if (!o.output.empty()) {
    write_json_file(o.output, witness_to_json(w));
    r.add("written", o.output);
  }
  return kExitOk;
}

int cmd_classify3q(const Options& o, Report& r) {
  const auto c = classify_3qubit(load_state(o.state_file));
  r.add("label", to_string(c.label));
  r.add("tangle", c.tangle);
  r.add("local_ranks", json(std::vector<int>(c.local_ranks.begin(), c.local_ranks.end())));
  r.add("local_entropies", json(std::vector<double>(c.local_entropies.begin(), c.local_entropies.end())));
  r.add("tensor_rank", c.tensor_rank);
  return kExitOk;
}

int cmd_ame(const Options& o, Report& r) {
  const auto a = is_ame(load_state(o.state_file));
  r.add("ame", a.verdict);
  r.add("worst_deviation", a.worst_deviation);
  return kExitOk;
}

int cmd_nielsen(const Options& o, Report& r) {
  const auto src = real_vector_from_json(read_json_file(o.state_file));
  const auto dst = real_vector_from_json(read_json_file(o.second_file));
  r.add("convertible", nielsen_convertible(src, dst));
  return kExitOk;
}

int cmd_ds_sep(const Options& o, Report& r) {
  const auto p = real_vector_from_json(read_json_file(o.state_file));
  if (p.size() < 2) throw Error("probability vector needs N+1 >= 2 entries");
  const DSState ds(static_cast<int>(p.size()) - 1, p);
  const auto h = ds_hankel(ds);
  const auto rep = ds_separable(ds, psd_tolerance());
  r.add("N", ds.n());
  r.add("verdict", rep.verdict == DsVerdict::separable ? "separable" : "entangled");
  r.add("necessary_only", rep.necessary_only);
  r.add("min_eig_m0", rep.min_eig_m0);
  r.add("min_eig_m1", rep.min_eig_m1);
  r.add("m0", to_json(h.m0));
  r.add("m1", to_json(h.m1));
  return rep.verdict == DsVerdict::entangled ? kExitVerdict : kExitOk;
}

int cmd_depth_qfi(const Options& o, Report& r) {
  r.add("depth", depth_from_qfi(o.f, o.n));
  r.add("F_over_N", o.f / o.n);
  return kExitOk;
}

int cmd_depth_wineland(const Options& o, Report& r) {
  const auto w = wineland_depth(o.sx2, o.sy, o.n);
  r.add("depth", w.depth);
  r.add("singular", w.singular);
  return kExitOk;
}

int cmd_spin_witness(const Options& o, Report& r) {
  const auto v = total_spin_witness(o.s2, o.n, o.spin);
  const bool fired = v == SpinWitnessVerdict::entangled;
  r.add("verdict", fired ? "entangled" : "inconclusive");
  r.add("bound", o.n * o.spin);
  return fired ? kExitVerdict : kExitOk;
}

int cmd_bell_witness(const Options& o, Report& r) {
  const auto v = bell_correlation_witness(o.sx2, o.sy, o.n);
  const bool fired = v == BellCorrelationVerdict::bell_correlated;
  const double y = 2.0 * o.sy / o.n;
  r.add("verdict", fired ? "bell_correlated" : "inconclusive");
  r.add("lhs", 4.0 * o.sx2 / o.n);
  r.add("rhs", 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - y * y))));
  return fired ? kExitVerdict : kExitOk;
}

json strategy_values(const BellProblem& p, const Strategy& s) {
  json a = json::array();
  for (int x : s.outcome) a.push_back(p.values()[static_cast<std::size_t>(x)]);
  return a;
}

int cmd_bell_bound(const Options& o, Report& r) {
  const BellProblem p = bell_from_json(read_json_file(o.state_file));
  const BellProblem neg = p.negated();
  r.add("method", o.method);
  if (o.method == "exhaustive" || o.method == "pi") {
    auto bound = [&](const BellProblem& b) {
      if (o.method == "exhaustive") return classical_bound_exhaustive(b);
      auto pi = pi_coarse_grain(b);
      return BoundResult{pi.beta, std::move(pi.argmin)};
    };
    const auto lo = bound(p);
    const auto hi = bound(neg);
    r.add("beta_min", lo.beta);
    r.add("beta_max", -hi.beta);
    r.add("argmin", strategy_values(p, lo.argmin));
    r.add("argmax", strategy_values(p, hi.argmin));
    return kExitOk;
  }
  if (o.method != "anneal") throw Error("unknown method '" + o.method + "' (exhaustive, pi or anneal)");
  AnnealConfig cfg;
  cfg.seed = o.seed;
  cfg.replicas = o.replicas;
  cfg.sweeps = o.sweeps;
  cfg.steps = o.steps;
  const auto lo = classical_bound_anneal(p, cfg);
  const auto hi = classical_bound_anneal(neg, cfg);
  r.add("seed", o.seed);
  r.add("beta_min", lo.beta_upper);
  r.add("beta_max", -hi.beta_upper);
  r.add("exact", false);
  r.add("argmin", strategy_values(p, lo.best));
  r.add("argmax", strategy_values(p, hi.best));
  if (!o.trace_file.empty()) {
    std::ofstream csv(o.trace_file);
    if (!csv) throw Error("cannot write '" + o.trace_file + "'");
    csv << "step,T,best\n";
    for (const auto& row : lo.trace) {
      csv << row.step << ',' << format_number(row.temperature) << ',' << format_number(row.best) << '\n';
    }
    r.add("trace", o.trace_file);
  }
  return kExitOk;
}

int cmd_bell_quantum(const Options& o, Report& r) {
  const BellProblem p = bell_from_json(read_json_file(o.state_file));
  const QState s = load_state(o.second_file);
  const auto obs = settings_from_json(read_json_file(o.third_file));
  const double q = quantum_value(p, s, obs);
  r.add("quantum_value", q);
  std::optional<std::pair<double, double>> bounds;
  double strategies = std::pow(static_cast<double>(p.outcomes()), p.spins());
  if (strategies <= static_cast<double>(kExhaustiveBudget)) {
    bounds = {classical_bound_exhaustive(p).beta, -classical_bound_exhaustive(p.negated()).beta};
  } else if (p.is_permutation_invariant()) {
    bounds = {pi_coarse_grain(p).beta, -pi_coarse_grain(p.negated()).beta};
  }
  if (!bounds) {
    r.add("classical_bounds", "unavailable (use bell bound --method anneal)");
    return kExitOk;
  }
  const bool violated = q < bounds->first - 1e-9 || q > bounds->second + 1e-9;
  r.add("beta_min", bounds->first);
  r.add("beta_max", bounds->second);
  r.add("violated", violated);
  return violated ? kExitVerdict : kExitOk;
}

int cmd_mps_factor(const Options& o, Report& r) {
  const QState s = load_state(o.state_file);
  const MPSState m = to_mps(s, o.chi, o.tol);
  const QState back = mps_to_dense(m);
  r.add("sites", m.sites());
  r.add("bonds", json(m.bonds()));
  r.add("max_bond", m.max_bond());
  r.add("fidelity", std::norm(s.vector().dot(back.vector())));
  if (!o.output.empty()) {
    write_json_file(o.output, mps_to_json(m));
    r.add("written", o.output);
  }
  return kExitOk;
}

int cmd_aklt(const Options& o, Report& r) {
  const MPSState vbs = vbs_state(o.n);
  const auto h = aklt_hamiltonian(o.n);
  const QState psi = mps_to_dense(vbs);
  const Vec hpsi = h.matrix() * psi.vector();
  const double e = psi.vector().dot(hpsi).real();
  r.add("N", o.n);
  r.add("vbs_energy", e);
  r.add("expected", -2.0 / 3.0 * (o.n - 1));
  r.add("bonds", json(vbs.bonds()));
  r.add("half_chain_spectrum", to_json(entanglement_spectrum(vbs, o.n / 2)));
  if (o.exact) {
    const auto g = ground_state_sectors(h, spin1_total_sz(o.n));
    r.add("ground_energy", g.energy);
    r.add("degeneracy", g.degeneracy);
    r.add("residual", (hpsi - g.energy * psi.vector()).norm());
  }
  return kExitOk;
}

int cmd_scaling(const Options& o, Report& r) {
  ScalingKind kind{};
  if (o.kind == "vbs") {
    kind = ScalingKind::vbs;
  } else if (o.kind == "random") {
    kind = ScalingKind::random;
  } else {
    throw Error("unknown kind '" + o.kind + "' (vbs or random)");
  }
  const auto rows = entropy_scaling_report(kind, o.n, o.samples, o.seed);
  json cuts = json::array(), ent = json::array(), ref = json::array();
  for (const auto& row : rows) {
    cuts.push_back(row.cut);
    ent.push_back(row.entropy);
    ref.push_back(row.reference);
  }
  r.add("kind", o.kind);
  r.add("N", o.n);
  r.add("cut", cuts);
  r.add("entropy", ent);
  r.add("reference", ref);
  return kExitOk;
}

QState make_state(const Options& o) {
  const std::string& n = o.name;
  if (n == "ghz") return ghz(o.n);
  if (n == "w") return w_state(o.n);
  if (n == "dicke") return dicke(o.n, o.k);
  if (n == "phi-plus") return bell_phi_plus(o.dim);
  if (n == "psi-minus") return psi_minus();
  if (n == "ame43") return ame43();
  if (n == "coherent") return coherent_spin(o.n, o.theta, o.phi);
  if (n == "singlet-pairs") return singlet_pairs(o.n);
  if (n == "vbs") return mps_to_dense(vbs_state(o.n));
  if (n == "random-pure" || n == "random-mixed" || n == "basis") {
    if (o.dims.empty()) throw Error("--dims is required for '" + n + "'");
    const Dims d(o.dims);
    if (n == "random-pure") return random_pure(d, o.seed);
    if (n == "random-mixed") return random_mixed(d, o.rank, o.seed);
    return basis_state(d, o.digits);
  }
  throw Error("unknown state '" + n + "'");
}

int cmd_state_make(const Options& o, Report& r) {
  const QState s = make_state(o);
  const json j = state_to_json(s);
  if (o.output.empty()) {
    r.add("state", j);
    return kExitOk;
  }
  write_json_file(o.output, j);
  r.add("written", o.output);
  r.add("kind", s.is_pure() ? "pure" : "mixed");
  r.add("dims", json(s.dims().values()));
  return kExitOk;
}

int cmd_sufficient_sep(const Options& o, Report& r) {
  const QState s = load_state(o.state_file);
  SufficientChecks checks;
  if (o.convention == "as-printed") {
    checks.identity = IdentityConvention::as_printed;
  } else if (o.convention == "trace-scaled") {
    checks.identity = IdentityConvention::trace_scaled;
  } else {
    throw Error("unknown convention '" + o.convention + "' (as-printed or trace-scaled)");
  }
  const auto rep = sufficient_separability(s, checks, psd_tolerance());
  r.add("verdict", rep.verdict == SeparabilityVerdict::separable ? "separable" : "inconclusive");
  r.add("shifted_min_eigenvalue", rep.shifted_min_eigenvalue);
  r.add("shifted_identity_pass", rep.shifted_identity_pass);
  r.add("purity", rep.purity);
  r.add("purity_bound", rep.purity_bound);
  r.add("purity_ball_pass", rep.purity_ball_pass);
  r.add("checks_disagree", rep.checks_disagree);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Entanglement analysis toolkit", "entkit"};
  app.add_flag("--json", o.as_json, "Machine-readable JSON report");
  app.require_subcommand(1);
  app.fallthrough();
  int (*handler)(const Options&, Report&) = nullptr;
  auto leaf = [&](CLI::App* sub, int (*h)(const Options&, Report&)) {
    sub->fallthrough();
    sub->callback([&handler, h] { handler = h; });
    return sub;
  };
  auto cut_opt = [&](CLI::App* sub) { sub->add_option("--cut", o.cut, "Bipartition such as 1|23 (1-based)"); };

  auto* ppt = leaf(app.add_subcommand("ppt", "PPT test across a cut (exit 1 if entangled)"), cmd_ppt);
  ppt->add_option("state", o.state_file)->required();
  cut_opt(ppt);

  auto* sch = leaf(app.add_subcommand("schmidt", "Schmidt coefficients of a pure state"), cmd_schmidt);
  sch->add_option("state", o.state_file)->required();
  cut_opt(sch);

  auto* ent = leaf(app.add_subcommand("entropy", "Entanglement or von Neumann entropy"), cmd_entropy);
  ent->add_option("state", o.state_file)->required();
  cut_opt(ent);

  auto* wit = app.add_subcommand("witness", "Entanglement witnesses");
  wit->require_subcommand(1);
  wit->fallthrough();
  auto* wev = leaf(wit->add_subcommand("eval", "Evaluate Tr(W rho) (exit 1 if negative)"), cmd_witness_eval);
  wev->add_option("witness", o.state_file)->required();
  wev->add_option("state", o.second_file)->required();
  auto* wfm = leaf(wit->add_subcommand("from-map", "Witness (Id x E^dag)(phi+) of a positive map"), cmd_witness_from_map);
  wfm->add_option("--map", o.map_name, "transpose or reduction")->capture_default_str();
  wfm->add_option("--dim", o.dim, "Local dimension")->capture_default_str();
  wfm->add_option("--alpha", o.alpha, "Reduction-family parameter")->capture_default_str();
  wfm->add_option("-o,--output", o.output);

  auto* c3 = leaf(app.add_subcommand("classify3q", "Three-qubit SLOCC class"), cmd_classify3q);
  c3->add_option("state", o.state_file)->required();

  auto* ame = leaf(app.add_subcommand("ame", "Absolutely-maximally-entangled check"), cmd_ame);
  ame->add_option("state", o.state_file)->required();

  auto* nie = leaf(app.add_subcommand("nielsen", "LOCC convertibility of pure states"), cmd_nielsen);
  nie->add_option("src", o.state_file)->required();
  nie->add_option("dst", o.second_file)->required();

  auto* ds = leaf(app.add_subcommand("ds-sep", "Hankel test for diagonal symmetric states (exit 1 if entangled)"),
                  cmd_ds_sep);
  ds->add_option("probs", o.state_file)->required();

  auto* depth = app.add_subcommand("depth", "Entanglement depth bounds");
  depth->require_subcommand(1);
  depth->fallthrough();
  auto* dq = leaf(depth->add_subcommand("qfi", "Depth from the quantum Fisher information"), cmd_depth_qfi);
  dq->add_option("--F", o.f)->required();
  dq->add_option("--N", o.n)->required();
  auto* dw = leaf(depth->add_subcommand("wineland", "Depth from the squeezing ratio"), cmd_depth_wineland);
  dw->add_option("--sx2", o.sx2)->required();
  dw->add_option("--sy", o.sy)->required();
  dw->add_option("--N", o.n)->required();

  auto* sw = leaf(app.add_subcommand("spin-witness", "Total-spin witness (exit 1 if entangled)"), cmd_spin_witness);
  sw->add_option("--s2", o.s2)->required();
  sw->add_option("--N", o.n)->required();
  sw->add_option("--s", o.spin)->capture_default_str();

  auto* bw = leaf(app.add_subcommand("bell-witness", "Bell-correlation witness (exit 1 if correlated)"),
                  cmd_bell_witness);
  bw->add_option("--sx2", o.sx2)->required();
  bw->add_option("--sy", o.sy)->required();
  bw->add_option("--N", o.n)->required();

  auto* bell = app.add_subcommand("bell", "Two-body Bell functionals");
  bell->require_subcommand(1);
  bell->fallthrough();
  auto* bb = leaf(bell->add_subcommand("bound", "Classical bounds beta_min and beta_max"), cmd_bell_bound);
  bb->add_option("problem", o.state_file)->required();
  bb->add_option("--method", o.method, "exhaustive, pi or anneal")->capture_default_str();
  bb->add_option("--seed", o.seed)->capture_default_str();
  bb->add_option("--replicas", o.replicas)->capture_default_str();
  bb->add_option("--sweeps", o.sweeps)->capture_default_str();
  bb->add_option("--steps", o.steps)->capture_default_str();
  bb->add_option("--trace", o.trace_file, "CSV file for the annealing trace");
  auto* bq = leaf(bell->add_subcommand("quantum", "Quantum value (exit 1 if a classical bound is violated)"),
                  cmd_bell_quantum);
  bq->add_option("problem", o.state_file)->required();
  bq->add_option("state", o.second_file)->required();
  bq->add_option("settings", o.third_file)->required();

  auto* mps = app.add_subcommand("mps", "Matrix product states");
  mps->require_subcommand(1);
  mps->fallthrough();
  auto* mf = leaf(mps->add_subcommand("factor", "Left-canonical MPS by sequential SVD"), cmd_mps_factor);
  mf->add_option("state", o.state_file)->required();
  mf->add_option("--chi", o.chi, "Bond dimension cap");
  mf->add_option("--tol", o.tol, "Relative singular-value cutoff")->capture_default_str();
  mf->add_option("-o,--output", o.output);

  auto* ak = leaf(app.add_subcommand("aklt", "AKLT chain and its VBS ground state"), cmd_aklt);
  ak->add_option("--N", o.n)->required();
  ak->add_flag("--exact", o.exact, "Exact diagonalization by S_z sector");

  auto* sc = leaf(app.add_subcommand("scaling", "Entanglement entropy at every chain cut"), cmd_scaling);
  sc->add_option("--kind", o.kind, "vbs or random")->capture_default_str();
  sc->add_option("--N", o.n)->required();
  sc->add_option("--samples", o.samples)->capture_default_str();
  sc->add_option("--seed", o.seed)->capture_default_str();

  auto* st = app.add_subcommand("state", "State files");
  st->require_subcommand(1);
  st->fallthrough();
  auto* sm = leaf(st->add_subcommand("make", "Write a named state"), cmd_state_make);
  sm->add_option("name", o.name,
                 "ghz w dicke phi-plus psi-minus ame43 coherent singlet-pairs vbs random-pure random-mixed basis")
      ->required();
  sm->add_option("--N", o.n);
  sm->add_option("--k", o.k);
  sm->add_option("--d", o.dim);
  sm->add_option("--theta", o.theta);
  sm->add_option("--phi", o.phi);
  sm->add_option("--dims", o.dims)->delimiter(',');
  sm->add_option("--digits", o.digits)->delimiter(',');
  sm->add_option("--rank", o.rank);
  sm->add_option("--seed", o.seed);
  sm->add_option("-o,--output", o.output);

  auto* ss = leaf(app.add_subcommand("sufficient-sep", "Sufficient separability tests on C^2 x C^d"),
                  cmd_sufficient_sep);
  ss->add_option("state", o.state_file)->required();
  ss->add_option("--convention", o.convention, "as-printed or trace-scaled")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  if (handler == nullptr) {
    err << "error: no command given\n";
    return kExitInput;
  }
  try {
    Report r;
    const int code = handler(o, r);
    r.print(out, o.as_json);
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace entkit::cli
