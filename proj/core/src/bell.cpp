#include "entkit/bell.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "entkit/rng.hpp"

namespace entkit {

BellProblem::BellProblem(int n, int j, int m, RMat k, RMat q, std::vector<double> values)
    : n_(n), j_(j), m_(m), k_(std::move(k)), q_(std::move(q)), values_(std::move(values)) {
  if (n < 1 || j < 1 || m < 2) throw Error("BellProblem: need N >= 1, J >= 1, M >= 2");
  if (k_.rows() != n || k_.cols() != j) throw Error("BellProblem: k must be N x J");
  const int s = n * j;
  if (q_.rows() != s || q_.cols() != s) throw Error("BellProblem: q must be (N J) x (N J)");
  if (values_.empty()) {
    if (m == 2) {
      values_ = {-1.0, 1.0};
    } else {
      for (int r = 0; r < m; ++r) values_.push_back(r);
    }
  }
  if (static_cast<int>(values_.size()) != m) throw Error("BellProblem: outcome value map must have M entries");
  const double scale = std::max(1.0, q_.cwiseAbs().maxCoeff());
  if ((q_ - q_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw Error("BellProblem: q must be symmetric");
  for (int i = 0; i < n; ++i) {
    if (q_.block(i * j, i * j, j, j).cwiseAbs().maxCoeff() != 0.0) {
      throw Error("BellProblem: same-party block of q must vanish");
    }
  }
}

BellProblem BellProblem::negated() const { return BellProblem(n_, j_, m_, -k_, -q_, values_); }

bool BellProblem::is_permutation_invariant(double tol) const {
  for (int i = 1; i < n_; ++i) {
    if ((k_.row(i) - k_.row(0)).cwiseAbs().maxCoeff() > tol) return false;
  }
  if (n_ < 2) return true;
  const RMat ref = q_.block(0, j_, j_, j_);
  for (int i = 0; i < n_; ++i) {
    for (int l = 0; l < n_; ++l) {
      if (i == l) continue;
      if ((q_.block(i * j_, l * j_, j_, j_) - ref).cwiseAbs().maxCoeff() > tol) return false;
    }
  }
  return true;
}

BellProblem chsh_problem() {
  RMat q = RMat::Zero(4, 4);
  // index(party, setting): A1 = 0, A2 = 1, B1 = 2, B2 = 3
  const double c[2][2] = {{0.5, 0.5}, {0.5, -0.5}};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      q(a, 2 + b) = c[a][b];
      q(2 + b, a) = c[a][b];
    }
  }
  return BellProblem(2, 2, 2, RMat::Zero(2, 2), q);
}

BellProblem pi_problem(int n, const RVec& k, const RMat& q, int m, std::vector<double> values) {
  const auto j = static_cast<int>(k.size());
  if (q.rows() != j || q.cols() != j) throw Error("pi_problem: q must be J x J");
  RMat kk(n, j);
  for (int i = 0; i < n; ++i) kk.row(i) = k.transpose();
  RMat qq = RMat::Zero(n * j, n * j);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) {
      if (i != l) qq.block(i * j, l * j, j, j) = q;
    }
  }
  return BellProblem(n, j, m, std::move(kk), std::move(qq), std::move(values));
}

namespace {

void check_strategy(const BellProblem& p, const Strategy& s) {
  if (static_cast<int>(s.outcome.size()) != p.spins()) throw Error("bell_value: strategy has wrong shape");
  for (int o : s.outcome) {
    if (o < 0 || o >= p.outcomes()) throw Error("bell_value: outcome index out of range");
  }
}

// Flat views used by the search routines.
struct Ising {
  int n = 0;
  std::vector<double> k;
  std::vector<double> q;  // row-major n x n
  std::vector<double> values;

  explicit Ising(const BellProblem& p) : n(p.spins()), values(p.values()) {
    k.resize(static_cast<std::size_t>(n));
    q.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < p.parties(); ++i) {
      for (int a = 0; a < p.settings(); ++a) k[static_cast<std::size_t>(p.index(i, a))] = p.k()(i, a);
    }
    for (int u = 0; u < n; ++u) {
      for (int w = 0; w < n; ++w) q[static_cast<std::size_t>(u * n + w)] = p.q()(u, w);
    }
  }

  [[nodiscard]] double qq(int u, int w) const { return q[static_cast<std::size_t>(u * n + w)]; }
};

// Energy bookkeeping with local fields h_u = sum_w q_uw v_w.
struct FieldState {
  const Ising* model;
  std::vector<int> idx;
  std::vector<double> h;
  double energy = 0.0;

  FieldState(const Ising& m, std::vector<int> start) : model(&m), idx(std::move(start)) {
    const int n = m.n;
    h.assign(static_cast<std::size_t>(n), 0.0);
    for (int u = 0; u < n; ++u) {
      double acc = 0.0;
      for (int w = 0; w < n; ++w) acc += m.qq(u, w) * value(w);
      h[static_cast<std::size_t>(u)] = acc;
    }
    energy = 0.0;
    for (int u = 0; u < n; ++u) {
      energy += m.k[static_cast<std::size_t>(u)] * value(u) + value(u) * h[static_cast<std::size_t>(u)];
    }
  }

  [[nodiscard]] double value(int u) const {
    return model->values[static_cast<std::size_t>(idx[static_cast<std::size_t>(u)])];
  }

  [[nodiscard]] double delta(int u, int new_idx) const {
    const double dv = model->values[static_cast<std::size_t>(new_idx)] - value(u);
    return dv * (model->k[static_cast<std::size_t>(u)] + 2.0 * h[static_cast<std::size_t>(u)]);
  }

  void set(int u, int new_idx, double d) {
    const double dv = model->values[static_cast<std::size_t>(new_idx)] - value(u);
    idx[static_cast<std::size_t>(u)] = new_idx;
    energy += d;
    const int n = model->n;
    for (int w = 0; w < n; ++w) h[static_cast<std::size_t>(w)] += model->qq(w, u) * dv;
  }
};

double coefficient_scale(const Ising& m) {
  double vmax = 0.0;
  double vmin = std::numeric_limits<double>::infinity();
  double vabs = 0.0;
  for (double v : m.values) {
    vmax = std::max(vmax, v);
    vmin = std::min(vmin, v);
    vabs = std::max(vabs, std::abs(v));
  }
  const double range = vmax - vmin;
  double worst = 0.0;
  for (int u = 0; u < m.n; ++u) {
    double row = 0.0;
    for (int w = 0; w < m.n; ++w) row += std::abs(m.qq(u, w));
    worst = std::max(worst, range * (std::abs(m.k[static_cast<std::size_t>(u)]) + 2.0 * vabs * row));
  }
  return 0.5 * worst;
}

}  // namespace

double bell_value(const BellProblem& problem, const Strategy& s) {
  check_strategy(problem, s);
  const auto& vals = problem.values();
  const int n = problem.spins();
  auto v = [&](int u) { return vals[static_cast<std::size_t>(s.outcome[static_cast<std::size_t>(u)])]; };
  double one = 0.0;
  for (int i = 0; i < problem.parties(); ++i) {
    for (int a = 0; a < problem.settings(); ++a) one += problem.k()(i, a) * v(problem.index(i, a));
  }
  double two = 0.0;
  for (int u = 0; u < n; ++u) {
    for (int w = 0; w < n; ++w) two += problem.q()(u, w) * v(u) * v(w);
  }
  return one + two;
}

BoundResult classical_bound_exhaustive(const BellProblem& problem) {
  const int n = problem.spins();
  const int m = problem.outcomes();
  double total = 1.0;
  for (int u = 0; u < n; ++u) total *= m;
  if (total > static_cast<double>(kExhaustiveBudget)) {
    throw Error("classical_bound_exhaustive: M^(J N) exceeds the 2^26 enumeration budget; use pi or anneal");
  }
  const Ising model(problem);
  FieldState st(model, std::vector<int>(static_cast<std::size_t>(n), 0));
  double best = st.energy;
  std::vector<int> arg = st.idx;
  const auto count = static_cast<std::uint64_t>(total);
  for (std::uint64_t c = 1; c < count; ++c) {
    // odometer increment, digit 0 fastest
    for (int u = 0; u < n; ++u) {
      const int cur = st.idx[static_cast<std::size_t>(u)];
      const int next = (cur + 1) % m;
      st.set(u, next, st.delta(u, next));
      if (next != 0) break;
    }
    if (st.energy < best) {
      best = st.energy;
      arg = st.idx;
    }
  }
  Strategy s{arg};
  return {bell_value(problem, s), s};
}

PiBoundResult pi_coarse_grain(const BellProblem& problem) {
  if (!problem.is_permutation_invariant()) throw Error("pi_coarse_grain: coefficients are not permutation invariant");
  const int n = problem.parties();
  const int j = problem.settings();
  const int m = problem.outcomes();
  int types = 1;
  for (int a = 0; a < j; ++a) {
    if (types > 1'000'000 / m) throw Error("pi_coarse_grain: too many local strategy types");
    types *= m;
  }
  // number of compositions C(N + T - 1, T - 1)
  double comps = 1.0;
  for (int i = 1; i < types; ++i) comps = comps * (n + i) / i;
  if (comps > static_cast<double>(kPiBudget)) throw Error("pi_coarse_grain: occupation enumeration exceeds budget");

  const auto& vals = problem.values();
  RMat tv(types, j);  // tv(t, a) = value of setting a under type t
  for (int t = 0; t < types; ++t) {
    int x = t;
    for (int a = 0; a < j; ++a) {
      tv(t, a) = vals[static_cast<std::size_t>(x % m)];
      x /= m;
    }
  }
  const RVec k = problem.k().row(0).transpose();
  const RMat q = n > 1 ? RMat(problem.q().block(0, j, j, j)) : RMat::Zero(j, j);

  std::vector<int> occ(static_cast<std::size_t>(types), 0);
  std::vector<int> best_occ;
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t evaluated = 0;
  RVec s = RVec::Zero(j);
  RMat d = RMat::Zero(j, j);

  auto leaf = [&]() {
    double h = k.dot(s);
    for (int a = 0; a < j; ++a) {
      for (int b = 0; b < j; ++b) h += q(a, b) * (s(a) * s(b) - d(a, b));
    }
    ++evaluated;
    if (h < best) {
      best = h;
      best_occ = occ;
    }
  };
  auto rec = [&](auto&& self, int t, int remaining) -> void {
    const RVec v = tv.row(t).transpose();
    const RMat vv = v * v.transpose();
    if (t == types - 1) {
      occ[static_cast<std::size_t>(t)] = remaining;
      s += remaining * v;
      d += remaining * vv;
      leaf();
      s -= remaining * v;
      d -= remaining * vv;
      occ[static_cast<std::size_t>(t)] = 0;
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      occ[static_cast<std::size_t>(t)] = c;
      s += c * v;
      d += c * vv;
      self(self, t + 1, remaining - c);
      s -= c * v;
      d -= c * vv;
    }
    occ[static_cast<std::size_t>(t)] = 0;
  };
  rec(rec, 0, n);

  Strategy arg;
  arg.outcome.reserve(static_cast<std::size_t>(n * j));
  for (int t = 0; t < types; ++t) {
    for (int c = 0; c < best_occ[static_cast<std::size_t>(t)]; ++c) {
      int x = t;
      for (int a = 0; a < j; ++a) {
        arg.outcome.push_back(x % m);
        x /= m;
      }
    }
  }
  return {bell_value(problem, arg), best_occ, arg, evaluated};
}

namespace {

struct ReplicaResult {
  double best;
  std::vector<int> idx;
  std::vector<double> trace;  // best-so-far after each step
};

ReplicaResult run_replica(const Ising& model, const AnnealConfig& cfg, double t_start, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const int n = model.n;
  const int m = static_cast<int>(model.values.size());
  std::vector<int> start(static_cast<std::size_t>(n));
  for (auto& x : start) x = static_cast<int>(rng() % static_cast<std::uint64_t>(m));
  FieldState st(model, std::move(start));
  ReplicaResult r{st.energy, st.idx, {}};
  r.trace.reserve(static_cast<std::size_t>(cfg.steps));
  const double ratio = cfg.steps > 1 ? std::pow(cfg.t_end / t_start, 1.0 / (cfg.steps - 1)) : 1.0;
  double temp = t_start;
  for (int step = 0; step < cfg.steps; ++step) {
    for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
      for (int u = 0; u < n; ++u) {
        int proposal = static_cast<int>(rng() % static_cast<std::uint64_t>(m - 1));
        if (proposal >= st.idx[static_cast<std::size_t>(u)]) ++proposal;
        const double d = st.delta(u, proposal);
        if (d <= 0.0 || rng.uniform() < std::exp(-d / temp)) {
          st.set(u, proposal, d);
          if (st.energy < r.best) {
            r.best = st.energy;
            r.idx = st.idx;
          }
        }
      }
    }
    r.trace.push_back(r.best);
    temp *= ratio;
  }
  // zero-temperature quench from the best configuration
  FieldState q(model, r.idx);
  bool improved = true;
  while (improved) {
    improved = false;
    for (int u = 0; u < n; ++u) {
      int best_v = q.idx[static_cast<std::size_t>(u)];
      double best_d = 0.0;
      for (int v = 0; v < m; ++v) {
        if (v == q.idx[static_cast<std::size_t>(u)]) continue;
        const double d = q.delta(u, v);
        if (d < best_d - 1e-12) {
          best_d = d;
          best_v = v;
        }
      }
      if (best_v != q.idx[static_cast<std::size_t>(u)]) {
        q.set(u, best_v, best_d);
        improved = true;
      }
    }
  }
  if (q.energy < r.best) {
    r.best = q.energy;
    r.idx = q.idx;
  }
  return r;
}

}  // namespace

AnnealResult classical_bound_anneal(const BellProblem& problem, const AnnealConfig& config) {
  if (config.replicas < 1 || config.sweeps < 1 || config.steps < 1) {
    throw Error("classical_bound_anneal: replicas, sweeps and steps must be >= 1");
  }
  const Ising model(problem);
  const double scale = coefficient_scale(model);
  if (scale == 0.0) {
    Strategy s{std::vector<int>(static_cast<std::size_t>(problem.spins()), 0)};
    return {bell_value(problem, s), s, {}};
  }
  const double t_start = config.t_start > 0.0 ? config.t_start : 2.0 * scale;
  if (!(t_start > config.t_end && config.t_end > 0.0)) {
    throw Error("classical_bound_anneal: need T_start > T_end > 0");
  }

  std::vector<ReplicaResult> results(static_cast<std::size_t>(config.replicas));
  if (config.parallel && config.replicas > 1) {
    std::vector<std::future<ReplicaResult>> jobs;
    for (int r = 0; r < config.replicas; ++r) {
      jobs.push_back(std::async(std::launch::async, run_replica, std::cref(model), std::cref(config), t_start,
                                config.seed ^ static_cast<std::uint64_t>(r)));
    }
    for (int r = 0; r < config.replicas; ++r) results[static_cast<std::size_t>(r)] = jobs[static_cast<std::size_t>(r)].get();
  } else {
    for (int r = 0; r < config.replicas; ++r) {
      results[static_cast<std::size_t>(r)] =
          run_replica(model, config, t_start, config.seed ^ static_cast<std::uint64_t>(r));
    }
  }

  // deterministic min-reduction: lowest exact value, then lowest replica index
  std::size_t win = 0;
  double win_val = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < results.size(); ++r) {
    const double v = bell_value(problem, Strategy{results[r].idx});
    if (v < win_val) {
      win_val = v;
      win = r;
    }
  }
  AnnealResult out{win_val, Strategy{results[win].idx}, {}};
  const double ratio = config.steps > 1 ? std::pow(config.t_end / t_start, 1.0 / (config.steps - 1)) : 1.0;
  double temp = t_start;
  for (int step = 0; step < config.steps; ++step) {
    double b = std::numeric_limits<double>::infinity();
    for (const auto& r : results) b = std::min(b, r.trace[static_cast<std::size_t>(step)]);
    out.trace.push_back({step, temp, b});
    temp *= ratio;
  }
  return out;
}

double quantum_value(const BellProblem& problem, const QState& state,
                     const std::vector<std::vector<Mat>>& observables) {
  const int n = problem.parties();
  const int j = problem.settings();
  if (state.dims().size() != n) throw Error("quantum_value: state must have one subsystem per party");
  if (state.dim() > (1 << 14)) throw Error("quantum_value: total dimension exceeds 2^14");
  if (static_cast<int>(observables.size()) != n) throw Error("quantum_value: need observables for every party");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(observables[static_cast<std::size_t>(i)].size()) != j) {
      throw Error("quantum_value: need one observable per setting");
    }
    for (const auto& o : observables[static_cast<std::size_t>(i)]) {
      if (o.rows() != state.dims()[i] || o.cols() != state.dims()[i]) throw Error("quantum_value: observable size mismatch");
      if (hermiticity_defect(o) > 1e-9) throw Error("quantum_value: observable is not Hermitian");
    }
  }
  auto obs = [&](int i, int a) -> const Mat& {
    return observables[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
  };
  double value = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::vector<int> keep{i};
    const Mat rho = reduced_density(state, keep);
    for (int a = 0; a < j; ++a) value += problem.k()(i, a) * (rho * obs(i, a)).trace().real();
  }
  for (int i = 0; i < n; ++i) {
    for (int l = i + 1; l < n; ++l) {
      const std::vector<int> keep{i, l};
      const Mat rho = reduced_density(state, keep);
      for (int a = 0; a < j; ++a) {
        for (int b = 0; b < j; ++b) {
          const double c = problem.q()(problem.index(i, a), problem.index(l, b));
          if (c == 0.0) continue;
          // ordered sum: (i,a;l,b) and (l,b;i,a) contribute equally
          value += 2.0 * c * (rho * kron(obs(i, a), obs(l, b))).trace().real();
        }
      }
    }
  }
  return value;
}

}  // namespace entkit
