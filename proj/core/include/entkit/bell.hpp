#pragma once

// Classical (local hidden variable) bounds of two-body Bell functionals.
//
// A deterministic strategy assigns outcome sigma_{a,i} to every party i and
// setting a; the functional becomes the Ising-like energy
//
//   H = sum_{i,a} k_{ai} sigma_{a,i} + sum_{i != j} sum_{a,b} q_{ai,bj} sigma_{a,i} sigma_{b,j}
//
// where the two-body sum is ordered, so each unordered pair of parties is
// counted twice. Coefficient tables are indexed party-major: the flat index
// of (party i, setting a) is i * J + a.

#include <cstdint>
#include <vector>

#include "entkit/linalg.hpp"

namespace entkit {

class BellProblem {
public:
  /// `k` is N x J, `q` is (N J) x (N J), symmetric with zero same-party
  /// blocks. For M = 2 the outcome alphabet is {-1, +1}; otherwise
  /// `values` maps outcome index 0..M-1 to its numeric value (default 0..M-1).
  BellProblem(int n, int j, int m, RMat k, RMat q, std::vector<double> values = {});

  [[nodiscard]] int parties() const { return n_; }
  [[nodiscard]] int settings() const { return j_; }
  [[nodiscard]] int outcomes() const { return m_; }
  [[nodiscard]] const RMat& k() const { return k_; }
  [[nodiscard]] const RMat& q() const { return q_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] int spins() const { return n_ * j_; }
  [[nodiscard]] int index(int party, int setting) const { return party * j_ + setting; }

  [[nodiscard]] BellProblem negated() const;
  /// True when k_{ai} = k_a and q_{ai,bj} = q_{ab} for all i != j.
  [[nodiscard]] bool is_permutation_invariant(double tol = 1e-12) const;

private:
  int n_, j_, m_;
  RMat k_, q_;
  std::vector<double> values_;
};

/// CHSH as a Bell problem: N = 2, J = 2, k = 0, q with entries 1/2 so that
/// the ordered double sum equals A1B1 + A1B2 + A2B1 - A2B2.
BellProblem chsh_problem();

/// Permutation-invariant problem from per-setting coefficients k_a and the
/// symmetric J x J matrix q_ab.
BellProblem pi_problem(int n, const RVec& k, const RMat& q, int m = 2, std::vector<double> values = {});

/// Deterministic strategy: outcome indices (0..M-1), flat party-major.
struct Strategy {
  std::vector<int> outcome;
};

double bell_value(const BellProblem& problem, const Strategy& s);

struct BoundResult {
  double beta;
  Strategy argmin;
};

inline constexpr std::uint64_t kExhaustiveBudget = std::uint64_t{1} << 26;

BoundResult classical_bound_exhaustive(const BellProblem& problem);

struct PiBoundResult {
  double beta;
  /// Occupation count per local strategy type; type t encodes the outcome
  /// of setting a as digit a of t in base M (setting 0 least significant).
  std::vector<int> occupation;
  Strategy argmin;
  std::uint64_t evaluated;
};

inline constexpr std::uint64_t kPiBudget = 50'000'000;

PiBoundResult pi_coarse_grain(const BellProblem& problem);

struct AnnealConfig {
  std::uint64_t seed = 1;
  int replicas = 8;
  int sweeps = 50;   ///< Metropolis sweeps per temperature step
  int steps = 200;   ///< temperature steps
  double t_start = 0.0;  ///< <= 0: 2 x coefficient scale
  double t_end = 1e-3;
  bool parallel = true;
};

struct AnnealTraceRow {
  int step;
  double temperature;
  double best;
};

struct AnnealResult {
  double beta_upper;
  Strategy best;
  std::vector<AnnealTraceRow> trace;
};

AnnealResult classical_bound_anneal(const BellProblem& problem, const AnnealConfig& config = {});

/// Evaluates the functional on quantum correlations: observables[i][a] is
/// the Hermitian observable of party i for setting a.
double quantum_value(const BellProblem& problem, const QState& state,
                     const std::vector<std::vector<Mat>>& observables);

}  // namespace entkit
