#pragma once

// Symmetric-subspace tools: Dicke dimensions, collective spin operators,
// the Hankel test for diagonal symmetric states, the quantum Fisher
// information and the collective-spin witnesses.

#include <cstdint>
#include <vector>

#include "entkit/linalg.hpp"

namespace entkit {

/// C(N+d-1, d-1).
std::uint64_t dicke_basis_dim(int n, int d);
/// Binomial coefficient as a double.
double binomial(int n, int k);

enum class SpinRep { full, symmetric };

struct CollectiveSpinOps {
  int n;
  SpinRep rep;
  SpMat sx, sy, sz;

  [[nodiscard]] SpMat s_squared() const { return sx * sx + sy * sy + sz * sz; }
  [[nodiscard]] Dims dims() const;
};

/// Full representation (2^N, N <= 14) as Kronecker sums of Pauli/2, or the
/// (N+1)-dimensional spin-N/2 representation with basis index k ↔ m = N/2 - k
/// (k = number of excitations, matching dicke(N, k)).
CollectiveSpinOps collective_spin_ops(int n, SpinRep rep);

/// Columns are the unit Dicke vectors |D_k> in the 2^N space, k = 0..N.
Mat symmetric_embedding(int n);

/// Diagonal symmetric state sum_k p_k |D_k><D_k|.
class DSState {
public:
  DSState(int n, std::vector<double> p);
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] const std::vector<double>& p() const { return p_; }
  /// Dense 2^N density matrix.
  [[nodiscard]] QState to_density() const;

private:
  int n_;
  std::vector<double> p_;
};

struct HankelPair {
  RMat m0;  ///< (floor(N/2)+1)^2, entries c_{i+j}
  RMat m1;  ///< (floor((N-1)/2)+1)^2, entries c_{i+j+1}
};

/// Hankel matrices of c_k = p_k / C(N, k).
HankelPair ds_hankel(const DSState& state);

enum class DsVerdict { separable, entangled };

struct DsReport {
  DsVerdict verdict;
  /// N odd: Hankel PSD is then only the necessary (PPT) condition.
  bool necessary_only;
  double min_eig_m0;
  double min_eig_m1;
};

DsReport ds_separable(const DSState& state, double psd_tol = kPsdTol);

/// Quantum Fisher information. Pure states: 4 Var(G). Mixed states:
/// 2 sum_{l_i + l_j > 0} (l_i - l_j)^2 / (l_i + l_j) |<i|G|j>|^2.
double qfi(const QState& state, const Observable& g);
double qfi(const QState& state, const SpMat& g);

struct WinelandReport {
  int depth;
  bool singular;  ///< <S_x^2> = 0 with nonzero <S_y>
};

/// Largest certified entanglement depth from <S_x^2>/<S_y>^2 < 1/(N K).
WinelandReport wineland_depth(double sx2, double sy, int n);

enum class SpinWitnessVerdict { entangled, inconclusive };
/// <S^2> < N s certifies entanglement.
SpinWitnessVerdict total_spin_witness(double s2, int n, double s);

enum class BellCorrelationVerdict { bell_correlated, inconclusive };
BellCorrelationVerdict bell_correlation_witness(double sx2, double sy, int n);

/// Lab-frame first and second moments of the collective spin.
struct CollectiveMoments {
  double sx, sy, sz;
  double sx2, sy2, sz2;
  double s2;
};
CollectiveMoments collective_moments(const QState& state);

/// Moments in the frame with the mean spin along y: `sy` = |<S>|, `sx2` =
/// smallest <S_n^2> over unit n perpendicular to <S>. With zero mean spin
/// the lab y axis is kept.
struct AlignedMoments {
  double sy;
  double sx2;
  double s2;
};
AlignedMoments aligned_moments(const QState& state);

}  // namespace entkit
