#pragma once

// Open-boundary matrix product states, the spin-1 AKLT chain and its
// valence-bond ground state, and entanglement spectra along a chain.

#include <cstdint>
#include <vector>

#include "entkit/linalg.hpp"

namespace entkit {

/// Site tensors A[i][s] of shape D_{i-1} x D_i with D_0 = D_N = 1.
class MPSState {
public:
  explicit MPSState(std::vector<std::vector<Mat>> tensors);

  [[nodiscard]] int sites() const { return static_cast<int>(a_.size()); }
  [[nodiscard]] int phys(int site) const { return static_cast<int>(a_.at(static_cast<std::size_t>(site)).size()); }
  [[nodiscard]] Dims dims() const;
  [[nodiscard]] const std::vector<Mat>& site(int i) const { return a_.at(static_cast<std::size_t>(i)); }
  [[nodiscard]] const std::vector<std::vector<Mat>>& tensors() const { return a_; }
  /// Bond dimension between site `cut - 1` and site `cut`, cut in 1..N-1.
  [[nodiscard]] int bond(int cut) const;
  [[nodiscard]] std::vector<int> bonds() const;
  [[nodiscard]] int max_bond() const;
  /// <psi|psi> by transfer-matrix contraction.
  [[nodiscard]] double norm_squared() const;

private:
  std::vector<std::vector<Mat>> a_;
};

/// Left-to-right SVD sweep. Singular values <= svd_tol * s_max are dropped
/// and each bond is capped at chi_max; the result is left-canonical up to
/// the final site, which carries the (renormalized) norm.
MPSState to_mps(const QState& psi, int chi_max, double svd_tol = 1e-14);

inline constexpr std::int64_t kDenseMpsBudget = std::int64_t{1} << 20;

/// Contracts to a normalized dense vector.
QState mps_to_dense(const MPSState& m);

/// Spin-1 chain VBS state from N-1 nearest-neighbour singlets projected on
/// the symmetric (spin-1) sector of each site. The free spin-1/2 at either
/// end is fixed by `edge_left` / `edge_right` (components in the up, down
/// basis). Basis per site: |+1>, |0>, |-1>.
MPSState vbs_state(int n, const Vec& edge_left, const Vec& edge_right);
MPSState vbs_state(int n);

/// Spin-1 matrices in the |+1>, |0>, |-1> basis.
Mat spin1_x();
Mat spin1_y();
Mat spin1_z();

/// Open-chain sum_i [s_i.s_{i+1} + (1/3)(s_i.s_{i+1})^2], N <= 10.
SparseObservable aklt_hamiltonian(int n);

/// Diagonal of total S_z for N spin-1 sites.
RVec spin1_total_sz(int n);

struct GroundState {
  double energy;
  Vec vector;       ///< a unit ground vector
  Mat space;        ///< orthonormal basis of the ground space (columns)
  int degeneracy;
};

inline constexpr double kDegeneracyTol = 1e-8;

/// Dense diagonalization, dimension <= 2^14.
GroundState ground_state_exact(const Observable& h);

/// Block diagonalization over the sectors of a diagonal conserved charge
/// (e.g. total S_z). Throws if `h` couples different sectors.
GroundState ground_state_sectors(const SparseObservable& h, const RVec& charge);

/// Eigenvalues of the reduced density matrix of sites 0..cut-1, descending.
RVec entanglement_spectrum(const QState& psi, int cut);
RVec entanglement_spectrum(const MPSState& m, int cut);

enum class ScalingKind { vbs, random };

struct ScalingRow {
  int cut;          ///< |X|, the number of leftmost sites
  double entropy;   ///< mean over samples for random states
  double reference; ///< ln 2 for vbs; Page value for random states
};

/// Entanglement entropy at every cut 1..N-1. `vbs` uses vbs_state(N);
/// `random` averages `samples` random pure qubit states seeded seed, seed+1, ...
std::vector<ScalingRow> entropy_scaling_report(ScalingKind kind, int n, int samples = 20, std::uint64_t seed = 1);

/// Page's mean entropy ln m - m / (2 n) for a random pure state on an
/// m x n bipartition, m <= n.
double page_entropy(double m, double n);

}  // namespace entkit
