#pragma once

// Named states and mixed-state builders. All constructors return states that
// satisfy the QState invariants.

#include <cstdint>
#include <utility>
#include <vector>

#include "entkit/linalg.hpp"

namespace entkit {

/// (1/sqrt(d)) sum_i |i>|i>.
QState bell_phi_plus(int d = 2);
/// Two-qubit singlet (|01> - |10>)/sqrt(2).
QState psi_minus();
QState ghz(int n);
QState w_state(int n);
/// Unit-norm N-qubit Dicke state with k excitations (k qubits in |1>).
QState dicke(int n, int k);
/// Four-qutrit absolutely maximally entangled state.
QState ame43();
/// (cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>)^{⊗N}
QState coherent_spin(int n, double theta, double phi);
/// Singlets on adjacent pairs (0,1), (2,3), ...
QState singlet_pairs(int n);

/// Product of local (normalized) vectors.
QState product_state(const std::vector<Vec>& locals);
/// Computational basis state |digits>.
QState basis_state(const Dims& dims, const std::vector<int>& digits);

/// Haar-random pure state: Gaussian amplitudes then normalization.
QState random_pure(const Dims& dims, std::uint64_t seed);
/// Haar-random single-party vector of dimension d.
Vec random_vector(int d, std::uint64_t seed);
/// Haar-random unitary (QR of a Ginibre matrix with phase fix).
Mat random_unitary(int d, std::uint64_t seed);
/// Random density matrix of rank `rank` (partial trace of a Haar state).
QState random_mixed(const Dims& dims, int rank, std::uint64_t seed);

/// Convex combination sum_i p_i rho_i. Weights must be nonnegative and sum
/// to one within 1e-12.
QState mix(const std::vector<std::pair<double, QState>>& parts);

}  // namespace entkit
