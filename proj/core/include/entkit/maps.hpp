#pragma once

// Quantum maps (Kraus form or explicit action), Choi matrices, positive but
// not completely positive maps as entanglement tests, entanglement
// witnesses, and the reduction-map family used for sufficient separability.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "entkit/linalg.hpp"

namespace entkit {

/// Linear map on operators given by its action. `dual` is the adjoint map
/// with respect to the Hilbert-Schmidt inner product.
struct LinearMap {
  int d_in = 0;
  int d_out = 0;
  std::string name;
  std::function<Mat(const Mat&)> action;
  std::function<Mat(const Mat&)> dual;

  Mat operator()(const Mat& x) const { return action(x); }
  [[nodiscard]] LinearMap adjoint() const;
};

/// Map in Kraus form: rho -> sum_i K_i rho K_i^dagger.
class QuantumMap {
public:
  /// Throws if `trace_preserving` is set but sum K^dagger K != I within 1e-10.
  QuantumMap(std::vector<Mat> kraus, bool trace_preserving);

  [[nodiscard]] const std::vector<Mat>& kraus() const { return kraus_; }
  [[nodiscard]] bool trace_preserving() const { return trace_preserving_; }
  [[nodiscard]] int d_in() const { return static_cast<int>(kraus_.front().cols()); }
  [[nodiscard]] int d_out() const { return static_cast<int>(kraus_.front().rows()); }

  [[nodiscard]] Mat apply(const Mat& rho) const;
  /// Map with conjugate-transposed Kraus operators.
  [[nodiscard]] QuantumMap dual() const;
  [[nodiscard]] LinearMap as_linear(std::string name = "kraus") const;

private:
  std::vector<Mat> kraus_;
  bool trace_preserving_;
};

LinearMap identity_map(int d);
/// X -> X^T. Positive, not completely positive; self-dual.
LinearMap transposition_map(int d);
/// X -> Tr(X) I + alpha X.
LinearMap reduction_family_map(int d, double alpha);
/// X -> Tr(X) I / d.
QuantumMap completely_depolarizing(int d);
QuantumMap dephasing(int d);

QState apply_map(const QuantumMap& m, const QState& rho);

/// M = sum_ij |i><j| ⊗ Phi(|i><j|).
Mat choi_matrix(const LinearMap& m);
Mat choi_matrix(const QuantumMap& m);

bool is_completely_positive(const LinearMap& m, double tol = kPsdTol);
bool is_completely_positive(const QuantumMap& m, double tol = kPsdTol);

/// (Id_A ⊗ E)(rho) for a bipartite operator with dims (dA, dB).
Mat apply_on_second(const LinearMap& m, const Mat& rho, const Dims& dims);

enum class MapVerdict { entangled, inconclusive };

struct MapTestResult {
  MapVerdict verdict;
  double min_eigenvalue;
};

/// Applies Id ⊗ E to a bipartite state; a negative eigenvalue certifies
/// entanglement when E is positive (the caller asserts positivity).
MapTestResult pncp_entanglement_test(const QState& rho, const LinearMap& positive_map,
                                     double psd_tol = kPsdTol);

enum class WitnessProvenance { from_map, decomposable, collective_spin, custom };
std::string to_string(WitnessProvenance p);
WitnessProvenance witness_provenance_from_string(const std::string& s);

/// Hermitian operator nonnegative on separable states.
struct Witness {
  Mat matrix;
  Dims dims;
  WitnessProvenance provenance = WitnessProvenance::custom;
  std::optional<Mat> p;  ///< decomposable witnesses only
  std::optional<Mat> q;
};

/// (Id ⊗ E^dagger)(sum_ij |ii><jj|).
Witness witness_from_map(const LinearMap& positive_map);
/// W = P + Q^{T_B}; P and Q must be PSD.
Witness decomposable_witness(const Mat& p, const Mat& q, const Dims& dims, double psd_tol = kPsdTol);
Witness custom_witness(const Mat& w, const Dims& dims);
double evaluate_witness(const Witness& w, const QState& rho);

/// Lambda_alpha(rho) = Tr(rho) I + alpha rho, optionally renormalized to
/// unit trace.
Mat reduction_map(const Mat& rho, double alpha, bool normalize = false);
/// Lambda_alpha^{-1}(sigma) = (sigma - Tr(sigma) I / (D + alpha)) / alpha.
Mat reduction_map_inverse(const Mat& sigma, double alpha);

enum class SeparabilityVerdict { separable, inconclusive };

enum class IdentityConvention {
  as_printed,    ///< sigma - I/(2d+2) with I the identity on the full space
  trace_scaled,  ///< sigma - Tr(sigma) I/(2d+2)
};

struct SufficientChecks {
  bool shifted_identity = true;
  bool purity_ball = true;
  IdentityConvention identity = IdentityConvention::as_printed;
};

struct SufficientSeparabilityReport {
  SeparabilityVerdict verdict;
  double shifted_min_eigenvalue;
  double purity;
  double purity_bound;
  bool shifted_identity_pass;
  bool purity_ball_pass;
  /// Set when the purity ball certifies but the shifted-identity test does
  /// not, or vice versa.
  bool checks_disagree;
};

/// Sufficient separability tests for states on C^2 ⊗ C^d.
SufficientSeparabilityReport sufficient_separability(const QState& sigma,
                                                     const SufficientChecks& checks = {},
                                                     double psd_tol = kPsdTol);

}  // namespace entkit
