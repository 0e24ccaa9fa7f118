#pragma once

// Partitions, three-qubit SLOCC classes, the 3-tangle, AME checks and
// QFI-based entanglement-depth bounds.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "entkit/linalg.hpp"

namespace entkit {

inline constexpr double kTangleTol = 1e-9;
inline constexpr double kRankTol = 1e-9;

/// Disjoint nonempty blocks covering {0..N-1}.
class PartitionSpec {
public:
  PartitionSpec(std::vector<std::vector<int>> blocks, int n);
  /// Parses "1|23", "1,2|3|4,5" (1-based).
  static PartitionSpec parse(const std::string& text, int n);

  [[nodiscard]] const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  [[nodiscard]] int max_block() const;
  [[nodiscard]] int parties() const { return n_; }

private:
  std::vector<std::vector<int>> blocks_;
  int n_;
};

struct LocalInfo {
  int rank;
  double entropy;
};

/// Rank and entropy of every single-site reduction of a pure state.
std::vector<LocalInfo> local_ranks_entropies(const QState& psi, double rank_tol = kRankTol);

/// Cayley hyperdeterminant of the 2x2x2 amplitude tensor.
cplx hyperdeterminant(const Vec& psi);
/// tau = 4 |Hdet|, normalized so tau(GHZ) = 1.
double three_tangle(const QState& psi);

enum class ThreeQubitLabel { sep, b1_23, b2_13, b3_12, w, ghz };
std::string to_string(ThreeQubitLabel l);

struct ThreeQubitClass {
  ThreeQubitLabel label;
  std::array<double, 3> local_entropies;
  std::array<int, 3> local_ranks;
  double tangle;
  /// Minimal number of product terms: 1 (SEP), 2 (biseparable, GHZ), 3 (W).
  int tensor_rank;
};

ThreeQubitClass classify_3qubit(const QState& psi, double tangle_tol = kTangleTol,
                                double rank_tol = kRankTol);

bool is_partially_separable(const QState& psi, const PartitionSpec& partition, double tol = 1e-9);

struct AmeReport {
  bool verdict;
  double worst_deviation;
};

AmeReport is_ame(const QState& psi, double tol = 1e-9);

/// Smallest entanglement depth compatible with a QFI value F for N qubits
/// under collective rotations (F <= N K for K-producible states).
int depth_from_qfi(double f, int n);

}  // namespace entkit
