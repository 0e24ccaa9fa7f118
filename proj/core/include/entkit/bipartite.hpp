#pragma once

#include <string>
#include <vector>

#include "entkit/linalg.hpp"

namespace entkit {

inline constexpr double kSchmidtTol = 1e-10;

/// Split of {0..N-1} into two nonempty complementary sets.
class Bipartition {
public:
  Bipartition(std::vector<int> left, int n);
  /// Parses "1|23", "12|3", "1,2|3,4" (1-based party labels).
  static Bipartition parse(const std::string& text, int n);

  [[nodiscard]] const std::vector<int>& left() const { return left_; }
  [[nodiscard]] const std::vector<int>& right() const { return right_; }
  [[nodiscard]] int parties() const { return n_; }
  [[nodiscard]] std::string str() const;

private:
  std::vector<int> left_;
  std::vector<int> right_;
  int n_;
};

struct SchmidtData {
  RVec coefficients;  ///< lambda_i = s_i^2, descending, sum to 1
  Mat left_vectors;   ///< columns
  Mat right_vectors;  ///< columns; psi = sum_i sqrt(lambda_i) left_i ⊗ right_i
  int rank = 0;       ///< number of coefficients above the Schmidt tolerance
};

SchmidtData schmidt(const QState& psi, const Bipartition& cut, double tol = kSchmidtTol);

/// -Tr(rho ln rho) in nats; eigenvalues below 1e-14 contribute zero.
double von_neumann_entropy(const Mat& rho, double psd_tol = kPsdTol);
double von_neumann_entropy(const QState& rho, double psd_tol = kPsdTol);
/// Shannon entropy -sum p ln p of a probability vector (0 ln 0 = 0).
double shannon_entropy(const RVec& p);

double entanglement_entropy(const QState& psi, const Bipartition& cut);

enum class PptVerdict { entangled, ppt };

struct PptReport {
  double min_eigenvalue;
  PptVerdict verdict;
  /// True for 2x2 and 2x3 splits, where PPT also implies separability.
  bool sufficient;
};

PptReport ppt_test(const QState& rho, const Bipartition& cut, double psd_tol = kPsdTol);

/// True iff |src> can be converted to |dst> by LOCC: src is majorized by
/// dst (partial sums of descending-sorted coefficients).
bool nielsen_convertible(const std::vector<double>& src, const std::vector<double>& dst);

/// <A1B1> + <A1B2> + <A2B1> - <A2B2> on a two-qubit state. Each setting must
/// have spectrum in {-1, +1}.
double chsh_value(const QState& rho, const Mat& a1, const Mat& a2, const Mat& b1, const Mat& b2);

}  // namespace entkit
