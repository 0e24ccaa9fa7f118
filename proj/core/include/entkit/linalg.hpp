#pragma once

// Dense complex linear algebra for multipartite systems.
//
// Basis convention: |s_1 s_2 ... s_N> with s_1 the most significant digit
// (row-major over the dims list). Subsystem indices are 0-based.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace entkit {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<cplx>;

/// Error raised on contract violations (bad dimensions, invalid inputs,
/// exceeded budgets).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPsdTol = 1e-9;

/// Ordered list of local dimensions d_1..d_N, each >= 2.
class Dims {
public:
  Dims() = default;
  Dims(std::initializer_list<int> d);
  explicit Dims(std::vector<int> d);

  /// N copies of the local dimension d.
  static Dims uniform(int n, int d);

  [[nodiscard]] int size() const { return static_cast<int>(d_.size()); }
  [[nodiscard]] int operator[](int i) const { return d_.at(static_cast<std::size_t>(i)); }
  [[nodiscard]] std::int64_t total() const;
  [[nodiscard]] const std::vector<int>& values() const { return d_; }
  [[nodiscard]] bool is_uniform() const;

  /// Product of the dimensions of the listed subsystems.
  [[nodiscard]] std::int64_t subtotal(std::span<const int> subsystems) const;
  /// Dims of the listed subsystems, in ascending subsystem order.
  [[nodiscard]] Dims select(std::span<const int> subsystems) const;

  friend bool operator==(const Dims&, const Dims&) = default;

private:
  std::vector<int> d_;
};

std::string to_string(const Dims& dims);

/// Sorted, duplicate-free subsystem indices; throws unless every entry lies
/// in [0, n).
std::vector<int> normalize_subsystems(std::span<const int> subsystems, int n);
/// Complement of `subsystems` in {0..n-1}.
std::vector<int> complement(std::span<const int> subsystems, int n);

enum class StateKind { pure, mixed };

/// A pure state (amplitude vector) or density matrix with its subsystem
/// dimensions. Construction validates normalization, hermiticity and PSD.
class QState {
public:
  static QState pure(Vec amplitudes, Dims dims, double tol = 1e-10);
  static QState mixed(Mat rho, Dims dims, double psd_tol = kPsdTol);

  [[nodiscard]] StateKind kind() const { return kind_; }
  [[nodiscard]] bool is_pure() const { return kind_ == StateKind::pure; }
  [[nodiscard]] const Dims& dims() const { return dims_; }
  [[nodiscard]] std::int64_t dim() const { return dims_.total(); }

  /// Amplitudes; throws for mixed states.
  [[nodiscard]] const Vec& vector() const;
  /// Density matrix (|psi><psi| for pure states).
  [[nodiscard]] Mat density() const;
  /// Mixed-kind copy.
  [[nodiscard]] QState as_mixed() const;

private:
  QState(StateKind kind, Vec v, Mat m, Dims dims)
      : kind_(kind), vec_(std::move(v)), rho_(std::move(m)), dims_(std::move(dims)) {}

  StateKind kind_;
  Vec vec_;
  Mat rho_;
  Dims dims_;
};

/// Hermitian operator on a labelled tensor-product space.
class Observable {
public:
  Observable(Mat matrix, Dims dims, double tol = kPsdTol);
  [[nodiscard]] const Mat& matrix() const { return m_; }
  [[nodiscard]] const Dims& dims() const { return dims_; }

private:
  Mat m_;
  Dims dims_;
};

/// Sparse Hermitian operator, for collective and chain operators too large
/// to hold densely.
class SparseObservable {
public:
  SparseObservable(SpMat matrix, Dims dims);
  [[nodiscard]] const SpMat& matrix() const { return m_; }
  [[nodiscard]] const Dims& dims() const { return dims_; }
  [[nodiscard]] Observable to_dense() const;

private:
  SpMat m_;
  Dims dims_;
};

// --- Pauli and single-site operators -------------------------------------

Mat identity(std::int64_t d);
Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
/// |i><j| in dimension d.
Mat ket_bra(int d, int i, int j);
/// Basis vector |i> in dimension d.
Vec basis_vector(std::int64_t d, std::int64_t i);

// --- Tensor bookkeeping ------------------------------------------------------

Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);
SpMat kron(const SpMat& a, const SpMat& b);

/// Operator `op` acting on subsystem `site`, identity elsewhere.
SpMat embed_local(const Mat& op, const Dims& dims, int site);

/// Partial trace keeping the listed subsystems (in ascending order).
Mat partial_trace(const Mat& m, const Dims& dims, std::span<const int> keep);
/// Reduced density matrix of a pure state on `keep`, computed without
/// forming |psi><psi|.
Mat reduced_density(const Vec& psi, const Dims& dims, std::span<const int> keep);
Mat reduced_density(const QState& state, std::span<const int> keep);

/// Coefficient matrix C[l, r] = psi[l ⊗ r] for the bipartition
/// (left | complement), both sides in ascending subsystem order.
Mat coefficient_matrix(const Vec& psi, const Dims& dims, std::span<const int> left);

/// Partial transpose over the listed subsystems.
Mat partial_transpose(const Mat& m, const Dims& dims, std::span<const int> flip);

/// Apply a permutation of subsystems to a state vector: output subsystem k
/// is input subsystem perm[k].
Vec permute_subsystems(const Vec& psi, const Dims& dims, std::span<const int> perm);

// --- Decompositions ------------------------------------------------------------

struct EigenSystem {
  RVec values;  ///< ascending
  Mat vectors;  ///< columns are orthonormal eigenvectors
};

/// Eigendecomposition of a Hermitian matrix. Rejects inputs whose
/// anti-Hermitian part exceeds tol * ||M||.
EigenSystem eig_hermitian(const Mat& m, double tol = kPsdTol);
RVec eigvals_hermitian(const Mat& m, double tol = kPsdTol);

struct SvdResult {
  Mat u;       ///< orthonormal columns
  RVec s;      ///< descending, nonnegative
  Mat v_adj;   ///< V^dagger, orthonormal rows
};

SvdResult svd(const Mat& m);

/// Spectral norm (largest singular value).
double norm2(const Mat& m);
double hermiticity_defect(const Mat& m);
/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const Mat& m);
/// True when min eigenvalue >= -tol * ||M||_2.
bool is_psd(const Mat& m, double tol = kPsdTol);

// --- Born-rule statistics ------------------------------------------------------

double expval(const QState& state, const Observable& obs);
double expval(const QState& state, const SpMat& op);
double variance(const QState& state, const Observable& obs);
double variance(const QState& state, const SpMat& op);

struct Outcome {
  double value;
  double probability;
};

/// Distinct eigenvalues of the observable (merged within `tol`) with their
/// Born probabilities Tr(rho P_a).
std::vector<Outcome> born_statistics(const QState& state, const Observable& obs,
                                     double tol = 1e-9);

/// Tr(rho^2).
double purity(const QState& state);

}  // namespace entkit
