#include "entkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace entkit {

namespace {

void check_dims(const Dims& dims, std::int64_t rows, std::int64_t cols, const char* where) {
  if (rows != dims.total() || cols != dims.total()) {
    std::ostringstream os;
    os << where << ": matrix is " << rows << "x" << cols << " but dims " << to_string(dims)
       << " span " << dims.total();
    throw Error(os.str());
  }
}

// strides[k] = product of dims after k.
std::vector<std::int64_t> strides(const Dims& dims) {
  std::vector<std::int64_t> s(static_cast<std::size_t>(dims.size()), 1);
  for (int k = dims.size() - 2; k >= 0; --k) {
    s[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k + 1)] * dims[k + 1];
  }
  return s;
}

// offsets[j] = full-space offset contributed by the j-th joint index over
// `subs` (row-major over subs).
std::vector<std::int64_t> offsets(const Dims& dims, std::span<const int> subs) {
  const auto st = strides(dims);
  std::vector<std::int64_t> out{0};
  for (int k : subs) {
    std::vector<std::int64_t> next;
    next.reserve(out.size() * static_cast<std::size_t>(dims[k]));
    for (std::int64_t base : out) {
      for (int s = 0; s < dims[k]; ++s) {
        next.push_back(base + s * st[static_cast<std::size_t>(k)]);
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

Dims::Dims(std::initializer_list<int> d) : Dims(std::vector<int>(d)) {}

Dims::Dims(std::vector<int> d) : d_(std::move(d)) {
  if (d_.empty()) throw Error("Dims: empty dimension list");
  for (int x : d_) {
    if (x < 2) throw Error("Dims: local dimension " + std::to_string(x) + " < 2");
  }
}

Dims Dims::uniform(int n, int d) {
  if (n < 1) throw Error("Dims::uniform: need at least one subsystem");
  return Dims(std::vector<int>(static_cast<std::size_t>(n), d));
}

std::int64_t Dims::total() const {
  std::int64_t t = 1;
  for (int x : d_) {
    if (t > std::numeric_limits<std::int64_t>::max() / x) throw Error("Dims: total dimension overflow");
    t *= x;
  }
  return t;
}

bool Dims::is_uniform() const {
  return std::all_of(d_.begin(), d_.end(), [&](int x) { return x == d_.front(); });
}

std::int64_t Dims::subtotal(std::span<const int> subsystems) const {
  std::int64_t t = 1;
  for (int k : subsystems) t *= (*this)[k];
  return t;
}

Dims Dims::select(std::span<const int> subsystems) const {
  std::vector<int> out;
  for (int k : normalize_subsystems(subsystems, size())) out.push_back((*this)[k]);
  return Dims(std::move(out));
}

std::string to_string(const Dims& dims) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ")";
  return os.str();
}

std::vector<int> normalize_subsystems(std::span<const int> subsystems, int n) {
  std::vector<int> out(subsystems.begin(), subsystems.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (int k : out) {
    if (k < 0 || k >= n) {
      throw Error("subsystem index " + std::to_string(k) + " out of range for " +
                  std::to_string(n) + " parties");
    }
  }
  return out;
}

std::vector<int> complement(std::span<const int> subsystems, int n) {
  const auto in = normalize_subsystems(subsystems, n);
  std::vector<int> out;
  for (int k = 0; k < n; ++k) {
    if (!std::binary_search(in.begin(), in.end(), k)) out.push_back(k);
  }
  return out;
}

// --- QState -------------------------------------------------------------------

QState QState::pure(Vec amplitudes, Dims dims, double tol) {
  if (amplitudes.size() != dims.total()) {
    throw Error("QState::pure: vector length " + std::to_string(amplitudes.size()) +
                " does not match dims " + to_string(dims));
  }
  const double n = amplitudes.norm();
  if (std::abs(n - 1.0) > tol) {
    throw Error("QState::pure: norm " + std::to_string(n) + " differs from 1");
  }
  return QState(StateKind::pure, std::move(amplitudes), Mat(), std::move(dims));
}

QState QState::mixed(Mat rho, Dims dims, double psd_tol) {
  check_dims(dims, rho.rows(), rho.cols(), "QState::mixed");
  if (hermiticity_defect(rho) > psd_tol * std::max(1.0, rho.cwiseAbs().maxCoeff())) {
    throw Error("QState::mixed: matrix is not Hermitian");
  }
  const cplx tr = rho.trace();
  if (std::abs(tr - cplx(1.0, 0.0)) > 1e-9) {
    throw Error("QState::mixed: trace " + std::to_string(tr.real()) + " differs from 1");
  }
  Mat h = 0.5 * (rho + rho.adjoint());
  const RVec ev = eigvals_hermitian(h, psd_tol);
  if (ev(0) < -psd_tol * std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)))) {
    throw Error("QState::mixed: matrix is not positive semidefinite");
  }
  return QState(StateKind::mixed, Vec(), std::move(h), std::move(dims));
}

const Vec& QState::vector() const {
  if (!is_pure()) throw Error("QState::vector: state is mixed");
  return vec_;
}

Mat QState::density() const {
  if (is_pure()) return vec_ * vec_.adjoint();
  return rho_;
}

QState QState::as_mixed() const {
  if (!is_pure()) return *this;
  return QState(StateKind::mixed, Vec(), density(), dims_);
}

// --- Observables ---------------------------------------------------------------

Observable::Observable(Mat matrix, Dims dims, double tol) : m_(std::move(matrix)), dims_(std::move(dims)) {
  check_dims(dims_, m_.rows(), m_.cols(), "Observable");
  if (hermiticity_defect(m_) > tol * std::max(1.0, m_.cwiseAbs().maxCoeff())) {
    throw Error("Observable: matrix is not Hermitian");
  }
}

SparseObservable::SparseObservable(SpMat matrix, Dims dims) : m_(std::move(matrix)), dims_(std::move(dims)) {
  check_dims(dims_, m_.rows(), m_.cols(), "SparseObservable");
  const SpMat diff = m_ - SpMat(m_.adjoint());
  if (diff.norm() > 1e-9 * std::max(1.0, m_.norm())) throw Error("SparseObservable: matrix is not Hermitian");
}

Observable SparseObservable::to_dense() const {
  if (dims_.total() > 8192) throw Error("SparseObservable::to_dense: dimension exceeds dense budget 8192");
  return Observable(Mat(m_), dims_);
}

// --- Elementary operators --------------------------------------------------

Mat identity(std::int64_t d) { return Mat::Identity(d, d); }

Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Mat pauli_y() {
  const cplx i(0, 1);
  Mat m(2, 2);
  m << 0, -i, i, 0;
  return m;
}

Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Mat ket_bra(int d, int i, int j) {
  Mat m = Mat::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

Vec basis_vector(std::int64_t d, std::int64_t i) {
  Vec v = Vec::Zero(d);
  v(i) = 1.0;
  return v;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

SpMat kron(const SpMat& a, const SpMat& b) {
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SpMat::InnerIterator ia(a, ka); ia; ++ia) {
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SpMat::InnerIterator ib(b, kb); ib; ++ib) {
          t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                         ia.value() * ib.value());
        }
      }
    }
  }
  SpMat out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SpMat embed_local(const Mat& op, const Dims& dims, int site) {
  if (site < 0 || site >= dims.size()) throw Error("embed_local: site out of range");
  if (op.rows() != dims[site] || op.cols() != dims[site]) throw Error("embed_local: operator size mismatch");
  SpMat out(1, 1);
  out.insert(0, 0) = 1.0;
  for (int k = 0; k < dims.size(); ++k) {
    SpMat f;
    if (k == site) {
      f = op.sparseView();
    } else {
      f = SpMat(dims[k], dims[k]);
      f.setIdentity();
    }
    out = kron(out, f);
  }
  return out;
}

Mat partial_trace(const Mat& m, const Dims& dims, std::span<const int> keep_in) {
  check_dims(dims, m.rows(), m.cols(), "partial_trace");
  const auto keep = normalize_subsystems(keep_in, dims.size());
  if (keep.empty()) throw Error("partial_trace: keep set is empty");
  const auto traced = complement(keep, dims.size());
  const auto ko = offsets(dims, keep);
  const auto to = offsets(dims, traced);
  const auto dk = static_cast<Eigen::Index>(ko.size());
  Mat out = Mat::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dk; ++r) {
    for (Eigen::Index c = 0; c < dk; ++c) {
      cplx acc = 0.0;
      for (std::int64_t t : to) acc += m(ko[static_cast<std::size_t>(r)] + t, ko[static_cast<std::size_t>(c)] + t);
      out(r, c) = acc;
    }
  }
  return out;
}

Mat coefficient_matrix(const Vec& psi, const Dims& dims, std::span<const int> left_in) {
  if (psi.size() != dims.total()) throw Error("coefficient_matrix: vector length does not match dims");
  const auto left = normalize_subsystems(left_in, dims.size());
  const auto right = complement(left, dims.size());
  const auto lo = offsets(dims, left);
  const auto ro = offsets(dims, right);
  Mat c(static_cast<Eigen::Index>(lo.size()), static_cast<Eigen::Index>(ro.size()));
  for (std::size_t l = 0; l < lo.size(); ++l) {
    for (std::size_t r = 0; r < ro.size(); ++r) {
      c(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(r)) = psi(lo[l] + ro[r]);
    }
  }
  return c;
}

Mat reduced_density(const Vec& psi, const Dims& dims, std::span<const int> keep) {
  if (normalize_subsystems(keep, dims.size()).empty()) throw Error("reduced_density: keep set is empty");
  const Mat c = coefficient_matrix(psi, dims, keep);
  return c * c.adjoint();
}

Mat reduced_density(const QState& state, std::span<const int> keep) {
  if (state.is_pure()) return reduced_density(state.vector(), state.dims(), keep);
  return partial_trace(state.density(), state.dims(), keep);
}

Mat partial_transpose(const Mat& m, const Dims& dims, std::span<const int> flip_in) {
  check_dims(dims, m.rows(), m.cols(), "partial_transpose");
  const auto flip = normalize_subsystems(flip_in, dims.size());
  if (flip.empty()) throw Error("partial_transpose: flip set is empty");
  const auto st = strides(dims);
  const std::int64_t n = dims.total();
  // part[i] = contribution of the flipped digits to index i
  std::vector<std::int64_t> part(static_cast<std::size_t>(n), 0);
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t p = 0;
    for (int k : flip) {
      const auto sk = st[static_cast<std::size_t>(k)];
      p += ((i / sk) % dims[k]) * sk;
    }
    part[static_cast<std::size_t>(i)] = p;
  }
  Mat out(n, n);
  for (std::int64_t j = 0; j < n; ++j) {
    const auto pj = part[static_cast<std::size_t>(j)];
    for (std::int64_t i = 0; i < n; ++i) {
      const auto pi = part[static_cast<std::size_t>(i)];
      out(i - pi + pj, j - pj + pi) = m(i, j);
    }
  }
  return out;
}

Vec permute_subsystems(const Vec& psi, const Dims& dims, std::span<const int> perm) {
  const int n = dims.size();
  if (static_cast<int>(perm.size()) != n) throw Error("permute_subsystems: permutation size mismatch");
  std::vector<int> sorted(perm.begin(), perm.end());
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < n; ++k) {
    if (sorted[static_cast<std::size_t>(k)] != k) throw Error("permute_subsystems: not a permutation");
  }
  std::vector<int> out_dims;
  for (int k : perm) out_dims.push_back(dims[k]);
  const Dims od(out_dims);
  const auto in_st = strides(dims);
  const auto out_st = strides(od);
  Vec out(psi.size());
  for (std::int64_t j = 0; j < psi.size(); ++j) {
    std::int64_t i = 0;
    for (int k = 0; k < n; ++k) {
      const auto digit = (j / out_st[static_cast<std::size_t>(k)]) % od[k];
      i += digit * in_st[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
    }
    out(j) = psi(i);
  }
  return out;
}

// --- Decompositions ---------------------------------------------------------

double norm2(const Mat& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == m.cols() && hermiticity_defect(m) <= 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<Mat> s(m);
  return s.singularValues()(0);
}

double hermiticity_defect(const Mat& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

EigenSystem eig_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) throw Error("eig_hermitian: matrix is not square");
  if (hermiticity_defect(m) > tol * std::max(1.0, m.cwiseAbs().maxCoeff() * static_cast<double>(m.rows()))) {
    throw Error("eig_hermitian: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  if (es.info() != Eigen::Success) throw Error("eig_hermitian: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

RVec eigvals_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) throw Error("eig_hermitian: matrix is not square");
  if (hermiticity_defect(m) > tol * std::max(1.0, m.cwiseAbs().maxCoeff() * static_cast<double>(m.rows()))) {
    throw Error("eig_hermitian: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("eig_hermitian: eigensolver failed");
  return es.eigenvalues();
}

SvdResult svd(const Mat& m) {
  Eigen::BDCSVD<Mat> s(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {s.matrixU(), s.singularValues(), s.matrixV().adjoint()};
}

double min_eigenvalue(const Mat& m) {
  const Mat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_psd(const Mat& m, double tol) {
  const Mat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  const RVec& ev = es.eigenvalues();
  return ev(0) >= -tol * ev.cwiseAbs().maxCoeff();
}

// --- Born statistics ------------------------------------------------------------

double expval(const QState& state, const Observable& obs) {
  if (obs.dims() != state.dims()) throw Error("expval: observable dims do not match state dims");
  if (state.is_pure()) {
    const Vec& v = state.vector();
    return v.dot(obs.matrix() * v).real();
  }
  return (state.density() * obs.matrix()).trace().real();
}

double expval(const QState& state, const SpMat& op) {
  if (op.rows() != state.dim() || op.cols() != state.dim()) throw Error("expval: operator size mismatch");
  if (state.is_pure()) {
    const Vec& v = state.vector();
    const Vec w = op * v;
    return v.dot(w).real();
  }
  const Mat rho = state.density();
  const Mat prod = op * rho;
  return prod.trace().real();
}

double variance(const QState& state, const Observable& obs) {
  if (obs.dims() != state.dims()) throw Error("variance: observable dims do not match state dims");
  const double mean = expval(state, obs);
  double second;
  if (state.is_pure()) {
    const Vec w = obs.matrix() * state.vector();
    second = w.squaredNorm();
  } else {
    second = (state.density() * obs.matrix() * obs.matrix()).trace().real();
  }
  return second - mean * mean;
}

double variance(const QState& state, const SpMat& op) {
  const double mean = expval(state, op);
  double second;
  if (state.is_pure()) {
    const Vec w = op * state.vector();
    second = w.squaredNorm();
  } else {
    const Mat rho = state.density();
    const Mat a = op * rho;
    const Mat b = op * a;
    second = b.trace().real();
  }
  return second - mean * mean;
}

std::vector<Outcome> born_statistics(const QState& state, const Observable& obs, double tol) {
  if (obs.dims() != state.dims()) throw Error("born_statistics: dims mismatch");
  const auto es = eig_hermitian(obs.matrix());
  const Mat rho = state.density();
  std::vector<Outcome> out;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    const Vec v = es.vectors.col(k);
    const double p = v.dot(rho * v).real();
    if (!out.empty() && std::abs(es.values(k) - out.back().value) <= tol) {
      out.back().probability += p;
    } else {
      out.push_back({es.values(k), p});
    }
  }
  return out;
}

double purity(const QState& state) {
  if (state.is_pure()) return 1.0;
  const Mat rho = state.density();
  return (rho * rho).trace().real();
}

}  // namespace entkit
