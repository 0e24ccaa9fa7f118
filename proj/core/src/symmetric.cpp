#include "entkit/symmetric.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace entkit {

std::uint64_t dicke_basis_dim(int n, int d) {
  if (n < 1 || d < 2) throw Error("dicke_basis_dim: need N >= 1 and d >= 2");
  // C(N+d-1, d-1) built incrementally; each partial product is itself a
  // binomial coefficient so the division is exact.
  std::uint64_t r = 1;
  const int top = n + d - 1;
  const int k = d - 1;
  for (int i = 1; i <= k; ++i) {
    const auto num = static_cast<std::uint64_t>(top - k + i);
    if (r > std::numeric_limits<std::uint64_t>::max() / num) throw Error("dicke_basis_dim: overflow");
    r = r * num / static_cast<std::uint64_t>(i);
  }
  return r;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

Dims CollectiveSpinOps::dims() const {
  return rep == SpinRep::full ? Dims::uniform(n, 2) : Dims{n + 1};
}

CollectiveSpinOps collective_spin_ops(int n, SpinRep rep) {
  if (n < 1) throw Error("collective_spin_ops: N must be >= 1");
  CollectiveSpinOps ops{n, rep, {}, {}, {}};
  if (rep == SpinRep::full) {
    if (n > 14) throw Error("collective_spin_ops: full representation limited to N <= 14");
    const Dims dims = Dims::uniform(n, 2);
    const auto dim = dims.total();
    ops.sx = SpMat(dim, dim);
    ops.sy = SpMat(dim, dim);
    ops.sz = SpMat(dim, dim);
    for (int i = 0; i < n; ++i) {
      ops.sx += embed_local(0.5 * pauli_x(), dims, i);
      ops.sy += embed_local(0.5 * pauli_y(), dims, i);
      ops.sz += embed_local(0.5 * pauli_z(), dims, i);
    }
    return ops;
  }
  const double s = 0.5 * n;
  const int dim = n + 1;
  std::vector<Eigen::Triplet<cplx>> tx, ty, tz;
  const cplx i(0, 1);
  for (int k = 0; k < dim; ++k) {
    const double m = s - k;
    tz.emplace_back(k, k, m);
    if (k > 0) {
      // S+ |k> = sqrt(s(s+1) - m(m+1)) |k-1>
      const double c = std::sqrt(s * (s + 1) - m * (m + 1));
      tx.emplace_back(k - 1, k, 0.5 * c);
      tx.emplace_back(k, k - 1, 0.5 * c);
      ty.emplace_back(k - 1, k, -0.5 * i * c);
      ty.emplace_back(k, k - 1, 0.5 * i * c);
    }
  }
  ops.sx = SpMat(dim, dim);
  ops.sy = SpMat(dim, dim);
  ops.sz = SpMat(dim, dim);
  ops.sx.setFromTriplets(tx.begin(), tx.end());
  ops.sy.setFromTriplets(ty.begin(), ty.end());
  ops.sz.setFromTriplets(tz.begin(), tz.end());
  return ops;
}

Mat symmetric_embedding(int n) {
  if (n < 1 || n > 20) throw Error("symmetric_embedding: N must be in [1, 20]");
  const auto dim = std::int64_t{1} << n;
  Mat e = Mat::Zero(dim, n + 1);
  for (std::int64_t x = 0; x < dim; ++x) e(x, std::popcount(static_cast<std::uint64_t>(x))) = 1.0;
  for (int k = 0; k <= n; ++k) e.col(k) /= std::sqrt(binomial(n, k));
  return e;
}

DSState::DSState(int n, std::vector<double> p) : n_(n), p_(std::move(p)) {
  if (n < 1) throw Error("DSState: N must be >= 1");
  if (static_cast<int>(p_.size()) != n + 1) throw Error("DSState: probability vector must have N+1 entries");
  double total = 0.0;
  for (double x : p_) {
    if (!(x >= 0.0)) throw Error("DSState: negative probability");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error("DSState: probabilities do not sum to 1");
}

QState DSState::to_density() const {
  if (n_ > 12) throw Error("DSState::to_density: N limited to 12");
  const Mat e = symmetric_embedding(n_);
  RVec p(n_ + 1);
  for (int k = 0; k <= n_; ++k) p(k) = p_[static_cast<std::size_t>(k)];
  Mat rho = e * p.cast<cplx>().asDiagonal() * e.adjoint();
  return QState::mixed(std::move(rho), Dims::uniform(n_, 2));
}

HankelPair ds_hankel(const DSState& state) {
  const int n = state.n();
  std::vector<double> c(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = state.p()[static_cast<std::size_t>(k)] / binomial(n, k);
  const int s0 = n / 2 + 1;
  const int s1 = (n - 1) / 2 + 1;
  HankelPair h{RMat(s0, s0), RMat(s1, s1)};
  for (int i = 0; i < s0; ++i) {
    for (int j = 0; j < s0; ++j) h.m0(i, j) = c[static_cast<std::size_t>(i + j)];
  }
  for (int i = 0; i < s1; ++i) {
    for (int j = 0; j < s1; ++j) h.m1(i, j) = c[static_cast<std::size_t>(i + j + 1)];
  }
  return h;
}

namespace {

double min_eig_real(const RMat& m) {
  Eigen::SelfAdjointEigenSolver<RMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_abs_eig_real(const RMat& m) {
  Eigen::SelfAdjointEigenSolver<RMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

DsReport ds_separable(const DSState& state, double psd_tol) {
  const auto h = ds_hankel(state);
  DsReport r{};
  r.min_eig_m0 = min_eig_real(h.m0);
  r.min_eig_m1 = min_eig_real(h.m1);
  const bool ok0 = r.min_eig_m0 >= -psd_tol * max_abs_eig_real(h.m0);
  const bool ok1 = r.min_eig_m1 >= -psd_tol * max_abs_eig_real(h.m1);
  r.verdict = (ok0 && ok1) ? DsVerdict::separable : DsVerdict::entangled;
  r.necessary_only = state.n() % 2 != 0;
  return r;
}

namespace {

double qfi_mixed(const Mat& rho, const Mat& g) {
  const auto es = eig_hermitian(rho);
  const Mat gij = es.vectors.adjoint() * g * es.vectors;
  const auto n = es.values.size();
  double f = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double li = std::max(es.values(i), 0.0);
      const double lj = std::max(es.values(j), 0.0);
      const double s = li + lj;
      if (s > 1e-14) f += 2.0 * (li - lj) * (li - lj) / s * std::norm(gij(i, j));
    }
  }
  return f;
}

}  // namespace

double qfi(const QState& state, const Observable& g) {
  if (g.dims() != state.dims()) throw Error("qfi: generator dims do not match state dims");
  if (state.is_pure()) return 4.0 * variance(state, g);
  return qfi_mixed(state.density(), g.matrix());
}

double qfi(const QState& state, const SpMat& g) {
  if (g.rows() != state.dim()) throw Error("qfi: generator size does not match state");
  if (state.is_pure()) return 4.0 * variance(state, g);
  return qfi_mixed(state.density(), Mat(g));
}

namespace {

// Second moments computed from a state can land slightly below zero.
double clamp_moment(double x, int n, const char* what) {
  if (!(x >= -kPsdTol * std::max(1.0, double(n) * n))) throw Error(std::string(what) + " must be nonnegative");
  return std::max(0.0, x);
}

}  // namespace

WinelandReport wineland_depth(double sx2, double sy, int n) {
  if (n < 1) throw Error("wineland_depth: N must be >= 1");
  sx2 = clamp_moment(sx2, n, "wineland_depth: <S_x^2>");
  if (std::abs(sy) > 0.5 * n + 1e-12) throw Error("wineland_depth: |<S_y>| exceeds N/2");
  if (sy == 0.0) return {1, false};
  if (sx2 == 0.0) return {n, true};
  // Largest K with <S_x^2>/<S_y>^2 < 1/(N K), i.e. K < <S_y>^2 / (N <S_x^2>).
  const double x = sy * sy / (n * sx2);
  const double k = std::ceil(x - 1e-12 * std::max(1.0, x)) - 1.0;
  const double depth = std::clamp(k + 1.0, 1.0, static_cast<double>(n));
  return {static_cast<int>(depth), false};
}

SpinWitnessVerdict total_spin_witness(double s2, int n, double s) {
  if (n < 1 || s <= 0.0) throw Error("total_spin_witness: need N >= 1 and s > 0");
  s2 = clamp_moment(s2, n, "total_spin_witness: <S^2>");
  return s2 < n * s - 1e-12 ? SpinWitnessVerdict::entangled : SpinWitnessVerdict::inconclusive;
}

BellCorrelationVerdict bell_correlation_witness(double sx2, double sy, int n) {
  if (n < 1) throw Error("bell_correlation_witness: N must be >= 1");
  sx2 = clamp_moment(sx2, n, "bell_correlation_witness: <S_x^2>");
  const double y = 2.0 * sy / n;
  if (std::abs(y) > 1.0 + 1e-12) throw Error("bell_correlation_witness: |2<S_y>/N| exceeds 1");
  const double rhs = 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - y * y)));
  return 4.0 * sx2 / n < rhs - 1e-12 ? BellCorrelationVerdict::bell_correlated : BellCorrelationVerdict::inconclusive;
}

namespace {

CollectiveSpinOps ops_for(const Dims& d) {
  if (d.size() == 1) return collective_spin_ops(d[0] - 1, SpinRep::symmetric);
  if (d == Dims::uniform(d.size(), 2)) return collective_spin_ops(d.size(), SpinRep::full);
  throw Error("collective moments: qubit register or symmetric (N+1)-dim state required");
}

}  // namespace

CollectiveMoments collective_moments(const QState& state) {
  const CollectiveSpinOps ops = ops_for(state.dims());
  CollectiveMoments m{};
  m.sx = expval(state, ops.sx);
  m.sy = expval(state, ops.sy);
  m.sz = expval(state, ops.sz);
  m.sx2 = expval(state, SpMat(ops.sx * ops.sx));
  m.sy2 = expval(state, SpMat(ops.sy * ops.sy));
  m.sz2 = expval(state, SpMat(ops.sz * ops.sz));
  m.s2 = m.sx2 + m.sy2 + m.sz2;
  return m;
}

AlignedMoments aligned_moments(const QState& state) {
  const CollectiveSpinOps ops = ops_for(state.dims());
  const std::array<const SpMat*, 3> s{&ops.sx, &ops.sy, &ops.sz};
  Eigen::Vector3d mean;
  Eigen::Matrix3d second;
  for (int i = 0; i < 3; ++i) {
    mean(i) = expval(state, *s[static_cast<std::size_t>(i)]);
    for (int j = i; j < 3; ++j) {
      // Symmetrized second moment Re<S_i S_j>.
      const SpMat sym = 0.5 * (*s[static_cast<std::size_t>(i)] * *s[static_cast<std::size_t>(j)] +
                               *s[static_cast<std::size_t>(j)] * *s[static_cast<std::size_t>(i)]);
      second(i, j) = second(j, i) = expval(state, sym);
    }
  }
  const double len = mean.norm();
  Eigen::Vector3d axis = len > 1e-12 ? Eigen::Vector3d(mean / len) : Eigen::Vector3d::UnitY();
  // Orthonormal pair spanning the plane perpendicular to the axis.
  Eigen::Vector3d helper = std::abs(axis.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitZ();
  const Eigen::Vector3d e1 = (helper - helper.dot(axis) * axis).normalized();
  const Eigen::Vector3d e2 = axis.cross(e1);
  Eigen::Matrix2d plane;
  plane << e1.dot(second * e1), e1.dot(second * e2), e2.dot(second * e1), e2.dot(second * e2);
  const double lo = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(plane).eigenvalues()(0);
  return {len, std::max(lo, 0.0), second.trace()};
}

}  // namespace entkit
