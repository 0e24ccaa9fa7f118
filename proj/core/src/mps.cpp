#include "entkit/mps.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "entkit/bipartite.hpp"
#include "entkit/states.hpp"

namespace entkit {

MPSState::MPSState(std::vector<std::vector<Mat>> tensors) : a_(std::move(tensors)) {
  if (a_.empty()) throw Error("MPSState: at least one site required");
  Eigen::Index left = 1;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    const auto& site = a_[i];
    if (site.size() < 2) throw Error("MPSState: local dimension must be >= 2");
    const Eigen::Index right = site[0].cols();
    for (const auto& m : site) {
      if (m.rows() != left || m.cols() != right) throw Error("MPSState: inconsistent bond dimensions");
    }
    left = right;
  }
  if (left != 1) throw Error("MPSState: last bond must be 1");
}

Dims MPSState::dims() const {
  std::vector<int> d;
  for (const auto& s : a_) d.push_back(static_cast<int>(s.size()));
  return Dims(std::move(d));
}

int MPSState::bond(int cut) const {
  if (cut < 1 || cut >= sites()) throw Error("MPSState::bond: cut out of range");
  return static_cast<int>(a_[static_cast<std::size_t>(cut - 1)][0].cols());
}

std::vector<int> MPSState::bonds() const {
  std::vector<int> b;
  for (int c = 1; c < sites(); ++c) b.push_back(bond(c));
  return b;
}

int MPSState::max_bond() const {
  int m = 1;
  for (int b : bonds()) m = std::max(m, b);
  return m;
}

namespace {

// G <- sum_s A^s^dag G A^s, sweeping sites [0, upto).
Mat left_gram(const MPSState& m, int upto) {
  Mat g = Mat::Ones(1, 1);
  for (int i = 0; i < upto; ++i) {
    const auto& site = m.site(i);
    Mat next = Mat::Zero(site[0].cols(), site[0].cols());
    for (const auto& a : site) next.noalias() += a.adjoint() * g * a;
    g = std::move(next);
  }
  return g;
}

// X <- sum_s A^s X A^s^dag, sweeping sites [from, N) right to left.
// X(b, b') = <R_b'|R_b>.
Mat right_gram(const MPSState& m, int from) {
  Mat x = Mat::Ones(1, 1);
  for (int i = m.sites() - 1; i >= from; --i) {
    const auto& site = m.site(i);
    Mat next = Mat::Zero(site[0].rows(), site[0].rows());
    for (const auto& a : site) next.noalias() += a * x * a.adjoint();
    x = std::move(next);
  }
  return x;
}

}  // namespace

double MPSState::norm_squared() const { return left_gram(*this, sites())(0, 0).real(); }

MPSState to_mps(const QState& psi, int chi_max, double svd_tol) {
  if (!psi.is_pure()) throw Error("to_mps: pure state required");
  if (!psi.dims().is_uniform()) throw Error("to_mps: uniform local dimension required");
  if (chi_max < 1) throw Error("to_mps: chi_max must be >= 1");
  const int n = psi.dims().size();
  const int d = psi.dims()[0];
  std::vector<std::vector<Mat>> out(static_cast<std::size_t>(n));

  // r(l, s * rest + x): remaining amplitudes given left bond l
  Mat r = psi.vector().transpose();
  Eigen::Index rest = psi.dim();
  for (int i = 0; i < n - 1; ++i) {
    const Eigen::Index dl = r.rows();
    rest /= d;
    Mat m(dl * d, rest);
    for (Eigen::Index l = 0; l < dl; ++l) {
      for (int s = 0; s < d; ++s) m.row(l * d + s) = r.block(l, s * rest, 1, rest);
    }
    const auto f = svd(m);
    const double smax = f.s.size() > 0 ? f.s(0) : 0.0;
    Eigen::Index keep = 0;
    while (keep < f.s.size() && keep < chi_max && f.s(keep) > svd_tol * smax) ++keep;
    keep = std::max<Eigen::Index>(keep, 1);
    auto& site = out[static_cast<std::size_t>(i)];
    site.assign(static_cast<std::size_t>(d), Mat(dl, keep));
    for (Eigen::Index l = 0; l < dl; ++l) {
      for (int s = 0; s < d; ++s) site[static_cast<std::size_t>(s)].row(l) = f.u.block(l * d + s, 0, 1, keep);
    }
    r = f.s.head(keep).cast<cplx>().asDiagonal() * f.v_adj.topRows(keep);
  }
  const double norm = r.norm();
  if (norm == 0.0) throw Error("to_mps: truncation removed the whole state");
  auto& last = out[static_cast<std::size_t>(n - 1)];
  last.assign(static_cast<std::size_t>(d), Mat(r.rows(), 1));
  for (int s = 0; s < d; ++s) last[static_cast<std::size_t>(s)] = r.col(s) / norm;
  return MPSState(std::move(out));
}

QState mps_to_dense(const MPSState& m) {
  const Dims dims = m.dims();
  if (dims.total() > kDenseMpsBudget) throw Error("mps_to_dense: dimension exceeds 2^20");
  Mat v = Mat::Ones(1, 1);  // rows: prefix configurations, cols: open bond
  for (int i = 0; i < m.sites(); ++i) {
    const auto& site = m.site(i);
    const auto d = static_cast<Eigen::Index>(site.size());
    Mat next(v.rows() * d, site[0].cols());
    for (Eigen::Index p = 0; p < v.rows(); ++p) {
      for (Eigen::Index s = 0; s < d; ++s) next.row(p * d + s) = v.row(p) * site[static_cast<std::size_t>(s)];
    }
    v = std::move(next);
  }
  Vec psi = v.col(0);
  const double norm = psi.norm();
  if (norm == 0.0) throw Error("mps_to_dense: zero state");
  return QState::pure(psi / norm, dims);
}

Mat spin1_z() {
  Mat z = Mat::Zero(3, 3);
  z(0, 0) = 1.0;
  z(2, 2) = -1.0;
  return z;
}

namespace {

Mat spin1_plus() {
  Mat p = Mat::Zero(3, 3);
  p(0, 1) = std::sqrt(2.0);
  p(1, 2) = std::sqrt(2.0);
  return p;
}

}  // namespace

Mat spin1_x() {
  const Mat p = spin1_plus();
  return 0.5 * (p + p.adjoint());
}

Mat spin1_y() {
  const Mat p = spin1_plus();
  return cplx(0, -0.5) * (p - p.adjoint());
}

MPSState vbs_state(int n, const Vec& edge_left, const Vec& edge_right) {
  if (n < 2) throw Error("vbs_state: N must be >= 2");
  if (edge_left.size() != 2 || edge_right.size() != 2) throw Error("vbs_state: edge vectors must have 2 components");
  if (edge_left.norm() == 0.0 || edge_right.norm() == 0.0) throw Error("vbs_state: zero edge vector");
  // <s|a b> for the spin-1 triplet, s = +1, 0, -1
  std::vector<Mat> p(3, Mat::Zero(2, 2));
  p[0](0, 0) = 1.0;
  p[1](0, 1) = p[1](1, 0) = 1.0 / std::sqrt(2.0);
  p[2](1, 1) = 1.0;
  Mat omega = Mat::Zero(2, 2);  // singlet (|ud> - |du>)/sqrt2
  omega(0, 1) = 1.0 / std::sqrt(2.0);
  omega(1, 0) = -1.0 / std::sqrt(2.0);

  std::vector<std::vector<Mat>> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& site = t[static_cast<std::size_t>(i)];
    for (int s = 0; s < 3; ++s) {
      Mat a = i + 1 < n ? Mat(p[static_cast<std::size_t>(s)] * omega) : Mat(p[static_cast<std::size_t>(s)] * edge_right);
      if (i == 0) a = edge_left.transpose() * a;
      site.push_back(std::move(a));
    }
  }
  MPSState m(std::move(t));
  const double norm = std::sqrt(m.norm_squared());
  auto tensors = m.tensors();
  for (auto& a : tensors[0]) a /= norm;
  return MPSState(std::move(tensors));
}

MPSState vbs_state(int n) {
  Vec up = Vec::Zero(2);
  up(0) = 1.0;
  return vbs_state(n, up, up);
}

SparseObservable aklt_hamiltonian(int n) {
  if (n < 2 || n > 10) throw Error("aklt_hamiltonian: N must be in [2, 10]");
  const Mat ss = kron(spin1_x(), spin1_x()) + kron(spin1_y(), spin1_y()) + kron(spin1_z(), spin1_z());
  const Mat bond = ss + ss * ss / 3.0;
  const SpMat sb = bond.sparseView(1.0, 1e-14);
  const Dims dims = Dims::uniform(n, 3);
  const auto dim = dims.total();
  SpMat h(dim, dim);
  for (int i = 0; i + 1 < n; ++i) {
    std::int64_t left = 1;
    for (int k = 0; k < i; ++k) left *= 3;
    const std::int64_t right = dim / (left * 9);
    SpMat il(left, left), ir(right, right);
    il.setIdentity();
    ir.setIdentity();
    h += kron(kron(il, sb), ir);
  }
  h.prune(cplx(0.0), 1e-14);
  return SparseObservable(std::move(h), dims);
}

RVec spin1_total_sz(int n) {
  if (n < 1) throw Error("spin1_total_sz: N must be >= 1");
  const Dims dims = Dims::uniform(n, 3);
  RVec q(dims.total());
  for (std::int64_t x = 0; x < dims.total(); ++x) {
    std::int64_t y = x;
    int m = 0;
    for (int k = 0; k < n; ++k) {
      m += 1 - static_cast<int>(y % 3);
      y /= 3;
    }
    q(x) = m;
  }
  return q;
}

namespace {

// eigen-decomposition that drops to real arithmetic when possible
EigenSystem eig_block(const Mat& m) {
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<RMat> es(m.real());
    return {es.eigenvalues(), es.eigenvectors().cast<cplx>()};
  }
  return eig_hermitian(m);
}

}  // namespace

GroundState ground_state_exact(const Observable& h) {
  const Mat& m = h.matrix();
  if (m.rows() > (1 << 14)) throw Error("ground_state_exact: dimension exceeds 2^14");
  const auto es = eig_block(m);
  const double e0 = es.values(0);
  const double scale = std::max(1.0, es.values.cwiseAbs().maxCoeff());
  int deg = 0;
  while (deg < es.values.size() && es.values(deg) - e0 <= kDegeneracyTol * scale) ++deg;
  return {e0, es.vectors.col(0), es.vectors.leftCols(deg), deg};
}

GroundState ground_state_sectors(const SparseObservable& h, const RVec& charge) {
  const SpMat& m = h.matrix();
  if (charge.size() != m.rows()) throw Error("ground_state_sectors: charge vector size mismatch");
  std::map<double, std::vector<Eigen::Index>> sectors;
  for (Eigen::Index x = 0; x < charge.size(); ++x) sectors[charge(x)].push_back(x);
  std::vector<Eigen::Index> sector_of(static_cast<std::size_t>(charge.size()));
  std::vector<Eigen::Index> pos(static_cast<std::size_t>(charge.size()));
  Eigen::Index id = 0;
  for (const auto& [q, members] : sectors) {
    if (static_cast<Eigen::Index>(members.size()) > (1 << 14)) throw Error("ground_state_sectors: sector exceeds 2^14");
    for (std::size_t k = 0; k < members.size(); ++k) {
      sector_of[static_cast<std::size_t>(members[k])] = id;
      pos[static_cast<std::size_t>(members[k])] = static_cast<Eigen::Index>(k);
    }
    ++id;
  }
  std::vector<Mat> blocks;
  for (const auto& [q, members] : sectors) {
    const auto s = static_cast<Eigen::Index>(members.size());
    blocks.emplace_back(Mat::Zero(s, s));
  }
  for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
    for (SpMat::InnerIterator it(m, col); it; ++it) {
      const auto r = static_cast<std::size_t>(it.row());
      const auto c = static_cast<std::size_t>(it.col());
      if (sector_of[r] != sector_of[c]) {
        if (std::abs(it.value()) > 1e-12) throw Error("ground_state_sectors: operator couples different sectors");
        continue;
      }
      blocks[static_cast<std::size_t>(sector_of[r])](pos[r], pos[c]) += it.value();
    }
  }

  std::vector<std::pair<double, Vec>> levels;  // (energy, embedded eigenvector)
  double e0 = std::numeric_limits<double>::infinity();
  double scale = 1.0;
  std::size_t k = 0;
  for (const auto& [q, members] : sectors) {
    const auto es = eig_block(blocks[k++]);
    e0 = std::min(e0, es.values(0));
    scale = std::max(scale, es.values.cwiseAbs().maxCoeff());
    for (Eigen::Index j = 0; j < es.values.size(); ++j) {
      if (j > 0 && es.values(j) - es.values(0) > 1e-6 * scale) break;
      Vec full = Vec::Zero(m.rows());
      for (std::size_t t = 0; t < members.size(); ++t) full(members[t]) = es.vectors(static_cast<Eigen::Index>(t), j);
      levels.emplace_back(es.values(j), std::move(full));
    }
  }
  std::vector<Vec> ground;
  for (auto& [e, v] : levels) {
    if (e - e0 <= kDegeneracyTol * scale) ground.push_back(std::move(v));
  }
  Mat space(m.rows(), static_cast<Eigen::Index>(ground.size()));
  for (std::size_t j = 0; j < ground.size(); ++j) space.col(static_cast<Eigen::Index>(j)) = ground[j];
  return {e0, space.col(0), space, static_cast<int>(ground.size())};
}

RVec entanglement_spectrum(const QState& psi, int cut) {
  if (!psi.is_pure()) throw Error("entanglement_spectrum: pure state required");
  const int n = psi.dims().size();
  if (cut < 1 || cut >= n) throw Error("entanglement_spectrum: cut must be in 1..N-1");
  std::vector<int> left(static_cast<std::size_t>(cut));
  for (int i = 0; i < cut; ++i) left[static_cast<std::size_t>(i)] = i;
  const RVec s = svd(coefficient_matrix(psi.vector(), psi.dims(), left)).s;
  RVec p = s.array().square();
  return p / p.sum();
}

RVec entanglement_spectrum(const MPSState& m, int cut) {
  if (cut < 1 || cut >= m.sites()) throw Error("entanglement_spectrum: cut must be in 1..N-1");
  const Mat g = left_gram(m, cut);
  const Mat x = right_gram(m, cut);
  // nonzero spectrum of rho_L = L X L^dag equals that of G^{1/2} X G^{1/2}
  const auto eg = eig_hermitian(g);
  const RVec root = eg.values.cwiseMax(0.0).cwiseSqrt();
  const Mat gh = eg.vectors * root.cast<cplx>().asDiagonal() * eg.vectors.adjoint();
  Mat k = gh * x * gh;
  k = 0.5 * (k + k.adjoint()).eval();
  RVec ev = eigvals_hermitian(k).cwiseMax(0.0);
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
  const double total = ev.sum();
  if (total == 0.0) throw Error("entanglement_spectrum: zero state");
  return ev / total;
}

double page_entropy(double m, double n) {
  if (m < 1.0 || n < m) throw Error("page_entropy: need 1 <= m <= n");
  return std::log(m) - m / (2.0 * n);
}

std::vector<ScalingRow> entropy_scaling_report(ScalingKind kind, int n, int samples, std::uint64_t seed) {
  if (n < 2) throw Error("entropy_scaling_report: N must be >= 2");
  std::vector<ScalingRow> rows;
  if (kind == ScalingKind::vbs) {
    const MPSState m = vbs_state(n);
    for (int c = 1; c < n; ++c) rows.push_back({c, shannon_entropy(entanglement_spectrum(m, c)), std::log(2.0)});
    return rows;
  }
  if (n > 20) throw Error("entropy_scaling_report: random states limited to N <= 20");
  if (samples < 1) throw Error("entropy_scaling_report: samples must be >= 1");
  std::vector<double> acc(static_cast<std::size_t>(n - 1), 0.0);
  for (int k = 0; k < samples; ++k) {
    const QState psi = random_pure(Dims::uniform(n, 2), seed + static_cast<std::uint64_t>(k));
    for (int c = 1; c < n; ++c) acc[static_cast<std::size_t>(c - 1)] += shannon_entropy(entanglement_spectrum(psi, c));
  }
  for (int c = 1; c < n; ++c) {
    const int small = std::min(c, n - c);
    rows.push_back({c, acc[static_cast<std::size_t>(c - 1)] / samples,
                    page_entropy(std::ldexp(1.0, small), std::ldexp(1.0, n - small))});
  }
  return rows;
}

}  // namespace entkit
