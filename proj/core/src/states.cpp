#include "entkit/states.hpp"

#include <bit>
#include <cmath>
#include <random>

#include "entkit/rng.hpp"

namespace entkit {

namespace {

Vec gaussian_vector(std::int64_t n, SplitMix64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = cplx(re, im);
  }
  return v;
}

}  // namespace

QState bell_phi_plus(int d) {
  if (d < 2) throw Error("bell_phi_plus: d must be >= 2");
  Vec v = Vec::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return QState::pure(std::move(v), Dims{d, d});
}

QState psi_minus() {
  Vec v = Vec::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return QState::pure(std::move(v), Dims{2, 2});
}

QState ghz(int n) {
  if (n < 2 || n > 30) throw Error("ghz: N must be in [2, 30]");
  Vec v = Vec::Zero(std::int64_t{1} << n);
  v(0) = 1.0 / std::sqrt(2.0);
  v(v.size() - 1) = 1.0 / std::sqrt(2.0);
  return QState::pure(std::move(v), Dims::uniform(n, 2));
}

QState w_state(int n) {
  if (n < 3 || n > 30) throw Error("w_state: N must be in [3, 30]");
  Vec v = Vec::Zero(std::int64_t{1} << n);
  for (int k = 0; k < n; ++k) v(std::int64_t{1} << k) = 1.0 / std::sqrt(static_cast<double>(n));
  return QState::pure(std::move(v), Dims::uniform(n, 2));
}

QState dicke(int n, int k) {
  if (n < 1 || n > 30) throw Error("dicke: N must be in [1, 30]");
  if (k < 0 || k > n) throw Error("dicke: k must be in [0, N]");
  const auto dim = std::int64_t{1} << n;
  Vec v = Vec::Zero(dim);
  std::int64_t count = 0;
  for (std::int64_t i = 0; i < dim; ++i) {
    if (std::popcount(static_cast<std::uint64_t>(i)) == k) {
      v(i) = 1.0;
      ++count;
    }
  }
  v /= std::sqrt(static_cast<double>(count));
  return QState::pure(std::move(v), Dims::uniform(n, 2));
}

QState ame43() {
  static constexpr int kTerms[9][4] = {{0, 0, 0, 0}, {0, 1, 1, 2}, {0, 2, 2, 1},
                                       {1, 0, 1, 1}, {1, 1, 2, 0}, {1, 2, 0, 2},
                                       {2, 0, 2, 2}, {2, 1, 0, 1}, {2, 2, 1, 0}};
  Vec v = Vec::Zero(81);
  for (const auto& t : kTerms) v(27 * t[0] + 9 * t[1] + 3 * t[2] + t[3]) = 1.0 / 3.0;
  return QState::pure(std::move(v), Dims::uniform(4, 3));
}

QState coherent_spin(int n, double theta, double phi) {
  if (n < 1 || n > 24) throw Error("coherent_spin: N must be in [1, 24]");
  Vec local(2);
  local << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
  return product_state(std::vector<Vec>(static_cast<std::size_t>(n), local));
}

QState singlet_pairs(int n) {
  if (n < 2 || n % 2 != 0 || n > 24) throw Error("singlet_pairs: N must be even and in [2, 24]");
  const Vec pair = psi_minus().vector();
  Vec v = pair;
  for (int k = 1; k < n / 2; ++k) v = kron(v, pair);
  return QState::pure(std::move(v), Dims::uniform(n, 2));
}

QState product_state(const std::vector<Vec>& locals) {
  if (locals.empty()) throw Error("product_state: no factors");
  std::vector<int> dims;
  Vec v = Vec::Ones(1);
  for (const auto& l : locals) {
    dims.push_back(static_cast<int>(l.size()));
    v = kron(v, l);
  }
  return QState::pure(std::move(v), Dims(std::move(dims)), 1e-9);
}

QState basis_state(const Dims& dims, const std::vector<int>& digits) {
  if (static_cast<int>(digits.size()) != dims.size()) throw Error("basis_state: digit count mismatch");
  std::int64_t idx = 0;
  for (int k = 0; k < dims.size(); ++k) {
    const int s = digits[static_cast<std::size_t>(k)];
    if (s < 0 || s >= dims[k]) throw Error("basis_state: digit out of range");
    idx = idx * dims[k] + s;
  }
  return QState::pure(basis_vector(dims.total(), idx), dims);
}

QState random_pure(const Dims& dims, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Vec v = gaussian_vector(dims.total(), rng);
  v.normalize();
  return QState::pure(std::move(v), dims);
}

Vec random_vector(int d, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Vec v = gaussian_vector(d, rng);
  v.normalize();
  return v;
}

Mat random_unitary(int d, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Mat z(d, d);
  for (int j = 0; j < d; ++j) z.col(j) = gaussian_vector(d, rng);
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const cplx rjj = r(j, j);
    const double a = std::abs(rjj);
    if (a > 0) q.col(j) *= rjj / a;
  }
  return q;
}

QState random_mixed(const Dims& dims, int rank, std::uint64_t seed) {
  if (rank < 1) throw Error("random_mixed: rank must be >= 1");
  SplitMix64 rng(seed);
  Mat g(dims.total(), rank);
  for (int j = 0; j < rank; ++j) g.col(j) = gaussian_vector(dims.total(), rng);
  Mat rho = g * g.adjoint();
  rho /= rho.trace();
  return QState::mixed(std::move(rho), dims);
}

QState mix(const std::vector<std::pair<double, QState>>& parts) {
  if (parts.empty()) throw Error("mix: no components");
  const Dims& dims = parts.front().second.dims();
  double total = 0.0;
  Mat rho = Mat::Zero(dims.total(), dims.total());
  for (const auto& [p, s] : parts) {
    if (p < 0.0) throw Error("mix: negative weight");
    if (s.dims() != dims) throw Error("mix: components have different dims");
    total += p;
    rho += p * s.density();
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error("mix: weights do not sum to 1");
  return QState::mixed(std::move(rho), dims);
}

}  // namespace entkit
