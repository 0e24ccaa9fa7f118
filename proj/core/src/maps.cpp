#include "entkit/maps.hpp"

#include <cmath>

namespace entkit {

LinearMap LinearMap::adjoint() const {
  return LinearMap{d_out, d_in, name + "^dagger", dual, action};
}

QuantumMap::QuantumMap(std::vector<Mat> kraus, bool trace_preserving)
    : kraus_(std::move(kraus)), trace_preserving_(trace_preserving) {
  if (kraus_.empty()) throw Error("QuantumMap: no Kraus operators");
  const auto r = kraus_.front().rows();
  const auto c = kraus_.front().cols();
  for (const auto& k : kraus_) {
    if (k.rows() != r || k.cols() != c) throw Error("QuantumMap: Kraus operators have inconsistent shapes");
  }
  if (trace_preserving_) {
    Mat s = Mat::Zero(c, c);
    for (const auto& k : kraus_) s += k.adjoint() * k;
    if ((s - Mat::Identity(c, c)).cwiseAbs().maxCoeff() > 1e-10) {
      throw Error("QuantumMap: sum K^dagger K != I for a map flagged trace preserving");
    }
  }
}

Mat QuantumMap::apply(const Mat& rho) const {
  if (rho.rows() != d_in() || rho.cols() != d_in()) throw Error("QuantumMap::apply: dimension mismatch");
  Mat out = Mat::Zero(d_out(), d_out());
  for (const auto& k : kraus_) out += k * rho * k.adjoint();
  return out;
}

QuantumMap QuantumMap::dual() const {
  std::vector<Mat> k;
  k.reserve(kraus_.size());
  for (const auto& x : kraus_) k.push_back(x.adjoint());
  return QuantumMap(std::move(k), false);
}

LinearMap QuantumMap::as_linear(std::string name) const {
  const QuantumMap self = *this;
  const QuantumMap d = dual();
  return LinearMap{d_in(), d_out(), std::move(name), [self](const Mat& x) { return self.apply(x); },
                   [d](const Mat& x) { return d.apply(x); }};
}

LinearMap identity_map(int d) {
  auto id = [](const Mat& x) { return x; };
  return LinearMap{d, d, "identity", id, id};
}

LinearMap transposition_map(int d) {
  auto t = [](const Mat& x) -> Mat { return x.transpose(); };
  return LinearMap{d, d, "transpose", t, t};
}

LinearMap reduction_family_map(int d, double alpha) {
  auto f = [d, alpha](const Mat& x) -> Mat { return x.trace() * Mat::Identity(d, d) + alpha * x; };
  // Dual of X -> Tr(X) I + a X is Y -> Tr(Y) I + a Y (self-dual for real a).
  return LinearMap{d, d, "reduction(" + std::to_string(alpha) + ")", f, f};
}

QuantumMap completely_depolarizing(int d) {
  std::vector<Mat> k;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) k.push_back(ket_bra(d, i, j) / std::sqrt(static_cast<double>(d)));
  }
  return QuantumMap(std::move(k), true);
}

QuantumMap dephasing(int d) {
  std::vector<Mat> k;
  for (int i = 0; i < d; ++i) k.push_back(ket_bra(d, i, i));
  return QuantumMap(std::move(k), true);
}

QState apply_map(const QuantumMap& m, const QState& rho) {
  if (rho.dim() != m.d_in()) throw Error("apply_map: state dimension does not match map input");
  Mat out = m.apply(rho.density());
  const Dims dims = (m.d_out() == m.d_in()) ? rho.dims() : Dims{m.d_out()};
  if (!m.trace_preserving()) {
    const cplx tr = out.trace();
    if (std::abs(tr) < 1e-14) throw Error("apply_map: output has zero trace");
    out /= tr;
  }
  return QState::mixed(std::move(out), dims);
}

Mat choi_matrix(const LinearMap& m) {
  const int din = m.d_in;
  const int dout = m.d_out;
  Mat out = Mat::Zero(static_cast<Eigen::Index>(din) * dout, static_cast<Eigen::Index>(din) * dout);
  for (int i = 0; i < din; ++i) {
    for (int j = 0; j < din; ++j) {
      const Mat block = m(ket_bra(din, i, j));
      if (block.rows() != dout || block.cols() != dout) throw Error("choi_matrix: map output has wrong size");
      out.block(i * dout, j * dout, dout, dout) = block;
    }
  }
  return out;
}

Mat choi_matrix(const QuantumMap& m) { return choi_matrix(m.as_linear()); }

bool is_completely_positive(const LinearMap& m, double tol) { return is_psd(choi_matrix(m), tol); }

bool is_completely_positive(const QuantumMap& m, double tol) { return is_psd(choi_matrix(m), tol); }

Mat apply_on_second(const LinearMap& m, const Mat& rho, const Dims& dims) {
  if (dims.size() != 2) throw Error("apply_on_second: bipartite dims required");
  const int da = dims[0];
  const int db = dims[1];
  if (db != m.d_in) throw Error("apply_on_second: map input dimension does not match subsystem B");
  if (rho.rows() != dims.total() || rho.cols() != dims.total()) throw Error("apply_on_second: matrix size mismatch");
  const int dout = m.d_out;
  Mat out(static_cast<Eigen::Index>(da) * dout, static_cast<Eigen::Index>(da) * dout);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      out.block(i * dout, j * dout, dout, dout) = m(rho.block(i * db, j * db, db, db));
    }
  }
  return out;
}

MapTestResult pncp_entanglement_test(const QState& rho, const LinearMap& positive_map, double psd_tol) {
  if (rho.dims().size() != 2) throw Error("pncp_entanglement_test: bipartite state required");
  const Mat ext = apply_on_second(positive_map, rho.density(), rho.dims());
  const RVec ev = eigvals_hermitian(ext, 1e-8);
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  const double lo = ev(0);
  return {lo < -psd_tol * scale ? MapVerdict::entangled : MapVerdict::inconclusive, lo};
}

std::string to_string(WitnessProvenance p) {
  switch (p) {
    case WitnessProvenance::from_map: return "from-map";
    case WitnessProvenance::decomposable: return "decomposable";
    case WitnessProvenance::collective_spin: return "collective-spin";
    case WitnessProvenance::custom: return "custom";
  }
  return "custom";
}

WitnessProvenance witness_provenance_from_string(const std::string& s) {
  if (s == "from-map") return WitnessProvenance::from_map;
  if (s == "decomposable") return WitnessProvenance::decomposable;
  if (s == "collective-spin") return WitnessProvenance::collective_spin;
  if (s == "custom") return WitnessProvenance::custom;
  throw Error("unknown witness provenance '" + s + "'");
}

Witness witness_from_map(const LinearMap& positive_map) {
  const LinearMap dual = positive_map.adjoint();
  // Id ⊗ E^dagger acts on the unnormalized maximally entangled projector
  // over the output space of E.
  const int d = positive_map.d_out;
  Mat phi = Mat::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) phi(i * d + i, j * d + j) = 1.0;
  }
  Mat w = apply_on_second(dual, phi, Dims{d, d});
  w = 0.5 * (w + w.adjoint());
  return Witness{std::move(w), Dims{d, dual.d_out}, WitnessProvenance::from_map, std::nullopt, std::nullopt};
}

Witness decomposable_witness(const Mat& p, const Mat& q, const Dims& dims, double psd_tol) {
  if (dims.size() != 2) throw Error("decomposable_witness: bipartite dims required");
  if (p.rows() != dims.total() || q.rows() != dims.total() || p.cols() != p.rows() || q.cols() != q.rows()) {
    throw Error("decomposable_witness: P and Q must match dims");
  }
  if (hermiticity_defect(p) > 1e-9 || !is_psd(p, psd_tol)) throw Error("decomposable_witness: P is not PSD");
  if (hermiticity_defect(q) > 1e-9 || !is_psd(q, psd_tol)) throw Error("decomposable_witness: Q is not PSD");
  const std::vector<int> b{1};
  Mat w = p + partial_transpose(q, dims, b);
  return Witness{std::move(w), dims, WitnessProvenance::decomposable, p, q};
}

Witness custom_witness(const Mat& w, const Dims& dims) {
  Observable check(w, dims);  // validates hermiticity and size
  return Witness{check.matrix(), dims, WitnessProvenance::custom, std::nullopt, std::nullopt};
}

double evaluate_witness(const Witness& w, const QState& rho) {
  if (w.dims != rho.dims()) throw Error("evaluate_witness: witness dims do not match state dims");
  if (rho.is_pure()) {
    const Vec& v = rho.vector();
    return v.dot(w.matrix * v).real();
  }
  return (w.matrix * rho.density()).trace().real();
}

Mat reduction_map(const Mat& rho, double alpha, bool normalize) {
  if (rho.rows() != rho.cols()) throw Error("reduction_map: square matrix required");
  const auto d = rho.rows();
  Mat out = rho.trace() * Mat::Identity(d, d) + alpha * rho;
  if (normalize) {
    const cplx tr = out.trace();
    if (std::abs(tr) < 1e-300) throw Error("reduction_map: output has zero trace");
    out /= tr;
  }
  return out;
}

Mat reduction_map_inverse(const Mat& sigma, double alpha) {
  if (alpha == 0.0) throw Error("reduction_map_inverse: alpha = 0 is not invertible");
  if (sigma.rows() != sigma.cols()) throw Error("reduction_map_inverse: square matrix required");
  const auto d = sigma.rows();
  const double denom = static_cast<double>(d) + alpha;
  if (denom == 0.0) throw Error("reduction_map_inverse: alpha = -D is not invertible");
  return (sigma - sigma.trace() * Mat::Identity(d, d) / denom) / alpha;
}

SufficientSeparabilityReport sufficient_separability(const QState& sigma, const SufficientChecks& checks,
                                                     double psd_tol) {
  if (sigma.dims().size() != 2 || sigma.dims()[0] != 2) {
    throw Error("sufficient_separability: state must live on C^2 ⊗ C^d");
  }
  const int d = sigma.dims()[1];
  const Mat rho = sigma.density();
  const auto n = rho.rows();
  const double shift = 1.0 / (2.0 * d + 2.0);
  Mat shifted;
  if (checks.identity == IdentityConvention::as_printed) {
    shifted = rho - shift * Mat::Identity(n, n);
  } else {
    shifted = rho - rho.trace() * shift * Mat::Identity(n, n);
  }
  const double shifted_min = min_eigenvalue(shifted);
  const bool shifted_pass = shifted_min >= -psd_tol * std::max(1.0, norm2(rho));
  const double pur = (rho * rho).trace().real();
  const double bound = 1.0 / (2.0 * d - 1.0);
  const bool ball_pass = pur <= bound + 1e-12;

  SufficientSeparabilityReport r{};
  r.shifted_min_eigenvalue = shifted_min;
  r.purity = pur;
  r.purity_bound = bound;
  r.shifted_identity_pass = shifted_pass;
  r.purity_ball_pass = ball_pass;
  r.checks_disagree = shifted_pass != ball_pass;
  const bool certified = (checks.shifted_identity && shifted_pass) || (checks.purity_ball && ball_pass);
  r.verdict = certified ? SeparabilityVerdict::separable : SeparabilityVerdict::inconclusive;
  return r;
}

}  // namespace entkit
