#include "entkit/bipartite.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace entkit {

Bipartition::Bipartition(std::vector<int> left, int n) : n_(n) {
  if (n < 2) throw Error("Bipartition: need at least two parties");
  left_ = normalize_subsystems(left, n);
  right_ = complement(left_, n);
  if (left_.empty() || right_.empty()) throw Error("Bipartition: both sides must be nonempty");
}

Bipartition Bipartition::parse(const std::string& text, int n) {
  const auto bar = text.find('|');
  if (bar == std::string::npos) throw Error("Bipartition::parse: expected 'A|B', got '" + text + "'");
  auto side = [&](const std::string& s) {
    std::vector<int> out;
    const bool commas = s.find(',') != std::string::npos || n > 9;
    if (commas) {
      std::stringstream ss(s);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
          out.push_back(std::stoi(tok) - 1);
        } catch (const std::exception&) {
          throw Error("Bipartition::parse: bad party label '" + tok + "'");
        }
      }
    } else {
      for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw Error("Bipartition::parse: bad party label");
        out.push_back(c - '1');
      }
    }
    return out;
  };
  const auto left = side(text.substr(0, bar));
  const auto right = side(text.substr(bar + 1));
  Bipartition b(left, n);
  auto r = normalize_subsystems(right, n);
  if (r != b.right()) throw Error("Bipartition::parse: sides of '" + text + "' are not complementary");
  return b;
}

std::string Bipartition::str() const {
  std::ostringstream os;
  const bool commas = n_ > 9;
  for (std::size_t i = 0; i < left_.size(); ++i) os << (commas && i ? "," : "") << left_[i] + 1;
  os << "|";
  for (std::size_t i = 0; i < right_.size(); ++i) os << (commas && i ? "," : "") << right_[i] + 1;
  return os.str();
}

SchmidtData schmidt(const QState& psi, const Bipartition& cut, double tol) {
  if (!psi.is_pure()) throw Error("schmidt: pure state required");
  if (cut.parties() != psi.dims().size()) throw Error("schmidt: bipartition does not match the number of parties");
  const Mat c = coefficient_matrix(psi.vector(), psi.dims(), cut.left());
  const auto s = svd(c);
  SchmidtData out;
  out.coefficients = s.s.array().square();
  const double total = out.coefficients.sum();
  out.coefficients /= total;
  out.left_vectors = s.u;
  // psi_{lr} = sum_i s_i U_{li} conj(V_{ri}); right vectors are rows of V^dagger.
  out.right_vectors = s.v_adj.transpose();
  out.rank = static_cast<int>((out.coefficients.array() > tol).count());
  return out;
}

double shannon_entropy(const RVec& p) {
  double s = 0.0;
  for (double x : p) {
    if (x > 1e-14) s -= x * std::log(x);
  }
  return s;
}

double von_neumann_entropy(const Mat& rho, double psd_tol) {
  const RVec ev = eigvals_hermitian(rho, psd_tol);
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev(0) < -psd_tol * scale) throw Error("von_neumann_entropy: matrix is not positive semidefinite");
  return shannon_entropy(ev);
}

double von_neumann_entropy(const QState& rho, double psd_tol) {
  if (rho.is_pure()) return 0.0;
  return von_neumann_entropy(rho.density(), psd_tol);
}

double entanglement_entropy(const QState& psi, const Bipartition& cut) {
  return shannon_entropy(schmidt(psi, cut).coefficients);
}

PptReport ppt_test(const QState& rho, const Bipartition& cut, double psd_tol) {
  if (cut.parties() != rho.dims().size()) throw Error("ppt_test: bipartition does not match the number of parties");
  const Mat pt = partial_transpose(rho.density(), rho.dims(), cut.right());
  const RVec ev = eigvals_hermitian(pt, 1e-8);
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  PptReport r{};
  r.min_eigenvalue = ev(0);
  r.verdict = ev(0) < -psd_tol * scale ? PptVerdict::entangled : PptVerdict::ppt;
  const auto da = rho.dims().subtotal(cut.left());
  const auto db = rho.dims().subtotal(cut.right());
  r.sufficient = da * db <= 6;
  return r;
}

namespace {

std::vector<double> check_distribution(const std::vector<double>& p, const char* which) {
  if (p.empty()) throw Error(std::string("nielsen_convertible: empty ") + which + " distribution");
  double total = 0.0;
  for (double x : p) {
    if (!(x >= -1e-12)) throw Error(std::string("nielsen_convertible: negative entry in ") + which);
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-10) throw Error(std::string("nielsen_convertible: ") + which + " does not sum to 1");
  auto out = p;
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

bool nielsen_convertible(const std::vector<double>& src, const std::vector<double>& dst) {
  auto a = check_distribution(src, "source");
  auto b = check_distribution(dst, "target");
  const auto n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sa += a[k];
    sb += b[k];
    if (sa > sb + 1e-12) return false;
  }
  return true;
}

namespace {

void check_dichotomic(const Mat& m, const char* name) {
  if (m.rows() != 2 || m.cols() != 2) throw Error(std::string("chsh_value: ") + name + " must be 2x2");
  const RVec ev = eigvals_hermitian(m);
  for (double x : ev) {
    if (std::abs(std::abs(x) - 1.0) > 1e-9) throw Error(std::string("chsh_value: ") + name + " must have eigenvalues in {-1, +1}");
  }
}

}  // namespace

double chsh_value(const QState& rho, const Mat& a1, const Mat& a2, const Mat& b1, const Mat& b2) {
  if (rho.dims() != Dims{2, 2}) throw Error("chsh_value: two-qubit state required");
  check_dichotomic(a1, "A1");
  check_dichotomic(a2, "A2");
  check_dichotomic(b1, "B1");
  check_dichotomic(b2, "B2");
  const Dims d{2, 2};
  auto corr = [&](const Mat& a, const Mat& b) { return expval(rho, Observable(kron(a, b), d)); };
  return corr(a1, b1) + corr(a1, b2) + corr(a2, b1) - corr(a2, b2);
}

}  // namespace entkit
