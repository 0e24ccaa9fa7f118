#include "entkit/multipartite.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entkit/bipartite.hpp"

namespace entkit {

PartitionSpec::PartitionSpec(std::vector<std::vector<int>> blocks, int n) : n_(n) {
  if (n < 1) throw Error("PartitionSpec: need at least one party");
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (auto& b : blocks) {
    if (b.empty()) throw Error("PartitionSpec: empty block");
    std::sort(b.begin(), b.end());
    for (int k : b) {
      if (k < 0 || k >= n) throw Error("PartitionSpec: party index out of range");
      if (seen[static_cast<std::size_t>(k)]++) throw Error("PartitionSpec: blocks overlap");
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw Error("PartitionSpec: blocks do not cover all parties");
  blocks_ = std::move(blocks);
}

PartitionSpec PartitionSpec::parse(const std::string& text, int n) {
  std::vector<std::vector<int>> blocks;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '|')) {
    std::vector<int> block;
    if (part.find(',') != std::string::npos || n > 9) {
      std::stringstream ps(part);
      std::string tok;
      while (std::getline(ps, tok, ',')) {
        if (tok.empty()) continue;
        try {
          block.push_back(std::stoi(tok) - 1);
        } catch (const std::exception&) {
          throw Error("PartitionSpec::parse: bad party label '" + tok + "'");
        }
      }
    } else {
      for (char c : part) {
        if (c < '1' || c > '9') throw Error("PartitionSpec::parse: bad party label");
        block.push_back(c - '1');
      }
    }
    blocks.push_back(std::move(block));
  }
  return PartitionSpec(std::move(blocks), n);
}

int PartitionSpec::max_block() const {
  std::size_t k = 0;
  for (const auto& b : blocks_) k = std::max(k, b.size());
  return static_cast<int>(k);
}

std::vector<LocalInfo> local_ranks_entropies(const QState& psi, double rank_tol) {
  if (!psi.is_pure()) throw Error("local_ranks_entropies: pure state required");
  std::vector<LocalInfo> out;
  for (int k = 0; k < psi.dims().size(); ++k) {
    const std::vector<int> keep{k};
    const RVec ev = eigvals_hermitian(reduced_density(psi.vector(), psi.dims(), keep));
    const int rank = static_cast<int>((ev.array() > rank_tol * ev.maxCoeff()).count());
    out.push_back({rank, shannon_entropy(ev)});
  }
  return out;
}

cplx hyperdeterminant(const Vec& a) {
  if (a.size() != 8) throw Error("hyperdeterminant: 8 amplitudes required");
  // a(4 i + 2 j + k) = a_ijk
  const cplx a000 = a(0), a001 = a(1), a010 = a(2), a011 = a(3);
  const cplx a100 = a(4), a101 = a(5), a110 = a(6), a111 = a(7);
  cplx h = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101 +
           a100 * a100 * a011 * a011;
  h -= 2.0 * (a000 * a111 * a011 * a100 + a000 * a111 * a101 * a010 + a000 * a111 * a110 * a001 +
              a011 * a100 * a101 * a010 + a011 * a100 * a110 * a001 + a101 * a010 * a110 * a001);
  h += 4.0 * (a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100);
  return h;
}

double three_tangle(const QState& psi) {
  if (!psi.is_pure() || psi.dims() != Dims{2, 2, 2}) throw Error("three_tangle: three-qubit pure state required");
  return 4.0 * std::abs(hyperdeterminant(psi.vector()));
}

std::string to_string(ThreeQubitLabel l) {
  switch (l) {
    case ThreeQubitLabel::sep: return "SEP";
    case ThreeQubitLabel::b1_23: return "B_1|23";
    case ThreeQubitLabel::b2_13: return "B_2|13";
    case ThreeQubitLabel::b3_12: return "B_3|12";
    case ThreeQubitLabel::w: return "W";
    case ThreeQubitLabel::ghz: return "GHZ";
  }
  return "?";
}

ThreeQubitClass classify_3qubit(const QState& psi, double tangle_tol, double rank_tol) {
  if (!psi.is_pure() || psi.dims() != Dims{2, 2, 2}) throw Error("classify_3qubit: three-qubit pure state required");
  const auto local = local_ranks_entropies(psi, rank_tol);
  ThreeQubitClass c{};
  for (int k = 0; k < 3; ++k) {
    c.local_ranks[static_cast<std::size_t>(k)] = local[static_cast<std::size_t>(k)].rank;
    c.local_entropies[static_cast<std::size_t>(k)] = local[static_cast<std::size_t>(k)].entropy;
  }
  c.tangle = three_tangle(psi);
  const auto& r = c.local_ranks;
  const int ones = static_cast<int>(std::count(r.begin(), r.end(), 1));
  if (ones == 3) {
    c.label = ThreeQubitLabel::sep;
    c.tensor_rank = 1;
  } else if (ones == 1) {
    c.label = r[0] == 1 ? ThreeQubitLabel::b1_23 : r[1] == 1 ? ThreeQubitLabel::b2_13 : ThreeQubitLabel::b3_12;
    c.tensor_rank = 2;
  } else if (ones == 0) {
    if (c.tangle > tangle_tol) {
      c.label = ThreeQubitLabel::ghz;
      c.tensor_rank = 2;
    } else {
      c.label = ThreeQubitLabel::w;
      c.tensor_rank = 3;
    }
  } else {
    // Two pure marginals force the third to be pure as well.
    throw Error("classify_3qubit: inconsistent local ranks (numerical tolerance too loose?)");
  }
  return c;
}

bool is_partially_separable(const QState& psi, const PartitionSpec& partition, double tol) {
  if (!psi.is_pure()) throw Error("is_partially_separable: pure state required");
  if (partition.parties() != psi.dims().size()) throw Error("is_partially_separable: partition size mismatch");
  if (partition.blocks().size() == 1) return true;
  for (const auto& block : partition.blocks()) {
    if (entanglement_entropy(psi, Bipartition(block, psi.dims().size())) >= tol) return false;
  }
  return true;
}

namespace {

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

AmeReport is_ame(const QState& psi, double tol) {
  if (!psi.is_pure()) throw Error("is_ame: pure state required");
  if (!psi.dims().is_uniform()) throw Error("is_ame: uniform local dimension required");
  const int n = psi.dims().size();
  if (n < 2) throw Error("is_ame: at least two parties required");
  const int half = n / 2;
  const double target = 1.0 / std::pow(static_cast<double>(psi.dims()[0]), half);
  double worst = 0.0;
  for (const auto& s : subsets(n, half)) {
    const RVec ev = eigvals_hermitian(reduced_density(psi.vector(), psi.dims(), s));
    worst = std::max(worst, (ev.array() - target).abs().maxCoeff());
  }
  return {worst <= tol, worst};
}

int depth_from_qfi(double f, int n) {
  if (f < 0.0 || std::isnan(f)) throw Error("depth_from_qfi: F must be nonnegative");
  if (n < 1) throw Error("depth_from_qfi: N must be >= 1");
  const double k = std::ceil(f / n - 1e-12);
  return static_cast<int>(std::clamp(k, 1.0, static_cast<double>(n)));
}

}  // namespace entkit
