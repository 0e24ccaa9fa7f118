#include "io.hpp"

#include <fstream>
#include <sstream>

namespace entkit::cli {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  return j.at(key);
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw Error(std::string(what) + " must be an integer");
  return j.get<int>();
}

double as_real(const json& j) {
  if (!j.is_number()) throw Error("expected a number");
  return j.get<double>();
}

Dims dims_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error("'dims' must be a nonempty array");
  std::vector<int> d;
  for (const auto& x : j) d.push_back(as_int(x, "dims entry"));
  return Dims(std::move(d));
}

json dims_to_json(const Dims& d) { return json(d.values()); }

RMat real_matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    throw Error(std::string(what) + " has the wrong number of rows");
  }
  RMat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(std::string(what) + " has the wrong number of columns");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = as_real(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json real_matrix_to_json(const RMat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(1) << '\n';
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw Error("expected a number or an [re, im] pair");
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error("matrix must be a nonempty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw Error("matrix rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw Error("ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json state_to_json(const QState& s) {
  json j;
  j["kind"] = s.is_pure() ? "pure" : "mixed";
  j["dims"] = dims_to_json(s.dims());
  if (s.is_pure()) {
    json data = json::array();
    for (const auto& z : s.vector()) data.push_back(complex_to_json(z));
    j["data"] = std::move(data);
  } else {
    j["data"] = matrix_to_json(s.density());
  }
  return j;
}

QState state_from_json(const json& j, double psd_tol) {
  const auto& kind = field(j, "kind");
  if (!kind.is_string()) throw Error("'kind' must be a string");
  const Dims dims = dims_from_json(field(j, "dims"));
  const auto& data = field(j, "data");
  const auto k = kind.get<std::string>();
  if (k == "pure") {
    if (!data.is_array() || static_cast<std::int64_t>(data.size()) != dims.total()) {
      throw Error("pure state data must have prod(dims) entries");
    }
    Vec v(dims.total());
    for (std::int64_t i = 0; i < dims.total(); ++i) v(i) = complex_from_json(data[static_cast<std::size_t>(i)]);
    return QState::pure(std::move(v), dims);
  }
  if (k == "mixed") {
    Mat m = matrix_from_json(data);
    if (m.rows() != dims.total() || m.cols() != dims.total()) throw Error("density matrix size does not match dims");
    return QState::mixed(std::move(m), dims, psd_tol);
  }
  throw Error("state kind must be 'pure' or 'mixed', got '" + k + "'");
}

json witness_to_json(const Witness& w) {
  json j;
  j["kind"] = "witness";
  j["dims"] = dims_to_json(w.dims);
  j["provenance"] = to_string(w.provenance);
  j["data"] = matrix_to_json(w.matrix);
  return j;
}

Witness witness_from_json(const json& j) {
  const auto& kind = field(j, "kind");
  if (!kind.is_string() || kind.get<std::string>() != "witness") throw Error("expected kind 'witness'");
  const Dims dims = dims_from_json(field(j, "dims"));
  Witness w = custom_witness(matrix_from_json(field(j, "data")), dims);
  if (j.contains("provenance")) {
    if (!j["provenance"].is_string()) throw Error("'provenance' must be a string");
    w.provenance = witness_provenance_from_string(j["provenance"].get<std::string>());
  }
  return w;
}

json mps_to_json(const MPSState& m) {
  json j;
  j["kind"] = "mps";
  j["dims"] = dims_to_json(m.dims());
  json sites = json::array();
  for (const auto& site : m.tensors()) {
    json s = json::array();
    for (const auto& a : site) s.push_back(matrix_to_json(a));
    sites.push_back(std::move(s));
  }
  j["tensors"] = std::move(sites);
  return j;
}

MPSState mps_from_json(const json& j) {
  const auto& kind = field(j, "kind");
  if (!kind.is_string() || kind.get<std::string>() != "mps") throw Error("expected kind 'mps'");
  const auto& t = field(j, "tensors");
  if (!t.is_array()) throw Error("'tensors' must be an array");
  std::vector<std::vector<Mat>> sites;
  for (const auto& site : t) {
    if (!site.is_array()) throw Error("each site must be a list of matrices");
    std::vector<Mat> s;
    for (const auto& a : site) s.push_back(matrix_from_json(a));
    sites.push_back(std::move(s));
  }
  return MPSState(std::move(sites));
}

json bell_to_json(const BellProblem& p) {
  json j;
  j["N"] = p.parties();
  j["J"] = p.settings();
  j["M"] = p.outcomes();
  j["k"] = real_matrix_to_json(p.k());
  j["q"] = real_matrix_to_json(p.q());
  j["values"] = p.values();
  return j;
}

BellProblem bell_from_json(const json& j) {
  const int n = as_int(field(j, "N"), "N");
  const int jj = as_int(field(j, "J"), "J");
  const int m = j.contains("M") ? as_int(j["M"], "M") : 2;
  if (n < 1 || jj < 1 || n * jj > 4096) throw Error("N and J must be positive and N*J at most 4096");
  RMat k = real_matrix_from_json(field(j, "k"), n, jj, "'k'");
  RMat q = real_matrix_from_json(field(j, "q"), n * jj, n * jj, "'q'");
  std::vector<double> values;
  if (j.contains("values")) values = real_vector_from_json(j["values"]);
  return BellProblem(n, jj, m, std::move(k), std::move(q), std::move(values));
}

std::vector<std::vector<Mat>> settings_from_json(const json& j) {
  const json& obs = j.is_object() ? field(j, "observables") : j;
  if (!obs.is_array()) throw Error("settings must be a list of per-party observable lists");
  std::vector<std::vector<Mat>> out;
  for (const auto& party : obs) {
    if (!party.is_array()) throw Error("each party entry must be a list of observables");
    std::vector<Mat> ms;
    for (const auto& m : party) ms.push_back(matrix_from_json(m));
    out.push_back(std::move(ms));
  }
  return out;
}

std::vector<double> real_vector_from_json(const json& j) {
  if (!j.is_array()) throw Error("expected a JSON array of numbers");
  std::vector<double> v;
  for (const auto& x : j) v.push_back(as_real(x));
  return v;
}

}  // namespace entkit::cli
