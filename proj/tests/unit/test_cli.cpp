#include <gtest/gtest.h>

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "app.hpp"
#include "entkit/multipartite.hpp"
#include "entkit/states.hpp"
#include "io.hpp"

using namespace entkit;
using namespace entkit::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "entkit");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("entkit_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override {
    std::error_code ec;
    fs::remove_all(dir_, ec);
    ::unsetenv("ENTKIT_PSD_TOL");
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  fs::path dir_;
};

bool has_line(const std::string& report, const std::string& line) {
  std::istringstream in(report);
  for (std::string l; std::getline(in, l);) {
    if (l == line) return true;
  }
  return false;
}

}  // namespace

TEST_F(Cli, GhzClassification) {
  ASSERT_EQ(call({"state", "make", "ghz", "--N", "3", "-o", path("g.json")}).code, kExitOk);
  const auto r = call({"classify3q", path("g.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(has_line(r.out, "label: GHZ")) << r.out;
  EXPECT_TRUE(has_line(r.out, "tangle: 1")) << r.out;
  // Independent check of the written state.
  EXPECT_NEAR(three_tangle(state_from_json(read_json_file(path("g.json")))), 1.0, 1e-12);
}

TEST_F(Cli, PptOnSinglet) {
  write_json_file(path("s.json"), state_to_json(psi_minus()));
  const auto r = call({"ppt", path("s.json"), "--cut", "1|2"});
  EXPECT_EQ(r.code, kExitVerdict);
  EXPECT_TRUE(has_line(r.out, "verdict: entangled")) << r.out;
  EXPECT_TRUE(has_line(r.out, "min_eigenvalue: -0.5")) << r.out;

  write_json_file(path("p.json"), state_to_json(QState::pure(basis_vector(4, 0), Dims{2, 2})));
  EXPECT_EQ(call({"ppt", path("p.json")}).code, kExitOk);
}

TEST_F(Cli, ChshExhaustiveBounds) {
  write_json_file(path("chsh.json"), bell_to_json(chsh_problem()));
  const auto r = call({"bell", "bound", path("chsh.json"), "--method", "exhaustive"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(has_line(r.out, "beta_min: -2")) << r.out;
  EXPECT_TRUE(has_line(r.out, "beta_max: 2")) << r.out;
}

TEST_F(Cli, BellQuantumViolation) {
  write_json_file(path("chsh.json"), bell_to_json(chsh_problem()));
  write_json_file(path("phi.json"), state_to_json(bell_phi_plus()));
  const double h = 1.0 / std::sqrt(2.0);
  const Mat a0 = pauli_z(), a1 = pauli_x();
  const Mat b0 = h * (pauli_z() + pauli_x()), b1 = h * (pauli_z() - pauli_x());
  json settings = json::array({json::array({matrix_to_json(a0), matrix_to_json(a1)}),
                               json::array({matrix_to_json(b0), matrix_to_json(b1)})});
  write_json_file(path("set.json"), settings);
  const auto r = call({"bell", "quantum", path("chsh.json"), path("phi.json"), path("set.json"), "--json"});
  EXPECT_EQ(r.code, kExitVerdict) << r.out << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(std::abs(j.at("quantum_value").get<double>()), 2.0 * std::sqrt(2.0), 1e-9);
  EXPECT_EQ(j.at("violated"), true);
}

TEST_F(Cli, StateRoundTripIsExact) {
  struct Case {
    std::vector<std::string> args;
    QState want;
  };
  const std::vector<Case> cases{
      {{"ghz", "--N", "4"}, ghz(4)},
      {{"w", "--N", "3"}, w_state(3)},
      {{"dicke", "--N", "5", "--k", "2"}, dicke(5, 2)},
      {{"psi-minus"}, psi_minus()},
      {{"random-pure", "--dims", "2,3", "--seed", "11"}, random_pure(Dims{2, 3}, 11)},
      {{"random-mixed", "--dims", "2,2", "--rank", "2", "--seed", "5"}, random_mixed(Dims{2, 2}, 2, 5)},
  };
  int i = 0;
  for (const auto& c : cases) {
    const std::string f = path("s" + std::to_string(i++) + ".json");
    std::vector<std::string> args{"state", "make"};
    args.insert(args.end(), c.args.begin(), c.args.end());
    args.insert(args.end(), {"-o", f});
    ASSERT_EQ(call(args).code, kExitOk) << c.args[0];
    const QState got = state_from_json(read_json_file(f));
    EXPECT_EQ(got.dims(), c.want.dims());
    EXPECT_EQ(got.is_pure(), c.want.is_pure());
    if (got.is_pure()) {
      EXPECT_EQ(got.vector(), c.want.vector()) << c.args[0];
    } else {
      EXPECT_EQ(got.density(), c.want.density()) << c.args[0];
    }
  }
}

TEST_F(Cli, ReportsAreDeterministic) {
  write_json_file(path("chsh.json"), bell_to_json(chsh_problem()));
  const std::vector<std::vector<std::string>> commands{
      {"bell", "bound", path("chsh.json"), "--method", "anneal", "--seed", "9"},
      {"scaling", "--kind", "random", "--N", "6", "--samples", "3", "--seed", "4"},
      {"state", "make", "random-pure", "--dims", "2,2,2", "--seed", "3"},
      {"aklt", "--N", "4", "--exact"},
  };
  for (const auto& c : commands) {
    const auto a = call(c), b = call(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << c[0];
    EXPECT_FALSE(a.out.empty());
  }
}

TEST_F(Cli, VerdictExitCodes) {
  write_json_file(path("w.json"), witness_to_json(witness_from_map(transposition_map(2))));
  write_json_file(path("s.json"), state_to_json(psi_minus()));
  write_json_file(path("p.json"), state_to_json(QState::pure(basis_vector(4, 1), Dims{2, 2})));
  EXPECT_EQ(call({"witness", "eval", path("w.json"), path("s.json")}).code, kExitVerdict);
  EXPECT_EQ(call({"witness", "eval", path("w.json"), path("p.json")}).code, kExitOk);

  EXPECT_EQ(call({"ds-sep", write("sep.json", "[0.5, 0, 0.5]")}).code, kExitOk);
  EXPECT_EQ(call({"ds-sep", write("ent.json", "[0, 1, 0]")}).code, kExitVerdict);

  EXPECT_EQ(call({"spin-witness", "--s2", "0", "--N", "2"}).code, kExitVerdict);
  EXPECT_EQ(call({"spin-witness", "--s2", "2", "--N", "2"}).code, kExitOk);
  EXPECT_EQ(call({"depth", "qfi", "--F", "6", "--N", "4"}).code, kExitOk);
}

TEST_F(Cli, MalformedInputExitsTwo) {
  EXPECT_EQ(call({}).code, kExitInput);
  EXPECT_EQ(call({"bogus"}).code, kExitInput);
  EXPECT_EQ(call({"ppt"}).code, kExitInput);
  EXPECT_EQ(call({"ppt", path("missing.json")}).code, kExitInput);
  EXPECT_EQ(call({"ppt", write("bad.json", "{not json")}).code, kExitInput);
  EXPECT_EQ(call({"ppt", write("dims.json", R"({"kind": "pure", "dims": [2, 2], "data": [1, 0, 0]})")}).code,
            kExitInput);
  EXPECT_EQ(call({"ppt", write("kind.json", R"({"kind": "soup", "dims": [2], "data": [1, 0]})")}).code, kExitInput);
  write_json_file(path("s.json"), state_to_json(psi_minus()));
  EXPECT_EQ(call({"ppt", path("s.json"), "--cut", "1|5"}).code, kExitInput);
  EXPECT_EQ(call({"depth", "qfi", "--F", "6"}).code, kExitInput);
  EXPECT_EQ(call({"state", "make", "nonsense"}).code, kExitInput);
  const auto r = call({"ppt", path("missing.json")});
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("missing.json"), std::string::npos) << r.err;
}

TEST_F(Cli, JsonOutput) {
  write_json_file(path("s.json"), state_to_json(psi_minus()));
  const auto r = call({"ppt", path("s.json"), "--json"});
  EXPECT_EQ(r.code, kExitVerdict);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "entangled");
  EXPECT_NEAR(j.at("min_eigenvalue").get<double>(), -0.5, 1e-12);
  EXPECT_EQ(j.at("cut"), "1|2");
}

TEST_F(Cli, PsdToleranceFromEnvironment) {
  // Diagonal state with one slightly negative eigenvalue.
  const std::string f = write("m.json", R"({"kind": "mixed", "dims": [2],
    "data": [[[1.000001, 0], [0, 0]], [[0, 0], [-0.000001, 0]]]})");
  EXPECT_EQ(call({"entropy", f}).code, kExitInput);
  ::setenv("ENTKIT_PSD_TOL", "1e-3", 1);
  EXPECT_EQ(call({"entropy", f}).code, kExitOk);
  ::setenv("ENTKIT_PSD_TOL", "abc", 1);
  EXPECT_EQ(call({"entropy", f}).code, kExitInput);
  ::setenv("ENTKIT_PSD_TOL", "-1", 1);
  EXPECT_EQ(call({"entropy", f}).code, kExitInput);
}

TEST(FormatNumber, Rules) {
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(-1e-300 * 0.0), "0");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(-0.5), "-0.5");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(std::log(2.0)), "0.69314718056");
}

TEST(Io, ComplexAndMatrixRoundTrip) {
  const cplx z{0.1, -2.5};
  EXPECT_EQ(complex_from_json(complex_to_json(z)), z);
  EXPECT_EQ(complex_from_json(json(3.0)), cplx(3.0, 0.0));
  Mat m(2, 3);
  m << cplx(1, 2), cplx(0.3, 0), cplx(-1e-17, 4), cplx(5, 5), cplx(0, 0), cplx(1.0 / 3.0, 0);
  EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
  EXPECT_THROW(matrix_from_json(json::parse("[[1, 2], [3]]")), Error);
  EXPECT_THROW(complex_from_json(json::parse("[1, 2, 3]")), Error);
}

TEST(Io, MpsAndWitnessRoundTrip) {
  const MPSState v = vbs_state(4);
  const MPSState back = mps_from_json(mps_to_json(v));
  ASSERT_EQ(back.sites(), v.sites());
  for (int k = 0; k < v.sites(); ++k) {
    for (std::size_t s = 0; s < v.site(k).size(); ++s) EXPECT_EQ(back.site(k)[s], v.site(k)[s]);
  }
  const Witness w = witness_from_map(transposition_map(3));
  EXPECT_EQ(witness_from_json(witness_to_json(w)).matrix, w.matrix);
}

TEST(Io, BellRoundTrip) {
  const BellProblem p = chsh_problem();
  const BellProblem q = bell_from_json(bell_to_json(p));
  EXPECT_EQ(q.k(), p.k());
  EXPECT_EQ(q.q(), p.q());
  EXPECT_THROW(bell_from_json(json::parse(R"({"N": 2, "J": 2, "k": [[0,0],[0,0]], "q": [[1]]})")), Error);
}
