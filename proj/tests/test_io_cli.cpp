#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qzspec/qspec.hpp"
#include "qzspec/tensor_io.hpp"
#include "qzspec/zsolve.hpp"

using namespace qzspec;
namespace fs = std::filesystem;

namespace {

const std::string kDataDir = QZSPEC_DATA_DIR;
const std::string kCli = QZSPEC_CLI_PATH;

std::string data_file(const std::string& name) { return kDataDir + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  EXPECT_TRUE(in.good()) << path;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Scratch directory for files the CLI tests create; removed at process exit.
class Scratch {
 public:
  Scratch() {
    dir_ = fs::temp_directory_path() /
           ("qzspec_cli_test_" + std::to_string(static_cast<long long>(::getpid())));
    fs::create_directories(dir_);
  }
  ~Scratch() { std::error_code ec; fs::remove_all(dir_, ec); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

Scratch& scratch() {
  static Scratch s;
  return s;
}

std::string write_scratch(const std::string& name, const std::string& content) {
  std::string p = scratch().path(name);
  std::ofstream out(p, std::ios::binary);
  out << content;
  EXPECT_TRUE(out.good()) << p;
  return p;
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = kCli + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  EXPECT_NE(pipe, nullptr) << cmd;
  CliResult r;
  if (!pipe) return r;
  char buf[4096];
  size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string strip_wall_time(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.find("wall_time") != std::string::npos) continue;
    out += line;
    out += '\n';
  }
  return out;
}

SymTensor diag25() {
  return SymTensor(3, 2, {{{1, 1, 1}, 2.0}, {{2, 2, 2}, -5.0}});
}

}  // namespace

// --- tensor file parsing ---------------------------------------------------

TEST(TensorFileIO, SerializeParseRoundTripIsByteIdentical) {
  SymTensor t(3, 2, {{{1, 1, 1}, 1.0}, {{1, 1, 2}, 0.4}, {{1, 2, 2}, -1.0}, {{2, 2, 2}, -0.2}});
  std::string text = serialize_tensor_file(t);
  auto tf = parse_tensor_file(text);
  EXPECT_EQ(tf.field, "real");
  EXPECT_EQ(tf.tensor.real_part().orbits(), t.orbits());
  EXPECT_EQ(serialize_tensor_file(tf.tensor.real_part()), text);
}

TEST(TensorFileIO, ComplexRoundTripKeepsBothParts) {
  ComplexSymTensor psi(SymTensor(3, 2, {{{1, 1, 2}, 0.25}}),
                       SymTensor(3, 2, {{{1, 1, 1}, -2.0}, {{2, 2, 2}, 0.125}}));
  std::string text = serialize_tensor_file(psi, "complex");
  auto tf = parse_tensor_file(text);
  EXPECT_EQ(tf.field, "complex");
  EXPECT_EQ(tf.tensor.real_part().orbits(), psi.real_part().orbits());
  EXPECT_EQ(tf.tensor.imag_part().orbits(), psi.imag_part().orbits());
  EXPECT_EQ(serialize_tensor_file(tf.tensor, "complex"), text);
}

TEST(TensorFileIO, PinnedFixturesAreCanonical) {
  for (const char* name : {"diag25.json", "witness_m3n2.json"}) {
    std::string text = slurp(data_file(name));
    auto tf = parse_tensor_file(text);
    EXPECT_EQ(serialize_tensor_file(tf.tensor.real_part()), text) << name;
  }
}

TEST(TensorFileIO, SymmetrizedInputAcceptsUnsortedIndices) {
  auto tf = parse_tensor_file(R"({"order": 3, "dim": 2, "field": "real", "symmetrize": true,
    "entries": [{"idx": [2,1,1], "re": 0.4}, {"idx": [1,2,1], "re": 0.4}]})");
  EXPECT_DOUBLE_EQ(tf.tensor.real_part().value({1, 1, 2}), 0.4);
}

TEST(TensorFileIO, ParseErrorPaths) {
  auto bad = [](const std::string& text) {
    EXPECT_THROW(parse_tensor_file(text), std::invalid_argument) << text;
  };
  bad("not json at all");
  bad("[1,2,3]");
  bad(R"({"order": 3, "dim": 2, "field": "real", "entries": [], "extra": 1})");
  bad(R"({"order": 1, "dim": 2, "field": "real", "entries": []})");
  bad(R"({"order": 3, "dim": 1, "field": "real", "entries": []})");
  bad(R"({"order": 3, "dim": 2, "field": "quaternion", "entries": []})");
  bad(R"({"order": 3, "dim": 2, "field": "real"})");
  bad(R"({"order": 3, "dim": 2, "field": "real", "entries": [{"idx": [1,1], "re": 1}]})");
  bad(R"({"order": 3, "dim": 2, "field": "real", "entries": [{"idx": [1,1,3], "re": 1}]})");
  bad(R"({"order": 3, "dim": 2, "field": "real", "entries": [{"idx": [2,1,1], "re": 1}]})");
  bad(R"({"order": 3, "dim": 2, "field": "real",
         "entries": [{"idx": [1,1,2], "re": 1}, {"idx": [1,1,2], "re": 1}]})");
  bad(R"({"order": 3, "dim": 2, "field": "real", "entries": [{"idx": [1,1,2], "im": 1}]})");
  bad(R"({"order": 3, "dim": 2, "field": "real",
         "entries": [{"idx": [1,1,2], "re": 1, "im": 0.5}]})");
  bad(R"({"order": 3, "dim": 2, "field": "real",
         "entries": [{"idx": [1,1,2], "re": 1, "weight": 2}]})");
  // conflicting orbit duplicates under symmetrize must be rejected, not averaged
  bad(R"({"order": 3, "dim": 2, "field": "real", "symmetrize": true,
         "entries": [{"idx": [2,1,1], "re": 3.0}, {"idx": [1,2,1], "re": 5.0}]})");
}

TEST(TensorFileIO, RealFieldRefusesNonzeroImaginarySerialization) {
  ComplexSymTensor psi(SymTensor(2, 2), SymTensor(2, 2, {{{1, 1}, 1.0}}));
  EXPECT_THROW(serialize_tensor_file(psi, "real"), std::invalid_argument);
  EXPECT_THROW(serialize_tensor_file(psi, "rational"), std::invalid_argument);
}

TEST(PairFileIO, RealAndComplexForms) {
  auto real = parse_pair_file(R"({"lambda": 5.0, "vector": [0.0, -1.0]})");
  EXPECT_FALSE(real.complex_vector);
  EXPECT_DOUBLE_EQ(real.lambda, 5.0);
  ASSERT_EQ(real.w.size(), 2u);
  EXPECT_DOUBLE_EQ(real.w[1], -1.0);

  auto cplx = parse_pair_file(
      R"({"lambda": -5.0, "vector": [{"re": 0.0, "im": 0.0}, {"re": 0.5, "im": -0.8}]})");
  EXPECT_TRUE(cplx.complex_vector);
  ASSERT_EQ(cplx.z.size(), 2u);
  EXPECT_DOUBLE_EQ(cplx.z[1].real(), 0.5);
  EXPECT_DOUBLE_EQ(cplx.z[1].imag(), -0.8);
}

TEST(PairFileIO, ErrorPaths) {
  auto bad = [](const std::string& text) {
    EXPECT_THROW(parse_pair_file(text), std::invalid_argument) << text;
  };
  bad("{}");
  bad(R"({"lambda": 1.0})");
  bad(R"({"lambda": 1.0, "vector": []})");
  bad(R"({"lambda": 1.0, "vector": [1.0], "sign": 1})");
  bad(R"({"lambda": "five", "vector": [1.0]})");
  bad(R"({"lambda": 1.0, "vector": [{"re": 1.0}, 0.5]})");
  bad(R"({"lambda": 1.0, "vector": [{"re": 1.0, "phase": 2}]})");
}

TEST(ReportJson, SpectrumShape) {
  auto rep = zeig_multistart(diag25());
  auto j = to_json(rep, /*include_vectors=*/true);
  for (const char* key : {"order", "dim", "z_spectral_radius", "heuristic_enumeration",
                          "observed_max_abs_value", "distinct_eigenvalues", "config", "trials",
                          "eigenvalues", "wall_time_ms"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["config"]["shift_mode"], "automatic");
  ASSERT_FALSE(j["eigenvalues"].empty());
  EXPECT_TRUE(j["eigenvalues"][0].contains("vector"));
  auto no_vec = to_json(rep, /*include_vectors=*/false);
  EXPECT_FALSE(no_vec["eigenvalues"][0].contains("vector"));
}

TEST(ReportJson, QSpectrumShape) {
  auto rep = qeig_all(ComplexSymTensor(diag25()));
  auto j = to_json(rep, /*include_vectors=*/true);
  for (const char* key : {"order", "dim", "variant", "entanglement_eigenvalue", "count_bound",
                          "distinct_eigenvalues", "pairing_ok", "heuristic_enumeration",
                          "dropped_on_reverify", "q_eigenvalues", "embedded", "wall_time_ms"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  ASSERT_FALSE(j["q_eigenvalues"].empty());
  EXPECT_TRUE(j["q_eigenvalues"][0]["vector"][0].contains("re"));
  EXPECT_TRUE(j["q_eigenvalues"][0]["vector"][0].contains("im"));
}

// --- command-line binary ---------------------------------------------------

TEST(Cli, HelpExitsZero) {
  auto r = run_cli("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("zeig"), std::string::npos);
}

TEST(Cli, ZeigTextReportsRadius) {
  auto r = run_cli("zeig " + data_file("diag25.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("command zeig"), std::string::npos);
  EXPECT_NE(r.out.find("z_spectral_radius 5"), std::string::npos);
  EXPECT_NE(r.out.find("lambda 5  residual"), std::string::npos);
  EXPECT_NE(r.out.find("vector ["), std::string::npos);
}

TEST(Cli, ZeigJsonMatchesLibrary) {
  auto r = run_cli("zeig " + data_file("diag25.json") + " --output json --seed 99");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["command"], "zeig");
  EXPECT_EQ(j["seed"], 99);
  EXPECT_NEAR(j["results"]["z_spectral_radius"].get<double>(), 5.0, 1e-9);
  EXPECT_EQ(j["results"]["distinct_eigenvalues"], 6);
  EXPECT_EQ(j["config"]["seed"], 99);
  EXPECT_TRUE(j["results"]["heuristic_enumeration"].get<bool>());
  EXPECT_EQ(j["complete"], false);  // heuristic enumeration => incomplete
}

TEST(Cli, ZeigGridOracleAgrees) {
  auto r = run_cli("zeig " + data_file("witness_m3n2.json") +
                   " --oracle grid --output json");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["complete"], true);  // dim 2 grid is exhaustive up to resolution
  EXPECT_NEAR(j["results"]["z_spectral_radius"].get<double>(), 1.180579301615907, 1e-8);
}

TEST(Cli, ZeigNoVectorsFlagElidesVectors) {
  auto r = run_cli("zeig " + data_file("diag25.json") + " --output json --no-vectors");
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["config"]["vectors_included"], false);
  EXPECT_FALSE(j["results"]["eigenvalues"][0].contains("vector"));
}

TEST(Cli, QeigJsonFindsFullDiagonalSpectrum) {
  auto r = run_cli("qeig " + data_file("diag25.json") + " --output json");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = json::parse(r.out);
  EXPECT_NEAR(j["results"]["entanglement_eigenvalue"].get<double>(), 5.0, 1e-9);
  EXPECT_EQ(j["results"]["pairing_ok"], true);
  EXPECT_EQ(j["results"]["count_bound"], 15);
  EXPECT_EQ(j["results"]["distinct_eigenvalues"], 6);
  for (const auto& e : j["results"]["q_eigenvalues"]) {
    EXPECT_LT(e["residual"].get<double>(), 1e-9);
  }
}

TEST(Cli, EmbedTextChainsIntoZeig) {
  auto emb = run_cli("embed " + data_file("diag25.json"));
  ASSERT_EQ(emb.code, 0);
  std::string emb_path = write_scratch("embedded_diag25.json", emb.out);

  auto z = run_cli("zeig " + emb_path + " --output json");
  ASSERT_EQ(z.code, 0) << z.out;
  auto q = run_cli("qeig " + data_file("diag25.json") + " --output json");
  ASSERT_EQ(q.code, 0);

  auto jz = json::parse(z.out);
  auto jq = json::parse(q.out);
  EXPECT_EQ(jz["results"]["dim"], 4);
  EXPECT_NEAR(jz["results"]["z_spectral_radius"].get<double>(),
              jq["results"]["entanglement_eigenvalue"].get<double>(), 1e-8);
  // same eigenvalue sets: the embedded real spectrum IS the Q spectrum
  std::vector<double> zl, ql;
  for (const auto& e : jz["results"]["eigenvalues"]) zl.push_back(e["lambda"].get<double>());
  for (const auto& e : jq["results"]["q_eigenvalues"]) ql.push_back(e["lambda"].get<double>());
  std::sort(zl.begin(), zl.end());
  std::sort(ql.begin(), ql.end());
  ASSERT_EQ(zl.size(), ql.size());
  for (size_t i = 0; i < zl.size(); ++i) EXPECT_NEAR(zl[i], ql[i], 1e-8);
}

TEST(Cli, EmbedJsonReportsScaleFactor) {
  auto r = run_cli("embed " + data_file("diag25.json") + " --output json");
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["results"]["dim"], 4);
  EXPECT_EQ(j["results"]["order"], 3);
  EXPECT_DOUBLE_EQ(j["results"]["scale_factor"].get<double>(), 2.0);  // 2^{(3-1)/2}
}

TEST(Cli, GenRoundTripsByteIdentically) {
  auto r = run_cli("gen --kind diagonal --m 3 --n 2 --seed 7");
  ASSERT_EQ(r.code, 0);
  auto tf = parse_tensor_file(r.out);
  EXPECT_EQ(serialize_tensor_file(tf.tensor.real_part()), r.out);

  auto again = run_cli("gen --kind diagonal --m 3 --n 2 --seed 7");
  EXPECT_EQ(again.out, r.out);
  auto other = run_cli("gen --kind diagonal --m 3 --n 2 --seed 8");
  EXPECT_NE(other.out, r.out);
}

TEST(Cli, GenJsonCarriesKnownQ) {
  auto r = run_cli("gen --kind diagonal --m 3 --n 2 --seed 7 --output json");
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_TRUE(j["results"]["known_q"].is_number());
  auto r2 = run_cli("gen --kind nonnegative --m 3 --n 2 --seed 7 --output json");
  auto j2 = json::parse(r2.out);
  EXPECT_TRUE(j2["results"]["known_q"].is_null());
}

TEST(Cli, VerifyAcceptsCorrectBundle) {
  json bundle;
  bundle["tensor"] = json::parse(slurp(data_file("diag25.json")));
  bundle["pairs"] = json::array({
      {{"lambda", 5.0}, {"vector", {0.0, -1.0}}},
      {{"lambda", -5.0}, {"vector", {0.0, 1.0}}},
      {{"lambda", 2.0}, {"vector", {1.0, 0.0}}},
      {{"lambda", -2.0}, {"vector", {-1.0, 0.0}}},
  });
  std::string path = write_scratch("bundle_ok.json", bundle.dump(2) + "\n");
  auto r = run_cli("verify " + path + " --output json");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["results"]["all_ok"], true);
  EXPECT_EQ(j["results"]["dominance"]["checked"], true);
  EXPECT_NEAR(j["results"]["dominance"]["z_spectral_radius"].get<double>(), 5.0, 1e-9);
}

TEST(Cli, VerifyRejectsCorruptedEigenvalue) {
  json bundle;
  bundle["tensor"] = json::parse(slurp(data_file("diag25.json")));
  bundle["pairs"] = json::array({
      {{"lambda", 4.9}, {"vector", {0.0, -1.0}}},  // residual 0.1 off
      {{"lambda", -4.9}, {"vector", {0.0, 1.0}}},
  });
  std::string path = write_scratch("bundle_bad.json", bundle.dump(2) + "\n");
  auto r = run_cli("verify " + path);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("all_ok false"), std::string::npos);
}

TEST(Cli, VerifyComplexBundleSkipsDominance) {
  const double s = 0.70710678118654752440;  // cos(pi/4)
  json bundle;
  bundle["tensor"] = json::parse(
      R"({"order": 2, "dim": 2, "field": "complex", "symmetrize": false, "entries":
          [{"idx": [1,1], "re": 0.0, "im": 1.0}, {"idx": [2,2], "re": 0.0, "im": 1.0}]})");
  bundle["pairs"] = json::array({
      {{"lambda", 1.0},
       {"vector", {{{"re", s}, {"im", -s}}, {{"re", 0.0}, {"im", 0.0}}}}},
      {{"lambda", -1.0},
       {"vector", {{{"re", s}, {"im", s}}, {{"re", 0.0}, {"im", 0.0}}}}},
  });
  std::string path = write_scratch("bundle_complex.json", bundle.dump(2) + "\n");
  auto r = run_cli("verify " + path + " --output json");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["results"]["dominance"]["checked"], false);
  EXPECT_EQ(j["results"]["all_ok"], true);
}

TEST(Cli, VerifyRejectsNonUnitVectorAsFailedCheckNotCrash) {
  json bundle;
  bundle["tensor"] = json::parse(slurp(data_file("diag25.json")));
  bundle["pairs"] = json::array({
      {{"lambda", 5.0}, {"vector", {0.0, -2.0}}},  // norm 2
      {{"lambda", -5.0}, {"vector", {0.0, 1.0}}},
  });
  std::string path = write_scratch("bundle_nonunit.json", bundle.dump(2) + "\n");
  auto r = run_cli("verify " + path);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("unit"), std::string::npos);
}

TEST(Cli, BudgetExhaustionExitsThree) {
  auto r = run_cli("zeig " + data_file("witness_m3n2.json") + " --max-iter 1 --starts 4");
  EXPECT_EQ(r.code, 3);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run_cli("frobnicate").code, 1);
  EXPECT_EQ(run_cli("zeig /nonexistent/path.json").code, 1);
  EXPECT_EQ(run_cli("zeig").code, 1);
  EXPECT_EQ(run_cli("qeig " + data_file("diag25.json") + " --variant phase-j").code, 1);
  EXPECT_EQ(run_cli("gen --kind fancy --m 3 --n 2").code, 1);
  EXPECT_EQ(run_cli("ratio-search --m 3").code, 1);  // --n required

  std::string cplx = write_scratch("cplx_for_zeig.json",
                                   R"({"order": 2, "dim": 2, "field": "complex",
    "entries": [{"idx": [1,1], "re": 0.0, "im": 1.0}]})");
  EXPECT_EQ(run_cli("zeig " + cplx).code, 1);
}

TEST(Cli, OutFlagWritesFileInsteadOfStdout) {
  std::string out_path = scratch().path("zeig_report.json");
  auto r = run_cli("zeig " + data_file("diag25.json") + " --output json --out " + out_path);
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  auto j = json::parse(slurp(out_path));
  EXPECT_NEAR(j["results"]["z_spectral_radius"].get<double>(), 5.0, 1e-9);
}

TEST(Cli, SameSeedSameReportModuloWallTime) {
  const std::string cmd = "qeig " + data_file("witness_m3n2.json") +
                          " --output json --seed 4242 --starts 60";
  auto a = run_cli(cmd);
  auto b = run_cli(cmd);
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(strip_wall_time(a.out), strip_wall_time(b.out));

  const std::string tcmd = "zeig " + data_file("diag25.json") + " --seed 7";
  auto c = run_cli(tcmd);
  auto d = run_cli(tcmd);
  EXPECT_EQ(strip_wall_time(c.out), strip_wall_time(d.out));
}

TEST(Cli, RatioSearchSeededWitnessReportsLargeRatio) {
  std::string wout = scratch().path("ratio_witness.json");
  auto r = run_cli("ratio-search --m 3 --n 2 --budget 1 --witness-in " +
                   data_file("witness_m3n2.json") + " --witness-out " + wout +
                   " --output json");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = json::parse(r.out);
  EXPECT_GT(j["results"]["best_ratio"].get<double>(), 1.27);
  EXPECT_EQ(j["results"]["witness"]["family"], "seed");
  EXPECT_EQ(j["results"]["control_violation"], false);

  // the witness file must itself round-trip and match the seed tensor
  auto tf = parse_tensor_file(slurp(wout));
  EXPECT_EQ(serialize_tensor_file(tf.tensor.real_part()), slurp(wout));
  auto meta = json::parse(slurp(wout + ".meta.json"));
  EXPECT_EQ(meta["family"], "seed");
  EXPECT_GT(meta["ratio"].get<double>(), 1.27);
}
