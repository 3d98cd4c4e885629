// Command-line front end for the symmetric tensor spectral toolkit.
//
// Subcommands:
//   zeig FILE          real Z-eigenpairs of a real symmetric tensor
//   qeig FILE          Q-eigenpairs of a (complex) symmetric tensor
//   embed FILE         the sign-patterned real embedding as a tensor file
//   verify FILE        re-check a (tensor, pairs) bundle: residuals, pairing,
//                      count bound, and dominance of the claimed maximum
//   ratio-search       empirical search for the largest Q/Z ratio
//   gen                generate a tensor from one of the equality families
//
// Exit codes: 0 success; 1 usage or file errors; 2 a verification check
// failed; 3 the solver exhausted its budget without converging.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qzspec/embed.hpp"
#include "qzspec/grid_oracle.hpp"
#include "qzspec/qspec.hpp"
#include "qzspec/sym_tensor.hpp"
#include "qzspec/tensor_io.hpp"
#include "qzspec/zsolve.hpp"

namespace {

using qzspec::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitBudget = 3;

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string vec_text(const std::vector<double>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt12(v[i]);
  }
  return s + "]";
}

std::string cvec_text(const std::vector<std::complex<double>>& z) {
  std::string s = "[";
  for (size_t i = 0; i < z.size(); ++i) {
    if (i) s += ", ";
    s += fmt12(z[i].real());
    s += (z[i].imag() < 0.0) ? " - " : " + ";
    s += fmt12(std::abs(z[i].imag()));
    s += "i";
  }
  return s + "]";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
  out << text;
  if (!out) throw std::invalid_argument("failed writing output file: " + out_path);
}

// Shared solver knobs; shift 0 keeps the automatic (adaptive) shift.
struct SolverFlags {
  double tol = 1e-10;
  int max_iter = 5000;
  int starts = 0;
  double dedup_tol = 1e-6;
  std::uint64_t seed = 12345;
  double shift = 0.0;

  qzspec::SolverConfig to_config() const {
    qzspec::SolverConfig cfg;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.num_starts = starts;
    cfg.dedup_tol = dedup_tol;
    cfg.seed = seed;
    if (shift != 0.0) {
      cfg.shift_mode = qzspec::ShiftMode::fixed_value;
      cfg.shift_value = shift;
    }
    return cfg;
  }

  json echo() const {
    json c;
    c["tol"] = tol;
    c["max_iter"] = max_iter;
    c["starts"] = starts;
    c["dedup_tol"] = dedup_tol;
    c["seed"] = seed;
    c["shift"] = (shift != 0.0) ? json(shift) : json("automatic");
    return c;
  }
};

void attach_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--tol", f.tol, "convergence tolerance on eigenpair residuals");
  cmd->add_option("--max-iter", f.max_iter, "iteration cap per trial");
  cmd->add_option("--starts", f.starts, "multistart trial count (0 = 100 per dimension)");
  cmd->add_option("--dedup-tol", f.dedup_tol, "eigenvalue/direction merge tolerance");
  cmd->add_option("--seed", f.seed, "random seed for start vectors");
  cmd->add_option("--shift", f.shift, "fixed power-iteration shift (default: automatic)");
}

struct OutputFlags {
  std::string output = "text";  // "text" or "json"
  std::string out_path;
  bool no_vectors = false;
};

void attach_output_flags(CLI::App* cmd, OutputFlags& f, bool with_vectors = true) {
  cmd->add_option("--output", f.output, "report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", f.out_path, "write the report to this file instead of stdout");
  if (with_vectors)
    cmd->add_flag("--no-vectors", f.no_vectors, "omit eigenvectors from the report");
}

bool include_vectors(const OutputFlags& f, int dim, size_t count) {
  return !f.no_vectors && static_cast<size_t>(dim) * count <= 10000;
}

qzspec::EmbedVariant parse_variant(const std::string& s) {
  if (s == "phase-i") return qzspec::EmbedVariant::phase_i;
  if (s == "phase-neg-i") return qzspec::EmbedVariant::phase_neg_i;
  throw std::invalid_argument("unknown variant \"" + s + "\" (use phase-i or phase-neg-i)");
}

json run_report(const std::string& command, json config, std::uint64_t seed, bool complete,
                json results, double wall_ms) {
  json j;
  j["command"] = command;
  j["config"] = std::move(config);
  j["seed"] = seed;
  j["complete"] = complete;
  j["results"] = std::move(results);
  j["wall_time_ms"] = wall_ms;
  return j;
}

void render_header_text(std::ostringstream& os, const std::string& command,
                        std::uint64_t seed, bool complete) {
  os << "command " << command << "\n";
  os << "seed " << seed << "\n";
  os << "complete " << (complete ? "true" : "false") << "\n";
}

void render_spectrum_text(std::ostringstream& os, const qzspec::SpectrumReport& rep,
                          bool vectors, const std::string& indent = "") {
  os << indent << "order " << rep.order << "  dim " << rep.dim << "\n";
  os << indent << "z_spectral_radius " << fmt12(rep.z_spectral_radius) << "\n";
  os << indent << "distinct_eigenvalues " << rep.entries.size() << "\n";
  os << indent << "heuristic_enumeration " << (rep.heuristic ? "true" : "false") << "\n";
  os << indent << "observed_max_abs_value " << fmt12(rep.observed_max_abs_value) << "\n";
  os << indent << "trials total " << rep.trials_total << "  converged " << rep.trials_converged
     << "  shift_doublings " << rep.shift_doublings << "\n";
  os << indent << "eigenvalues:\n";
  for (const auto& e : rep.entries) {
    os << indent << "  lambda " << fmt12(e.lambda) << "  residual " << fmt12(e.residual)
       << "  cluster " << e.cluster_size << "  source " << to_string(e.source) << "\n";
    if (vectors) os << indent << "    vector " << vec_text(e.vec) << "\n";
  }
  os << indent << "wall_time_ms " << fmt12(rep.wall_time_ms) << "\n";
}

void render_qspectrum_text(std::ostringstream& os, const qzspec::QSpectrumReport& rep,
                           bool vectors) {
  os << "order " << rep.order << "  dim " << rep.dim << "\n";
  os << "variant " << to_string(rep.variant) << "\n";
  os << "entanglement_eigenvalue " << fmt12(rep.entanglement) << "\n";
  os << "count_bound " << rep.bound << "\n";
  os << "distinct_eigenvalues " << rep.entries.size() << "\n";
  os << "pairing_ok " << (rep.pairing_ok ? "true" : "false") << "\n";
  os << "heuristic_enumeration " << (rep.heuristic ? "true" : "false") << "\n";
  os << "dropped_on_reverify " << rep.dropped_on_reverify << "\n";
  os << "q_eigenvalues:\n";
  for (const auto& e : rep.entries) {
    os << "  lambda " << fmt12(e.lambda) << "  residual " << fmt12(e.residual) << "  cluster "
       << e.cluster_size << "\n";
    if (vectors) os << "    vector " << cvec_text(e.z) << "\n";
  }
  os << "embedded summary: dim " << rep.embedded.dim << "  radius "
     << fmt12(rep.embedded.z_spectral_radius) << "  distinct " << rep.embedded.entries.size()
     << "  trials " << rep.embedded.trials_total << "/" << rep.embedded.trials_converged
     << "\n";
  os << "wall_time_ms " << fmt12(rep.wall_time_ms) << "\n";
}

// ---------------------------------------------------------------- zeig ----

struct ZeigArgs {
  std::string file;
  std::string oracle = "power";
  int points = 0;
  SolverFlags solver;
  OutputFlags out;
};

int run_zeig(const ZeigArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  auto tf = qzspec::parse_tensor_file(read_file(a.file));
  if (tf.field != "real")
    throw std::invalid_argument(
        "zeig solves the real problem; use qeig for complex tensors (or embed first)");
  const qzspec::SymTensor& t = tf.tensor.real_part();

  qzspec::SpectrumReport rep;
  if (a.oracle == "power") {
    rep = qzspec::zeig_multistart(t, a.solver.to_config());
  } else {
    if (t.dim() > 4)
      throw std::invalid_argument("--oracle grid supports dim <= 4 only");
    rep = qzspec::zeig_grid_oracle(t, a.solver.dedup_tol, a.points);
  }
  const bool complete = !rep.heuristic;
  const bool vectors = include_vectors(a.out, rep.dim, rep.entries.size());
  const double wall =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (a.out.output == "json") {
    json cfg = a.solver.echo();
    cfg["file"] = a.file;
    cfg["oracle"] = a.oracle;
    cfg["points"] = a.points;
    cfg["vectors_included"] = vectors;
    auto j = run_report("zeig", std::move(cfg), a.solver.seed, complete,
                        qzspec::to_json(rep, vectors), wall);
    write_output(j.dump(2) + "\n", a.out.out_path);
  } else {
    std::ostringstream os;
    render_header_text(os, "zeig", a.solver.seed, complete);
    os << "file " << a.file << "\n";
    os << "oracle " << a.oracle << "\n";
    render_spectrum_text(os, rep, vectors);
    write_output(os.str(), a.out.out_path);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- qeig ----

struct QeigArgs {
  std::string file;
  std::string variant = "phase-i";
  SolverFlags solver;
  OutputFlags out;
};

int run_qeig(const QeigArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  auto tf = qzspec::parse_tensor_file(read_file(a.file));
  auto rep = qzspec::qeig_all(tf.tensor, a.solver.to_config(), parse_variant(a.variant));
  const bool complete = !rep.heuristic;
  const bool vectors = include_vectors(a.out, rep.dim, rep.entries.size());
  const double wall =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (a.out.output == "json") {
    json cfg = a.solver.echo();
    cfg["file"] = a.file;
    cfg["variant"] = a.variant;
    cfg["vectors_included"] = vectors;
    auto j = run_report("qeig", std::move(cfg), a.solver.seed, complete,
                        qzspec::to_json(rep, vectors), wall);
    write_output(j.dump(2) + "\n", a.out.out_path);
  } else {
    std::ostringstream os;
    render_header_text(os, "qeig", a.solver.seed, complete);
    os << "file " << a.file << "\n";
    render_qspectrum_text(os, rep, vectors);
    write_output(os.str(), a.out.out_path);
  }
  return kExitOk;
}

// --------------------------------------------------------------- embed ----

struct EmbedArgs {
  std::string file;
  std::string variant = "phase-i";
  OutputFlags out;
};

int run_embed(const EmbedArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  auto tf = qzspec::parse_tensor_file(read_file(a.file));
  auto emb = qzspec::make_embedding(tf.tensor, parse_variant(a.variant));
  const double wall =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (a.out.output == "json") {
    json cfg;
    cfg["file"] = a.file;
    cfg["variant"] = a.variant;
    json results;
    results["variant"] = to_string(emb.variant);
    results["scale_factor"] = emb.scale_factor;
    results["order"] = emb.embedded.order();
    results["dim"] = emb.embedded.dim();
    results["tensor"] = qzspec::tensor_to_json(emb.embedded);
    auto j = run_report("embed", std::move(cfg), 0, true, std::move(results), wall);
    write_output(j.dump(2) + "\n", a.out.out_path);
  } else {
    // Text mode emits the embedded tensor as a canonical tensor file so the
    // output can feed straight back into `zeig`.
    write_output(qzspec::serialize_tensor_file(emb.embedded), a.out.out_path);
  }
  return kExitOk;
}

// -------------------------------------------------------------- verify ----

struct VerifyArgs {
  std::string file;
  double tol = 1e-8;
  SolverFlags solver;
  OutputFlags out;
};

// Bundle document: {"tensor": {...tensor file...},
//                   "pairs": [{"lambda": ..., "vector": [...]}, ...]}
// Real vectors are treated as complex vectors with zero imaginary part; both
// satisfy the same defining equation when the tensor is real.
int run_verify(const VerifyArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  json doc;
  try {
    doc = json::parse(read_file(a.file));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("verify bundle: not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("tensor") || !doc.contains("pairs"))
    throw std::invalid_argument("verify bundle: need top-level \"tensor\" and \"pairs\"");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "tensor" && it.key() != "pairs")
      throw std::invalid_argument("verify bundle: unknown key \"" + it.key() + "\"");
  }
  auto tf = qzspec::parse_tensor_file(doc["tensor"].dump());
  if (!doc["pairs"].is_array() || doc["pairs"].empty())
    throw std::invalid_argument("verify bundle: \"pairs\" must be a non-empty array");

  const int m = tf.tensor.order();
  const int n = tf.tensor.dim();

  struct PairCheck {
    double lambda = 0.0;
    double residual = 0.0;
    bool ok = false;
    std::string note;
  };
  std::vector<PairCheck> checks;
  bool residual_ok = true;
  for (const auto& p : doc["pairs"]) {
    auto pf = qzspec::parse_pair_file(p.dump());
    std::vector<std::complex<double>> z;
    if (pf.complex_vector) {
      z = pf.z;
    } else {
      z.reserve(pf.w.size());
      for (double x : pf.w) z.emplace_back(x, 0.0);
    }
    PairCheck c;
    c.lambda = pf.lambda;
    if (static_cast<int>(z.size()) != n) {
      c.residual = std::numeric_limits<double>::infinity();
      c.note = "vector length != dim";
    } else {
      try {
        auto v = qzspec::verify_qeig(tf.tensor, pf.lambda, z);
        c.residual = v.residual;
        c.ok = v.residual < a.tol;
        if (!c.ok) c.note = "residual above tolerance";
      } catch (const std::invalid_argument& e) {
        c.residual = std::numeric_limits<double>::infinity();
        c.note = e.what();
      }
    }
    residual_ok = residual_ok && c.ok;
    checks.push_back(std::move(c));
  }

  // Pairing: the supplied eigenvalue multiset must equal its own negation.
  std::vector<double> lambdas;
  for (const auto& c : checks) lambdas.push_back(c.lambda);
  std::sort(lambdas.begin(), lambdas.end());
  bool pairing_ok = true;
  for (size_t i = 0; i < lambdas.size(); ++i) {
    if (std::abs(lambdas[i] + lambdas[lambdas.size() - 1 - i]) > a.tol) {
      pairing_ok = false;
      break;
    }
  }

  // Count bound on distinct eigenvalues.
  long long distinct = 0;
  for (size_t i = 0; i < lambdas.size(); ++i) {
    if (i == 0 || lambdas[i] - lambdas[i - 1] > a.tol) ++distinct;
  }
  const long long bound = qzspec::count_bound(m, n);
  const bool bound_ok = distinct <= bound;

  // Dominance: for a real tensor the claimed maximum must not fall below the
  // real spectral radius (solved here) by more than solver noise.
  bool dominance_checked = false;
  bool dominance_ok = true;
  bool dominance_heuristic = false;
  double zrad = 0.0;
  double max_lambda = lambdas.empty() ? 0.0 : lambdas.back();
  if (tf.field == "real" && !tf.tensor.is_zero()) {
    auto zres = qzspec::z_spectral_radius(tf.tensor.real_part(), a.solver.to_config());
    zrad = zres.radius;
    dominance_checked = true;
    dominance_heuristic = zres.evidence.heuristic;
    dominance_ok = max_lambda >= zrad - 1e-6;
  }

  const bool all_ok = residual_ok && pairing_ok && bound_ok && dominance_ok;
  const bool complete = !(dominance_checked && dominance_heuristic);
  const double wall =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (a.out.output == "json") {
    json cfg = a.solver.echo();
    cfg["file"] = a.file;
    cfg["verify_tol"] = a.tol;
    json results;
    json rows = json::array();
    for (const auto& c : checks) {
      json r;
      r["lambda"] = c.lambda;
      r["residual"] = std::isfinite(c.residual) ? json(c.residual) : json("infinite");
      r["ok"] = c.ok;
      if (!c.note.empty()) r["note"] = c.note;
      rows.push_back(std::move(r));
    }
    results["pairs"] = std::move(rows);
    results["residual_ok"] = residual_ok;
    results["pairing_ok"] = pairing_ok;
    results["bound"] = {{"distinct", distinct}, {"bound", bound}, {"ok", bound_ok}};
    if (dominance_checked) {
      results["dominance"] = {{"checked", true},
                              {"z_spectral_radius", zrad},
                              {"max_lambda", max_lambda},
                              {"ok", dominance_ok}};
    } else {
      results["dominance"] = {{"checked", false}, {"ok", true}};
    }
    results["all_ok"] = all_ok;
    auto j = run_report("verify", std::move(cfg), a.solver.seed, complete, std::move(results),
                        wall);
    write_output(j.dump(2) + "\n", a.out.out_path);
  } else {
    std::ostringstream os;
    render_header_text(os, "verify", a.solver.seed, complete);
    os << "file " << a.file << "\n";
    os << "tolerance " << fmt12(a.tol) << "\n";
    os << "pairs:\n";
    for (const auto& c : checks) {
      os << "  lambda " << fmt12(c.lambda) << "  residual "
         << (std::isfinite(c.residual) ? fmt12(c.residual) : std::string("infinite")) << "  "
         << (c.ok ? "ok" : "FAIL");
      if (!c.note.empty()) os << "  (" << c.note << ")";
      os << "\n";
    }
    os << "residual_ok " << (residual_ok ? "true" : "false") << "\n";
    os << "pairing_ok " << (pairing_ok ? "true" : "false") << "\n";
    os << "bound distinct " << distinct << " <= " << bound << " "
       << (bound_ok ? "ok" : "FAIL") << "\n";
    if (dominance_checked) {
      os << "dominance max_lambda " << fmt12(max_lambda) << " vs z_spectral_radius "
         << fmt12(zrad) << " " << (dominance_ok ? "ok" : "FAIL") << "\n";
    } else {
      os << "dominance skipped (complex tensor)\n";
    }
    os << "all_ok " << (all_ok ? "true" : "false") << "\n";
    os << "wall_time_ms " << fmt12(wall) << "\n";
    write_output(os.str(), a.out.out_path);
  }
  return all_ok ? kExitOk : kExitVerifyFailed;
}

// -------------------------------------------------------- ratio-search ----

struct RatioArgs {
  int m = 3;
  int n = 2;
  long long budget = 100;
  double sigma = 0.1;
  bool no_controls = false;
  std::string witness_in;
  std::string witness_out;
  SolverFlags solver;
  OutputFlags out;
};

int run_ratio(const RatioArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  qzspec::RatioSearchOptions opt;
  opt.budget = a.budget;
  opt.seed = a.solver.seed;
  opt.solver = a.solver.to_config();
  opt.perturb_sigma = a.sigma;
  opt.include_controls = !a.no_controls;
  if (!a.witness_in.empty()) {
    auto tf = qzspec::parse_tensor_file(read_file(a.witness_in));
    if (tf.field != "real")
      throw std::invalid_argument("ratio-search witness must be a real tensor file");
    opt.witness_seed = tf.tensor.real_part();
  }
  auto rep = qzspec::ratio_search(a.m, a.n, opt);

  if (!a.witness_out.empty() && rep.witness) {
    write_output(qzspec::serialize_tensor_file(*rep.witness), a.witness_out);
    json meta;
    meta["family"] = rep.witness_family;
    meta["ratio"] = rep.best_ratio;
    meta["q"] = rep.witness_q;
    meta["z"] = rep.witness_z;
    meta["seed"] = rep.seed;
    meta["budget"] = rep.budget;
    meta["order"] = rep.order;
    meta["dim"] = rep.dim;
    write_output(meta.dump(2) + "\n", a.witness_out + ".meta.json");
  }

  const bool complete = (a.m == 2);  // exact by construction there
  const double wall =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (rep.control_violation)
    std::cerr << "warning: an equality-family control exceeded ratio 1; solver suspect\n";

  if (a.out.output == "json") {
    json cfg = a.solver.echo();
    cfg["m"] = a.m;
    cfg["n"] = a.n;
    cfg["budget"] = a.budget;
    cfg["sigma"] = a.sigma;
    cfg["controls"] = !a.no_controls;
    if (!a.witness_in.empty()) cfg["witness_in"] = a.witness_in;
    if (!a.witness_out.empty()) cfg["witness_out"] = a.witness_out;
    auto j = run_report("ratio-search", std::move(cfg), a.solver.seed, complete,
                        qzspec::to_json(rep), wall);
    write_output(j.dump(2) + "\n", a.out.out_path);
  } else {
    std::ostringstream os;
    render_header_text(os, "ratio-search", a.solver.seed, complete);
    os << "order " << rep.order << "  dim " << rep.dim << "\n";
    os << "budget " << rep.budget << "  samples " << rep.samples << "\n";
    os << "best_ratio " << fmt12(rep.best_ratio) << "\n";
    if (rep.witness) {
      os << "witness family " << rep.witness_family << "  q " << fmt12(rep.witness_q) << "  z "
         << fmt12(rep.witness_z) << "\n";
    } else {
      os << "witness none\n";
    }
    os << "families:\n";
    for (const auto& [name, st] : rep.families) {
      os << "  " << name << "  samples " << st.samples << "  best " << fmt12(st.best) << "\n";
    }
    os << "control_violation " << (rep.control_violation ? "true" : "false") << "\n";
    os << "ceiling " << rep.ceiling_note << "\n";
    os << "wall_time_ms " << fmt12(wall) << "\n";
    write_output(os.str(), a.out.out_path);
  }
  return kExitOk;
}

// ----------------------------------------------------------------- gen ----

struct GenArgs {
  std::string kind;
  int m = 3;
  int n = 2;
  std::uint64_t seed = 12345;
  OutputFlags out;
};

int run_gen(const GenArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  qzspec::CaseKind kind;
  if (a.kind == "diagonal") kind = qzspec::CaseKind::diagonal;
  else if (a.kind == "nonnegative") kind = qzspec::CaseKind::nonnegative;
  else if (a.kind == "nonpositive") kind = qzspec::CaseKind::nonpositive;
  else if (a.kind == "odeco") kind = qzspec::CaseKind::odeco;
  else if (a.kind == "half-split") kind = qzspec::CaseKind::half_split;
  else
    throw std::invalid_argument(
        "unknown kind \"" + a.kind +
        "\" (use diagonal, nonnegative, nonpositive, odeco, or half-split)");

  auto gc = qzspec::generate_case(kind, a.m, a.n, a.seed);
  const double wall =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (a.out.output == "json") {
    json cfg;
    cfg["kind"] = a.kind;
    cfg["m"] = a.m;
    cfg["n"] = a.n;
    cfg["seed"] = a.seed;
    json results;
    results["kind"] = gc.kind;
    results["order"] = a.m;
    results["dim"] = a.n;
    results["known_q"] = gc.has_known_q ? json(gc.known_q) : json(nullptr);
    results["tensor"] = qzspec::tensor_to_json(gc.tensor);
    auto j = run_report("gen", std::move(cfg), a.seed, true, std::move(results), wall);
    write_output(j.dump(2) + "\n", a.out.out_path);
  } else {
    // Text mode emits a canonical tensor file ready for zeig/qeig.
    write_output(qzspec::serialize_tensor_file(gc.tensor), a.out.out_path);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetric tensor spectra: real Z-eigenpairs and complex Q-eigenpairs"};
  app.require_subcommand(1);

  ZeigArgs zeig;
  auto* zeig_cmd = app.add_subcommand("zeig", "Z-eigenpairs of a real symmetric tensor");
  zeig_cmd->add_option("file", zeig.file, "tensor file (field must be real)")->required();
  zeig_cmd->add_option("--oracle", zeig.oracle, "solver: power (multistart) or grid")
      ->check(CLI::IsMember({"power", "grid"}));
  zeig_cmd->add_option("--points", zeig.points, "grid sample count (0 = default)");
  attach_solver_flags(zeig_cmd, zeig.solver);
  attach_output_flags(zeig_cmd, zeig.out);

  QeigArgs qeig;
  auto* qeig_cmd = app.add_subcommand("qeig", "Q-eigenpairs via the real embedding");
  qeig_cmd->add_option("file", qeig.file, "tensor file (real or complex)")->required();
  qeig_cmd->add_option("--variant", qeig.variant, "embedding sign rule: phase-i or phase-neg-i")
      ->check(CLI::IsMember({"phase-i", "phase-neg-i"}));
  attach_solver_flags(qeig_cmd, qeig.solver);
  attach_output_flags(qeig_cmd, qeig.out);

  EmbedArgs embed;
  auto* embed_cmd =
      app.add_subcommand("embed", "emit the sign-patterned real embedding as a tensor file");
  embed_cmd->add_option("file", embed.file, "tensor file (real or complex)")->required();
  embed_cmd->add_option("--variant", embed.variant, "embedding sign rule: phase-i or phase-neg-i")
      ->check(CLI::IsMember({"phase-i", "phase-neg-i"}));
  attach_output_flags(embed_cmd, embed.out, /*with_vectors=*/false);

  VerifyArgs verify;
  auto* verify_cmd =
      app.add_subcommand("verify", "re-check a (tensor, pairs) bundle against the definitions");
  verify_cmd->add_option("file", verify.file, "bundle file with \"tensor\" and \"pairs\"")
      ->required();
  verify_cmd->add_option("--tol", verify.tol, "acceptance tolerance for the checks");
  verify_cmd->add_option("--starts", verify.solver.starts,
                         "multistart trials for the dominance solve (0 = automatic)");
  verify_cmd->add_option("--seed", verify.solver.seed, "seed for the dominance solve");
  attach_output_flags(verify_cmd, verify.out, /*with_vectors=*/false);

  RatioArgs ratio;
  auto* ratio_cmd =
      app.add_subcommand("ratio-search", "empirical search for the largest Q/Z ratio");
  ratio_cmd->add_option("--m", ratio.m, "tensor order")->required();
  ratio_cmd->add_option("--n", ratio.n, "tensor dimension")->required();
  ratio_cmd->add_option("--budget", ratio.budget, "number of sampled tensors");
  ratio_cmd->add_option("--sigma", ratio.sigma, "relative scale of witness perturbations");
  ratio_cmd->add_flag("--no-controls", ratio.no_controls,
                      "skip the equality-family control samples");
  ratio_cmd->add_option("--witness-in", ratio.witness_in,
                        "tensor file evaluated first to seed the incumbent");
  ratio_cmd->add_option("--witness-out", ratio.witness_out,
                        "write the best tensor here (plus .meta.json record)");
  attach_solver_flags(ratio_cmd, ratio.solver);
  attach_output_flags(ratio_cmd, ratio.out, /*with_vectors=*/false);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a tensor from an equality family");
  gen_cmd->add_option("--kind", gen.kind,
                      "diagonal, nonnegative, nonpositive, odeco, or half-split")
      ->required();
  gen_cmd->add_option("--m", gen.m, "tensor order");
  gen_cmd->add_option("--n", gen.n, "tensor dimension");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  attach_output_flags(gen_cmd, gen.out, /*with_vectors=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);  // prints help, exits 0
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (zeig_cmd->parsed()) return run_zeig(zeig);
    if (qeig_cmd->parsed()) return run_qeig(qeig);
    if (embed_cmd->parsed()) return run_embed(embed);
    if (verify_cmd->parsed()) return run_verify(verify);
    if (ratio_cmd->parsed()) return run_ratio(ratio);
    if (gen_cmd->parsed()) return run_gen(gen);
  } catch (const qzspec::solver_budget_error& e) {
    std::cerr << "solver budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;  // unreachable with require_subcommand(1)
}
