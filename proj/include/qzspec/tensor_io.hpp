#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qzspec/qspec.hpp"
#include "qzspec/sym_tensor.hpp"
#include "qzspec/zsolve.hpp"

namespace qzspec {

using json = nlohmann::ordered_json;

// Tensor files are JSON objects:
//   {"order": 3, "dim": 2, "field": "real", "symmetrize": false,
//    "entries": [{"idx": [1,1,2], "re": 0.4}, ...]}
// idx is 1-based. With symmetrize=false (canonical form) every idx must be
// sorted and appear once; with symmetrize=true arbitrary index order is
// accepted and orbit duplicates must agree exactly. "im" is only meaningful
// when field is "complex". Serialization always emits canonical form, so
// parse followed by serialize is the identity on canonical files.
struct TensorFile {
  std::string field;  // "real" or "complex"
  ComplexSymTensor tensor;
};

namespace detail {

inline void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const char* what) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok)
      throw std::invalid_argument(std::string(what) + ": unknown key \"" + it.key() + "\"");
  }
}

inline double number_at(const json& obj, const char* key, const char* what) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number())
    throw std::invalid_argument(std::string(what) + ": missing numeric \"" + key + "\"");
  return it->get<double>();
}

}  // namespace detail

inline TensorFile parse_tensor_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("tensor file: not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("tensor file: top level must be an object");
  detail::require_keys(j, {"order", "dim", "field", "symmetrize", "entries"}, "tensor file");

  if (!j.contains("order") || !j["order"].is_number_integer())
    throw std::invalid_argument("tensor file: \"order\" must be an integer");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw std::invalid_argument("tensor file: \"dim\" must be an integer");
  const int order = j["order"].get<int>();
  const int dim = j["dim"].get<int>();
  if (order < 2 || order > 12)
    throw std::invalid_argument("tensor file: order must be between 2 and 12");
  if (dim < 2 || dim > 32)
    throw std::invalid_argument("tensor file: dim must be between 2 and 32");

  if (!j.contains("field") || !j["field"].is_string())
    throw std::invalid_argument("tensor file: \"field\" must be \"real\" or \"complex\"");
  const std::string field = j["field"].get<std::string>();
  if (field != "real" && field != "complex")
    throw std::invalid_argument("tensor file: \"field\" must be \"real\" or \"complex\"");

  bool symmetrize_input = false;
  if (j.contains("symmetrize")) {
    if (!j["symmetrize"].is_boolean())
      throw std::invalid_argument("tensor file: \"symmetrize\" must be a boolean");
    symmetrize_input = j["symmetrize"].get<bool>();
  }

  if (!j.contains("entries") || !j["entries"].is_array())
    throw std::invalid_argument("tensor file: \"entries\" must be an array");

  std::vector<std::pair<MultiIndex, double>> re_raw, im_raw;
  std::map<MultiIndex, double> re_map, im_map;
  for (const auto& e : j["entries"]) {
    if (!e.is_object()) throw std::invalid_argument("tensor file: entries must be objects");
    detail::require_keys(e, {"idx", "re", "im"}, "tensor entry");
    if (!e.contains("idx") || !e["idx"].is_array() ||
        e["idx"].size() != static_cast<size_t>(order))
      throw std::invalid_argument("tensor entry: \"idx\" must be an array of length order");
    MultiIndex idx;
    for (const auto& c : e["idx"]) {
      if (!c.is_number_integer())
        throw std::invalid_argument("tensor entry: indices must be integers");
      int v = c.get<int>();
      if (v < 1 || v > dim)
        throw std::invalid_argument("tensor entry: index out of range (1-based)");
      idx.push_back(v);
    }
    double re = detail::number_at(e, "re", "tensor entry");
    double im = 0.0;
    if (e.contains("im")) {
      if (field != "complex")
        throw std::invalid_argument("tensor entry: \"im\" is only valid when field is complex");
      if (!e["im"].is_number())
        throw std::invalid_argument("tensor entry: \"im\" must be a number");
      im = e["im"].get<double>();
    }
    if (symmetrize_input) {
      re_raw.emplace_back(idx, re);
      im_raw.emplace_back(idx, im);
    } else {
      if (!is_canonical(idx))
        throw std::invalid_argument(
            "tensor entry: idx not sorted; canonical form requires sorted indices "
            "(or set symmetrize=true)");
      if (!re_map.emplace(idx, re).second)
        throw std::invalid_argument("tensor entry: duplicate idx in canonical form");
      im_map.emplace(idx, im);
    }
  }

  SymTensor re_t = symmetrize_input ? symmetrize(order, dim, re_raw, SymmetrizeMode::strict)
                                    : SymTensor(order, dim, std::move(re_map));
  SymTensor im_t = symmetrize_input ? symmetrize(order, dim, im_raw, SymmetrizeMode::strict)
                                    : SymTensor(order, dim, std::move(im_map));
  return TensorFile{field, ComplexSymTensor(std::move(re_t), std::move(im_t))};
}

inline json tensor_to_json(const ComplexSymTensor& t, const std::string& field) {
  json j;
  j["order"] = t.order();
  j["dim"] = t.dim();
  j["field"] = field;
  j["symmetrize"] = false;
  json entries = json::array();
  for (const auto& [key, val] : t.merged_orbits()) {
    json e;
    e["idx"] = key;
    e["re"] = val.real();
    if (field == "complex") e["im"] = val.imag();
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline json tensor_to_json(const SymTensor& t) {
  return tensor_to_json(ComplexSymTensor(t), "real");
}

inline std::string serialize_tensor_file(const ComplexSymTensor& t, const std::string& field) {
  if (field != "real" && field != "complex")
    throw std::invalid_argument("serialize_tensor_file: bad field");
  if (field == "real" && !t.imag_part().is_zero())
    throw std::invalid_argument("serialize_tensor_file: real field with nonzero imaginary part");
  return tensor_to_json(t, field).dump(2) + "\n";
}

inline std::string serialize_tensor_file(const SymTensor& t) {
  return serialize_tensor_file(ComplexSymTensor(t), "real");
}

// Eigenpair files for the verify command:
//   {"lambda": 5.0, "vector": [0.0, 1.0]}                      (real)
//   {"lambda": 5.0, "vector": [{"re": 0.5, "im": -0.8}, ...]}  (complex)
struct PairFile {
  double lambda = 0.0;
  bool complex_vector = false;
  std::vector<double> w;
  std::vector<std::complex<double>> z;
};

inline PairFile parse_pair_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("pair file: not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("pair file: top level must be an object");
  detail::require_keys(j, {"lambda", "vector"}, "pair file");
  PairFile out;
  out.lambda = detail::number_at(j, "lambda", "pair file");
  if (!j.contains("vector") || !j["vector"].is_array() || j["vector"].empty())
    throw std::invalid_argument("pair file: \"vector\" must be a non-empty array");
  const auto& vec = j["vector"];
  if (vec.front().is_object()) {
    out.complex_vector = true;
    for (const auto& c : vec) {
      if (!c.is_object())
        throw std::invalid_argument("pair file: mixed vector element types");
      detail::require_keys(c, {"re", "im"}, "pair vector element");
      double re = detail::number_at(c, "re", "pair vector element");
      double im = c.contains("im") ? detail::number_at(c, "im", "pair vector element") : 0.0;
      out.z.emplace_back(re, im);
    }
  } else {
    for (const auto& c : vec) {
      if (!c.is_number())
        throw std::invalid_argument("pair file: vector elements must be numbers");
      out.w.push_back(c.get<double>());
    }
  }
  return out;
}

// --- report serialization ------------------------------------------------

inline json solver_config_to_json(const SolverConfig& cfg) {
  json c;
  c["tol"] = cfg.tol;
  c["max_iter"] = cfg.max_iter;
  c["num_starts"] = cfg.num_starts;
  c["dedup_tol"] = cfg.dedup_tol;
  c["seed"] = cfg.seed;
  c["shift_mode"] = (cfg.shift_mode == ShiftMode::automatic) ? "automatic" : "fixed";
  c["shift_value"] = cfg.shift_value;
  return c;
}

inline json to_json(const SpectrumReport& rep, bool include_vectors = true) {
  json j;
  j["order"] = rep.order;
  j["dim"] = rep.dim;
  j["z_spectral_radius"] = rep.z_spectral_radius;
  j["heuristic_enumeration"] = rep.heuristic;
  j["observed_max_abs_value"] = rep.observed_max_abs_value;
  j["distinct_eigenvalues"] = rep.entries.size();
  j["config"] = solver_config_to_json(rep.config);
  j["trials"] = {{"total", rep.trials_total},
                 {"converged", rep.trials_converged},
                 {"shift_doublings", rep.shift_doublings}};
  json rows = json::array();
  for (const auto& e : rep.entries) {
    json r;
    r["lambda"] = e.lambda;
    r["residual"] = e.residual;
    r["cluster_size"] = e.cluster_size;
    r["source"] = to_string(e.source);
    if (include_vectors) r["vector"] = e.vec;
    rows.push_back(std::move(r));
  }
  j["eigenvalues"] = std::move(rows);
  j["wall_time_ms"] = rep.wall_time_ms;
  return j;
}

inline json complex_vector_to_json(const std::vector<std::complex<double>>& z) {
  json arr = json::array();
  for (const auto& c : z) arr.push_back({{"re", c.real()}, {"im", c.imag()}});
  return arr;
}

inline json to_json(const QSpectrumReport& rep, bool include_vectors = true) {
  json j;
  j["order"] = rep.order;
  j["dim"] = rep.dim;
  j["variant"] = to_string(rep.variant);
  j["entanglement_eigenvalue"] = rep.entanglement;
  j["count_bound"] = rep.bound;
  j["distinct_eigenvalues"] = rep.entries.size();
  j["pairing_ok"] = rep.pairing_ok;
  j["heuristic_enumeration"] = rep.heuristic;
  j["dropped_on_reverify"] = rep.dropped_on_reverify;
  json rows = json::array();
  for (const auto& e : rep.entries) {
    json r;
    r["lambda"] = e.lambda;
    r["residual"] = e.residual;
    r["cluster_size"] = e.cluster_size;
    if (include_vectors) r["vector"] = complex_vector_to_json(e.z);
    rows.push_back(std::move(r));
  }
  j["q_eigenvalues"] = std::move(rows);
  j["embedded"] = to_json(rep.embedded, include_vectors);
  j["wall_time_ms"] = rep.wall_time_ms;
  return j;
}

inline json to_json(const OverlapResult& r, bool include_vectors = true) {
  json j;
  j["value"] = r.value;
  j["trials"] = {{"total", r.trials_total}, {"converged", r.trials_converged}};
  if (include_vectors) j["vector"] = complex_vector_to_json(r.z);
  return j;
}

inline json to_json(const RatioReport& rep, bool include_vectors = true) {
  json j;
  j["order"] = rep.order;
  j["dim"] = rep.dim;
  j["budget"] = rep.budget;
  j["samples"] = rep.samples;
  j["seed"] = rep.seed;
  j["best_ratio"] = rep.best_ratio;
  if (rep.witness) {
    json w;
    w["family"] = rep.witness_family;
    w["q"] = rep.witness_q;
    w["z"] = rep.witness_z;
    w["tensor"] = tensor_to_json(*rep.witness);
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  json fams;
  for (const auto& [name, st] : rep.families) {
    fams[name] = {{"samples", st.samples}, {"best_ratio", st.best}};
  }
  j["families"] = std::move(fams);
  j["control_violation"] = rep.control_violation;
  j["ceiling"] = rep.ceiling_note;
  j["wall_time_ms"] = rep.wall_time_ms;
  (void)include_vectors;
  return j;
}

}  // namespace qzspec
