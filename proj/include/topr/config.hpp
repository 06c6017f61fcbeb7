#pragma once

// Run configuration: a single JSON document controls sizes, seeds,
// tolerances, and check selection.  Randomness is derived from one root
// seed through named streams (one per check), so adding or removing a check
// never perturbs the draws seen by any other check.

#include "topr/matrix.hpp"
#include "topr/report.hpp"

#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace topr {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// splitmix64 finalizer: the standard 64-bit bit-mixer used to derive
// well-separated seeds from correlated inputs.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Named seed stream: root seed combined with an FNV-1a hash of the stream
// name, then mixed.  Every check draws from its own stream.
inline std::uint64_t stream_seed(std::uint64_t root, std::string_view name) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return splitmix64(root ^ h);
}

struct Config {
  int N = 3;      // chain rank for single-rank checks
  int N_max = 3;  // rank bound for sequence-of-ranks checks
  int n = 2;      // number of sites
  std::uint64_t seed = 42;

  std::optional<double> tolerance;         // global override of every default
  std::map<std::string, double> tolerances;  // per-check overrides
  std::vector<std::string> only;             // check selection; empty = all

  int weight_cap = 4;                 // label weight bound for sweeps
  std::array<int, 4> box{-3, 5, -3, 5};  // tuple window [a1min,a1max,a2min,a2max]
  int degree_cap = 5;                 // generating-series truncation degree
  int vars = 2;                       // generating-series variable count

  std::vector<Complex> a;  // explicit inhomogeneities (empty: seeded draw)
  Matrix<Complex> g;       // explicit twist (empty: seeded draw)
  std::optional<Complex> u, v;  // explicit evaluation points

  std::string out;  // report path; empty: stdout
};

namespace detail {

inline Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw config_error("config: " + where + " must be a number or an [re, im] pair");
}

}  // namespace detail

inline Config config_from_json(const Json& j) {
  if (!j.is_object()) throw config_error("config: top level must be a JSON object");
  static const std::set<std::string> known = {
      "N",   "N_max",      "n",    "seed", "tolerance", "tolerances", "only", "weight_cap",
      "box", "degree_cap", "vars", "a",    "g",         "u",          "v",    "out"};
  for (const auto& item : j.items())
    if (!known.count(item.key())) throw config_error("config: unknown key '" + item.key() + "'");

  Config c;
  auto get_int = [&](const char* key, int& slot) {
    if (j.contains(key)) {
      if (!j[key].is_number_integer()) throw config_error(std::string("config: ") + key + " must be an integer");
      slot = j[key].get<int>();
    }
  };
  get_int("N", c.N);
  get_int("N_max", c.N_max);
  get_int("n", c.n);
  get_int("weight_cap", c.weight_cap);
  get_int("degree_cap", c.degree_cap);
  get_int("vars", c.vars);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<std::int64_t>() < 0)
      throw config_error("config: seed must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("tolerance")) {
    if (!j["tolerance"].is_number()) throw config_error("config: tolerance must be a number");
    c.tolerance = j["tolerance"].get<double>();
  }
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) throw config_error("config: tolerances must be an object");
    for (const auto& item : j["tolerances"].items()) {
      if (!item.value().is_number()) throw config_error("config: tolerances entries must be numbers");
      c.tolerances[item.key()] = item.value().get<double>();
    }
  }
  if (j.contains("only")) {
    if (!j["only"].is_array()) throw config_error("config: only must be an array of check names");
    for (const auto& e : j["only"]) {
      if (!e.is_string()) throw config_error("config: only must be an array of check names");
      c.only.push_back(e.get<std::string>());
    }
  }
  if (j.contains("box")) {
    if (!j["box"].is_array() || j["box"].size() != 4)
      throw config_error("config: box must be [a1min, a1max, a2min, a2max]");
    for (int i = 0; i < 4; ++i) {
      if (!j["box"][i].is_number_integer()) throw config_error("config: box entries must be integers");
      c.box[static_cast<size_t>(i)] = j["box"][i].get<int>();
    }
  }
  if (j.contains("a")) {
    if (!j["a"].is_array()) throw config_error("config: a must be an array of complex values");
    for (size_t i = 0; i < j["a"].size(); ++i)
      c.a.push_back(detail::complex_from_json(j["a"][i], "a[" + std::to_string(i) + "]"));
  }
  if (j.contains("g")) {
    const Json& jg = j["g"];
    if (!jg.is_array() || jg.empty()) throw config_error("config: g must be a non-empty array");
    const int N = static_cast<int>(jg.size());
    c.g = Matrix<Complex>(N, N);
    if (jg[0].is_array() && jg[0].size() == static_cast<size_t>(N) &&
        (jg[0].empty() || !jg[0][0].is_number() || jg[0].size() != 2)) {
      // Full matrix: N rows of N complex entries.
      for (int r = 0; r < N; ++r) {
        if (!jg[static_cast<size_t>(r)].is_array() || jg[static_cast<size_t>(r)].size() != static_cast<size_t>(N))
          throw config_error("config: g rows must all have length N");
        for (int s = 0; s < N; ++s)
          c.g.at(r, s) = detail::complex_from_json(jg[static_cast<size_t>(r)][static_cast<size_t>(s)],
                                                   "g[" + std::to_string(r) + "][" + std::to_string(s) + "]");
      }
    } else {
      // Diagonal shorthand: a list of N complex eigenvalues.
      for (int r = 0; r < N; ++r)
        c.g.at(r, r) = detail::complex_from_json(jg[static_cast<size_t>(r)], "g[" + std::to_string(r) + "]");
    }
  }
  if (j.contains("u")) c.u = detail::complex_from_json(j["u"], "u");
  if (j.contains("v")) c.v = detail::complex_from_json(j["v"], "v");
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw config_error("config: out must be a string");
    c.out = j["out"].get<std::string>();
  }
  return c;
}

// Desk-scale caps: sizes beyond these make the permanent-style determinant
// expansions and projector constructions explode, so they are rejected
// up front rather than discovered as a hang.
inline void validate(const Config& c) {
  if (c.N < 1 || c.N > 4) throw config_error("config: N must lie in [1, 4]");
  if (c.N_max < 1 || c.N_max > 4) throw config_error("config: N_max must lie in [1, 4]");
  if (c.n < 0 || c.n > 4) throw config_error("config: n must lie in [0, 4]");
  if (c.weight_cap < 0 || c.weight_cap > 5) throw config_error("config: weight_cap must lie in [0, 5]");
  if (c.degree_cap < 1 || c.degree_cap > 6) throw config_error("config: degree_cap must lie in [1, 6]");
  if (c.vars < 1 || c.vars > 3) throw config_error("config: vars must lie in [1, 3]");
  if (c.box[0] > c.box[1] || c.box[2] > c.box[3]) throw config_error("config: box min exceeds max");
  if (c.box[1] - c.box[0] > 11 || c.box[3] - c.box[2] > 11)
    throw config_error("config: box wider than 12 cells per axis");
  if (!c.a.empty() && static_cast<int>(c.a.size()) != c.n)
    throw config_error("config: explicit a must list exactly n inhomogeneities");
  if (c.g.rows() != 0 && (c.g.rows() != c.N || c.g.cols() != c.N))
    throw config_error("config: explicit g must be an N x N matrix");
  for (const auto& [name, tol] : c.tolerances)
    if (tol < 0.0) throw config_error("config: tolerance for '" + name + "' is negative");
  if (c.tolerance && *c.tolerance < 0.0) throw config_error("config: tolerance is negative");
}

// The resolved configuration embedded at the head of every report.
inline Json materialize(const Config& c) {
  Json j;
  j["N"] = c.N;
  j["N_max"] = c.N_max;
  j["n"] = c.n;
  j["seed"] = c.seed;
  if (c.tolerance) j["tolerance"] = *c.tolerance;
  if (!c.tolerances.empty()) {
    Json t;
    for (const auto& [name, tol] : c.tolerances) t[name] = tol;
    j["tolerances"] = std::move(t);
  }
  if (!c.only.empty()) j["only"] = c.only;
  j["weight_cap"] = c.weight_cap;
  j["box"] = Json::array({c.box[0], c.box[1], c.box[2], c.box[3]});
  j["degree_cap"] = c.degree_cap;
  j["vars"] = c.vars;
  if (!c.a.empty()) {
    Json a = Json::array();
    for (const Complex& z : c.a) a.push_back(json_complex(z));
    j["a"] = std::move(a);
  }
  if (c.g.rows() != 0) {
    Json g = Json::array();
    for (int r = 0; r < c.g.rows(); ++r) {
      Json row = Json::array();
      for (int s = 0; s < c.g.cols(); ++s) row.push_back(json_complex(c.g.at(r, s)));
      g.push_back(std::move(row));
    }
    j["g"] = std::move(g);
  }
  if (c.u) j["u"] = json_complex(*c.u);
  if (c.v) j["v"] = json_complex(*c.v);
  return j;
}

// The one documented environment override: TOPR_TOL replaces the resolved
// tolerance of every check.  Returns empty when unset.
inline std::optional<double> env_tolerance() {
  const char* raw = std::getenv("TOPR_TOL");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || v < 0.0)
    throw config_error("TOPR_TOL must be a non-negative number");
  return v;
}

}  // namespace topr
