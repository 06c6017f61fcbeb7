#pragma once

// Structured results for the verification driver: one ResidualReport per
// check, assembled into a RunReport that serializes to JSON.  Serialization
// uses an order-preserving JSON object so that two runs with the same
// configuration and seed produce byte-identical output; wall-clock timings
// are therefore kept out of the serialized form.

#include "topr/matrix.hpp"
#include "topr/partition.hpp"
#include "topr/transfer.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace topr {

using Json = nlohmann::ordered_json;

inline Json json_complex(const Complex& z) { return Json::array({z.real(), z.imag()}); }

inline Json json_partition(const Partition& lam) {
  Json j = Json::array();
  for (int p : lam.parts()) j.push_back(p);
  return j;
}

// Flat row-major dump of a complex operator, split into re/im arrays.
inline Json json_operator(const Matrix<Complex>& m) {
  Json re = Json::array(), im = Json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      re.push_back(m.at(i, j).real());
      im.push_back(m.at(i, j).imag());
    }
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

// Materialized chain data (sizes, inhomogeneities, twist) so a report is
// self-contained: re-running with the same values reproduces every residual.
inline Json json_context(const ChainContext<Complex>& ctx) {
  Json a = Json::array();
  for (const Complex& z : ctx.a) a.push_back(json_complex(z));
  Json g = Json::array();
  for (int i = 0; i < ctx.g.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < ctx.g.cols(); ++j) row.push_back(json_complex(ctx.g.at(i, j)));
    g.push_back(std::move(row));
  }
  Json j;
  j["N"] = ctx.N;
  j["n"] = ctx.n;
  j["a"] = std::move(a);
  j["g"] = std::move(g);
  return j;
}

struct ResidualReport {
  std::string name;
  bool pass = false;
  double absolute = 0.0;   // worst unscaled gap observed
  double relative = 0.0;   // worst gap scaled by max(1, reference norm)
  double tolerance = 0.0;  // threshold the check was judged against
  Json params = Json::object();
  std::string error;             // nonempty: the check aborted with this diagnostic
  double elapsed_seconds = 0.0;  // informational only; never serialized
};

inline Json to_json(const ResidualReport& r) {
  Json j;
  j["name"] = r.name;
  j["pass"] = r.pass;
  j["absolute"] = r.absolute;
  j["relative"] = r.relative;
  j["tolerance"] = r.tolerance;
  j["params"] = r.params;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

struct RunReport {
  std::uint64_t seed = 0;
  Json config = Json::object();
  std::vector<ResidualReport> checks;

  bool all_pass() const {
    for (const ResidualReport& r : checks)
      if (!r.pass) return false;
    return true;
  }

  Json to_json() const {
    Json arr = Json::array();
    for (const ResidualReport& r : checks) arr.push_back(topr::to_json(r));
    Json j;
    j["tool"] = "topr";
    j["format"] = 1;
    j["seed"] = seed;
    j["config"] = config;
    j["checks"] = std::move(arr);
    j["all_pass"] = all_pass();
    return j;
  }

  std::string serialize() const { return to_json().dump(2) + "\n"; }
};

}  // namespace topr
