#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "linalg.hpp"
#include "polyring.hpp"

namespace chevalley {

using json = nlohmann::ordered_json;

inline json ring_to_json(const PolyRing& r) {
  return json{{"names", r.names}, {"weights", r.weights}, {"characteristic", r.characteristic}};
}

inline RingPtr ring_from_json(const json& j) {
  return ring_new(j.at("names").get<std::vector<std::string>>(), j.at("weights").get<std::vector<int>>(),
                  j.at("characteristic").get<std::uint64_t>());
}

inline json poly_to_json(const Poly& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) {
    std::vector<unsigned> exps(p.ring()->nvars());
    for (std::size_t i = 0; i < exps.size(); ++i) exps[i] = mono::exp(t.m, i);
    json jt{{"exps", exps}};
    if (p.ring()->characteristic) {
      jt["num"] = std::to_string(t.c.residue_value());
      jt["den"] = "1";
    } else {
      jt["num"] = t.c.numerator().get_str();
      jt["den"] = t.c.denominator().get_str();
    }
    terms.push_back(std::move(jt));
  }
  return json{{"ring", ring_to_json(*p.ring())}, {"terms", terms}};
}

// Reads into `ring` when given, otherwise into the ring described inline.
inline Poly poly_from_json(const json& j, RingPtr ring = nullptr) {
  if (!ring) ring = ring_from_json(j.at("ring"));
  else if (j.contains("ring") && !(*ring_from_json(j.at("ring")) == *ring))
    fail(ErrorCode::RingMismatch, "JSON polynomial belongs to another ring");
  std::vector<Term> ts;
  for (const auto& jt : j.at("terms")) {
    auto exps = jt.at("exps").get<std::vector<unsigned>>();
    if (exps.size() != ring->nvars()) fail(ErrorCode::ParseError, "exponent vector length mismatch");
    Mono m = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) m |= mono::single(i, exps[i]);
    Scalar c = Scalar::parse(jt.at("num").get<std::string>() + "/" + jt.at("den").get<std::string>(),
                             ring->characteristic);
    ts.push_back({m, 0, c});
  }
  return Poly::from_terms(ring, std::move(ts));
}

inline json poly_matrix_to_json(const PolyMat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json poly_vector_to_json(const std::vector<Poly>& v) {
  json out = json::array();
  for (const auto& p : v) out.push_back(p.to_string());
  return out;
}

}  // namespace chevalley
