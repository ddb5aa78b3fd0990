#ifndef LATTICELAB_SERIALIZE_HPP
#define LATTICELAB_SERIALIZE_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "latticelab/braids_links.hpp"
#include "latticelab/errors.hpp"
#include "latticelab/graphs_mckay.hpp"
#include "latticelab/lattice_models.hpp"
#include "latticelab/laurent.hpp"
#include "latticelab/operator.hpp"
#include "latticelab/scalar.hpp"
#include "latticelab/temperley_lieb.hpp"

// JSON formats
//
//   complex scalar   [re, im]
//   rational scalar  "p/q" (or "p")
//   Laurent scalar   [["coeff", {"var": exponent, ...}], ...] sorted by monomial
//   operator         {"d": d, "n": n, "field": "...", "rows": [[scalar, ...], ...]}
//   pairing          {"n": n, "pairs": [[a, b], ...]}
//   graph            {"vertices": k, "labels": [...], "edges": [[a, b, mult], ...], "star": v}
//   vertex model     {"d": d, "weights": [w_0000, w_0001, ...]}   index ((a d + b) d + c) d + north
//   spin model       {"Q": Q, "w": [[...], ...]}
//   braid            {"strands": n, "letters": [1, -2, ...]}

namespace latticelab {

using json = nlohmann::json;

inline json to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }
inline json to_json(double x) { return x; }
inline json to_json(const Rational& r) { return r.to_string(); }
inline json to_json(const GaussianRational& g) { return json::array({g.re.to_string(), g.im.to_string()}); }
inline json to_json(const QuadSurd& s) { return s.to_string(); }

template <class C>
json to_json(const Laurent<C>& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    json mono = json::object();
    for (const auto& [v, e] : m.powers()) mono[std::string(1, v)] = e;
    terms.push_back(json::array({to_json(c), mono}));
  }
  return terms;
}

template <class S>
json to_json(const Operator<S>& op) {
  json rows = json::array();
  for (std::size_t i = 0; i < op.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < op.dim(); ++j) row.push_back(to_json(op(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"d", op.local_dim()}, {"n", op.sites()}, {"field", ScalarTraits<S>::field_name}, {"rows", rows}};
}

inline json to_json(const PlanarPairing& p) {
  json pairs = json::array();
  for (auto [a, b] : p.pairs()) pairs.push_back(json::array({a, b}));
  return {{"n", p.strands()}, {"pairs", pairs}};
}

inline json to_json(const MarkedGraph& g) {
  json edges = json::array();
  for (auto [a, b, m] : g.edges()) edges.push_back(json::array({a, b, m}));
  json j = {{"vertices", g.size()}, {"labels", g.labels()}, {"edges", edges}};
  j["star"] = g.star() ? json(*g.star()) : json(nullptr);
  return j;
}

inline json to_json(const BraidWord& w) { return {{"strands", w.strands()}, {"letters", w.letters()}}; }

template <class S>
json to_json(const VertexModelSpec<S>& spec) {
  json w = json::array();
  for (const auto& x : spec.weights) w.push_back(to_json(x));
  return {{"d", spec.d}, {"weights", w}};
}

template <class S>
json to_json(const SpinModelSpec<S>& spec) {
  json rows = json::array();
  for (std::size_t i = 0; i < spec.Q; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < spec.Q; ++j) row.push_back(to_json(spec(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"Q", spec.Q}, {"w", rows}};
}

// ---------------------------------------------------------------------------
// Parsing

template <class S>
S scalar_from_json(const json& j);

template <>
inline Complex scalar_from_json<Complex>(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError("expected a number or [re, im], got " + j.dump());
}

template <>
inline Rational scalar_from_json<Rational>(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw ParseError("expected an integer or a \"p/q\" string, got " + j.dump());
}

template <class S>
Operator<S> operator_from_json(const json& j) {
  try {
    const auto d = j.at("d").get<std::size_t>();
    const auto n = j.at("n").get<std::size_t>();
    std::vector<std::vector<S>> rows;
    for (const auto& row : j.at("rows")) {
      std::vector<S> r;
      for (const auto& x : row) r.push_back(scalar_from_json<S>(x));
      rows.push_back(std::move(r));
    }
    return Operator<S>::from_rows(d, n, rows);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed operator JSON: ") + e.what());
  } catch (const ShapeError& e) {
    throw ParseError(std::string("malformed operator JSON: ") + e.what());
  }
}

inline PlanarPairing pairing_from_json(const json& j) {
  try {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& p : j.at("pairs")) pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    return PlanarPairing::from_pairs(j.at("n").get<std::size_t>(), pairs);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed pairing JSON: ") + e.what());
  } catch (const ShapeError& e) {
    throw ParseError(std::string("malformed pairing JSON: ") + e.what());
  }
}

inline MarkedGraph graph_from_json(const json& j) {
  try {
    const auto n = j.at("vertices").get<std::size_t>();
    std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
    for (const auto& e : j.at("edges")) {
      const auto a = e.at(0).get<std::size_t>();
      const auto b = e.at(1).get<std::size_t>();
      const int m = e.size() > 2 ? e.at(2).get<int>() : 1;
      if (a >= n || b >= n) throw ParseError("edge endpoint out of range");
      if (m < 0) throw ParseError("edge multiplicity must be non-negative");
      adj[a][b] += m;
      if (a != b) adj[b][a] += m;
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    std::optional<std::size_t> star;
    if (j.contains("star") && !j.at("star").is_null()) star = j.at("star").get<std::size_t>();
    return MarkedGraph(std::move(adj), std::move(labels), star);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed graph JSON: ") + e.what());
  } catch (const ShapeError& e) {
    throw ParseError(std::string("malformed graph JSON: ") + e.what());
  }
}

template <class S>
VertexModelSpec<S> vertex_spec_from_json(const json& j) {
  try {
    std::vector<S> w;
    for (const auto& x : j.at("weights")) w.push_back(scalar_from_json<S>(x));
    return VertexModelSpec<S>(j.at("d").get<std::size_t>(), std::move(w));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed vertex model JSON: ") + e.what());
  } catch (const ShapeError& e) {
    throw ParseError(std::string("malformed vertex model JSON: ") + e.what());
  }
}

template <class S>
SpinModelSpec<S> spin_spec_from_json(const json& j) {
  try {
    const auto q = j.at("Q").get<std::size_t>();
    std::vector<S> w;
    for (const auto& row : j.at("w")) {
      if (row.size() != q) throw ParseError("spin weight rows must have Q entries");
      for (const auto& x : row) w.push_back(scalar_from_json<S>(x));
    }
    return SpinModelSpec<S>(q, std::move(w));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed spin model JSON: ") + e.what());
  } catch (const ShapeError& e) {
    throw ParseError(std::string("malformed spin model JSON: ") + e.what());
  }
}

inline BraidWord braid_from_json(const json& j) {
  try {
    return BraidWord(j.at("strands").get<std::size_t>(), j.at("letters").get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed braid JSON: ") + e.what());
  } catch (const ShapeError& e) {
    throw ParseError(std::string("malformed braid JSON: ") + e.what());
  }
}

}  // namespace latticelab

#endif  // LATTICELAB_SERIALIZE_HPP
