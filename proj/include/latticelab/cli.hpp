#ifndef LATTICELAB_CLI_HPP
#define LATTICELAB_CLI_HPP

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "latticelab/braids_links.hpp"
#include "latticelab/errors.hpp"
#include "latticelab/graphs_mckay.hpp"
#include "latticelab/lattice_models.hpp"
#include "latticelab/linalg.hpp"
#include "latticelab/serialize.hpp"
#include "latticelab/spin_chain.hpp"
#include "latticelab/temperley_lieb.hpp"
#include "latticelab/yang_baxter.hpp"

namespace latticelab::cli {

inline constexpr const char* kSchema = "lattice-lab/1";

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kParseFailure = 2, kDomainFailure = 3 };

/// Every leaf of the subcommand tree.
inline std::vector<std::vector<std::string>> command_tree() {
  return {{"ybe", "check"},        {"ybe", "props"},          {"ybe", "baxterize"},      {"tl", "dims"},
          {"tl", "check"},         {"tl", "gram"},            {"tl", "trace"},           {"lattice", "partition"},
          {"lattice", "transfer"}, {"lattice", "commute"},    {"lattice", "free-energy"}, {"chain", "hamiltonian"},
          {"chain", "spectrum"},   {"chain", "charges"},      {"braid", "invariant"},    {"braid", "check"},
          {"graph", "norm"},       {"graph", "perron"},       {"graph", "classify"},     {"graph", "roots"},
          {"graph", "indices"},    {"graph", "fuse"},         {"graph", "principal"},    {"graph", "dot"}};
}

// ---------------------------------------------------------------------------
// Parsing helpers

/// "0.8", "-1.5e-3", "0.7+0.3i", "2i", "-i".
inline Complex parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty complex number");
  auto number = [&raw](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0') throw ParseError("cannot parse number '" + raw + "'");
    return v;
  };
  if (s.back() != 'i' && s.back() != 'j') return {number(s), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string::npos) return {0.0, number(s)};
  return {number(s.substr(0, split)), number(s.substr(split))};
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& t : split_list(s)) {
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0') throw ParseError("cannot parse number '" + t + "'");
    out.push_back(v);
  }
  return out;
}

inline std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& t : split_list(s)) {
    char* end = nullptr;
    long v = std::strtol(t.c_str(), &end, 10);
    if (end == t.c_str() || *end != '\0') throw ParseError("cannot parse integer '" + t + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Report

struct Report {
  json inputs = json::object();
  json results = json::object();
  json checks = json::array();

  void check(const std::string& name, double residual, double tolerance, bool pass) {
    checks.push_back({{"name", name}, {"residual", residual}, {"tolerance", tolerance}, {"pass", pass}});
  }
  void check(const std::string& name, double residual, double tolerance) {
    check(name, residual, tolerance, residual <= tolerance);
  }
  void check_exact(const std::string& name, bool pass) {
    checks.push_back({{"name", name}, {"exact", true}, {"pass", pass}});
  }
  bool pass() const {
    for (const auto& c : checks)
      if (!c.at("pass").get<bool>()) return false;
    return true;
  }
};

namespace detail {

inline void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    bool scalar_leaf = !j.empty();
    for (const auto& v : j) scalar_leaf = scalar_leaf && v.is_primitive();
    if (scalar_leaf && j.size() <= 2) {
      out.emplace_back(prefix, j.dump());
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    if (j.empty()) out.emplace_back(prefix, "[]");
  } else {
    out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace detail

inline void emit(std::ostream& out, const json& doc, const std::string& format) {
  if (format == "json") {
    out << doc.dump(2) << "\n";
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  detail::flatten(doc, "", rows);
  if (format == "csv") {
    out << "key,value\n";
    for (const auto& [k, v] : rows) out << detail::csv_quote(k) << "," << detail::csv_quote(v) << "\n";
  } else {
    for (const auto& [k, v] : rows) out << k << ": " << v << "\n";
  }
}

// ---------------------------------------------------------------------------
// Options shared by the handlers

struct Options {
  std::string format = "json";
  std::uint64_t seed = 20240601;
  double tol = -1.0;  ///< < 0 means "command default"

  // numeric parameters (strings where complex values are allowed)
  std::string q = "0.8";
  std::string x = "1.3";
  std::string y = "0.6";
  std::string delta;
  std::string same = "2";
  std::string diff = "1";
  std::string v_same;
  std::string v_diff;
  std::string x_list = "1.1,1.7,0.4";
  std::string sizes = "2,3,4";
  std::string word;
  std::string catalog;
  std::string graph_file;
  std::string spec_file;
  std::string star;
  std::string model = "six-vertex";
  std::string rep = "diagram";
  std::string method = "both";
  std::string boundary = "periodic";
  std::string hbc = "periodic";
  std::string vbc = "periodic";
  std::string hvalues;
  std::string vvalues;
  std::string blocks = "2,3";
  std::string p_dims = "1,2";
  std::string q_dims = "4,1";
  std::string dims = "1,1,2";
  int order = 6;
  int n = -1;
  int k = -1;
  int m = -1;
  int width = 2;
  int height = 2;
  int sites = -1;
  int Q = 2;
  int grid = 0;
  int trials = 50;
  int n_max = 8;
  int strands = 0;
  int max_length = 6;
  double h = 1e-5;
  double perturb = 0.0;
  bool exact = false;
  bool richardson = false;
  bool matrix = false;
};

inline double tol_or(const Options& o, double fallback) { return o.tol >= 0.0 ? o.tol : fallback; }

inline json complex_list(const std::vector<Complex>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(to_json(z));
  return a;
}

// ---------------------------------------------------------------------------
// ybe

inline void ybe_check(const Options& o, Report& r) {
  const double tol = tol_or(o, 1e-10);
  auto family = [&](Complex q) {
    auto base = SpectralRMatrix<Complex>::six_vertex(q);
    if (o.perturb == 0.0) return base;
    const double eps = o.perturb;
    return SpectralRMatrix<Complex>{q,
                                    [base, eps](const Complex& x) {
                                      auto m = base(x);
                                      m(0, 0) += eps;
                                      return m;
                                    },
                                    "six-vertex (perturbed)"};
  };
  r.inputs["perturb"] = o.perturb;
  if (o.grid <= 0) {
    const Complex q = parse_complex(o.q), x = parse_complex(o.x), y = parse_complex(o.y);
    r.inputs["q"] = to_json(q);
    r.inputs["x"] = to_json(x);
    r.inputs["y"] = to_json(y);
    auto rep = check_ybe(family(q), x, y, tol);
    r.results["residual"] = rep.residual;
    r.results["scale"] = rep.scale;
    r.check("ybe", rep.residual, tol * std::max(1.0, rep.scale));
    return;
  }
  // g x g x g grid of unit-modulus (q, x, y), skipping points near poles
  r.inputs["grid"] = o.grid;
  r.inputs["seed"] = o.seed;
  std::mt19937_64 rng(o.seed);
  auto angle = [&rng] { return 2.0 * std::acos(-1.0) * static_cast<double>(rng() % 1000003) / 1000003.0; };
  std::vector<Complex> qs, xs, ys;
  for (int i = 0; i < o.grid; ++i) {
    qs.push_back(std::polar(1.0, angle()));
    xs.push_back(std::polar(1.0, angle()));
    ys.push_back(std::polar(1.0, angle()));
  }
  double worst = 0.0;
  std::size_t evaluated = 0, skipped = 0;
  for (const auto& q : qs) {
    const auto fam = family(q);
    for (const auto& x : xs)
      for (const auto& y : ys) {
        bool near_pole = false;
        for (const auto& z : {x, y, x * y})
          if (std::abs(six_vertex_denominator(q, z)) < 1e-3) near_pole = true;
        if (near_pole) {
          ++skipped;
          continue;
        }
        worst = std::max(worst, check_ybe(fam, x, y, tol).residual);
        ++evaluated;
      }
  }
  r.results["max_residual"] = worst;
  r.results["evaluated"] = evaluated;
  r.results["skipped_near_pole"] = skipped;
  r.check("ybe_grid", worst, tol);
}

inline void ybe_props(const Options& o, Report& r) {
  const double tol = tol_or(o, 1e-10);
  const Complex q = parse_complex(o.q), x = parse_complex(o.x);
  r.inputs["q"] = to_json(q);
  r.inputs["x"] = to_json(x);
  const auto id = Operator<Complex>::identity(2, 2);
  const double flip = max_abs_diff(six_vertex_r(Complex(1.0), x), flip_operator<Complex>(2));
  const double minus_id = max_abs_diff(six_vertex_r(q, Complex(1.0)), -id);
  const double inv = max_abs_diff(six_vertex_r(q, x) * six_vertex_r(q, 1.0 / x), id);
  const auto braid = check_braid_relation(braid_limit(q), tol);
  const double limit = max_abs_diff(six_vertex_r(q, Complex(1e-7)), braid_limit(q));
  r.results["flip_at_q_one"] = flip;
  r.results["minus_identity_at_x_one"] = minus_id;
  r.results["inverse_relation"] = inv;
  r.results["braid_relation"] = braid.residual;
  r.results["braid_limit_small_x"] = limit;
  r.results["braid_limit"] = to_json(braid_limit(q));
  r.check("property_i_flip", flip, tol);
  r.check("property_ii_minus_identity", minus_id, tol);
  r.check("property_iii_inverse", inv, tol);
  r.check("property_iv_braid_relation", braid.residual, tol * std::max(1.0, braid.scale));
  r.check("property_iv_small_x_limit", limit, 1e-5);
  if (o.exact) {
    const auto ex = exact_six_vertex_properties();
    r.check_exact("exact_property_i", ex.flip_at_q_one);
    r.check_exact("exact_property_ii", ex.minus_identity_at_x_one);
    r.check_exact("exact_property_iii", ex.inverse_relation);
    r.check_exact("exact_property_iv_limit", ex.braid_limit_is_limit);
    r.check_exact("exact_property_iv_braid", ex.braid_relation);
    r.check_exact("exact_ybe", ex.ybe);
  }
}

inline void ybe_baxterize(const Options& o, Report& r) {
  const double tol = tol_or(o, 1e-10);
  const Complex q = parse_complex(o.q), x = parse_complex(o.x), y = parse_complex(o.y);
  const Complex i(0.0, 1.0);
  r.inputs["q"] = to_json(q);
  r.inputs["x"] = to_json(x);
  r.inputs["y"] = to_json(y);
  const auto g2 = six_vertex_hecke(q, 2);
  const auto g3 = six_vertex_hecke(q, 3);
  const Complex scale = i * six_vertex_denominator(q, x);
  const double match = max_abs_diff(baxterize(g2, x, 1), six_vertex_r(q, x) * scale);
  const double norm = hecke_normalization_residual(g3);
  const auto ybe = check_ybe(baxterized_family(g2, q), x, y, tol);
  const auto baxter = check_baxter_condition(g3[1], g3[2], tol);
  const auto hecke = hecke_residual(hecke_from_tl(vertex_tl_local(q), q), q * q);
  r.results["k"] = to_json(g2.k);
  r.results["overall_scalar"] = to_json(scale);
  r.results["match_six_vertex"] = match;
  r.results["normalization"] = norm;
  r.results["ybe"] = ybe.residual;
  r.results["baxter_condition"] = baxter.residual;
  r.results["hecke_relation"] = hecke;
  r.check("baxterized_equals_scaled_six_vertex", match, tol * std::max(1.0, std::abs(scale)));
  r.check("normalization_G_plus_G_inverse", norm, tol);
  r.check("ybe_baxterized", ybe.residual, tol * std::max(1.0, ybe.scale));
  r.check("baxter_condition", baxter.residual, tol * std::max(1.0, baxter.scale));
  r.check("hecke_relation_qE_minus_1", hecke, tol);
}

// ---------------------------------------------------------------------------
// tl

inline void tl_dims(const Options& o, Report& r) {
  const int n = o.n < 0 ? 6 : o.n;
  if (n < 1 || n > 20) throw DomainError("tl dims supports 1 <= n <= 20");
  r.inputs["n"] = n;
  const auto b = bratteli(static_cast<std::size_t>(n));
  const auto& level = b.levels.back();
  r.results["catalan"] = catalan(static_cast<std::size_t>(n));
  r.results["component_sizes"] = level.sizes;
  r.results["component_labels"] = level.labels;
  r.results["dimension"] = level.dimension();
  r.check_exact("sum_of_squares_is_catalan", level.dimension() == catalan(static_cast<std::size_t>(n)));
  if (static_cast<std::size_t>(n) <= kMaxPairingStrands) {
    const auto count = enumerate_pairings(static_cast<std::size_t>(n)).size();
    r.results["pairings"] = count;
    r.check_exact("pairing_count_is_catalan", count == catalan(static_cast<std::size_t>(n)));
  }
}

inline void tl_check(const Options& o, Report& r) {
  r.inputs["rep"] = o.rep;
  if (o.rep == "diagram") {
    const int n = o.n < 0 ? 5 : o.n;
    r.inputs["n"] = n;
    const LaurentQ d = LaurentQ::var('d');
    const auto rel = tl_relations_residual(tl_generators(static_cast<std::size_t>(n), d), d);
    r.results["relation_instances"] = rel.instances;
    r.check_exact("tl_relations", rel.max() == 0.0);
    const int k = o.k < 0 ? 2 : o.k;
    const auto jp = jones_projection_check(static_cast<std::size_t>(k), static_cast<std::size_t>(o.max_length));
    r.inputs["projection_pairs"] = k;
    r.inputs["max_length"] = o.max_length;
    r.results["projection_words"] = jp.words;
    r.results["projection_failures"] = jp.failures;
    json phis = json::array();
    for (std::size_t w = 0; w < jp.results.size() && w < 16; ++w)
      phis.push_back({{"word", jp.results[w].word}, {"phi", jp.results[w].phi.to_string()}});
    r.results["phi_first_words"] = phis;
    r.check_exact("projection_PxP_proportional_to_P", jp.pass());
  } else if (o.rep == "potts") {
    const int sites = o.sites < 0 ? 3 : o.sites;
    r.inputs["Q"] = o.Q;
    r.inputs["sites"] = sites;
    const auto root = QuadSurd::sqrt(o.Q);
    const auto e = potts_representation(static_cast<std::size_t>(sites), static_cast<std::size_t>(o.Q), root);
    const auto rel = tl_relations_residual(e, root);
    r.results["generators"] = e.size();
    r.results["loop_value"] = root.to_string();
    r.check_exact("tl_relations", rel.max() == 0.0);
  } else if (o.rep == "vertex") {
    const int n = o.n < 0 ? 4 : o.n;
    r.inputs["n"] = n;
    const LaurentQ q = LaurentQ::var('q');
    const LaurentQ delta = q + q.inverse();
    for (auto gauge : {VertexGauge::displayed, VertexGauge::r_matrix}) {
      const std::string tag = gauge == VertexGauge::displayed ? "displayed" : "r_matrix";
      const auto e = vertex_representation(static_cast<std::size_t>(n), q, gauge);
      r.check_exact("tl_relations_" + tag, tl_relations_residual(e, delta).max() == 0.0);
      r.check_exact("homomorphism_words_le_5_" + tag,
                    tl_homomorphism_residual(static_cast<std::size_t>(n), e, delta, 5) == 0.0);
    }
    // R in span{Id, E}: exact with the prefactor cleared
    const LaurentQ x = LaurentQ::var('x');
    const auto num = six_vertex_numerator(q, x);
    const auto in_gauge = decompose_in_tl(num, vertex_tl_local(q, VertexGauge::r_matrix));
    const auto displayed = decompose_in_tl(num, vertex_tl_local(q, VertexGauge::displayed));
    r.results["r_matrix_gauge_alpha"] = in_gauge.alpha.to_string();
    r.results["r_matrix_gauge_beta"] = in_gauge.beta.to_string();
    r.results["displayed_gauge_residual"] = displayed.residual;
    r.check_exact("R_in_span_of_Id_and_E", in_gauge.residual == 0.0);
    const auto g = vertex_gauge_operator<LaurentQ>(static_cast<std::size_t>(n));
    const auto ed = vertex_representation(static_cast<std::size_t>(n), q, VertexGauge::displayed);
    const auto er = vertex_representation(static_cast<std::size_t>(n), q, VertexGauge::r_matrix);
    bool conj = true;
    for (std::size_t i = 0; i < ed.size(); ++i) conj = conj && g * ed[i] * g == er[i];
    r.check_exact("gauges_conjugate", conj);
  } else if (o.rep == "symmetric") {
    const int sites = o.sites < 0 ? 3 : o.sites;
    r.inputs["sites"] = sites;
    const auto minus = symmetric_group_tl<Rational>(static_cast<std::size_t>(sites), 2, -1);
    const auto plus = symmetric_group_tl<Rational>(static_cast<std::size_t>(sites), 2, 1);
    r.results["one_minus_flip_residual"] = tl_relations_residual(minus, Rational(2)).max();
    r.results["one_plus_flip_residual"] = tl_relations_residual(plus, Rational(2)).max();
    r.check_exact("one_minus_flip_tl_relations_delta_2", tl_relations_residual(minus, Rational(2)).max() == 0.0);
  } else {
    throw ParseError("unknown representation '" + o.rep + "' (diagram, potts, vertex, symmetric)");
  }
}

inline void tl_gram(const Options& o, Report& r) {
  const int n = o.n < 0 ? 4 : o.n;
  double delta = 0.0;
  if (!o.delta.empty()) {
    delta = parse_complex(o.delta).real();
  } else {
    const int k = o.k < 0 ? 4 : o.k;
    if (k < 3) throw DomainError("k must be at least 3");
    r.inputs["k"] = k;
    delta = 2.0 * std::cos(std::acos(-1.0) / k);
  }
  r.inputs["n"] = n;
  r.inputs["delta"] = delta;
  const double tol = tol_or(o, 1e-9);
  const double min_eig = gram_positivity(static_cast<std::size_t>(n), delta);
  r.results["min_eigenvalue"] = min_eig;
  r.results["basis_size"] = catalan(static_cast<std::size_t>(n));
  r.check("positive_semidefinite", std::max(0.0, -min_eig), tol);
}

inline void tl_trace(const Options& o, Report& r) {
  const int n = o.n < 0 ? 3 : o.n;
  r.inputs["n"] = n;
  const LaurentQ d = LaurentQ::var('d');
  std::vector<std::size_t> word;
  for (int i : parse_ints(o.word)) {
    if (i < 1 || i >= n) throw ParseError("generator index out of range for n strands");
    word.push_back(static_cast<std::size_t>(i));
  }
  r.inputs["word"] = word;
  const auto x = tl_word(static_cast<std::size_t>(n), word, d);
  r.results["trace"] = markov_trace(x).to_string();
  r.results["trace_terms"] = to_json(markov_trace(x));
  if (n <= 4) {
    const auto basis = enumerate_pairings(static_cast<std::size_t>(n));
    bool tracial = true;
    for (const auto& a : basis)
      for (const auto& b : basis) {
        auto ea = TLElement<LaurentQ>::basis(a, d), eb = TLElement<LaurentQ>::basis(b, d);
        tracial = tracial && markov_trace(ea * eb) == markov_trace(eb * ea);
      }
    r.check_exact("tracial_on_basis_pairs", tracial);
  }
  r.check_exact("trace_of_identity_is_one", markov_trace(TLElement<LaurentQ>::identity(static_cast<std::size_t>(n), d)) ==
                                                LaurentQ(1));
}

// ---------------------------------------------------------------------------
// lattice

namespace detail {

inline Boundary make_boundary(const std::string& kind, const std::string& values) {
  Boundary b{parse_boundary_kind(kind), {}};
  if (b.kind == BoundaryKind::fixed)
    for (int v : parse_ints(values)) {
      if (v < 0) throw ParseError("boundary values must be non-negative");
      b.values.push_back(static_cast<std::size_t>(v));
    }
  return b;
}

inline LatticeWindow make_window(const Options& o) {
  if (o.width < 1 || o.height < 0) throw ParseError("window needs width >= 1 and height >= 0");
  return {static_cast<std::size_t>(o.width), static_cast<std::size_t>(o.height), make_boundary(o.hbc, o.hvalues),
          make_boundary(o.vbc, o.vvalues)};
}

inline json window_json(const LatticeWindow& w) {
  return {{"width", w.width},
          {"height", w.height},
          {"horizontal", to_string(w.horizontal.kind)},
          {"vertical", to_string(w.vertical.kind)},
          {"horizontal_values", w.horizontal.values},
          {"vertical_values", w.vertical.values}};
}

inline VertexModelSpec<Complex> complex_vertex_model(const Options& o, Report& r) {
  if (!o.spec_file.empty()) {
    r.inputs["spec"] = o.spec_file;
    return vertex_spec_from_json<Complex>(read_json_file(o.spec_file));
  }
  r.inputs["model"] = o.model;
  if (o.model == "six-vertex") {
    const Complex q = parse_complex(o.q), x = parse_complex(o.x);
    r.inputs["q"] = to_json(q);
    r.inputs["x"] = to_json(x);
    return six_vertex_spec(q, x);
  }
  if (o.model == "ones") return VertexModelSpec<Complex>(2, std::vector<Complex>(16, Complex(1.0)));
  throw ParseError("unknown vertex model '" + o.model + "' (six-vertex, ones, potts, or --spec)");
}

}  // namespace detail

inline void lattice_partition(const Options& o, Report& r) {
  const auto w = detail::make_window(o);
  r.inputs["window"] = detail::window_json(w);
  const double tol = tol_or(o, 1e-10);
  const bool brute = o.method == "both" || o.method == "brute";
  const bool transfer = o.method == "both" || o.method == "transfer";
  if (!brute && !transfer) throw ParseError("method must be brute, transfer or both");

  json spec_json;
  bool is_spin = o.model == "potts";
  if (!o.spec_file.empty()) spec_json = read_json_file(o.spec_file), is_spin = spec_json.contains("Q");

  if (is_spin) {
    SpinModelSpec<Rational> spec;
    if (!o.spec_file.empty()) {
      r.inputs["spec"] = o.spec_file;
      spec = spin_spec_from_json<Rational>(spec_json);
    } else {
      r.inputs["model"] = "potts";
      r.inputs["Q"] = o.Q;
      r.inputs["same"] = o.same;
      r.inputs["diff"] = o.diff;
      spec = SpinModelSpec<Rational>::potts(static_cast<std::size_t>(o.Q), Rational::parse(o.same),
                                            Rational::parse(o.diff));
    }
    std::optional<Rational> zb, zt;
    if (brute) zb = partition_bruteforce_spin(spec, w), r.results["brute_force"] = zb->to_string();
    if (transfer) zt = partition_spin_via_transfer(spec, w), r.results["transfer"] = zt->to_string();
    if (zb && zt) r.check_exact("brute_force_equals_transfer", *zb == *zt);
    return;
  }

  if (o.exact) {
    if (o.spec_file.empty()) throw ParseError("--exact vertex models are read from --spec");
    r.inputs["spec"] = o.spec_file;
    const auto spec = vertex_spec_from_json<Rational>(spec_json);
    std::optional<Rational> zb, zt;
    if (brute) zb = partition_bruteforce_vertex(spec, w), r.results["brute_force"] = zb->to_string();
    if (transfer) zt = partition_via_transfer(spec, w), r.results["transfer"] = zt->to_string();
    if (zb && zt) r.check_exact("brute_force_equals_transfer", *zb == *zt);
    return;
  }
  const auto spec = detail::complex_vertex_model(o, r);
  r.results["allowed_configurations"] = spec.allowed_configurations();
  std::optional<Complex> zb, zt;
  if (brute) zb = partition_bruteforce_vertex(spec, w), r.results["brute_force"] = to_json(*zb);
  if (transfer) zt = partition_via_transfer(spec, w), r.results["transfer"] = to_json(*zt);
  if (zb && zt) {
    const double diff = std::abs(*zb - *zt);
    r.results["difference"] = diff;
    r.check("brute_force_equals_transfer", diff, tol * std::max(1.0, std::abs(*zb)));
  }
}

inline void lattice_transfer(const Options& o, Report& r) {
  const int n = o.n < 0 ? 3 : o.n;
  r.inputs["n"] = n;
  r.inputs["horizontal"] = o.hbc;
  const auto kind = parse_boundary_kind(o.hbc);
  std::size_t left = 0, right = 0;
  if (kind == BoundaryKind::fixed) {
    auto v = parse_ints(o.hvalues);
    if (v.size() != 2 || v[0] < 0 || v[1] < 0) throw ParseError("fixed horizontal boundary needs --hvalues left,right");
    left = static_cast<std::size_t>(v[0]);
    right = static_cast<std::size_t>(v[1]);
  }
  if (o.model == "potts") {
    const auto h = SpinModelSpec<Rational>::potts(static_cast<std::size_t>(o.Q), Rational::parse(o.same),
                                                  Rational::parse(o.diff));
    const auto v = SpinModelSpec<Rational>::potts(static_cast<std::size_t>(o.Q),
                                                  Rational::parse(o.v_same.empty() ? o.same : o.v_same),
                                                  Rational::parse(o.v_diff.empty() ? o.diff : o.v_diff));
    r.inputs["model"] = "potts";
    r.inputs["Q"] = o.Q;
    const auto t = spin_row_transfer(h, v, static_cast<std::size_t>(n), kind);
    r.results["transfer"] = to_json(t);
    // proportionality to the TL product
    const auto root = QuadSurd::sqrt(o.Q);
    auto lift = [](const Rational& x) { return QuadSurd(x); };
    const auto params = potts_tl_parameters(lift(h(0, 0)), lift(h(0, 1)), lift(v(0, 0)), lift(v(0, 1)), root,
                                            static_cast<std::size_t>(n));
    if (kind == BoundaryKind::free) {
      const auto tl = potts_transfer_tl(static_cast<std::size_t>(n), static_cast<std::size_t>(o.Q), params.a,
                                        params.b, root) *
                      params.scale;
      r.results["tl_a"] = params.a.to_string();
      r.results["tl_b"] = params.b.to_string();
      r.results["tl_scale"] = params.scale.to_string();
      r.check_exact("equals_scaled_tl_product", t.map<QuadSurd>(lift) == tl);
    }
    return;
  }
  const auto spec = detail::complex_vertex_model(o, r);
  const auto t = row_transfer_matrix(spec, static_cast<std::size_t>(n), kind, left, right);
  r.results["transfer"] = to_json(t);
  r.results["trace"] = to_json(t.trace());
  if (o.matrix) r.results["eigenvalues"] = complex_list(eigenvalues(t));
}

inline void lattice_commute(const Options& o, Report& r) {
  const Complex q = parse_complex(o.q), x = parse_complex(o.x), y = parse_complex(o.y);
  const int n = o.n < 0 ? 6 : o.n;
  if (n > 10) throw CapError("commuting transfer check is capped at n = 10");
  r.inputs["q"] = to_json(q);
  r.inputs["x"] = to_json(x);
  r.inputs["y"] = to_json(y);
  r.inputs["n"] = n;
  r.inputs["perturb"] = o.perturb;
  const double tol = tol_or(o, 1e-8);
  auto sy = six_vertex_spec(q, y);
  if (o.perturb != 0.0) sy(0, 1, 1, 0) += o.perturb;
  const auto tx = row_transfer_matrix(six_vertex_spec(q, x), static_cast<std::size_t>(n));
  const auto ty = row_transfer_matrix(sy, static_cast<std::size_t>(n));
  const double res = commutator_residual(tx, ty);
  r.results["residual"] = res;
  if (o.perturb == 0.0)
    r.check("transfer_matrices_commute", res, tol);
  else
    r.check("perturbed_weights_fail_to_commute", res, 1e-2, res > 1e-2);
}

inline void lattice_free_energy(const Options& o, Report& r) {
  std::vector<std::size_t> sizes;
  for (int s : parse_ints(o.sizes)) {
    if (s < 1) throw ParseError("sizes must be positive");
    sizes.push_back(static_cast<std::size_t>(s));
  }
  r.inputs["sizes"] = sizes;
  const auto spec = detail::complex_vertex_model(o, r);
  json rows = json::array();
  for (const auto& p : free_energy_estimate(spec, sizes))
    rows.push_back({{"n", p.n}, {"log_z_per_vertex", p.log_z_per_vertex}, {"log_lambda_per_vertex", p.log_lambda_per_vertex}});
  r.results["estimates"] = rows;
}

// ---------------------------------------------------------------------------
// chain

inline void chain_hamiltonian_cmd(const Options& o, Report& r) {
  const Complex q = parse_complex(o.q);
  const int n = o.n < 0 ? 4 : o.n;
  const auto boundary = parse_chain_boundary(o.boundary);
  r.inputs["q"] = to_json(q);
  r.inputs["n"] = n;
  r.inputs["boundary"] = o.boundary;
  const double tol = tol_or(o, 1e-10);
  const auto h = chain_hamiltonian(q, static_cast<std::size_t>(n), boundary);
  if (o.matrix) r.results["hamiltonian"] = to_json(h);
  r.results["local_term"] = to_json(local_term(q));
  const double herm = max_abs_diff(h, h.adjoint());
  r.results["hermiticity_residual"] = herm;
  const double pauli = max_abs_diff(local_term(q), local_term_from_pauli(q, Complex(0.0, 1.0)));
  r.check("pauli_decomposition", pauli, tol);
  const auto xxz = xxz_hamiltonian((q + 1.0 / q) * 0.5, static_cast<std::size_t>(n), boundary);
  const auto diff = h - xxz;
  const Complex shift = diff(0, 0);
  const double xxz_res = max_abs_diff(diff, Operator<Complex>::identity(2, static_cast<std::size_t>(n)) * shift);
  r.results["xxz_identity_shift"] = to_json(shift);
  r.results["xxz_residual"] = xxz_res;
  r.results["boundary_terms_residual"] = xxz_cancellation_check<Complex>(static_cast<std::size_t>(n), boundary);
  if (boundary == ChainBoundary::periodic) r.check("equals_xxz_plus_constant", xxz_res, tol);
  if (std::abs(q.imag()) == 0.0 && q.real() > 0.0) r.check("self_adjoint_for_real_q", herm, tol);
  if (o.exact) {
    const LaurentGaussian qs = LaurentGaussian::var('q');
    r.check_exact("pauli_decomposition_exact",
                  local_term(qs) == local_term_from_pauli(qs, LaurentGaussian(GaussianRational::i())));
    r.check_exact("boundary_terms_cancel_exact",
                  boundary_difference_sum<Rational>(static_cast<std::size_t>(n), ChainBoundary::periodic).is_zero());
  }
}

inline void chain_spectrum(const Options& o, Report& r) {
  const Complex q = parse_complex(o.q);
  const int n = o.n < 0 ? 4 : o.n;
  const auto boundary = parse_chain_boundary(o.boundary);
  r.inputs["q"] = to_json(q);
  r.inputs["n"] = n;
  r.inputs["boundary"] = o.boundary;
  const double tol = tol_or(o, 1e-9);
  const auto h = chain_hamiltonian(q, static_cast<std::size_t>(n), boundary);
  const auto ev = eigenvalues(h);
  r.results["eigenvalues"] = complex_list(ev);
  const auto ev_inv = eigenvalues(chain_hamiltonian(1.0 / q, static_cast<std::size_t>(n), boundary));
  double worst = 0.0;
  for (std::size_t i = 0; i < ev.size(); ++i) worst = std::max(worst, std::abs(ev[i] - ev_inv[i]));
  r.results["q_inverse_spectrum_difference"] = worst;
  const double flip = spin_flip_residual(q, static_cast<std::size_t>(n), boundary);
  r.results["spin_flip_residual"] = flip;
  r.check("q_inverse_is_spin_flip", flip, 1e-12);
  r.check("spectrum_symmetric_under_q_inverse", worst, tol * std::max(1.0, spectral_radius(h)));
}

inline void chain_charges(const Options& o, Report& r) {
  const Complex q = parse_complex(o.q);
  const int n = o.n < 0 ? 6 : o.n;
  const auto xs = parse_doubles(o.x_list);
  r.inputs["q"] = to_json(q);
  r.inputs["n"] = n;
  r.inputs["x_list"] = xs;
  r.inputs["h"] = o.h;
  r.inputs["richardson"] = o.richardson;
  r.inputs["seed"] = o.seed;
  const double tol = tol_or(o, 1e-8);
  const auto rep = conserved_charge_suite(q, static_cast<std::size_t>(n), xs, tol, o.seed);
  r.results["transfer_pairs"] = rep.transfer_pairs;
  r.results["transfer_hamiltonian"] = rep.transfer_hamiltonian;
  r.results["sz_hamiltonian"] = rep.sz_hamiltonian;
  r.results["sz_transfer"] = rep.sz_transfer;
  r.results["common_eigenvectors"] = rep.common_eigenvectors;
  r.results["dimension"] = rep.dimension;
  r.check("transfer_matrices_commute", rep.transfer_pairs, tol);
  r.check("transfer_commutes_with_hamiltonian", rep.transfer_hamiltonian, tol);
  r.check("hamiltonian_conserves_sz", rep.sz_hamiltonian, tol);
  r.check_exact("simultaneous_eigenbasis", rep.common_eigenvectors == rep.dimension);

  if (n <= 10) {
    const auto l = hamiltonian_from_log_derivative(q, static_cast<std::size_t>(n), o.h, o.richardson);
    const auto fit = affine_fit(l, chain_hamiltonian(q, static_cast<std::size_t>(n)));
    r.results["log_derivative_alpha"] = to_json(fit.alpha);
    r.results["log_derivative_beta"] = to_json(fit.beta);
    r.results["log_derivative_residual"] = fit.residual;
    r.check("log_derivative_matches_hamiltonian", fit.residual, 1e-5);
  }
}

// ---------------------------------------------------------------------------
// braid

inline void braid_invariant(const Options& o, Report& r) {
  if (o.word.empty() && o.spec_file.empty()) throw ParseError("give a braid with --word or --spec");
  const auto w = o.spec_file.empty()
                     ? BraidWord::parse(o.word, o.strands > 0 ? static_cast<std::size_t>(o.strands) : 0)
                     : braid_from_json(read_json_file(o.spec_file));
  r.inputs["word"] = w.to_string();
  r.inputs["strands"] = w.strands();
  const auto inv = link_invariant(w);
  r.results["writhe"] = w.writhe();
  r.results["bracket"] = inv.bracket.to_string();
  r.results["invariant"] = inv.invariant.to_string();
  r.results["invariant_terms"] = to_json(inv.invariant);
  r.results["jones"] = inv.jones.to_string();
  r.results["jones_variable"] = inv.half_integral ? "u = t^(1/2) = A^-2" : "t = A^-4";
  const auto mirror = link_invariant(w.mirror());
  auto bar = inv.invariant.substitute('A', LaurentQ::var('A', -1));
  r.check_exact("mirror_is_A_to_A_inverse", mirror.invariant == bar);
}

inline void braid_check(const Options& o, Report& r) {
  r.inputs["trials"] = o.trials;
  r.inputs["seed"] = o.seed;
  const auto suite = markov_move_suite(static_cast<std::size_t>(o.trials), o.seed);
  json trials = json::array();
  for (const auto& t : suite.trials)
    trials.push_back({{"word", to_json(t.word)}, {"moved", to_json(t.moved)}, {"move", t.move}, {"match", t.match}});
  r.results["markov_trials"] = trials;
  r.check_exact("markov_invariance", suite.pass());
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto rel = braid_relations_check(n);
    r.check_exact("braid_relations_vertex_n" + std::to_string(n), rel.vertex == 0.0);
    r.check_exact("braid_relations_tl_n" + std::to_string(n), rel.tl == 0.0);
  }
  const auto trefoil = link_invariant(BraidWord(2, {1, 1, 1}));
  r.check_exact("trefoil_differs_from_unknot", !(trefoil.invariant == LaurentQ(1)));
}

// ---------------------------------------------------------------------------
// graph

namespace detail {

inline MarkedGraph load_graph(const Options& o, Report& r) {
  MarkedGraph g;
  if (!o.graph_file.empty()) {
    r.inputs["graph"] = o.graph_file;
    g = graph_from_json(read_json_file(o.graph_file));
  } else {
    const std::string label = o.catalog.empty() ? "E8~" : o.catalog;
    r.inputs["catalog"] = label;
    g = catalog_graph(label);
  }
  if (!o.star.empty()) {
    r.inputs["star"] = o.star;
    if (o.star != "trivial") {
      auto v = parse_ints(o.star);
      if (v.size() != 1 || v[0] < 0) throw ParseError("--star takes a vertex index or 'trivial'");
      g.set_star(static_cast<std::size_t>(v[0]));
    } else if (!g.star()) {
      throw DomainError("graph has no trivial-representation vertex; give an index");
    }
  }
  return g;
}

}  // namespace detail

inline void graph_norm_cmd(const Options& o, Report& r) {
  const auto g = detail::load_graph(o, r);
  const double norm = graph_norm(g);
  r.results["norm"] = norm;
  r.results["vertices"] = g.size();
  if (auto lambda = g.lambda_block()) r.results["bipartite"] = true;
  else r.results["bipartite"] = false;
}

inline void graph_perron_cmd(const Options& o, Report& r) {
  const auto g = detail::load_graph(o, r);
  const auto v = perron_vector(g);
  r.results["perron_vector"] = v;
  r.results["norm"] = graph_norm(g);
  if (g.star()) {
    const auto ip = integral_perron(g);
    r.results["integer_vector"] = ip.values;
    r.results["sum_of_squares"] = ip.sum_of_squares;
    r.results["rounding_residual"] = ip.rounding_residual;
    r.check("integral_after_star_normalization", ip.rounding_residual, 1e-9);
    r.check_exact("exact_integer_eigenvector", ip.exact_eigenvector);
  }
}

inline void graph_classify_cmd(const Options& o, Report& r) {
  const auto g = detail::load_graph(o, r);
  const auto label = classify_norm2(g);
  r.results["classification"] = label;
  r.check_exact("recognized", label != "unrecognized");
}

inline void graph_roots_cmd(const Options& o, Report& r) {
  const auto g = detail::load_graph(o, r);
  const auto rg = root_gram(g);
  json gram = json::array();
  for (Eigen::Index i = 0; i < rg.gram.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < rg.gram.cols(); ++j) row.push_back(std::lround(rg.gram(i, j)));
    gram.push_back(row);
  }
  r.results["two_minus_omega"] = gram;
  r.results["min_eigenvalue"] = rg.min_eigenvalue;
  r.results["rank"] = rg.rank;
  r.results["vertices"] = g.size();
  r.results["reconstruction_error"] = rg.reconstruction_error;
  r.check("positive_semidefinite", std::max(0.0, -rg.min_eigenvalue), 1e-10);
  r.check("square_root_reconstructs", rg.reconstruction_error, 1e-8);
}

inline void graph_indices_cmd(const Options& o, Report& r) {
  const int n_max = o.n_max;
  r.inputs["n_max"] = n_max;
  json vals = json::array();
  for (auto [k, v] : admissible_indices(n_max)) vals.push_back({{"n", k}, {"index", v}});
  r.results["indices"] = vals;
}

inline void graph_fuse_cmd(const Options& o, Report& r) {
  const auto blocks = parse_ints(o.blocks), p = parse_ints(o.p_dims), q = parse_ints(o.q_dims);
  r.inputs["blocks"] = blocks;
  r.inputs["p"] = p;
  r.inputs["q"] = q;
  const auto t = connes_tensor_dims(blocks, p, q);
  json shapes = json::array();
  for (auto [a, b] : t.block_shapes) shapes.push_back(json::array({a, b}));
  r.results["block_shapes"] = shapes;
  r.results["total_dimension"] = t.total;
}

inline void graph_principal_cmd(const Options& o, Report& r) {
  const auto dims = parse_ints(o.dims);
  r.inputs["irrep_dims"] = dims;
  r.inputs["order"] = o.order;
  const auto gs = group_subfactor_graphs(dims, o.order);
  r.results["gamma"] = to_json(gs.gamma);
  r.results["gamma_check"] = to_json(gs.gamma_check);
  r.results["gamma_norm"] = graph_norm(gs.gamma);
  r.results["gamma_check_norm"] = graph_norm(gs.gamma_check);
}

inline void graph_dot_cmd(const Options& o, Report& r) {
  const auto g = detail::load_graph(o, r);
  r.results["graph"] = to_json(g);
  r.results["dot"] = g.to_dot();
}

// ---------------------------------------------------------------------------
// Entry point

/// Runs one command line (args excludes the program name). Output goes to
/// `out`, diagnostics to `err`. Returns the process exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lattice-lab: solvable lattice models, Temperley-Lieb algebras, braids and ADE graphs",
               "lattice_lab"};
  app.require_subcommand(1);
  Options o;
  std::string command;
  std::function<void(const Options&, Report&)> handler;

  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", o.seed, "seed for randomized suites");
  app.add_option("--tol", o.tol, "tolerance override");

  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& desc,
                  std::function<void(const Options&, Report&)> fn) {
    auto* sub = group->add_subcommand(name, desc);
    const std::string full = group->get_name() + " " + name;
    sub->callback([&, full, fn] {
      command = full;
      handler = fn;
    });
    sub->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--seed", o.seed);
    sub->add_option("--tol", o.tol);
    return sub;
  };

  auto* ybe = app.add_subcommand("ybe", "six-vertex R-matrix and Yang-Baxter checks")->require_subcommand(1);
  auto* ybe_c = leaf(ybe, "check", "Yang-Baxter residual at a point or over a random grid", ybe_check);
  ybe_c->add_option("--q", o.q);
  ybe_c->add_option("--x", o.x);
  ybe_c->add_option("--y", o.y);
  ybe_c->add_option("--grid", o.grid, "random g x g x g grid of unit-modulus parameters");
  ybe_c->add_option("--perturb", o.perturb, "add this to R(0,0) (negative control)");
  auto* ybe_p = leaf(ybe, "props", "properties R_1 = S, R(1) = -1, R(x)R(1/x) = 1, braid limit", ybe_props);
  ybe_p->add_option("--q", o.q);
  ybe_p->add_option("--x", o.x);
  ybe_p->add_flag("--exact", o.exact, "also verify symbolically in q, x, y");
  auto* ybe_b = leaf(ybe, "baxterize", "rebuild R(x) from normalized Hecke generators", ybe_baxterize);
  ybe_b->add_option("--q", o.q);
  ybe_b->add_option("--x", o.x);
  ybe_b->add_option("--y", o.y);

  auto* tl = app.add_subcommand("tl", "Temperley-Lieb algebra")->require_subcommand(1);
  leaf(tl, "dims", "Catalan dimensions and Bratteli component sizes", tl_dims)->add_option("--n", o.n);
  auto* tl_c = leaf(tl, "check", "TL relations in a representation", tl_check);
  tl_c->add_option("--rep", o.rep, "diagram, potts, vertex or symmetric");
  tl_c->add_option("--n", o.n);
  tl_c->add_option("--k", o.k, "projection P on 2k strands (diagram)");
  tl_c->add_option("--max-length", o.max_length);
  tl_c->add_option("--Q", o.Q);
  tl_c->add_option("--sites", o.sites);
  auto* tl_g = leaf(tl, "gram", "minimum eigenvalue of the trace Gram matrix", tl_gram);
  tl_g->add_option("--n", o.n);
  tl_g->add_option("--delta", o.delta);
  tl_g->add_option("--k", o.k, "use delta = 2 cos(pi/k)");
  auto* tl_t = leaf(tl, "trace", "Markov trace of a word in the generators", tl_trace);
  tl_t->add_option("--n", o.n);
  tl_t->add_option("--word", o.word, "comma-separated generator indices");

  auto* lat = app.add_subcommand("lattice", "vertex and spin models")->require_subcommand(1);
  auto add_model = [&](CLI::App* s) {
    s->add_option("--model", o.model, "six-vertex, ones or potts");
    s->add_option("--spec", o.spec_file, "model JSON file");
    s->add_option("--q", o.q);
    s->add_option("--x", o.x);
    s->add_option("--Q", o.Q);
    s->add_option("--same", o.same);
    s->add_option("--diff", o.diff);
  };
  auto* lat_p = leaf(lat, "partition", "partition function by state sum and by transfer matrices", lattice_partition);
  add_model(lat_p);
  lat_p->add_option("--width", o.width);
  lat_p->add_option("--height", o.height);
  lat_p->add_option("--hbc", o.hbc, "periodic, free or fixed");
  lat_p->add_option("--vbc", o.vbc, "periodic, free or fixed");
  lat_p->add_option("--hvalues", o.hvalues);
  lat_p->add_option("--vvalues", o.vvalues);
  lat_p->add_option("--method", o.method, "brute, transfer or both");
  lat_p->add_flag("--exact", o.exact, "rational weights from --spec");
  auto* lat_t = leaf(lat, "transfer", "row transfer matrix", lattice_transfer);
  add_model(lat_t);
  lat_t->add_option("--n", o.n);
  lat_t->add_option("--hbc", o.hbc);
  lat_t->add_option("--hvalues", o.hvalues);
  lat_t->add_option("--v-same", o.v_same);
  lat_t->add_option("--v-diff", o.v_diff);
  lat_t->add_flag("--eigenvalues", o.matrix);
  auto* lat_c = leaf(lat, "commute", "commutator of T(x) and T(y)", lattice_commute);
  lat_c->add_option("--q", o.q);
  lat_c->add_option("--x", o.x);
  lat_c->add_option("--y", o.y);
  lat_c->add_option("--n", o.n);
  lat_c->add_option("--perturb", o.perturb, "perturb one weight of T(y) (negative control)");
  auto* lat_f = leaf(lat, "free-energy", "(1/N) log Z on n x n tori", lattice_free_energy);
  add_model(lat_f);
  lat_f->add_option("--sizes", o.sizes);

  auto* ch = app.add_subcommand("chain", "spin-chain Hamiltonian")->require_subcommand(1);
  auto* ch_h = leaf(ch, "hamiltonian", "chain Hamiltonian, Pauli form, XXZ comparison", chain_hamiltonian_cmd);
  ch_h->add_option("--q", o.q);
  ch_h->add_option("--n", o.n);
  ch_h->add_option("--boundary", o.boundary, "periodic or open");
  ch_h->add_flag("--matrix", o.matrix, "include the full matrix");
  ch_h->add_flag("--exact", o.exact, "symbolic Pauli and cancellation checks");
  auto* ch_s = leaf(ch, "spectrum", "eigenvalues and q -> 1/q symmetry", chain_spectrum);
  ch_s->add_option("--q", o.q);
  ch_s->add_option("--n", o.n);
  ch_s->add_option("--boundary", o.boundary);
  auto* ch_c = leaf(ch, "charges", "commuting transfer matrices, Hamiltonian and log derivative", chain_charges);
  ch_c->add_option("--q", o.q);
  ch_c->add_option("--n", o.n);
  ch_c->add_option("--x-list", o.x_list);
  ch_c->add_option("--step", o.h, "finite-difference step");
  ch_c->add_flag("--richardson", o.richardson);

  auto* br = app.add_subcommand("braid", "braid representations and the link invariant")->require_subcommand(1);
  auto* br_i = leaf(br, "invariant", "invariant of the closure of a braid word", braid_invariant);
  br_i->add_option("--word", o.word, "e.g. \"s1 s2^-1 s1 s2^-1\"");
  br_i->add_option("--strands", o.strands);
  br_i->add_option("--spec", o.spec_file, "braid JSON file");
  leaf(br, "check", "Markov-move suite and braid relations", braid_check)->add_option("--trials", o.trials);

  auto* gr = app.add_subcommand("graph", "graph norms, Perron vectors, ADE classification")->require_subcommand(1);
  auto add_graph = [&](CLI::App* s) {
    s->add_option("--catalog", o.catalog, "built-in diagram, e.g. E8~, D~4, A5");
    s->add_option("--graph,--spec", o.graph_file, "graph JSON file");
    s->add_option("--star", o.star, "distinguished vertex index or 'trivial'");
  };
  add_graph(leaf(gr, "norm", "spectral radius of the adjacency matrix", graph_norm_cmd));
  add_graph(leaf(gr, "perron", "Perron-Frobenius vector", graph_perron_cmd));
  add_graph(leaf(gr, "classify", "identify a norm-2 graph", graph_classify_cmd));
  add_graph(leaf(gr, "roots", "2 - Omega and its square root", graph_roots_cmd));
  add_graph(leaf(gr, "dot", "Graphviz export", graph_dot_cmd));
  leaf(gr, "indices", "4 cos^2(pi/n) values", graph_indices_cmd)->add_option("--n-max", o.n_max);
  auto* gr_f = leaf(gr, "fuse", "finite-dimensional Connes tensor product dimensions", graph_fuse_cmd);
  gr_f->add_option("--blocks", o.blocks);
  gr_f->add_option("--p", o.p_dims);
  gr_f->add_option("--q", o.q_dims);
  auto* gr_pr = leaf(gr, "principal", "graphs from group irrep dimensions", graph_principal_cmd);
  gr_pr->add_option("--dims", o.dims);
  gr_pr->add_option("--order", o.order);

  std::vector<std::string> argv_store{"lattice_lab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseFailure;
  }

  auto fail = [&](const std::string& kind, const std::string& message, int code) {
    json doc = {{"schema", kSchema}, {"command", command}, {"error", {{"kind", kind}, {"message", message}}}};
    emit(out, doc, o.format);
    err << "error: " << message << "\n";
    return code;
  };
  Report report;
  try {
    handler(o, report);
  } catch (const ParseError& e) {
    return fail("parse", e.what(), kParseFailure);
  } catch (const ShapeError& e) {
    return fail("parse", e.what(), kParseFailure);
  } catch (const DomainError& e) {
    return fail(dynamic_cast<const PoleError*>(&e)  ? "pole"
                : dynamic_cast<const CapError*>(&e) ? "cap"
                                                    : "domain",
                e.what(), kDomainFailure);
  }
  json doc = {{"schema", kSchema},
              {"command", command},
              {"inputs", report.inputs},
              {"results", report.results},
              {"checks", report.checks},
              {"pass", report.pass()}};
  emit(out, doc, o.format);
  return report.pass() ? kOk : kCheckFailed;
}

}  // namespace latticelab::cli

#endif  // LATTICELAB_CLI_HPP
