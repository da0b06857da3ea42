#ifndef CQ_CLI_HPP
#define CQ_CLI_HPP

// The `cq` command-line front end. run() is callable in-process so tests can
// drive it without spawning the binary.
//
// Exit codes: 0 success, 2 usage or input error, 3 domain error, 1 internal.
// JSON output: {"meta": {...}, "result": ..., "schema": 1}, keys sorted;
// integers outside int64 are written as decimal strings.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cq/cells.hpp"
#include "cq/error.hpp"
#include "cq/exactmath.hpp"
#include "cq/matroid.hpp"
#include "cq/parallel.hpp"
#include "cq/quadrics.hpp"
#include "cq/schubert.hpp"
#include "cq/segre.hpp"
#include "cq/toric.hpp"

namespace cq::cli {

using nlohmann::json;

inline json to_json(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

inline json to_json(const Rational& v) {
  if (v.is_integer()) return to_json(v.to_integer());
  return v.str();
}

inline json to_json(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const UnivariatePolynomial& p, const std::string& var) {
  json c = json::array();
  for (const auto& x : p.coefficients()) c.push_back(to_json(x));
  return json{{"coefficients_ascending", c}, {"polynomial", p.str(var)}};
}

inline json to_json(const PolynomialMatrix& m) {
  json rows = json::array();
  for (const auto& r : m) {
    json row = json::array();
    for (const auto& e : r) row.push_back(e.str());
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const RationalMatrix& m) {
  json rows = json::array();
  for (const auto& r : m) {
    json row = json::array();
    for (const auto& e : r) row.push_back(to_json(e));
    rows.push_back(row);
  }
  return rows;
}

namespace detail {

inline std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

inline bool is_flat(const json& v) {
  return v.is_array() && std::none_of(v.begin(), v.end(), [](const json& e) { return e.is_structured(); });
}

// Scalars print bare, flat arrays space separated, arrays of arrays one row
// per line, objects as "key: value" lines with nested blocks indented.
inline void render_text(const json& v, std::ostream& out, const std::string& indent = "") {
  if (!v.is_structured()) {
    out << indent << scalar_text(v) << '\n';
  } else if (is_flat(v)) {
    out << indent;
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << scalar_text(v[i]);
    out << '\n';
  } else if (v.is_array()) {
    for (const auto& e : v) render_text(e, out, indent);
  } else {
    for (const auto& [k, e] : v.items()) {
      if (!e.is_structured() || is_flat(e)) {
        out << indent << k << ": ";
        render_text(e, out, "");
      } else {
        out << indent << k << ":\n";
        render_text(e, out, indent + "  ");
      }
    }
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<BigInt> parse_bigints(const std::vector<std::string>& items) {
  std::vector<BigInt> v;
  for (const auto& s : items) v.push_back(parse_bigint(s));
  return v;
}

inline std::map<std::string, Rational> parse_assignment(const std::vector<std::string>& items) {
  std::map<std::string, Rational> values;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("expected name=value, got '" + item + "'");
    values[item.substr(0, eq)] = Rational::parse(item.substr(eq + 1));
  }
  return values;
}

inline SegreData parse_segre(const std::string& arg) {
  std::string text = !arg.empty() && arg[0] == '@' ? read_file(arg.substr(1)) : arg;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("Segre data is not valid JSON: ") + e.what());
  }
  auto field = [&](const char* key) -> const json& {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("Segre data lacks \"") + key + "\"");
    return j.at(key);
  };
  auto integer = [](const json& v) -> BigInt {
    if (v.is_number_integer()) return make_bigint(v.get<long long>());
    if (v.is_string()) return parse_bigint(v.get<std::string>());
    throw ParseError("Segre data entries must be integers");
  };
  SegreData d;
  d.degF = integer(field("degF")).get_si();
  d.nL = integer(field("nL")).get_si();
  d.mY = integer(field("mY")).get_si();
  const json& s = field("s");
  if (!s.is_array()) throw ParseError("Segre data \"s\" must be a list");
  for (const auto& e : s) d.s.push_back(integer(e));
  return d;
}

struct MatroidSource {
  std::string graph, matrix;
  std::vector<int> uniform;
  bool dual = false;

  void add_to(CLI::App* app) {
    app->add_option("--graph", graph, "graph file ('v e' header, 1-based edges)");
    app->add_option("--matrix", matrix, "subspace file ('rows cols' header, rational rows)");
    app->add_option("--uniform", uniform, "uniform matroid r,n")->delimiter(',')->expected(2);
    app->add_flag("--dual", dual, "use the dual matroid");
  }

  Matroid build() const {
    int given = !graph.empty() + !matrix.empty() + !uniform.empty();
    if (given != 1) throw ParseError("give exactly one of --graph, --matrix, --uniform");
    std::optional<Matroid> m;
    if (!graph.empty()) {
      std::istringstream in(read_file(graph));
      m = matroid_from_graph(parse_graph(in));
    } else if (!matrix.empty()) {
      std::istringstream in(read_file(matrix));
      int cols = 0;
      RationalMatrix rows = parse_matrix(in, &cols);
      m = matroid_from_subspace(rows, cols);
    } else {
      m = uniform_matroid(uniform[0], uniform[1]);
    }
    return dual ? cq::dual(*m) : *m;
  }
};

struct FanSource {
  std::string file;
  int permutohedral = 0;

  void add_to(CLI::App* app) {
    app->add_option("--fan", file, "fan file ('rank #rays #cones' header)");
    app->add_option("--permutohedral", permutohedral, "use the permutohedral fan of dimension N");
  }

  Fan build() const {
    if (file.empty() == (permutohedral == 0)) throw ParseError("give exactly one of --fan, --permutohedral");
    if (!file.empty()) {
      std::istringstream in(read_file(file));
      return parse_fan(in);
    }
    return permutohedral_fan(permutohedral);
  }
};

inline int ray_index(const Fan& fan, const std::string& token) {
  for (std::size_t r = 0; r < fan.ray_labels.size(); ++r)
    if (fan.ray_labels[r] == token) return static_cast<int>(r);
  try {
    std::size_t used = 0;
    int v = std::stoi(token, &used);
    if (used == token.size() && v >= 1 && v <= static_cast<int>(fan.rays.size())) return v - 1;
  } catch (const std::exception&) {
  }
  throw ParseError("unknown ray '" + token + "'");
}

inline json echo_params(const CLI::App* app) {
  json params = json::object();
  for (const CLI::App* a = app; a; a = a->get_parent())
    for (const CLI::Option* opt : a->get_options()) {
      if (opt->count() == 0 || opt->get_name() == "--help") continue;
      std::string name = opt->get_single_name();
      if (name == "format" || name == "timing" || name == "jobs") continue;
      if (opt->get_type_size() == 0) {
        params[name] = true;
        continue;
      }
      json values = json::array();
      for (const auto& r : opt->results()) {
        try {
          std::size_t used = 0;
          long long v = std::stoll(r, &used);
          if (used == r.size()) {
            values.push_back(v);
            continue;
          }
        } catch (const std::exception&) {
        }
        values.push_back(r);
      }
      params[name] = values.size() == 1 ? values[0] : values;
    }
  return params;
}

} // namespace detail

/// Runs one command; args exclude the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact intersection numbers on complete quadrics, matroids, toric varieties and BB cells", "cq"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  unsigned jobs = 1;
  bool timing = false;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", jobs, "worker threads for sampled computations")->check(CLI::Range(1u, 256u));
  app.add_flag("--timing", timing, "report wall time in the json meta block");

  std::function<json()> action;
  const CLI::App* chosen = nullptr;
  auto bind = [&](CLI::App* sub, std::function<json()> fn) {
    // A parent's callback also fires after its child's; the child wins.
    sub->callback([&, sub, fn] {
      if (!sub->get_subcommands().empty()) return;
      chosen = sub;
      action = fn;
    });
  };

  // complete quadrics
  int n = 0, d = 0, m = 0, r = 0, c = 0, s = 0, b = 0, i = 0;
  bool d_given = false;
  auto* phi_cmd = app.add_subcommand("phi", "ML-degree phi(n,d); the whole row when --d is omitted");
  phi_cmd->add_option("--n", n)->required();
  auto* phi_d = phi_cmd->add_option("--d", d);
  bind(phi_cmd, [&] {
    d_given = phi_d->count() > 0;
    if (d_given) return to_json(phi(n, d));
    if (n < 2) throw DomainError("phi needs n >= 2");
    const int top = cq_dimension(n) + 1;
    return to_json(parallel_map(top, jobs, [&](std::size_t k) { return phi(n, static_cast<int>(k) + 1); }));
  });

  auto* phi_poly = app.add_subcommand("phi-poly", "phi(., d) as a polynomial in n");
  phi_poly->add_option("--d", d)->required();
  bind(phi_poly, [&] { return to_json(phi_polynomial(d, jobs), "n"); });

  auto* delta_cmd = app.add_subcommand("delta", "algebraic degree of semidefinite programming delta(m,n,r)");
  delta_cmd->add_option("--m", m)->required();
  delta_cmd->add_option("--n", n)->required();
  delta_cmd->add_option("--r", r)->required();
  bind(delta_cmd, [&] { return to_json(delta(m, n, r)); });

  auto* delta_poly = app.add_subcommand("delta-poly", "delta(m, n, n-s) as a polynomial in n");
  delta_poly->add_option("--m", m)->required();
  delta_poly->add_option("--s", s)->required();
  bind(delta_poly, [&] { return to_json(delta_polynomial(m, s, jobs), "n"); });

  auto* phi_c_cmd = app.add_subcommand("phi-c", "\\int L_c L_1^{C(n+1,2)-d-1} L_{n-1}^{d-1}");
  phi_c_cmd->add_option("--n", n)->required();
  phi_c_cmd->add_option("--c", c)->required();
  phi_c_cmd->add_option("--d", d)->required();
  bind(phi_c_cmd, [&] { return to_json(phi_c(n, c, d)); });

  std::vector<int> a_exp, b_exp;
  auto* product = app.add_subcommand("product", "\\int_{CQ_n} S^a L^b for raw exponent vectors");
  product->add_option("--n", n)->required();
  product->add_option("--a", a_exp, "exponents of S_1..S_{n-1}")->delimiter(',');
  product->add_option("--b", b_exp, "exponents of L_1..L_{n-1}")->delimiter(',');
  bind(product, [&] {
    std::vector<int> av = a_exp.empty() ? std::vector<int>(std::max(0, n - 1), 0) : a_exp;
    std::vector<int> bv = b_exp.empty() ? std::vector<int>(std::max(0, n - 1), 0) : b_exp;
    return to_json(intersection_product(CQProduct{n, av, bv}));
  });

  auto* pataki = app.add_subcommand("pataki", "whether (m,n,r) lies in the Pataki window");
  pataki->add_option("--m", m)->required();
  pataki->add_option("--n", n)->required();
  pataki->add_option("--r", r)->required();
  bind(pataki, [&] { return json(pataki_nonzero(m, n, r)); });

  std::vector<int> flag_b;
  auto* flag = app.add_subcommand("flag-integral", "\\int_{Fl_n} L_1^{b_1} ... L_{n-1}^{b_{n-1}}");
  flag->add_option("--n", n)->required();
  flag->add_option("--b", flag_b)->delimiter(',')->required();
  bind(flag, [&] { return to_json(flag_integral(n, flag_b)); });

  std::vector<int> perm;
  auto* monk = app.add_subcommand("monk", "sigma_{s_i} * sigma_w by Monk's rule");
  monk->add_option("--i", i)->required();
  monk->add_option("--w", perm, "one-line notation, e.g. 1,3,2")->delimiter(',')->required();
  bind(monk, [&] {
    json terms = json::object();
    const SchubertCombination product = monk_multiply(i, Permutation(perm));
    for (const auto& [v, coeff] : product.terms()) terms[v.str()] = to_json(coeff);
    return terms;
  });

  auto* hyper = app.add_subcommand("hypersurface-count", "smooth degree-d hypersurfaces in P^n tangent to b hyperplanes");
  hyper->add_option("--d", d)->required();
  hyper->add_option("--n", n)->required();
  hyper->add_option("--b", b)->required();
  bind(hyper, [&] { return to_json(hypersurface_characteristic_number(d, n, b)); });

  // matroids
  auto* matroid = app.add_subcommand("matroid", "characteristic polynomials of matroids");
  matroid->require_subcommand(1);
  detail::MatroidSource source;
  auto* charpoly = matroid->add_subcommand("charpoly", "characteristic polynomial, descending coefficients");
  source.add_to(charpoly);
  bind(charpoly, [&] {
    Matroid mat = source.build();
    UnivariatePolynomial chi = characteristic_polynomial(mat);
    json coeffs = json::array();
    for (int k = chi.degree(); k >= 0; --k) coeffs.push_back(to_json(chi.coefficient(k)));
    json reduced = nullptr;
    if (mat.rank() >= 1 && !mat.has_loop()) reduced = to_json(reduced_characteristic_coefficients(mat));
    return json{{"coefficients", coeffs}, {"polynomial", chi.str("t")}, {"reduced", reduced}};
  });
  auto* reduced = matroid->add_subcommand("reduced", "unsigned coefficients of chi/(t-1), top degree first");
  source.add_to(reduced);
  bind(reduced, [&] { return to_json(reduced_characteristic_coefficients(source.build())); });
  std::string graph_file;
  auto* chromatic = matroid->add_subcommand("chromatic", "chromatic polynomial of a graph");
  chromatic->add_option("--graph", graph_file)->required();
  bind(chromatic, [&] {
    std::istringstream in(detail::read_file(graph_file));
    UnivariatePolynomial p = chromatic_polynomial(parse_graph(in));
    json coeffs = json::array();
    for (int k = p.degree(); k >= 0; --k) coeffs.push_back(to_json(p.coefficient(k)));
    return json{{"coefficients", coeffs}, {"polynomial", p.str("q")}};
  });
  std::vector<std::string> nu_list;
  auto* euler = matroid->add_subcommand("euler", "sum_i (-1)^i nu_i, from --nu or a matroid");
  euler->add_option("--nu", nu_list)->delimiter(',');
  source.add_to(euler);
  bind(euler, [&] {
    std::vector<BigInt> nu = nu_list.empty() ? reduced_characteristic_coefficients(source.build()) : detail::parse_bigints(nu_list);
    return to_json(euler_characteristic_complement(nu));
  });

  // toric
  auto* toric = app.add_subcommand("toric", "Chow rings of smooth complete toric varieties");
  toric->require_subcommand(1);
  detail::FanSource fan_source;
  auto* fan_check = toric->add_subcommand("fan-check", "smoothness and completeness of a fan");
  fan_source.add_to(fan_check);
  bind(fan_check, [&] {
    Fan fan = fan_source.build();
    return json{{"complete", is_complete(fan)}, {"cones", fan.maximal_cones.size()}, {"rank", fan.rank}, {"rays", fan.rays.size()}, {"smooth", is_smooth(fan)}};
  });
  auto* mu_cmd = toric->add_subcommand("mu-generic", "projective degrees of the Cremona map on P^n");
  mu_cmd->add_option("--n", n)->required();
  bind(mu_cmd, [&] { return to_json(mu_generic(n)); });
  std::vector<std::string> ray_tokens;
  std::vector<std::vector<std::string>> divisors;
  auto* integral = toric->add_subcommand("integral", "degree of a product of rays and divisors");
  fan_source.add_to(integral);
  integral->add_option("--ray", ray_tokens, "ray label or 1-based index; repeatable")->delimiter(',');
  integral->add_option("--divisor", divisors, "ray coefficients of one divisor; repeatable")->delimiter(',')->allow_extra_args(false);
  bind(integral, [&] {
    Fan fan = fan_source.build();
    ToricChowRing ring(fan);
    ToricClass cls = ring.one();
    for (const auto& t : ray_tokens) cls = ring.multiply_by_ray(cls, detail::ray_index(ring.fan(), t));
    for (const auto& dv : divisors) {
      std::vector<Rational> coeffs;
      for (const auto& x : dv) coeffs.push_back(Rational::parse(x));
      cls = ring.multiply_by_divisor(cls, coeffs);
    }
    return to_json(ring.integral(cls));
  });

  // cells
  auto* cells = app.add_subcommand("cells", "Bialynicki-Birula cells of CQ_n");
  bool histogram = false;
  std::string sigma_text;
  cells->add_option("--n", n);
  cells->add_flag("--histogram", histogram, "dimensions of the Chow groups A_m, m = 0, 1, ...");
  bind(cells, [&] {
    if (!histogram || n == 0) throw CLI::CallForHelp();
    return to_json(chow_group_dimensions(n));
  });
  auto* enumerate = cells->add_subcommand("enumerate", "all 2-permutations with their weights");
  enumerate->add_option("--n", n)->required();
  bind(enumerate, [&] {
    json list = json::array();
    for (const auto& tp : enumerate_two_permutations(n)) list.push_back(json::array({tp.str(), weight(tp)}));
    return list;
  });
  auto* weight_cmd = cells->add_subcommand("weight", "cell dimension of a 2-permutation");
  weight_cmd->add_option("--sigma", sigma_text, "e.g. 2|13")->required();
  bind(weight_cmd, [&] { return json(weight(TwoPermutation::parse(sigma_text))); });
  auto* param = cells->add_subcommand("param", "affine parametrization X, Y, Y~ and (A, B)");
  param->add_option("--sigma", sigma_text)->required();
  bind(param, [&] {
    CellParametrization p = cell_parametrization(TwoPermutation::parse(sigma_text));
    auto [am, bm] = cell_matrices(p);
    return json{{"A", to_json(am)}, {"B", to_json(bm)}, {"X", to_json(p.X)}, {"Y", to_json(p.Y)}, {"Y_companion", to_json(p.Y_companion)},
                {"free_variables", p.free_variables()}, {"sigma", p.sigma.str()}};
  });
  std::vector<std::string> assignment;
  unsigned long seed = 1;
  auto* verify = cells->add_subcommand("verify", "check A B = lambda I at a point of the cell");
  verify->add_option("--sigma", sigma_text)->required();
  verify->add_option("--values", assignment, "name=value pairs; random nonzero values when omitted")->delimiter(',');
  verify->add_option("--seed", seed, "seed for the random values");
  bind(verify, [&] {
    TwoPermutation tp = TwoPermutation::parse(sigma_text);
    CellParametrization p = cell_parametrization(tp);
    std::map<std::string, Rational> values;
    if (assignment.empty()) {
      std::mt19937_64 rng(seed);
      values = random_cell_values(p, rng);
    } else {
      values = detail::parse_assignment(assignment);
    }
    bool ok = tp.n() == 3 ? verify_cell_point(tp, values) : verify_generic_point(tp, values);
    CellPoint pt = evaluate_cell_point(p, values);
    json vals = json::object();
    for (const auto& [k, v] : values) vals[k] = to_json(v);
    return json{{"check", tp.n() == 3 ? "graph" : "generic"}, {"lambda", pt.lambda ? to_json(*pt.lambda) : json(nullptr)}, {"ok", ok}, {"values", vals}};
  });

  // segre
  auto* segre = app.add_subcommand("segre", "projective degrees from Segre-class data");
  segre->require_subcommand(1);
  std::string segre_data;
  bool i_given = false;
  auto add_segre = [&](CLI::App* sub) {
    sub->add_option("--data", segre_data, "JSON {\"degF\":..,\"nL\":..,\"mY\":..,\"s\":[..]} or @file")->required();
    return sub->add_option("--i", i, "index; all 0..nL when omitted");
  };
  auto* mu_seg = segre->add_subcommand("mu", "mu_i from the Segre degrees of Y in P(L)");
  auto* mu_i = add_segre(mu_seg);
  auto* nu_seg = segre->add_subcommand("nu", "nu_i from the Segre degrees of the restricted base locus");
  auto* nu_i = add_segre(nu_seg);
  auto evaluator = [&](CLI::Option* opt, BigInt (*fn)(const SegreData&, long)) {
    return [&, opt, fn]() -> json {
      SegreData data = detail::parse_segre(segre_data);
      i_given = opt->count() > 0;
      if (i_given) return to_json(fn(data, i));
      std::vector<BigInt> all;
      for (long k = 0; k <= data.nL; ++k) all.push_back(fn(data, k));
      return to_json(all);
    };
  };
  bind(mu_seg, evaluator(mu_i, &mu_from_segre));
  bind(nu_seg, evaluator(nu_i, &nu_from_segre));
  std::string mu_a;
  long ambient = 0;
  std::vector<std::string> s_list;
  auto* correct = segre->add_subcommand("correct", "nu_a = mu_a - sum_j C(n,j) s_j");
  correct->add_option("--mu", mu_a)->required();
  correct->add_option("--n", ambient)->required();
  correct->add_option("--s", s_list, "s_0,...,s_b; empty for an empty intersection")->delimiter(',');
  bind(correct, [&] {
    std::vector<BigInt> sv = detail::parse_bigints(s_list);
    return to_json(nu_from_mu_correction(parse_bigint(mu_a), ambient, static_cast<long>(sv.size()) - 1, sv));
  });
  std::vector<std::string> mu_list;
  auto* compare = segre->add_subcommand("compare", "nu <= mu pointwise, equality iff equal last entries");
  compare->add_option("--mu", mu_list)->delimiter(',')->required();
  compare->add_option("--nu", nu_list)->delimiter(',')->required();
  bind(compare, [&] { return json(mu_nu_inequality_check(detail::parse_bigints(mu_list), detail::parse_bigints(nu_list))); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    if (!action) throw CLI::CallForHelp();
    auto start = std::chrono::steady_clock::now();
    json result = action();
    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (format == "json") {
      std::string command;
      for (const CLI::App* a = chosen; a && a->get_parent(); a = a->get_parent()) command = a->get_name() + (command.empty() ? "" : " " + command);
      json meta{{"command", command}, {"params", detail::echo_params(chosen)}};
      if (timing) meta["wall_ms"] = elapsed;
      out << json{{"meta", meta}, {"result", result}, {"schema", 1}}.dump(2) << '\n';
    } else {
      detail::render_text(result, out);
      if (timing) err << "wall " << elapsed << " ms\n";
    }
    return 0;
  } catch (const CLI::CallForHelp&) {
    err << (chosen ? chosen->help() : app.help());
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

} // namespace cq::cli

#endif // CQ_CLI_HPP
