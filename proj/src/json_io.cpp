#include "qgraph/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qgraph/errors.hpp"

namespace qgraph {

namespace {

using json = nlohmann::json;

// SAX builder that stores every number as its raw token string.
class ExactSax {
 public:
  using number_integer_t = json::number_integer_t;
  using number_unsigned_t = json::number_unsigned_t;
  using number_float_t = json::number_float_t;
  using string_t = json::string_t;
  using binary_t = json::binary_t;

  json root;

  bool null() { return emplace(json(nullptr)); }
  bool boolean(bool v) { return emplace(json(v)); }
  bool number_integer(number_integer_t v) { return emplace(json(std::to_string(v))); }
  bool number_unsigned(number_unsigned_t v) { return emplace(json(std::to_string(v))); }
  bool number_float(number_float_t, const string_t& raw) { return emplace(json(raw)); }
  bool string(string_t& v) { return emplace(json(v)); }
  bool binary(binary_t&) { return false; }
  bool start_object(std::size_t) { return push(json::object()); }
  bool key(string_t& k) {
    pending_key_ = k;
    return true;
  }
  bool end_object() { return pop(); }
  bool start_array(std::size_t) { return push(json::array()); }
  bool end_array() { return pop(); }
  bool parse_error(std::size_t position, const std::string&,
                   const nlohmann::detail::exception& ex) {
    throw ParseError("json parse error at byte " + std::to_string(position) + ": " + ex.what());
  }

 private:
  bool emplace(json v) {
    place(std::move(v));
    return true;
  }
  json* place(json v) {
    if (stack_.empty()) {
      root = std::move(v);
      return &root;
    }
    json& top = *stack_.back();
    if (top.is_object()) {
      top[pending_key_] = std::move(v);
      return &top[pending_key_];
    }
    top.push_back(std::move(v));
    return &top.back();
  }
  bool push(json container) {
    stack_.push_back(place(std::move(container)));
    return true;
  }
  bool pop() {
    stack_.pop_back();
    return true;
  }

  std::vector<json*> stack_;
  std::string pending_key_;
};

Rational rational_field(const json& j, const std::string& what) {
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  throw ParseError("expected a numeric value for " + what);
}

int int_field(const json& j, const std::string& what) {
  const Rational r = rational_field(j, what);
  if (r.get_den() != 1) throw ParseError(what + " must be an integer");
  return static_cast<int>(r.get_num().get_si());
}

GaussianRational complex_field(const json& j, const std::string& what) {
  if (j.is_array()) {
    if (j.size() != 2) throw ParseError(what + ": complex entries are [re, im] pairs");
    return {rational_field(j[0], what), rational_field(j[1], what)};
  }
  return {rational_field(j, what), Rational(0)};
}

Potential potential_from_json(const json& j) {
  if (j.is_null()) return Potential::zero();
  const std::string kind = j.value("kind", "zero");
  if (kind == "zero") return Potential::zero();
  auto coeffs_of = [](const json& node) {
    std::vector<Rational> coeffs;
    for (const auto& c : node.at("coeffs")) coeffs.push_back(rational_field(c, "coefficient"));
    return RationalPoly(std::move(coeffs));
  };
  if (kind == "poly") return Potential::polynomial(coeffs_of(j));
  if (kind == "susy") return Potential::susy(coeffs_of(j.at("phi")));
  throw ParseError("unknown potential kind: " + kind);
}

json potential_to_json(const Potential& v) {
  json j;
  switch (v.kind()) {
    case Potential::Kind::Zero:
      j["kind"] = "zero";
      break;
    case Potential::Kind::Polynomial: {
      j["kind"] = "poly";
      json coeffs = json::array();
      for (const auto& c : v.expanded().coeffs()) coeffs.push_back(rational_to_string(c));
      j["coeffs"] = coeffs;
      break;
    }
    case Potential::Kind::Susy: {
      j["kind"] = "susy";
      json coeffs = json::array();
      for (const auto& c : v.susy_phi().coeffs()) coeffs.push_back(rational_to_string(c));
      j["phi"] = json{{"coeffs", coeffs}};
      break;
    }
  }
  return j;
}

ExactMatrix matrix_from_json(const json& j, int n, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError(what + " must be a " + std::to_string(n) + "x" + std::to_string(n) +
                     " matrix");
  ExactMatrix m(n, std::vector<GaussianRational>(n));
  for (int i = 0; i < n; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(what + ": row " + std::to_string(i) + " has the wrong width");
    for (int k = 0; k < n; ++k) m[i][k] = complex_field(row[k], what);
  }
  return m;
}

json matrix_to_json(const ExactMatrix& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& e : row) {
      if (e.is_real())
        r.push_back(rational_to_string(e.re));
      else
        r.push_back(json::array({rational_to_string(e.re), rational_to_string(e.im)}));
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

json load_exact_json_text(const std::string& text) {
  ExactSax sax;
  if (!json::sax_parse(text, &sax)) throw ParseError("json parse failed");
  return sax.root;
}

json load_exact_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_exact_json_text(buf.str());
}

GraphSpec graph_spec_from_json(const json& j) {
  const int vertices = int_field(j.at("vertices"), "vertices");
  std::vector<Bond> bonds;
  for (const auto& jb : j.at("bonds")) {
    Bond b;
    b.origin = int_field(jb.at("from"), "bond 'from'");
    b.terminus = int_field(jb.at("to"), "bond 'to'");
    b.length = rational_field(jb.at("length"), "bond length");
    b.magnetic = jb.contains("magnetic") ? to_double(rational_field(jb["magnetic"], "magnetic"))
                                         : 0.0;
    b.potential = jb.contains("potential") ? potential_from_json(jb["potential"])
                                           : Potential::zero();
    bonds.push_back(std::move(b));
  }
  MetricGraph graph(vertices, std::move(bonds));

  const json& jc = j.at("conditions");
  const std::string kind = jc.at("kind").get<std::string>();
  MatchingConditions mc;
  if (kind == "dirichlet") {
    mc = build_dirichlet(graph);
  } else if (kind == "delta" || kind == "delta_prime") {
    std::map<int, double> coupling;
    if (jc.contains("coupling")) {
      for (const auto& [key, value] : jc["coupling"].items())
        coupling[std::stoi(key)] = to_double(rational_field(value, "coupling"));
    }
    mc = kind == "delta" ? build_delta(graph, coupling) : build_delta_prime(graph, coupling);
  } else if (kind == "explicit") {
    const int n = graph.end_count();
    mc.a = matrix_from_json(jc.at("matrix_a"), n, "matrix_a");
    mc.b = matrix_from_json(jc.at("matrix_b"), n, "matrix_b");
  } else {
    throw ParseError("unknown conditions kind: " + kind);
  }
  return GraphSpec{std::move(graph), std::move(mc)};
}

GraphSpec parse_graph_spec_file(const std::string& path) {
  try {
    return graph_spec_from_json(load_exact_json_file(path));
  } catch (const nlohmann::detail::exception& ex) {
    throw ParseError(std::string("graph spec ") + path + ": " + ex.what());
  }
}

GraphSpec parse_graph_spec_text(const std::string& text) {
  try {
    return graph_spec_from_json(load_exact_json_text(text));
  } catch (const nlohmann::detail::exception& ex) {
    throw ParseError(std::string("graph spec: ") + ex.what());
  }
}

json emit_graph_spec(const GraphSpec& spec) {
  json j;
  j["vertices"] = spec.graph.vertex_count();
  json bonds = json::array();
  for (const auto& b : spec.graph.bonds()) {
    json jb;
    jb["from"] = b.origin;
    jb["to"] = b.terminus;
    jb["length"] = rational_to_string(b.length);
    jb["magnetic"] = rational_to_string(rational_from_double(b.magnetic));
    jb["potential"] = potential_to_json(b.potential);
    bonds.push_back(jb);
  }
  j["bonds"] = bonds;
  j["conditions"] = json{{"kind", "explicit"},
                         {"matrix_a", matrix_to_json(spec.conditions.a)},
                         {"matrix_b", matrix_to_json(spec.conditions.b)}};
  return j;
}

json determinant_to_json(const DeterminantResult& r) {
  json j;
  j["gamma"] = r.gamma;
  j["value"] = r.value;
  j["imag_residual"] = r.imag_residual;
  j["dirichlet_factor"] = r.dirichlet_factor;
  j["secular_factor_re"] = r.secular_factor.real();
  j["secular_factor_im"] = r.secular_factor.imag();
  j["extrapolated"] = r.extrapolated;
  j["profile"] = profile_to_json(r.profile);
  return j;
}

json zeta_to_json(const ZetaResult& r) {
  json j;
  j["s_re"] = r.s.real();
  j["s_im"] = r.s.imag();
  j["gamma"] = r.gamma;
  j["value_re"] = r.value.real();
  j["value_im"] = r.value.imag();
  j["zeta_im_re"] = r.zeta_im.real();
  j["zeta_im_im"] = r.zeta_im.imag();
  j["zeta_pole_re"] = r.zeta_pole.real();
  j["zeta_pole_im"] = r.zeta_pole.imag();
  j["error_estimate"] = r.error_estimate;
  return j;
}

json spectrum_to_json(const Spectrum& s) {
  json entries = json::array();
  int index = 0;
  for (const auto& e : s.entries) {
    json je;
    je["j"] = index++;
    je["energy"] = e.energy;
    je["k"] = std::sqrt(std::max(0.0, e.energy));
    je["multiplicity"] = e.multiplicity;
    je["secular_residual"] = e.secular_residual;
    je["null_sigma_ratio"] = e.null_sigma_ratio;
    entries.push_back(je);
  }
  json j;
  j["spectrum"] = entries;
  j["k_max"] = s.k_max;
  j["warnings"] = s.warnings;
  return j;
}

json profile_to_json(const AsymptoticProfile& p) {
  json j;
  j["N"] = p.N;
  j["c_N"] = to_string(p.c_n);
  j["P"] = p.P;
  j["truncation"] = p.truncation;
  json coeffs = json::array();
  for (int i = 0; i < static_cast<int>(p.c.size()); ++i) coeffs.push_back(to_string(p.c[i]));
  j["coefficients"] = coeffs;
  return j;
}

namespace {

void dump_rec(const json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + json(key).dump() + ": ";
        dump_rec(value, out, indent, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_rec(value, out, indent, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.12e", j.get<double>());
      out += buf;
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_fixed(const json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  return out;
}

}  // namespace qgraph
