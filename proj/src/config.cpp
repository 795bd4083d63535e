#include "tr/config.hpp"

#include <cctype>
#include <fstream>

#include "json.hpp"

namespace tr {

using nlohmann::json;

Rat parse_rat(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos) return rat_parse(s);
  std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
  check(!tail.empty() && tail.find_first_not_of("0123456789") == std::string::npos,
        Err::ConfigError, "bad decimal literal '" + s + "'");
  bool neg = !head.empty() && head[0] == '-';
  if (neg || (!head.empty() && head[0] == '+')) head = head.substr(1);
  if (head.empty()) head = "0";
  Rat scale(1);
  for (size_t i = 0; i < tail.size(); i++) scale *= 10;
  Rat v = rat_parse(head) + rat_parse(tail) / scale;
  return neg ? -v : v;
}

namespace {

struct ExprParser {
  const std::string& s;
  size_t i = 0;

  explicit ExprParser(const std::string& src) : s(src) {}

  void skip() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) i++;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      i++;
      return true;
    }
    return false;
  }
  long integer() {
    skip();
    check(i < s.size() && std::isdigit((unsigned char)s[i]), Err::ConfigError,
          "expected an integer in '" + s + "'");
    long v = 0;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) v = v * 10 + (s[i++] - '0');
    return v;
  }

  RatFun<Rat> expr() {
    RatFun<Rat> v = eat('-') ? -term() : term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }
  RatFun<Rat> term() {
    RatFun<Rat> v = factor();
    for (;;) {
      if (eat('*'))
        v = v * factor();
      else if (eat('/'))
        v = v / factor();
      else
        return v;
    }
  }
  RatFun<Rat> factor() {
    RatFun<Rat> v = base();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      long e = integer();
      RatFun<Rat> p = RatFun<Rat>::constant(Rat(1));
      for (long k = 0; k < e; k++) p = p * v;
      v = neg ? RatFun<Rat>::constant(Rat(1)) / p : p;
    }
    return v;
  }
  RatFun<Rat> base() {
    skip();
    check(i < s.size(), Err::ConfigError, "unexpected end of expression '" + s + "'");
    char c = s[i];
    if (c == '(') {
      i++;
      RatFun<Rat> v = expr();
      check(eat(')'), Err::ConfigError, "missing ')' in '" + s + "'");
      return v;
    }
    if (c == 'z') {
      i++;
      return RatFun<Rat>::var();
    }
    check(std::isdigit((unsigned char)c), Err::ConfigError,
          std::string("unexpected '") + c + "' in '" + s + "'");
    size_t j = i;
    while (j < s.size() && (std::isdigit((unsigned char)s[j]) || s[j] == '.')) j++;
    Rat v = parse_rat(s.substr(i, j - i));
    i = j;
    return RatFun<Rat>::constant(v);
  }
};

Pt parse_pt(const json& j) {
  check(j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer(),
        Err::NonLatticeVertex, "lattice points must be integer pairs");
  return Pt{j[0].get<long>(), j[1].get<long>()};
}

}  // namespace

RatFun<Rat> parse_ratfun(const std::string& s) {
  ExprParser p(s);
  RatFun<Rat> v = p.expr();
  p.skip();
  check(p.i == s.size(), Err::ConfigError, "trailing characters in expression '" + s + "'");
  return v;
}

CurveConfig load_curve_config(const std::string& path) {
  std::ifstream f(path);
  check(f.good(), Err::ConfigError, "cannot open '" + path + "'");
  json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    fail(Err::ConfigError, std::string("bad JSON: ") + e.what());
  }
  check(j.is_object(), Err::ConfigError, "config root must be an object");

  CurveConfig cc;
  if (j.contains("mode")) {
    std::string m = j["mode"].get<std::string>();
    if (m == "exact")
      cc.mode = Mode::Exact;
    else if (m == "numeric")
      cc.mode = Mode::Numeric;
    else
      fail(Err::ConfigError, "mode must be 'exact' or 'numeric'");
  }
  if (j.contains("precision")) {
    cc.precision = j["precision"].get<long>();
    check(cc.precision >= 64 && cc.precision <= 16384, Err::ConfigError,
          "precision must lie in [64, 16384]");
  }

  if (j.contains("parametrization")) {
    check(!j.contains("diagram"), Err::ConfigError,
          "give either a diagram or a parametrization, not both");
    const json& p = j["parametrization"];
    std::string kind = p.value("kind", "additive");
    check(kind == "additive" || kind == "multiplicative", Err::ConfigError,
          "parametrization kind must be 'additive' or 'multiplicative'");
    cc.is_parametrization = true;
    cc.additive = kind == "additive";
    cc.X = parse_ratfun(p.at("X").get<std::string>());
    cc.Y = parse_ratfun(p.at("Y").get<std::string>());
    return cc;
  }

  check(j.contains("diagram") || j.contains("vertices"), Err::ConfigError,
        "config needs a diagram or a parametrization");
  const json& dj = j.contains("diagram") ? j["diagram"] : j;
  ToricDiagram d;
  for (auto& v : dj.at("vertices")) d.polytope_vertices.push_back(parse_pt(v));
  for (auto& t : dj.at("triangles")) {
    check(t.is_array() && t.size() == 3, Err::ConfigError, "triangles have three vertices");
    d.triangles.push_back({parse_pt(t[0]), parse_pt(t[1]), parse_pt(t[2])});
  }
  cc.diagram = validate_diagram(d);

  std::map<std::string, Rat> params;
  if (j.contains("parameters"))
    for (auto& [k, v] : j["parameters"].items())
      params[k] = v.is_string() ? parse_rat(v.get<std::string>()) : Rat(v.get<long>());

  if (dj.contains("coefficients"))
    for (auto& [k, v] : dj["coefficients"].items()) {
      auto comma = k.find(',');
      check(comma != std::string::npos, Err::ConfigError,
            "coefficient keys look like 'm,n', got '" + k + "'");
      Pt pt;
      try {
        pt = Pt{std::stol(k.substr(0, comma)), std::stol(k.substr(comma + 1))};
      } catch (const std::exception&) {
        fail(Err::ConfigError, "coefficient keys look like 'm,n', got '" + k + "'");
      }
      if (v.is_string()) {
        std::string val = v.get<std::string>();
        check(!val.empty(), Err::ConfigError, "empty coefficient value");
        if (std::isalpha((unsigned char)val[0]) || val[0] == '_') {
          auto it = params.find(val);
          check(it != params.end(), Err::ConfigError, "unbound parameter '" + val + "'");
          cc.coefficients[pt] = it->second;
        } else {
          cc.coefficients[pt] = parse_rat(val);
        }
      } else {
        check(v.is_number_integer(), Err::ConfigError, "coefficients are strings or integers");
        cc.coefficients[pt] = Rat(v.get<long>());
      }
    }

  if (j.contains("framing")) cc.framing = j["framing"].get<long>();
  if (j.contains("brane_edge")) {
    const json& b = j["brane_edge"];
    check(b.is_array() && b.size() == 2, Err::ConfigError, "brane_edge is a pair of points");
    cc.brane_edge = std::array<Pt, 2>{parse_pt(b[0]), parse_pt(b[1])};
  }
  return cc;
}

template <class F>
SpectralCurve<F> build_curve(const CurveConfig& cc) {
  if (cc.is_parametrization)
    return SpectralCurve<F>::from_parametrization(cc.X, cc.Y, cc.additive);
  auto H = mirror_polynomial(cc.diagram, cc.coefficients, -1);
  return SpectralCurve<F>::from_mirror(cc.diagram, H, cc.framing, cc.brane_edge);
}

template SpectralCurve<Rat> build_curve<Rat>(const CurveConfig&);
template SpectralCurve<CNum> build_curve<CNum>(const CurveConfig&);

}  // namespace tr
