#include <cstdio>
#include <fstream>
#include <string>

#include "CLI11.hpp"
#include "tr/config.hpp"
#include "tr/json_out.hpp"
#include "tr/potentials.hpp"
#include "tr/recursion.hpp"
#include "tr/selftest.hpp"

using namespace tr;

namespace {

struct Global {
  std::string mode;  // empty = take the config's
  long precision = 0;
  long order = 0;
  std::string json_out;
};

void emit(const JVal& v, const Global& gl) {
  std::string text = v.dump();
  std::fputs(text.c_str(), stdout);
  if (!gl.json_out.empty()) {
    std::ofstream f(gl.json_out, std::ios::binary);
    check(f.good(), Err::ConfigError, "cannot write '" + gl.json_out + "'");
    f << text;
  }
}

void check_budget(long g, long n) {
  check(g >= 0 && n >= 1, Err::ConfigError, "need g >= 0 and n >= 1");
  check(2 * g - 2 + n <= 8, Err::ConfigError, "complexity budget 2g-2+n <= 8 exceeded");
}

struct Resolved {
  CurveConfig cc;
  Mode mode = Mode::Exact;
  long precision = 256;
};

Resolved resolve(const std::string& path, const Global& gl) {
  Resolved r;
  r.cc = load_curve_config(path);
  r.mode = r.cc.mode;
  if (gl.mode == "exact") r.mode = Mode::Exact;
  if (gl.mode == "numeric") r.mode = Mode::Numeric;
  r.precision = gl.precision > 0 ? gl.precision : r.cc.precision;
  check(r.precision >= 64 && r.precision <= 16384, Err::ConfigError,
        "precision must lie in [64, 16384]");
  Prec::bits = r.precision;
  return r;
}

void meta(JVal& out, const Resolved& r, long K = -1) {
  out.set("mode", JVal::s(r.mode == Mode::Exact ? "exact" : "numeric"));
  out.set("precision", JVal::i(r.precision));
  if (K >= 0) out.set("K", JVal::i(K));
}

// runs fn once with the curve built over the scalar type the mode calls for
template <class Fn>
void dispatch(const Resolved& r, Fn&& fn) {
  if (r.mode == Mode::Exact) {
    auto cur = build_curve<Rat>(r.cc);
    fn(cur);
  } else {
    auto cur = build_curve<CNum>(r.cc);
    fn(cur);
  }
}

std::string joined(const std::vector<long>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); i++) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

std::string half_label(const std::vector<std::pair<int, long>>& key) {
  std::string s;
  for (size_t i = 0; i < key.size(); i++) {
    if (i) s += ",";
    s += "(" + std::to_string(key[i].first) + "," + std::to_string(key[i].second) + "/2)";
  }
  return s;
}

template <class F>
JVal potential_json(const OpenPotential<F>& P) {
  JVal comps = JVal::array();
  for (auto& [comp, ser] : P.comp) {
    JVal e = JVal::object();
    JVal cv = JVal::array();
    for (long l : comp) cv.push(JVal::i(l));
    e.set("component", std::move(cv));
    JVal s = JVal::object();
    for (auto& [mono, c] : ser) s.set(joined(mono), JVal::s(FT<F>::str(c)));
    e.set("series", std::move(s));
    comps.push(std::move(e));
  }
  return comps;
}

JVal graph_json(const ToricGraph& gr) {
  JVal g = JVal::object();
  JVal nodes = JVal::array();
  for (auto& nd : gr.nodes) {
    JVal n = JVal::object();
    n.set("id", JVal::i(nd.id));
    JVal pos = JVal::array();
    pos.push(JVal::s(rat_str(nd.pos_x)));
    pos.push(JVal::s(rat_str(nd.pos_y)));
    n.set("pos", std::move(pos));
    nodes.push(std::move(n));
  }
  g.set("nodes", std::move(nodes));
  JVal edges = JVal::array();
  for (auto& e : gr.edges) {
    JVal p = JVal::array();
    p.push(JVal::i(e.first));
    p.push(JVal::i(e.second));
    edges.push(std::move(p));
  }
  g.set("edges", std::move(edges));
  JVal rays = JVal::array();
  for (auto& ry : gr.rays) {
    JVal p = JVal::object();
    p.set("node", JVal::i(ry.node));
    JVal d = JVal::array();
    d.push(JVal::i(ry.dir.x));
    d.push(JVal::i(ry.dir.y));
    p.set("dir", std::move(d));
    rays.push(std::move(p));
  }
  g.set("rays", std::move(rays));
  return g;
}

int cmd_toric(const std::string& path, const Global& gl, bool graph_only) {
  CurveConfig cc = load_curve_config(path);
  check(!cc.is_parametrization, Err::ConfigError, "this command needs a toric diagram");
  JVal out = JVal::object();
  if (graph_only) {
    out = graph_json(emit_toric_graph(cc.diagram));
    emit(out, gl);
    return 0;
  }
  ToricCounts ct = counts(cc.diagram);
  JVal cj = JVal::object();
  cj.set("p", JVal::i(ct.p));
  cj.set("s", JVal::i(ct.s));
  cj.set("fg", JVal::i(ct.fg));
  cj.set("fn", JVal::i(ct.fn));
  cj.set("chi", JVal::i(ct.chi));
  out.set("counts", std::move(cj));
  long interior = (long)lattice_points(cc.diagram).size() -
                  (long)boundary_lattice_points(cc.diagram).size();
  JVal idj = JVal::object();
  idj.set("chi_eq_2fg_minus_2_plus_fn",
          JVal::s(ct.chi == 2 * ct.fg - 2 + ct.fn ? "pass" : "fail"));
  idj.set("chi_eq_1_plus_p_plus_s_plus_fg",
          JVal::s(ct.chi == 1 + ct.p + ct.s + ct.fg ? "pass" : "fail"));
  idj.set("pick", JVal::s(ct.fg == interior ? "pass" : "fail"));
  idj.set("curve_euler", JVal::s(ct.curve_euler() == -ct.chi ? "pass" : "fail"));
  out.set("identities", std::move(idj));
  MirrorPolynomial H = mirror_polynomial(cc.diagram, cc.coefficients, -1);
  JVal hj = JVal::object();
  for (auto& [pt, c] : H.terms)
    hj.set(std::to_string(pt.x) + "," + std::to_string(pt.y), JVal::s(rat_str(c)));
  out.set("mirror", std::move(hj));
  JVal gj = JVal::array();
  for (auto& pt : H.gauge) {
    JVal p = JVal::array();
    p.push(JVal::i(pt.x));
    p.push(JVal::i(pt.y));
    gj.push(std::move(p));
  }
  out.set("gauge", std::move(gj));
  out.set("graph", graph_json(emit_toric_graph(cc.diagram)));
  emit(out, gl);
  return 0;
}

int cmd_omega(const std::string& path, const Global& gl, long g, long n) {
  check_budget(g, n);
  Resolved r = resolve(path, gl);
  JVal out = JVal::object();
  dispatch(r, [&](auto& cur) {
    using F = typename std::decay_t<decltype(cur)>::Scalar;
    OmegaTable<F> t(cur);
    t.set_extra_order(gl.order);
    const MeroForm<F>& w = t.omega(g, n);
    out.set("g", JVal::i(g));
    out.set("n", JVal::i(n));
    meta(out, r, cur.ram_order());
    JVal terms = JVal::object();
    for (auto& kv : w.c) terms.set(key_str(kv.first), JVal::s(FT<F>::str(kv.second)));
    out.set("terms", std::move(terms));
  });
  emit(out, gl);
  return 0;
}

int cmd_free_energy(const std::string& path, const Global& gl, long g) {
  check_budget(g, 1);
  Resolved r = resolve(path, gl);
  JVal out = JVal::object();
  dispatch(r, [&](auto& cur) {
    using F = typename std::decay_t<decltype(cur)>::Scalar;
    OmegaTable<F> t(cur);
    t.set_extra_order(gl.order);
    F v = t.free_energy(g);
    out.set("g", JVal::i(g));
    meta(out, r, cur.ram_order());
    out.set("value", JVal::s(FT<F>::str(v)));
  });
  emit(out, gl);
  return 0;
}

int cmd_disk(const std::string& path, const Global& gl, long D) {
  Resolved r = resolve(path, gl);
  JVal out = JVal::object();
  dispatch(r, [&](auto& cur) {
    using F = typename std::decay_t<decltype(cur)>::Scalar;
    auto P = disk_potential(cur, D);
    out.set("g", JVal::i(0));
    out.set("n", JVal::i(1));
    out.set("degree", JVal::i(D));
    meta(out, r);
    out.set("components", potential_json<F>(P));
  });
  emit(out, gl);
  return 0;
}

int cmd_annulus(const std::string& path, const Global& gl, long D) {
  Resolved r = resolve(path, gl);
  JVal out = JVal::object();
  dispatch(r, [&](auto& cur) {
    using F = typename std::decay_t<decltype(cur)>::Scalar;
    auto P = annulus_potential(cur, D);
    out.set("g", JVal::i(0));
    out.set("n", JVal::i(2));
    out.set("degree", JVal::i(D));
    meta(out, r);
    out.set("components", potential_json<F>(P));
  });
  emit(out, gl);
  return 0;
}

int cmd_open(const std::string& path, const Global& gl, long g, long n, long D) {
  check_budget(g, n);
  Resolved r = resolve(path, gl);
  JVal out = JVal::object();
  dispatch(r, [&](auto& cur) {
    using F = typename std::decay_t<decltype(cur)>::Scalar;
    OmegaTable<F> t(cur);
    t.set_extra_order(gl.order);
    auto P = open_potential(t, g, n, D);
    out.set("g", JVal::i(g));
    out.set("n", JVal::i(n));
    out.set("degree", JVal::i(D));
    meta(out, r, cur.ram_order());
    out.set("components", potential_json<F>(P));
  });
  emit(out, gl);
  return 0;
}

int cmd_laplace(const std::string& path, const Global& gl, long g, long n) {
  check_budget(g, n);
  Resolved r = resolve(path, gl);
  long orders = gl.order > 0 ? gl.order : 1;
  JVal out = JVal::object();
  dispatch(r, [&](auto& cur) {
    using F = typename std::decay_t<decltype(cur)>::Scalar;
    OmegaTable<F> t(cur);
    auto L = laplace_transform(t, g, n, orders);
    out.set("g", JVal::i(g));
    out.set("n", JVal::i(n));
    out.set("orders", JVal::i(orders));
    meta(out, r, cur.ram_order());
    JVal pts = JVal::array();
    for (size_t a = 0; a < L.u.size(); a++) {
      JVal p = JVal::object();
      p.set("u", JVal::s(FT<F>::str(L.u[a])));
      p.set("s2", JVal::s(FT<F>::str(L.s2[a])));
      pts.push(std::move(p));
    }
    out.set("points", std::move(pts));
    JVal ser = JVal::object();
    for (auto& [key, c] : L.c) ser.set(half_label(key), JVal::s(FT<F>::str(c)));
    out.set("series", std::move(ser));
  });
  emit(out, gl);
  return 0;
}

int cmd_period(const std::string& path, const Global& gl, long idx) {
  Resolved r = resolve(path, gl);
  JVal out = JVal::object();
  dispatch(r, [&](auto& cur) {
    using F = typename std::decay_t<decltype(cur)>::Scalar;
    auto pd = a_period(cur, idx);
    out.set("puncture", JVal::s(pd.puncture));
    out.set("ord_xhat", JVal::i(pd.ord_xhat));
    out.set("ord_y", JVal::i(pd.ord_y));
    out.set("y_lead", JVal::s(FT<F>::str(pd.y_lead)));
    out.set("monodromy", JVal::i(pd.monodromy));
    out.set("residue", JVal::s(FT<F>::str(pd.residue)));
    meta(out, r);
  });
  emit(out, gl);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mirror curves of toric Calabi-Yau threefolds and their topological recursion"};
  app.require_subcommand(1);
  Global gl;
  app.add_option("--mode", gl.mode, "exact or numeric, overriding the config")
      ->check(CLI::IsMember({"exact", "numeric"}));
  app.add_option("--precision", gl.precision, "working precision in bits (numeric mode)");
  app.add_option("--order", gl.order, "extra expansion order margin; moment count for laplace");
  app.add_option("--json-out", gl.json_out, "also write the JSON result to this path");

  std::string file;
  long g = 0, n = 1, D = 1, punct = 0;

  auto* toric = app.add_subcommand("toric", "diagram counts, identities, mirror polynomial");
  toric->add_option("file", file)->required();
  auto* graph = app.add_subcommand("graph", "toric graph data only");
  graph->add_option("file", file)->required();
  auto* omega = app.add_subcommand("omega", "correlator principal parts");
  omega->add_option("--g", g)->required();
  omega->add_option("--n", n)->required();
  omega->add_option("file", file)->required();
  auto* fe = app.add_subcommand("free-energy", "genus g closed free energy");
  fe->add_option("--g", g)->required();
  fe->add_option("file", file)->required();
  auto* disk = app.add_subcommand("disk", "disk potential to a degree");
  disk->add_option("--degree", D)->required();
  disk->add_option("file", file)->required();
  auto* ann = app.add_subcommand("annulus", "annulus potential to a total degree");
  ann->add_option("--degree", D)->required();
  ann->add_option("file", file)->required();
  auto* open = app.add_subcommand("open", "stable open potential to a total degree");
  open->add_option("--g", g)->required();
  open->add_option("--n", n)->required();
  open->add_option("--degree", D)->required();
  open->add_option("file", file)->required();
  auto* lap = app.add_subcommand("laplace", "formal descendant series at the critical points");
  lap->add_option("--g", g)->required();
  lap->add_option("--n", n)->required();
  lap->add_option("file", file)->required();
  auto* per = app.add_subcommand("period", "loop integral data at a puncture");
  per->add_option("--puncture", punct)->required();
  per->add_option("file", file)->required();
  auto* self = app.add_subcommand("selftest", "bundled corpus through every invariant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (toric->parsed()) return cmd_toric(file, gl, false);
    if (graph->parsed()) return cmd_toric(file, gl, true);
    if (omega->parsed()) return cmd_omega(file, gl, g, n);
    if (fe->parsed()) return cmd_free_energy(file, gl, g);
    if (disk->parsed()) return cmd_disk(file, gl, D);
    if (ann->parsed()) return cmd_annulus(file, gl, D);
    if (open->parsed()) return cmd_open(file, gl, g, n, D);
    if (lap->parsed()) return cmd_laplace(file, gl, g, n);
    if (per->parsed()) return cmd_period(file, gl, punct);
    if (self->parsed()) {
      JVal report = JVal::object();
      int fails = selftest(report);
      if (!gl.json_out.empty()) {
        std::ofstream f(gl.json_out, std::ios::binary);
        check(f.good(), Err::ConfigError, "cannot write '" + gl.json_out + "'");
        f << report.dump();
      }
      return fails ? 1 : 0;
    }
  } catch (const Error& e) {
    JVal err = JVal::object();
    err.set("error", JVal::s(err_name(e.code())));
    err.set("message", JVal::s(e.what()));
    emit(err, gl);
    return e.exit_code();
  } catch (const std::exception& e) {
    JVal err = JVal::object();
    err.set("error", JVal::s("Internal"));
    err.set("message", JVal::s(e.what()));
    emit(err, gl);
    return 1;
  }
  return 2;
}
