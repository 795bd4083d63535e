#include "tr/selftest.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "tr/config.hpp"
#include "tr/potentials.hpp"
#include "tr/recursion.hpp"
#include "tr/reference.hpp"

#ifndef TR_CORPUS_DIR_DEFAULT
#define TR_CORPUS_DIR_DEFAULT "data/corpus"
#endif

namespace tr {

namespace {

double now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct Runner {
  JVal* inv;
  int fails = 0;

  void run(const std::string& name, const std::function<bool()>& fn) {
    double t0 = now();
    bool ok = false;
    std::string msg;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      msg = e.what();
    }
    double dt = now() - t0;
    std::printf("%-34s %s (%.2fs)%s%s\n", name.c_str(), ok ? "pass" : "FAIL", dt,
                msg.empty() ? "" : "  ", msg.c_str());
    JVal e = JVal::object();
    e.set("name", JVal::s(name));
    e.set("verdict", JVal::s(ok ? "pass" : "fail"));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", dt);
    e.set("seconds", JVal::s(buf));
    inv->push(std::move(e));
    if (!ok) fails++;
  }
};

template <class F>
bool form_matches(const MeroForm<F>& got, const std::map<Key, F>& want) {
  if (got.c.size() != want.size()) return false;
  for (auto& kv : want) {
    auto it = got.c.find(kv.first);
    if (it == got.c.end() || !FT<F>::small(it->second - kv.second)) return false;
  }
  return true;
}

template <class F>
bool forms_close(const MeroForm<F>& a, const MeroForm<F>& b) {
  if (a.c.size() != b.c.size()) return false;
  for (auto& kv : a.c) {
    auto it = b.c.find(kv.first);
    if (it == b.c.end() || !FT<F>::small(it->second - kv.second)) return false;
  }
  return true;
}

std::map<Key, Rat> airy_table(long g, long n) {
  auto q = [](const char* s) { return rat_parse(s); };
  if (g == 0 && n == 3) return {{{{0, 2}, {0, 2}, {0, 2}}, q("1/2")}};
  if (g == 1 && n == 1) return {{{{0, 4}}, q("1/16")}};
  if (g == 0 && n == 4) return {{{{0, 2}, {0, 2}, {0, 2}, {0, 4}}, q("3/4")}};
  if (g == 1 && n == 2)
    return {{{{0, 2}, {0, 6}}, q("5/32")}, {{{0, 4}, {0, 4}}, q("3/32")}};
  if (g == 2 && n == 1) return {{{{0, 10}}, q("105/1024")}};
  return {};
}

}  // namespace

std::string corpus_dir() {
  const char* env = std::getenv("TR_CORPUS_DIR");
  if (env && *env) return env;
  return TR_CORPUS_DIR_DEFAULT;
}

int selftest(JVal& report) {
  std::string dir = corpus_dir();
  JVal inv = JVal::array();
  Runner R{&inv};

  auto cfg = [&](const char* name) { return load_curve_config(dir + "/" + name); };

  R.run("toric identity chain", [&] {
    bool ok = true;
    for (const char* name : {"c3.json", "conifold.json", "c3_z3.json", "local_p2.json",
                             "c3_z3_leg.json"}) {
      auto cc = cfg(name);
      auto ct = counts(cc.diagram);
      long interior = (long)lattice_points(cc.diagram).size() -
                      (long)boundary_lattice_points(cc.diagram).size();
      ok = ok && ct.chi == 2 * ct.fg - 2 + ct.fn && ct.chi == 1 + ct.p + ct.s + ct.fg &&
           ct.curve_euler() == -ct.chi && ct.fg == interior;
    }
    return ok;
  });

  R.run("ramification count", [&] {
    bool ok = true;
    for (long f : {1L, 2L, 3L}) {
      auto cc = cfg("c3.json");
      cc.framing = f;
      auto cur = build_curve<Rat>(cc);
      cur.ensure_ram(4);
      ok = ok && (long)cur.ram().size() == cur.expected_ram_count();
    }
    for (long f : {1L, 2L}) {
      auto cc = cfg("conifold.json");
      cc.framing = f;
      auto cur = build_curve<CNum>(cc);
      cur.ensure_ram(4);
      ok = ok && (long)cur.ram().size() == cur.expected_ram_count();
    }
    for (const char* name : {"c3.json", "conifold.json"}) {
      auto cc = cfg(name);
      cc.framing = 0;
      bool threw = false;
      try {
        auto cur = build_curve<Rat>(cc);
        cur.ensure_ram(4);
      } catch (const Error& e) {
        threw = e.code() == Err::DegenerateFraming;
      }
      ok = ok && threw;
    }
    return ok;
  });

  R.run("airy correlator anchors", [&] {
    auto cc = cfg("airy.json");
    auto cur = build_curve<Rat>(cc);
    OmegaTable<Rat> t(cur);
    bool ok = true;
    for (auto [g, n] : {std::pair<long, long>{0, 3}, {1, 1}, {0, 4}, {1, 2}, {2, 1}})
      ok = ok && form_matches(t.omega(g, n), airy_table(g, n));
    return ok;
  });

  R.run("engine vs reference", [&] {
    auto cc = cfg("c3.json");
    auto cur = build_curve<Rat>(cc);
    auto ref_cur = build_curve<Rat>(cc);
    OmegaTable<Rat> t(cur);
    RefTable<Rat> ref(ref_cur);
    bool ok = true;
    for (auto [g, n] : {std::pair<long, long>{0, 3}, {0, 4}, {1, 1}, {1, 2}})
      ok = ok && forms_close(t.omega(g, n), ref.canonical(g, n));
    return ok;
  });

  R.run("framing independence (F2)", [&] {
    Rat v[2];
    for (long f : {1L, 2L}) {
      auto cc = cfg("c3.json");
      cc.framing = f;
      auto cur = build_curve<Rat>(cc);
      OmegaTable<Rat> t(cur);
      v[f - 1] = t.free_energy(2);
    }
    return v[0] == v[1] && v[0] != 0;
  });

  R.run("disk series anchor", [&] {
    auto cur = build_curve<Rat>(cfg("c3.json"));
    auto dp = disk_potential(cur, 4);
    auto& ser = dp.comp.at({0});
    auto q = [](const char* s) { return rat_parse(s); };
    return ser.at({1}) == q("-1") && ser.at({2}) == q("-3/4") && ser.at({3}) == q("-10/9") &&
           ser.at({4}) == q("-35/16");
  });

  R.run("annulus diagonal vanishing", [&] {
    auto cur = build_curve<Rat>(cfg("c3.json"));
    auto res = annulus_diagonal(cur, 0, 4);
    bool ok = !res.empty();
    for (auto& r : res) ok = ok && r == 0;
    return ok;
  });

  R.run("gaussian moment rule", [&] {
    bool ok = gaussian_moment(0) == 1;
    for (long jj : {1L, 3L, 5L, 7L, -1L, -3L}) ok = ok && gaussian_moment(jj) == 0;
    ok = ok && gaussian_moment(2) == rat_parse("1/2") && gaussian_moment(4) == rat_parse("3/4");
    auto cur = build_curve<Rat>(cfg("airy.json"));
    OmegaTable<Rat> t(cur);
    auto L = laplace_transform(t, 1, 1, 1);
    std::vector<std::pair<int, long>> key{{0, -3}};
    ok = ok && L.u.size() == 1 && L.u[0] == 0 && L.s2[0] == 1 && L.c.size() == 1 &&
         L.c.count(key) && L.c.at(key) == rat_parse("1/12");
    return ok;
  });

  R.run("expansion-order stability", [&] {
    auto cc = cfg("airy.json");
    auto cur_a = build_curve<Rat>(cc);
    auto cur_b = build_curve<Rat>(cc);
    OmegaTable<Rat> ta(cur_a), tb(cur_b);
    tb.set_extra_order(8);
    return forms_close(ta.omega(1, 2), tb.omega(1, 2)) &&
           forms_close(ta.omega(2, 1), tb.omega(2, 1));
  });

  R.run("kernel mutation detected", [&] {
    auto cur = build_curve<Rat>(cfg("airy.json"));
    kernel_sign_flip() = true;
    bool detected = false;
    try {
      OmegaTable<Rat> t(cur);
      detected = !form_matches(t.omega(1, 1), airy_table(1, 1));
    } catch (const std::exception&) {
      detected = true;  // tripping an internal identity check also counts
    }
    kernel_sign_flip() = false;
    return detected;
  });

  R.run("precision sweep verdicts", [&] {
    auto verdicts = [&](long bits) {
      long saved = Prec::bits;
      Prec::bits = bits;
      std::vector<bool> v;
      try {
        auto cc = cfg("conifold.json");
        auto cur = build_curve<CNum>(cc);
        cur.ensure_ram(4);
        v.push_back((long)cur.ram().size() == cur.expected_ram_count());
        auto ref_cur = build_curve<CNum>(cc);
        OmegaTable<CNum> t(cur);
        RefTable<CNum> ref(ref_cur);
        v.push_back(forms_close(t.omega(0, 3), ref.canonical(0, 3)));
        auto res = annulus_diagonal(cur, 0, 4);
        bool dz = !res.empty();
        for (auto& r : res) dz = dz && FT<CNum>::small(r);
        v.push_back(dz);
      } catch (const std::exception&) {
        v.assign(3, false);
      }
      Prec::bits = saved;
      return v;
    };
    auto lo = verdicts(128), hi = verdicts(256);
    bool all = true;
    for (bool b : hi) all = all && b;
    return all && lo == hi;
  });

  report.set("invariants", std::move(inv));
  report.set("failures", JVal::i(R.fails));
  return R.fails;
}

}  // namespace tr
