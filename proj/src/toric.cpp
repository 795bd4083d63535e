#include "tr/toric.hpp"

#include <numeric>

#include <algorithm>
#include <set>

#include "tr/errors.hpp"

namespace tr {

long ToricCounts::curve_euler() const {
  long e = 2 - 2 * fg - fn;
  check(e == -chi, Err::IdentityViolation, "curve Euler characteristic mismatch");
  return e;
}

namespace {

long area2(const Triangle& t) { return cross(t[0], t[1], t[2]); }

std::vector<Pt> convex_hull(std::vector<Pt> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) fail(Err::NonConvexPolytope, "fewer than three distinct vertices");
  std::vector<Pt> h(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); i++) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) k--;
    h[k++] = pts[i];
  }
  size_t lower = k + 1;
  for (size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) k--;
    h[k++] = pts[i];
  }
  h.resize(k - 1);  // CCW, strict vertices only
  return h;
}

// signed position of q relative to hull edges: +1 interior, 0 boundary, -1 outside
int classify(const std::vector<Pt>& hull, const Pt& q) {
  bool on_edge = false;
  for (size_t i = 0; i < hull.size(); i++) {
    long c = cross(hull[i], hull[(i + 1) % hull.size()], q);
    if (c < 0) return -1;
    if (c == 0) on_edge = true;
  }
  return on_edge ? 0 : 1;
}

bool on_segment(const Pt& a, const Pt& b, const Pt& q) {
  if (cross(a, b, q) != 0) return false;
  return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= q.y && q.y <= std::max(a.y, b.y);
}

// separating-axis test; true when interiors intersect
bool interiors_intersect(const Triangle& s, const Triangle& t) {
  auto separated_by_edges_of = [](const Triangle& a, const Triangle& b) {
    for (int i = 0; i < 3; i++) {
      const Pt& p = a[i];
      const Pt& q = a[(i + 1) % 3];
      bool all_out = true;
      for (int j = 0; j < 3; j++)
        if (cross(p, q, b[j]) > 0) {  // CCW triangles: interior side is > 0
          all_out = false;
          break;
        }
      if (all_out) return true;
    }
    return false;
  };
  return !separated_by_edges_of(s, t) && !separated_by_edges_of(t, s);
}

std::pair<long, long> bbox_x(const std::vector<Pt>& hull) {
  long lo = hull[0].x, hi = hull[0].x;
  for (auto& p : hull) {
    lo = std::min(lo, p.x);
    hi = std::max(hi, p.x);
  }
  return {lo, hi};
}
std::pair<long, long> bbox_y(const std::vector<Pt>& hull) {
  long lo = hull[0].y, hi = hull[0].y;
  for (auto& p : hull) {
    lo = std::min(lo, p.y);
    hi = std::max(hi, p.y);
  }
  return {lo, hi};
}

long hull_area2(const std::vector<Pt>& hull) {
  long a = 0;
  for (size_t i = 0; i < hull.size(); i++) {
    const Pt& p = hull[i];
    const Pt& q = hull[(i + 1) % hull.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return a;
}

}  // namespace

ToricDiagram validate_diagram(const ToricDiagram& d) {
  check(!d.triangles.empty(), Err::TriangulationGap, "no triangles given");
  check(d.polytope_vertices.size() >= 3, Err::NonConvexPolytope, "need at least 3 vertices");

  std::vector<Pt> hull = convex_hull(d.polytope_vertices);
  // every listed vertex must be a strict hull vertex: no interior or
  // edge-interior points in the vertex list
  for (auto& v : d.polytope_vertices)
    check(std::find(hull.begin(), hull.end(), v) != hull.end(), Err::NonConvexPolytope,
          "vertex (" + pt_str(v) + ") is not a corner of its hull");

  ToricDiagram out;
  size_t start = std::min_element(hull.begin(), hull.end()) - hull.begin();
  for (size_t i = 0; i < hull.size(); i++) out.polytope_vertices.push_back(hull[(start + i) % hull.size()]);

  long cover2 = 0;
  for (Triangle t : d.triangles) {
    long a2 = area2(t);
    check(a2 != 0, Err::TriangulationGap, "degenerate (zero-area) triangle");
    if (a2 < 0) std::swap(t[1], t[2]);  // reorient counterclockwise
    for (auto& v : t)
      check(classify(hull, v) >= 0, Err::TriangulationGap,
            "triangle vertex (" + pt_str(v) + ") outside P");
    cover2 += area2(t);
    out.triangles.push_back(t);
  }
  for (size_t i = 0; i < out.triangles.size(); i++)
    for (size_t j = i + 1; j < out.triangles.size(); j++)
      check(!interiors_intersect(out.triangles[i], out.triangles[j]), Err::TriangulationOverlap,
            "triangles " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
  // contained, pairwise interior-disjoint: area equality forces exact coverage
  check(cover2 == hull_area2(hull), Err::TriangulationGap, "triangulation does not cover P");

  std::sort(out.triangles.begin(), out.triangles.end(), [](Triangle a, Triangle b) {
    Triangle as = a, bs = b;
    std::sort(as.begin(), as.end());
    std::sort(bs.begin(), bs.end());
    return as < bs;
  });
  return out;
}

std::vector<Pt> lattice_points(const ToricDiagram& d) {
  const auto& hull = d.polytope_vertices;
  auto [x0, x1] = bbox_x(hull);
  auto [y0, y1] = bbox_y(hull);
  std::vector<Pt> pts;
  for (long x = x0; x <= x1; x++)
    for (long y = y0; y <= y1; y++)
      if (classify(hull, {x, y}) >= 0) pts.push_back({x, y});
  return pts;
}

std::vector<Pt> boundary_lattice_points(const ToricDiagram& d) {
  const auto& hull = d.polytope_vertices;
  auto [x0, x1] = bbox_x(hull);
  auto [y0, y1] = bbox_y(hull);
  std::vector<Pt> pts;
  for (long x = x0; x <= x1; x++)
    for (long y = y0; y <= y1; y++)
      if (classify(hull, {x, y}) == 0) pts.push_back({x, y});
  return pts;
}

ToricCounts counts(const ToricDiagram& d) {
  const auto& hull = d.polytope_vertices;
  ToricCounts c;
  c.chi = hull_area2(hull);
  for (auto& pt : lattice_points(d)) {
    int cls = classify(hull, pt);
    if (cls > 0) c.fg++;
    else c.fn++;
  }
  std::set<Pt> tverts;
  for (auto& t : d.triangles) tverts.insert(t.begin(), t.end());
  c.p = (long)tverts.size() - 3;
  c.s = (c.fg + c.fn) - 3 - c.p;
  check(c.p >= 0 && c.s >= 0 && c.fn >= 3, Err::IdentityViolation, "count ranges violated");
  check(c.chi == 1 + c.p + c.s + c.fg, Err::IdentityViolation, "chi != 1 + p + s + fg");
  check(c.chi == 2 * c.fg - 2 + c.fn, Err::IdentityViolation, "chi != 2 fg - 2 + fn");
  return c;
}

MirrorPolynomial mirror_polynomial(const ToricDiagram& d, const std::map<Pt, Rat>& coeffs,
                                   long gauge_index) {
  check(gauge_index < (long)d.triangles.size(), Err::ConfigError, "gauge triangle out of range");
  // triangles are sorted by validate_diagram, so index 0 is the lex-smallest
  const Triangle& g = d.triangles[gauge_index < 0 ? 0 : gauge_index];
  MirrorPolynomial H;
  H.gauge = {g[0], g[1], g[2]};
  std::sort(H.gauge.begin(), H.gauge.end());
  for (auto& pt : H.gauge) H.terms[pt] = Rat(1);
  for (auto& pt : lattice_points(d)) {
    if (H.terms.count(pt)) {
      check(!coeffs.count(pt), Err::ConfigError,
            "coefficient supplied for gauge-fixed point (" + pt_str(pt) + ")");
      continue;
    }
    auto it = coeffs.find(pt);
    if (it == coeffs.end())
      fail(Err::MissingCoefficient, "no coefficient for lattice point (" + pt_str(pt) + ")");
    check(!FT<Rat>::is_zero(it->second), Err::ZeroCoefficient,
          "zero coefficient at (" + pt_str(pt) + ") degenerates the curve");
    H.terms[pt] = it->second;
  }
  for (auto& [pt, v] : coeffs)
    check(H.terms.count(pt), Err::ConfigError,
          "coefficient at (" + pt_str(pt) + ") outside P");
  return H;
}

ToricGraph emit_toric_graph(const ToricDiagram& d) {
  ToricGraph g;
  const auto& hull = d.polytope_vertices;
  std::map<std::pair<Pt, Pt>, std::vector<long>> edge_owners;
  for (size_t i = 0; i < d.triangles.size(); i++) {
    const Triangle& t = d.triangles[i];
    Rat bx(t[0].x + t[1].x + t[2].x, 3), by(t[0].y + t[1].y + t[2].y, 3);
    bx.canonicalize();
    by.canonicalize();
    g.nodes.push_back({(long)i, bx, by});
    for (int e = 0; e < 3; e++) {
      Pt a = t[e], b = t[(e + 1) % 3];
      if (b < a) std::swap(a, b);
      edge_owners[{a, b}].push_back((long)i);
    }
  }
  for (auto& [e, owners] : edge_owners) {
    if (owners.size() == 2) {
      g.edges.push_back({owners[0], owners[1]});
      continue;
    }
    check(owners.size() == 1, Err::IdentityViolation, "triangulation edge shared 3+ times");
    // boundary edge: ray with primitive outward normal
    bool on_hull = false;
    for (size_t i = 0; i < hull.size() && !on_hull; i++) {
      const Pt& p = hull[i];
      const Pt& q = hull[(i + 1) % hull.size()];
      on_hull = on_segment(p, q, e.first) && on_segment(p, q, e.second);
    }
    check(on_hull, Err::IdentityViolation, "unshared edge not on the boundary");
    Pt dvec = e.second - e.first;
    long gg = std::abs(std::gcd(dvec.x, dvec.y));
    Pt n{dvec.y / gg, -dvec.x / gg};
    const Triangle& t = d.triangles[owners[0]];
    Pt c3{t[0].x + t[1].x + t[2].x, t[0].y + t[1].y + t[2].y};  // 3x barycenter
    Pt a3{3 * e.first.x, 3 * e.first.y};
    long side = n.x * (c3.x - a3.x) + n.y * (c3.y - a3.y);
    if (side > 0) n = {-n.x, -n.y};
    g.rays.push_back({owners[0], n});
  }
  return g;
}

}  // namespace tr
