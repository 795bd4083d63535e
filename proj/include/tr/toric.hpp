#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "tr/scalar.hpp"

namespace tr {

struct Pt {
  long x = 0, y = 0;
  auto operator<=>(const Pt&) const = default;
};
inline Pt operator-(const Pt& a, const Pt& b) { return {a.x - b.x, a.y - b.y}; }
inline Pt operator+(const Pt& a, const Pt& b) { return {a.x + b.x, a.y + b.y}; }
inline long cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}
inline std::string pt_str(const Pt& p) {
  return std::to_string(p.x) + "," + std::to_string(p.y);
}

using Triangle = std::array<Pt, 3>;

// Convex lattice polygon P with a triangulation, vertices counterclockwise.
struct ToricDiagram {
  std::vector<Pt> polytope_vertices;
  std::vector<Triangle> triangles;
};

struct ToricCounts {
  long p = 0;   // |Sigma(1)| - 3
  long s = 0;   // p + s = |P cap Z^2| - 3
  long fg = 0;  // interior lattice points
  long fn = 0;  // boundary lattice points
  long chi = 0; // 2 Area(P)
  long curve_euler() const;  // 2 - 2 fg - fn, asserted equal to -chi
};

// Laurent polynomial H(X,Y) = sum over P cap Z^2; the three gauge points
// carry coefficient 1.
struct MirrorPolynomial {
  std::map<Pt, Rat> terms;
  std::array<Pt, 3> gauge;
};

struct ToricGraph {
  struct Node {
    long id;
    Rat pos_x, pos_y;  // barycenter of the triangle
  };
  struct Ray {
    long node;
    Pt dir;  // primitive outward normal of the boundary edge
  };
  std::vector<Node> nodes;
  std::vector<std::pair<long, long>> edges;
  std::vector<Ray> rays;
};

// Checks convexity, lattice membership, orientation, and exact coverage;
// returns the diagram with CCW-oriented triangles in sorted order and the
// hull vertex list rotated to start at its lexicographic minimum.
ToricDiagram validate_diagram(const ToricDiagram& d);

ToricCounts counts(const ToricDiagram& d);

// All lattice points of P, boundary flag included.
std::vector<Pt> lattice_points(const ToricDiagram& d);
std::vector<Pt> boundary_lattice_points(const ToricDiagram& d);

// gauge_index < 0 selects the lexicographically smallest triangle.
MirrorPolynomial mirror_polynomial(const ToricDiagram& d, const std::map<Pt, Rat>& coeffs,
                                   long gauge_index = -1);

ToricGraph emit_toric_graph(const ToricDiagram& d);

}  // namespace tr
