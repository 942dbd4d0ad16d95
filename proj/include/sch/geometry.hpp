#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sch {

// Solid inclusion of the unit cell Y = (0,1)^2.
//
//   Disc  -- solid disc of radius r centered at (0.5, 0.5); pore is |y-c| > r.
//   Slab  -- pore is the horizontal strip lo < y2 < hi, solid above and below.
//            The solid touches the cell boundary; admitted only because the
//            channel has an analytic permeability, and flagged as such.
//   Empty -- no solid, pore is all of Y.
struct CellGeometry {
  enum class Kind { Empty, Disc, Slab };

  Kind kind = Kind::Empty;
  double radius = 0.0;         // Disc
  double lo = 0.0, hi = 1.0;   // Slab

  static CellGeometry empty();
  static CellGeometry disc(double r);     // requires 0 < r < 0.5
  static CellGeometry slab(double a, double b);  // requires 0 <= a < b <= 1
  // "empty" | "disc:<r>" | "slab:<a>:<b>"
  static CellGeometry parse(std::string_view text);

  // characteristic function of the pore part, sampled pointwise
  bool indicator(double y1, double y2) const;

  std::string label() const;

  // analytic measures used by the flux-balance convention
  double pore_area() const;        // |Y_p|
  double solid_perimeter() const;  // |Gamma_s|
  bool touches_cell_boundary() const { return kind == Kind::Slab; }
};

// Periodic masks on an n x n torus grid with spacing h = 1/n.
//
// Index conventions (i: x1 direction, j: x2 direction, both 0..n-1):
//   cell  (i,j) -> j*n+i, center ((i+0.5)h, (j+0.5)h)
//   x-face(i,j) -> j*n+i, at (i*h, (j+0.5)h), between cells (i-1,j) and (i,j)
//   y-face(i,j) -> j*n+i, at ((i+0.5)h, j*h), between cells (i,j-1) and (i,j)
// Cell adjacency wraps around; a face is active iff both its cells are.
struct Mask {
  int n = 0;
  double h = 0.0;
  std::vector<std::uint8_t> cell;
  std::vector<std::uint8_t> face_x;
  std::vector<std::uint8_t> face_y;
  int active_cells = 0;

  int idx(int i, int j) const {
    i %= n; if (i < 0) i += n;
    j %= n; if (j < 0) j += n;
    return j * n + i;
  }
  bool cell_at(int i, int j) const { return cell[idx(i, j)] != 0; }
  bool face_x_at(int i, int j) const { return face_x[idx(i, j)] != 0; }
  bool face_y_at(int i, int j) const { return face_y[idx(i, j)] != 0; }
};

struct CellMask : Mask {};

struct DomainMask : Mask {
  int k = 1;       // eps = 1/k
  int n_cell = 0;  // resolution per eps-cell
  double eps() const { return 1.0 / k; }
};

// Samples the indicator at cell centers and derives the face masks.
// Rejects n < 4 and pore parts that are empty or disconnected on the torus.
CellMask build_cell_mask(const CellGeometry& geom, int n);

// k x k periodic tiling of build_cell_mask(geom, n_cell).
DomainMask build_domain_mask(const CellGeometry& geom, int k, int n_cell);

// active cells / total cells
double porosity(const Mask& mask);

// FNV-1a over the dimensions and cell bits; stamped into manifests
std::uint64_t mask_hash(const Mask& mask);

// true iff the active set is nonempty and connected under periodic adjacency
bool connected_on_torus(const std::vector<std::uint8_t>& cell, int n);

} // namespace sch
