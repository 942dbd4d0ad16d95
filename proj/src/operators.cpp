#include "sch/operators.hpp"

#include <array>
#include <cmath>

#include "sch/io.hpp"

namespace sch {

CellMap build_cell_map(const Mask& mask) {
  CellMap map;
  map.from_grid.assign(mask.cell.size(), -1);
  for (std::size_t g = 0; g < mask.cell.size(); ++g) {
    if (mask.cell[g]) {
      map.from_grid[g] = map.count++;
      map.to_grid.push_back(static_cast<int>(g));
    }
  }
  map.weights.assign(static_cast<std::size_t>(map.count), mask.h * mask.h);
  return map;
}

std::vector<double> restrict_cells(const ScalarField& f, const CellMap& map) {
  std::vector<double> v(static_cast<std::size_t>(map.count));
  for (int q = 0; q < map.count; ++q) v[q] = f.v[map.to_grid[q]];
  return v;
}

void prolong_cells(std::span<const double> v, const CellMap& map, ScalarField& f) {
  std::fill(f.v.begin(), f.v.end(), 0.0);
  for (int q = 0; q < map.count; ++q) f.v[map.to_grid[q]] = v[q];
}

bool face_open_x(const Mask& mask, Outer outer, int i, int j) {
  if (outer == Outer::Walled && i == 0) return false;
  return mask.face_x_at(i, j);
}

bool face_open_y(const Mask& mask, Outer outer, int i, int j) {
  if (outer == Outer::Walled && j == 0) return false;
  return mask.face_y_at(i, j);
}

SparseMatrix scalar_laplacian(const Mask& mask, Outer outer, const CellMap& map) {
  const int n = mask.n;
  const double w = 1.0 / (mask.h * mask.h);
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(map.count) * 5);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int p = map.from_grid[j * n + i];
      if (p < 0) continue;
      // east, west, north, south through the shared face
      const struct { int fi, fj, ci, cj; bool x; } nb[4] = {
          {i + 1 == n ? 0 : i + 1, j, i + 1, j, true},
          {i, j, i - 1, j, true},
          {i, j + 1 == n ? 0 : j + 1, i, j + 1, false},
          {i, j, i, j - 1, false},
      };
      for (const auto& s : nb) {
        const bool open = s.x ? face_open_x(mask, outer, s.fi, s.fj)
                              : face_open_y(mask, outer, s.fi, s.fj);
        if (!open) continue;
        const int q = map.from_grid[mask.idx(s.ci, s.cj)];
        t.push_back({p, p, w});
        t.push_back({p, q, -w});
      }
    }
  }
  return SparseMatrix::assemble(std::move(t), map.count, map.count, true);
}

FaceMap build_face_map(const Mask& mask, Outer outer) {
  const int n = mask.n;
  FaceMap map;
  map.from_grid_x.assign(mask.face_x.size(), -1);
  map.from_grid_y.assign(mask.face_y.size(), -1);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (face_open_x(mask, outer, i, j)) {
        map.from_grid_x[j * n + i] = map.count_x++;
        map.to_grid_x.push_back(j * n + i);
      }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (face_open_y(mask, outer, i, j)) {
        map.from_grid_y[j * n + i] = map.count_y++;
        map.to_grid_y.push_back(j * n + i);
      }
  return map;
}

std::vector<double> restrict_faces(const StaggeredField& u, const FaceMap& map) {
  std::vector<double> v(static_cast<std::size_t>(map.count()));
  for (int q = 0; q < map.count_x; ++q) v[q] = u.ux[map.to_grid_x[q]];
  for (int q = 0; q < map.count_y; ++q) v[map.count_x + q] = u.uy[map.to_grid_y[q]];
  return v;
}

void prolong_faces(std::span<const double> v, const FaceMap& map, StaggeredField& u) {
  std::fill(u.ux.begin(), u.ux.end(), 0.0);
  std::fill(u.uy.begin(), u.uy.end(), 0.0);
  for (int q = 0; q < map.count_x; ++q) u.ux[map.to_grid_x[q]] = v[q];
  for (int q = 0; q < map.count_y; ++q) u.uy[map.to_grid_y[q]] = v[map.count_x + q];
}

namespace {

// Stencil row for one velocity component. Along the normal the neighbor
// slot sits on the solid boundary when it is not an unknown (u=0 at
// distance h); along the tangent a missing neighbor means a wall half a
// cell away, eliminated by the mirror ghost u_ghost = -u.
void face_laplacian_rows(const Mask& mask, Outer outer, const FaceMap& map, bool xdir,
                         std::vector<Triplet>& t) {
  const int n = mask.n;
  const double w = 1.0 / (mask.h * mask.h);
  const auto& from_grid = xdir ? map.from_grid_x : map.from_grid_y;
  const int base = xdir ? 0 : map.count_x;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int q0 = from_grid[j * n + i];
      if (q0 < 0) continue;
      const int p = base + q0;
      for (int dir = 0; dir < 4; ++dir) {
        const int di = dir == 0 ? 1 : (dir == 1 ? -1 : 0);
        const int dj = dir == 2 ? 1 : (dir == 3 ? -1 : 0);
        const bool tangential = xdir ? (dj != 0) : (di != 0);
        const bool wraps = (i + di < 0 || i + di >= n || j + dj < 0 || j + dj >= n);
        if (tangential && wraps && outer == Outer::Walled) {
          t.push_back({p, p, 2.0 * w});  // outer wall at h/2
          continue;
        }
        const int g = mask.idx(i + di, j + dj);
        const int qn = from_grid[g];
        if (qn >= 0) {
          t.push_back({p, p, w});
          t.push_back({p, base + qn, -w});
        } else if (tangential) {
          t.push_back({p, p, 2.0 * w});  // solid edge at h/2, mirror ghost
        } else {
          t.push_back({p, p, w});  // u = 0 on the neighbor slot (on the wall)
        }
      }
    }
  }
}

} // namespace

StokesOperators stokes_operators(const Mask& mask, Outer outer) {
  StokesOperators ops;
  ops.cells = build_cell_map(mask);
  ops.faces = build_face_map(mask, outer);

  std::vector<Triplet> ta;
  ta.reserve(static_cast<std::size_t>(ops.faces.count()) * 5);
  face_laplacian_rows(mask, outer, ops.faces, true, ta);
  face_laplacian_rows(mask, outer, ops.faces, false, ta);
  ops.A = SparseMatrix::assemble(std::move(ta), ops.faces.count(), ops.faces.count(), true);

  const int n = mask.n;
  const double inv_h = 1.0 / mask.h;
  std::vector<Triplet> tb;
  tb.reserve(static_cast<std::size_t>(ops.cells.count) * 4);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int row = ops.cells.from_grid[j * n + i];
      if (row < 0) continue;
      const int fe = ops.faces.from_grid_x[mask.idx(i + 1, j)];
      const int fw = ops.faces.from_grid_x[j * n + i];
      const int fn = ops.faces.from_grid_y[mask.idx(i, j + 1)];
      const int fs = ops.faces.from_grid_y[j * n + i];
      if (fe >= 0) tb.push_back({row, fe, -inv_h});
      if (fw >= 0) tb.push_back({row, fw, inv_h});
      if (fn >= 0) tb.push_back({row, ops.faces.count_x + fn, -inv_h});
      if (fs >= 0) tb.push_back({row, ops.faces.count_x + fs, inv_h});
    }
  }
  ops.B = SparseMatrix::assemble(std::move(tb), ops.cells.count, ops.faces.count());
  return ops;
}

double max_divergence(const StaggeredField& u, const Mask& mask) {
  const int n = mask.n;
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (!mask.cell[j * n + i]) continue;
      const double div = (u.ux[mask.idx(i + 1, j)] - u.ux[j * n + i] +
                          u.uy[mask.idx(i, j + 1)] - u.uy[j * n + i]) /
                         mask.h;
      worst = std::max(worst, std::fabs(div));
    }
  }
  return worst;
}

ScalarField advect_upwind(const ScalarField& c, const StaggeredField& u, const Mask& mask,
                          Outer outer) {
  const int n = mask.n;
  ScalarField out(n);
  auto add_flux = [&](int ci, int cj, double flux) {
    if (mask.cell_at(ci, cj)) out.v[mask.idx(ci, cj)] += flux;
  };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (face_open_x(mask, outer, i, j)) {
        const double vel = u.ux[j * n + i];
        const double up = vel > 0.0 ? c.v[mask.idx(i - 1, j)] : c.v[j * n + i];
        const double flux = vel * up / mask.h;
        add_flux(i, j, -flux);      // inflow through the west face of (i,j)
        add_flux(i - 1, j, flux);   // outflow through the east face of (i-1,j)
      }
      if (face_open_y(mask, outer, i, j)) {
        const double vel = u.uy[j * n + i];
        const double up = vel > 0.0 ? c.v[mask.idx(i, j - 1)] : c.v[j * n + i];
        const double flux = vel * up / mask.h;
        add_flux(i, j, -flux);
        add_flux(i, j - 1, flux);
      }
    }
  }
  return out;
}

double grad_norm_sq(const ScalarField& f, const Mask& mask, Outer outer) {
  const int n = mask.n;
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (face_open_x(mask, outer, i, j)) {
        const double d = f.v[j * n + i] - f.v[mask.idx(i - 1, j)];
        acc += d * d;
      }
      if (face_open_y(mask, outer, i, j)) {
        const double d = f.v[j * n + i] - f.v[mask.idx(i, j - 1)];
        acc += d * d;
      }
    }
  }
  return acc;
}

SparseMatrix tensor_stiffness(int n, const double D[2][2]) {
  // 2x2 Gauss quadrature is exact for bilinear gradients on squares
  const double gp[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};
  std::array<std::array<double, 4>, 4> ke{};
  for (int a = 0; a < 4; ++a) ke[a].fill(0.0);
  auto shape_grad = [](int a, double x, double y, double& gx, double& gy) {
    // nodes: (0,0),(1,0),(0,1),(1,1) on the unit square
    switch (a) {
      case 0: gx = -(1 - y); gy = -(1 - x); break;
      case 1: gx = (1 - y);  gy = -x;       break;
      case 2: gx = -y;       gy = (1 - x);  break;
      default: gx = y;       gy = x;        break;
    }
  };
  for (double qx : gp) {
    for (double qy : gp) {
      double g[4][2];
      for (int a = 0; a < 4; ++a) shape_grad(a, qx, qy, g[a][0], g[a][1]);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const double dx = D[0][0] * g[b][0] + D[0][1] * g[b][1];
          const double dy = D[1][0] * g[b][0] + D[1][1] * g[b][1];
          ke[a][b] += 0.25 * (g[a][0] * dx + g[a][1] * dy);
        }
    }
  }
  // gradients scale with 1/h, the element area with h^2, so K^e is h-free
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(n - 1) * (n - 1) * 16);
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      const int node[4] = {j * n + i, j * n + i + 1, (j + 1) * n + i, (j + 1) * n + i + 1};
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) t.push_back({node[a], node[b], ke[a][b]});
    }
  }
  return SparseMatrix::assemble(std::move(t), n * n, n * n, true);
}

} // namespace sch
