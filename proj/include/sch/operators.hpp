#pragma once

#include <span>
#include <vector>

#include "sch/field.hpp"
#include "sch/geometry.hpp"
#include "sch/sparse.hpp"

namespace sch {

// Outer-boundary policy. Periodic keeps the torus adjacency (cell problems);
// Walled suppresses wraparound faces, turning the slots at x=0 / y=0 into
// the no-slip / no-flux walls of the box (pore-scale runs).
enum class Outer { Periodic, Walled };

struct CellMap {
  std::vector<int> to_grid;    // unknown -> grid cell
  std::vector<int> from_grid;  // grid cell -> unknown or -1
  int count = 0;
  std::vector<double> weights;  // h^2 per unknown
};

CellMap build_cell_map(const Mask& mask);

std::vector<double> restrict_cells(const ScalarField& f, const CellMap& map);
void prolong_cells(std::span<const double> v, const CellMap& map, ScalarField& f);

bool face_open_x(const Mask& mask, Outer outer, int i, int j);
bool face_open_y(const Mask& mask, Outer outer, int i, int j);

// -Δ on active cells, homogeneous Neumann on closed faces. Symmetric,
// positive semidefinite, null space = constants.
SparseMatrix scalar_laplacian(const Mask& mask, Outer outer, const CellMap& map);

// Velocity unknowns: open faces under the policy, x faces then y faces.
struct FaceMap {
  std::vector<int> to_grid_x, to_grid_y;
  std::vector<int> from_grid_x, from_grid_y;
  int count_x = 0, count_y = 0;
  int count() const { return count_x + count_y; }
};

FaceMap build_face_map(const Mask& mask, Outer outer);

std::vector<double> restrict_faces(const StaggeredField& u, const FaceMap& map);
void prolong_faces(std::span<const double> v, const FaceMap& map, StaggeredField& u);

// Unit-viscosity MAC Stokes blocks:
//   A -- vector Laplacian with u=0 on solid/wall faces (Dirichlet at
//        distance h along the normal, mirror ghost at distance h/2 along
//        the tangent), symmetric positive definite when walls exist.
//   B -- n_active_cells x n_faces, B^T is the pressure gradient and -B the
//        divergence, so [A B^T; B 0] is the discrete saddle system.
struct StokesOperators {
  SparseMatrix A;
  SparseMatrix B;
  FaceMap faces;
  CellMap cells;
};

StokesOperators stokes_operators(const Mask& mask, Outer outer);

// max over active cells of |div u|
double max_divergence(const StaggeredField& u, const Mask& mask);

// conservative first-order upwind divergence of (u c) on active cells
ScalarField advect_upwind(const ScalarField& c, const StaggeredField& u, const Mask& mask,
                          Outer outer);

// discrete ||grad f||^2_{L2} = sum over open faces of (f_P - f_Q)^2
double grad_norm_sq(const ScalarField& f, const Mask& mask, Outer outer);

// Bilinear-element stiffness for -div(D grad c) on an n x n grid of nodes
// (the cell centers), elements between adjacent nodes, natural boundary
// conditions. D is a constant symmetric 2x2 tensor.
SparseMatrix tensor_stiffness(int n, const double D[2][2]);

} // namespace sch
