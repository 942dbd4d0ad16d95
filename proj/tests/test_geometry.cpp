#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sch/geometry.hpp"
#include "sch/io.hpp"

using namespace sch;

TEST_CASE("indicator samples the pore part") {
  const CellGeometry disc = CellGeometry::disc(0.25);
  CHECK(disc.indicator(0.5, 0.5) == false);    // solid center
  CHECK(disc.indicator(0.05, 0.05) == true);   // distance ~0.636
  CHECK(disc.indicator(0.75, 0.5) == false);   // exactly on the interface -> solid
  CHECK(CellGeometry::empty().indicator(0.3, 0.9) == true);
  const CellGeometry slab = CellGeometry::slab(0.25, 0.75);
  CHECK(slab.indicator(0.1, 0.5) == true);
  CHECK(slab.indicator(0.1, 0.1) == false);
  CHECK(slab.indicator(0.1, 0.25) == false);  // strict inequality at the wall
}

TEST_CASE("geometry parsing and validation") {
  CHECK(CellGeometry::parse("disc:0.25").label() == "disc:0.25");
  CHECK(CellGeometry::parse("slab:0.25:0.75").label() == "slab:0.25:0.75");
  CHECK(CellGeometry::parse("empty").label() == "empty");
  CHECK_THROWS_AS(CellGeometry::parse("disc:0.6"), ConfigError);
  CHECK_THROWS_AS(CellGeometry::parse("slab:0.8:0.2"), ConfigError);
  CHECK_THROWS_AS(CellGeometry::parse("ball:0.2"), ConfigError);
}

TEST_CASE("empty cell mask has every cell and face active") {
  const CellMask m = build_cell_mask(CellGeometry::empty(), 8);
  CHECK(m.active_cells == 64);
  for (auto f : m.face_x) CHECK(f == 1);
  for (auto f : m.face_y) CHECK(f == 1);
  CHECK(porosity(m) == 1.0);
}

TEST_CASE("slab mask activates the strip rows") {
  const CellMask m = build_cell_mask(CellGeometry::slab(0.25, 0.75), 8);
  // row centers 0.3125..0.6875 lie inside, 4 of 8 rows
  CHECK(m.active_cells == 4 * 8);
  CHECK(porosity(m) == 0.5);
  for (int j = 0; j < 8; ++j) {
    const bool expect = j >= 2 && j <= 5;
    CHECK(m.cell_at(3, j) == expect);
  }
}

TEST_CASE("disc porosity approaches the area formula") {
  const double exact = 1.0 - std::numbers::pi / 16.0;
  const CellMask m = build_cell_mask(CellGeometry::disc(0.25), 64);
  CHECK(std::fabs(porosity(m) - exact) < 0.01);
}

TEST_CASE("porosity refinement error is O(1/N), monotone up to one exception") {
  const double exact = 1.0 - std::numbers::pi / 16.0;
  const int levels[4] = {32, 64, 128, 256};
  double errs[4];
  for (int l = 0; l < 4; ++l)
    errs[l] = std::fabs(porosity(build_cell_mask(CellGeometry::disc(0.25), levels[l])) - exact);
  double c_bound = 0.0;
  for (int l = 0; l < 4; ++l) c_bound = std::max(c_bound, errs[l] * levels[l]);
  CHECK(c_bound < 1.0);  // measured constant stays modest
  int violations = 0;
  for (int l = 1; l < 4; ++l)
    if (errs[l] > errs[l - 1]) ++violations;
  CHECK(violations <= 1);
}

TEST_CASE("mask construction validates its inputs") {
  CHECK_THROWS_AS(build_cell_mask(CellGeometry::empty(), 3), ConfigError);
  // no cell centers fall inside this sliver, so the pore set is empty
  CHECK_THROWS_AS(build_cell_mask(CellGeometry::slab(0.41, 0.43), 8), ConfigError);
  CHECK_THROWS_AS(build_domain_mask(CellGeometry::empty(), 0, 8), ConfigError);
}

TEST_CASE("torus connectivity check") {
  // two isolated active cells
  std::vector<std::uint8_t> cells(16, 0);
  cells[0] = 1;
  cells[10] = 1;
  CHECK(connected_on_torus(cells, 4) == false);
  // wraparound connects the two ends of a row
  std::vector<std::uint8_t> row(16, 0);
  row[0] = row[3] = 1;
  CHECK(connected_on_torus(row, 4) == true);
  CHECK(connected_on_torus(std::vector<std::uint8_t>(16, 0), 4) == false);
}

TEST_CASE("domain mask tiles the cell mask periodically") {
  const DomainMask d = build_domain_mask(CellGeometry::empty(), 2, 4);
  CHECK(d.n == 8);
  CHECK(d.active_cells == 64);

  const CellMask unit = build_cell_mask(CellGeometry::disc(0.25), 16);
  const DomainMask tiled = build_domain_mask(CellGeometry::disc(0.25), 4, 16);
  CHECK(porosity(tiled) == porosity(unit));
  const DomainMask tiled2 = build_domain_mask(CellGeometry::disc(0.25), 2, 16);
  CHECK(porosity(tiled2) == porosity(unit));
  for (int j = 0; j < tiled.n; ++j)
    for (int i = 0; i < tiled.n; ++i)
      CHECK(tiled.cell_at(i, j) == unit.cell_at(i % 16, j % 16));
}

TEST_CASE("periodic shift by the mask period is the identity") {
  const CellMask m = build_cell_mask(CellGeometry::disc(0.3), 32);
  for (int j = 0; j < m.n; ++j)
    for (int i = 0; i < m.n; ++i) {
      CHECK(m.cell_at(i + m.n, j) == m.cell_at(i, j));
      CHECK(m.cell_at(i, j - m.n) == m.cell_at(i, j));
    }
}

TEST_CASE("face masks are consistent with cell masks") {
  for (const CellGeometry& g :
       {CellGeometry::disc(0.25), CellGeometry::slab(0.25, 0.75), CellGeometry::disc(0.45)}) {
    const CellMask m = build_cell_mask(g, 24);
    for (int j = 0; j < m.n; ++j) {
      for (int i = 0; i < m.n; ++i) {
        if (m.face_x_at(i, j)) {
          CHECK(m.cell_at(i - 1, j));
          CHECK(m.cell_at(i, j));
        }
        if (!m.cell_at(i, j)) {
          CHECK(!m.face_x_at(i, j));
          CHECK(!m.face_x_at(i + 1, j));
          CHECK(!m.face_y_at(i, j));
          CHECK(!m.face_y_at(i, j + 1));
        }
      }
    }
  }
}

TEST_CASE("mask hashes separate geometries") {
  const CellMask a = build_cell_mask(CellGeometry::disc(0.25), 32);
  const CellMask b = build_cell_mask(CellGeometry::disc(0.3), 32);
  const CellMask a2 = build_cell_mask(CellGeometry::disc(0.25), 32);
  CHECK(mask_hash(a) == mask_hash(a2));
  CHECK(mask_hash(a) != mask_hash(b));
}

TEST_CASE("analytic measures used by the flux convention") {
  const CellGeometry disc = CellGeometry::disc(0.25);
  CHECK(disc.pore_area() == doctest::Approx(1.0 - std::numbers::pi / 16.0).epsilon(1e-12));
  CHECK(disc.solid_perimeter() == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-12));
  const CellGeometry slab = CellGeometry::slab(0.25, 0.75);
  CHECK(slab.pore_area() == doctest::Approx(0.5));
  CHECK(slab.solid_perimeter() == doctest::Approx(2.0));
  CHECK(CellGeometry::empty().solid_perimeter() == 0.0);
}
