#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sch/io.hpp"
#include "sch/micro.hpp"

using namespace sch;

TEST_CASE("double well values") {
  CHECK(double_well(0.0).F == doctest::Approx(0.25));
  CHECK(double_well(0.0).f == 0.0);
  CHECK(double_well(1.0).F == 0.0);
  CHECK(double_well(1.0).f == 0.0);
  CHECK(double_well(-1.0).F == 0.0);
  CHECK(double_well(-1.0).f == 0.0);
  CHECK(double_well(2.0).F == doctest::Approx(9.0 / 4.0));
  CHECK(double_well(2.0).f == doctest::Approx(6.0));
}

TEST_CASE("parameter validation guards the scaling exponents") {
  MicroParams p;
  p.T = 0.01;
  CHECK_NOTHROW(p.validate());
  p.alpha = 1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.exponent_override = true;
  CHECK_NOTHROW(p.validate());
  p.alpha = 2.0;
  p.exponent_override = false;
  p.T = 0.0105;  // not a multiple of dt
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("well minima and the unstable equilibrium are exact fixed points") {
  MicroParams params;
  params.k = 1;
  params.n_cell = 16;
  params.T = 0.005;
  const DomainMask mask = build_domain_mask(CellGeometry::empty(), 1, 16);

  for (double level : {1.0, -1.0, 0.0}) {
    CHStepper stepper(mask, params);
    ScalarField c(16);
    for (double& v : c.v) v = level;
    const StaggeredField u(16);
    ScalarField cur = c;
    for (int s = 0; s < 3; ++s) {
      auto [cn, wn] = stepper.step(cur, u);
      for (std::size_t q = 0; q < cn.v.size(); ++q) {
        CHECK(cn.v[q] == level);  // bitwise
        CHECK(wn.v[q] == 0.0);
      }
      cur = cn;
    }
  }
}

TEST_CASE("pure Cahn-Hilliard run dissipates energy and conserves mass") {
  MicroParams params;
  params.k = 1;
  params.n_cell = 32;
  params.dt = 1e-3;
  params.T = 0.05;  // 50 steps
  params.S = 2.0;
  params.stokes_on = false;
  const InitialData init = InitialData::parse("random", 0);
  const MicroResult run = run_micro(CellGeometry::empty(), params, init);

  REQUIRE(run.ledger.rows.size() == 51);
  const double mass0 = run.ledger.rows.front().mass;
  for (std::size_t n = 1; n < run.ledger.rows.size(); ++n) {
    CHECK(run.ledger.rows[n].E <= run.ledger.rows[n - 1].E + 1e-10);
    CHECK(std::fabs(run.ledger.rows[n].mass - mass0) <= 1e-11);
  }
  for (const LedgerRow& r : run.ledger.rows) {
    CHECK(std::isfinite(r.E));
    CHECK(r.E >= 0.0);
    CHECK(r.grad_u_l2 == 0.0);
  }
}

TEST_CASE("advective runs still conserve mass") {
  MicroParams params;
  params.k = 2;
  params.n_cell = 16;
  params.dt = 1e-3;
  params.T = 0.01;
  const InitialData init = InitialData::parse("random", 3);
  const MicroResult run = run_micro(CellGeometry::disc(0.25), params, init);
  const double mass0 = run.ledger.rows.front().mass;
  for (const LedgerRow& r : run.ledger.rows)
    CHECK(std::fabs(r.mass - mass0) <= 1e-10);
  // no-slip on solid and outer walls, exactly
  const MicroState& last = run.snapshots.back();
  for (int j = 0; j < run.mask.n; ++j)
    for (int i = 0; i < run.mask.n; ++i) {
      if (!face_open_x(run.mask, Outer::Walled, i, j))
        CHECK(last.u.ux[j * run.mask.n + i] == 0.0);
      if (!face_open_y(run.mask, Outer::Walled, i, j))
        CHECK(last.u.uy[j * run.mask.n + i] == 0.0);
    }
  // discrete incompressibility on every pore cell
  CHECK(max_divergence(last.u, run.mask) <= 1e-8);
}

TEST_CASE("stokes substep") {
  MicroParams params;
  params.k = 1;
  params.n_cell = 16;
  const DomainMask mask = build_domain_mask(CellGeometry::empty(), 1, 16);
  const StokesOperators ops = stokes_operators(mask, Outer::Walled);

  SUBCASE("constant chemical potential forces nothing") {
    MicroStokes stokes(mask, params, ops);
    ScalarField c(16), w(16);
    for (int j = 0; j < 16; ++j)
      for (int i = 0; i < 16; ++i) {
        c.at(i, j) = std::sin(i + 0.3 * j);
        w.at(i, j) = 4.2;
      }
    auto [u, p] = stokes.solve(c, w);
    for (double v : u.ux) CHECK(v == 0.0);
    for (double v : u.uy) CHECK(v == 0.0);
    for (double v : p.v) CHECK(v == 0.0);
  }

  SUBCASE("constant order parameter folds the forcing into the pressure") {
    MicroStokes stokes(mask, params, ops);
    const double c0 = 0.5;
    ScalarField c(16), w(16);
    double wsum = 0.0;
    for (int j = 0; j < 16; ++j)
      for (int i = 0; i < 16; ++i) {
        c.at(i, j) = c0;
        w.at(i, j) = std::cos(2.0 * std::numbers::pi * (i + 0.5) / 16.0);
        wsum += w.at(i, j);
      }
    const double wmean = wsum / 256.0;
    auto [u, p] = stokes.solve(c, w);
    const double eps = params.eps();
    for (double v : u.ux) CHECK(std::fabs(v) < 1e-8);
    for (double v : u.uy) CHECK(std::fabs(v) < 1e-8);
    for (int q = 0; q < 256; ++q)
      CHECK(p.v[q] ==
            doctest::Approx(-eps * params.lambda * c0 * (w.v[q] - wmean)).epsilon(1e-6));
  }

  SUBCASE("manufactured forcing matches the dense saddle oracle") {
    MicroStokes stokes(mask, params, ops);
    // w = x1 makes the face forcing a uniform unit push scaled by the
    // normalization constant
    ScalarField c(16), w(16);
    for (int j = 0; j < 16; ++j)
      for (int i = 0; i < 16; ++i) {
        c.at(i, j) = 1.0;
        w.at(i, j) = (i + 0.5) / 16.0;
      }
    auto [u, p] = stokes.solve(c, w);

    const double coef = -params.lambda / (params.mu * params.eps());
    std::vector<double> f(ops.faces.count(), 0.0);
    for (int q = 0; q < ops.faces.count_x; ++q) f[q] = coef;
    const oracle::SaddleOracle want =
        oracle::solve_saddle_dense(ops.A, ops.B, f, ops.cells.weights);
    for (int q = 0; q < ops.faces.count_x; ++q) {
      const int g = ops.faces.to_grid_x[q];
      CHECK(u.ux[g] == doctest::Approx(want.u[q]).epsilon(1e-8).scale(1.0));
    }
    const double visc = params.mu * params.eps() * params.eps();
    for (int q = 0; q < ops.cells.count; ++q)
      CHECK(p.v[ops.cells.to_grid[q]] ==
            doctest::Approx(visc * want.p[q]).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("run_micro horizons and snapshots") {
  MicroParams params;
  params.k = 1;
  params.n_cell = 16;
  params.T = 0.0;
  const InitialData init = InitialData::parse("stripe", 0);

  SUBCASE("T = 0 leaves the initial state only") {
    const MicroResult run = run_micro(CellGeometry::empty(), params, init);
    CHECK(run.ledger.rows.size() == 1);
    CHECK(run.snapshots.size() == 1);
    CHECK(run.snapshots[0].t == 0.0);
  }

  SUBCASE("constant well minimum stays put with zero velocity") {
    params.T = 0.005;
    const InitialData one = InitialData::parse("constant:1", 0);
    const MicroResult run = run_micro(CellGeometry::empty(), params, one);
    for (const MicroState& s : run.snapshots) {
      for (double v : s.c.v) CHECK(v == 1.0);
      for (double v : s.u.ux) CHECK(v == 0.0);
      for (double v : s.u.uy) CHECK(v == 0.0);
    }
  }
}

TEST_CASE("identical runs produce identical artifacts") {
  MicroParams params;
  params.k = 4;
  params.n_cell = 16;
  params.dt = 1e-3;
  params.T = 0.005;
  const InitialData init = InitialData::parse("random", 7);
  const MicroResult a = run_micro(CellGeometry::disc(0.25), params, init);
  const MicroResult b = run_micro(CellGeometry::disc(0.25), params, init);
  CHECK(a.ledger.to_csv() == b.ledger.to_csv());
  CHECK(a.snapshots.back().c.v == b.snapshots.back().c.v);
  CHECK(a.snapshots.back().w.v == b.snapshots.back().w.v);
  CHECK(a.snapshots.back().u.ux == b.snapshots.back().u.ux);
  CHECK(a.snapshots.back().p.v == b.snapshots.back().p.v);
}

TEST_CASE("estimate_report aggregates the ledger") {
  MicroParams params;
  params.k = 1;
  params.n_cell = 16;
  params.T = 0.002;

  SUBCASE("stationary zero state reports zero monitors") {
    const InitialData zero = InitialData::parse("constant:0", 0);
    const MicroResult run = run_micro(CellGeometry::empty(), params, zero);
    const MonitorReport mon = estimate_report(run.ledger, params);
    for (int i = 0; i < MonitorReport::kCount; ++i) CHECK(mon.values[i] == 0.0);
  }

  SUBCASE("constant well minimum only carries its L4 mass") {
    const InitialData one = InitialData::parse("constant:1", 0);
    const MicroResult run = run_micro(CellGeometry::empty(), params, one);
    const MonitorReport mon = estimate_report(run.ledger, params);
    CHECK(mon.values[3] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mon.values[0] == 0.0);
    CHECK(mon.values[1] == 0.0);
    CHECK(mon.values[2] == 0.0);
    CHECK(mon.values[4] == doctest::Approx(0.0).scale(1.0));
    CHECK(mon.values[5] == doctest::Approx(0.0).scale(1.0));
  }

  SUBCASE("single-row ledger reports that row") {
    params.T = 0.0;
    const InitialData one = InitialData::parse("constant:1", 0);
    const MicroResult run = run_micro(CellGeometry::empty(), params, one);
    const MonitorReport mon = estimate_report(run.ledger, params);
    CHECK(mon.values[3] == doctest::Approx(1.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(estimate_report(EnergyLedger{}, params), SolverError);
}

TEST_CASE("initial data stays inside the physical range") {
  for (std::uint64_t seed : {0ull, 1ull, 42ull}) {
    const InitialData init = InitialData::parse("random", seed);
    for (int i = 0; i < 50; ++i)
      for (int j = 0; j < 50; ++j) {
        const double v = init.eval((i + 0.5) / 50.0, (j + 0.5) / 50.0);
        CHECK(std::fabs(v) <= 1.0);
      }
  }
  CHECK_THROWS_AS(InitialData::parse("constant:1.5", 0), ConfigError);
  CHECK_THROWS_AS(InitialData::parse("blob", 0), ConfigError);
}
