#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <utility>

#include "trikin/integrator.hpp"

using namespace trikin;

namespace {

Solver make_periodic(int n, SolverConfig cfg) {
  TriMesh mesh = rect_mesh(n, n, 0, 0, 1, 1, true, true, true);
  return Solver(std::move(mesh), cfg, BcSet{});
}

double max_dev(const Solver& s, const Vec4& q0) {
  double dev = 0;
  for (int c = 0; c < s.mesh.ncells(); c++)
    for (int j = 0; j < kSP; j++)
      for (int m = 0; m < 4; m++)
        dev = std::max(dev, std::fabs(s.q[c][j][m] - q0[m]));
  return dev;
}

Vec4 bump(double x, double y) {
  double g = 0.2*std::sin(2*M_PI*x)*std::sin(2*M_PI*y);
  return conservative(1.0 + g, 0.3 + 0.1*g, -0.2, 1.0 + 0.5*g, 1.4);
}

Vec4 front(double x, double y) {
  double g = std::tanh((x - 0.5)/0.05);
  return conservative(1.0 + 0.4*g, 0.2, 0.0, 1.0 + 0.6*g + 0.02*std::sin(2*M_PI*y), 1.4);
}

}  // namespace

TEST_CASE("uniform flow is preserved exactly") {
  SolverConfig cfg;
  Vec4 q0 = conservative(1.0, 0.3, -0.2, 2.0, 1.4);

  SUBCASE("interpolation cells") {
    Solver s = make_periodic(4, cfg);
    s.init([&](double, double) { return q0; });
    for (int k = 0; k < 5; k++) REQUIRE(s.advance(1e-3));
    CHECK(s.troubled_count() == 0);
    CHECK(max_dev(s, q0) < 1e-13);
  }
  SUBCASE("subcell finite-volume cells") {
    cfg.force_troubled = true;
    Solver s = make_periodic(4, cfg);
    s.init([&](double, double) { return q0; });
    for (int k = 0; k < 5; k++) REQUIRE(s.advance(1e-3));
    double dev = 0;
    for (int c = 0; c < s.mesh.ncells(); c++)
      for (int t = 0; t < kSub; t++)
        for (int m = 0; m < 4; m++)
          dev = std::max(dev, std::fabs(s.sub[c][t][m] - q0[m]));
    CHECK(dev < 1e-13);
  }
}

TEST_CASE("advance conserves mass, momentum, and energy") {
  SUBCASE("smooth cells only") {
    SolverConfig cfg;
    Solver s = make_periodic(6, cfg);
    s.init(bump);
    Vec4 before = s.total_conserved();
    for (int k = 0; k < 8; k++) REQUIRE(s.advance(5e-4));
    CHECK(s.troubled_count() == 0);
    Vec4 after = s.total_conserved();
    for (int m = 0; m < 4; m++)
      CHECK(after[m] - before[m] == doctest::Approx(0.0).scale(std::fabs(before[0]) + std::fabs(before[3])).epsilon(1e-13));
  }
  SUBCASE("all subcell finite volumes") {
    SolverConfig cfg;
    cfg.force_troubled = true;
    Solver s = make_periodic(6, cfg);
    s.init(bump);
    Vec4 before = s.total_conserved();
    for (int k = 0; k < 8; k++) REQUIRE(s.advance(5e-4));
    Vec4 after = s.total_conserved();
    for (int m = 0; m < 4; m++)
      CHECK(after[m] - before[m] == doctest::Approx(0.0).scale(std::fabs(before[0]) + std::fabs(before[3])).epsilon(1e-13));
  }
  SUBCASE("mixed marking across a front") {
    SolverConfig cfg;
    cfg.threshold = 0.05;
    Solver s = make_periodic(8, cfg);
    s.init(front);
    Vec4 before = s.total_conserved();
    int seen = 0;
    for (int k = 0; k < 8; k++) {
      REQUIRE(s.advance(2e-4));
      seen = std::max(seen, s.troubled_count());
    }
    INFO("max troubled cells seen: ", seen);
    CHECK(seen > 0);
    CHECK(seen < s.mesh.ncells());
    Vec4 after = s.total_conserved();
    for (int m = 0; m < 4; m++)
      CHECK(after[m] - before[m] == doctest::Approx(0.0).scale(std::fabs(before[0]) + std::fabs(before[3])).epsilon(1e-12));
  }
}

TEST_CASE("advance is deterministic") {
  SolverConfig cfg;
  cfg.threshold = 0.05;
  auto run = [&] {
    Solver s = make_periodic(6, cfg);
    s.init(front);
    for (int k = 0; k < 6; k++) REQUIRE(s.advance(2e-4));
    return s;
  };
  Solver a = run(), b = run();
  for (int c = 0; c < a.mesh.ncells(); c++)
    for (int j = 0; j < kSP; j++)
      for (int m = 0; m < 4; m++) CHECK(a.q[c][j][m] == b.q[c][j][m]);
}
