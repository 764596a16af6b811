#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "trikin/refelem.hpp"

using namespace trikin;

// Quadrature written from scratch for this test: Gauss-Legendre on [0,1] via
// Newton on the Legendre recurrence, and a Duffy-collapsed product rule on
// the unit right triangle. Nothing here touches the library's tables.
namespace {

struct Rule1 {
  std::vector<double> x, w;
};

Rule1 gl01(int n) {
  Rule1 r;
  for (int i = 0; i < n; i++) {
    double t = std::cos(M_PI*(i + 0.75)/(n + 0.5));
    for (int it = 0; it < 100; it++) {
      double p0 = 1, p1 = t;
      for (int k = 2; k <= n; k++) {
        double p2 = ((2*k - 1)*t*p1 - (k - 1)*p0)/k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n*(t*p1 - p0)/(t*t - 1);
      double step = p1/dp;
      t -= step;
      if (std::fabs(step) < 1e-15) break;
    }
    double p0 = 1, p1 = t;
    for (int k = 2; k <= n; k++) {
      double p2 = ((2*k - 1)*t*p1 - (k - 1)*p0)/k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n*(t*p1 - p0)/(t*t - 1);
    r.x.push_back(0.5*(t + 1));
    r.w.push_back(1.0/((1 - t*t)*dp*dp));
  }
  return r;
}

struct Rule2 {
  std::vector<double> r, s, w;
};

Rule2 duffy_tri(int n) {
  Rule1 g = gl01(n);
  Rule2 q;
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      double x = g.x[i], y = g.x[j];
      q.r.push_back(x);
      q.s.push_back(y*(1 - x));
      q.w.push_back(g.w[i]*g.w[j]*(1 - x));
    }
  return q;
}

double factorial(int n) {
  double f = 1;
  for (int k = 2; k <= n; k++) f *= k;
  return f;
}

// exact integral of r^a s^b over the unit right triangle
double tri_monomial(int a, int b) {
  return factorial(a)*factorial(b)/factorial(a + b + 2);
}

struct Cubic {
  double c[10];
  static constexpr int pw[10][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1},
                                    {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}};
  double at(double r, double s) const {
    double v = 0;
    for (int k = 0; k < 10; k++)
      v += c[k]*std::pow(r, pw[k][0])*std::pow(s, pw[k][1]);
    return v;
  }
  double dr(double r, double s) const {
    double v = 0;
    for (int k = 0; k < 10; k++)
      if (pw[k][0] > 0)
        v += c[k]*pw[k][0]*std::pow(r, pw[k][0] - 1)*std::pow(s, pw[k][1]);
    return v;
  }
  double ds(double r, double s) const {
    double v = 0;
    for (int k = 0; k < 10; k++)
      if (pw[k][1] > 0)
        v += c[k]*pw[k][1]*std::pow(r, pw[k][0])*std::pow(s, pw[k][1] - 1);
    return v;
  }
};

Cubic random_cubic(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-1, 1);
  Cubic p;
  for (int k = 0; k < 10; k++) p.c[k] = d(rng);
  return p;
}

}  // namespace

TEST_CASE("basis has the Lagrange property and reproduces cubics") {
  const ReferenceElement& e = reference_element();
  for (int j = 0; j < kSP; j++) {
    double L[kSP];
    e.basis_at(e.sp[j][0], e.sp[j][1], L);
    for (int i = 0; i < kSP; i++)
      CHECK(L[i] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
  }
  std::mt19937 rng(2);
  Cubic p = random_cubic(rng);
  std::uniform_real_distribution<double> d(0.05, 0.4);
  for (int trial = 0; trial < 5; trial++) {
    double r = d(rng), s = d(rng);
    double L[kSP];
    e.basis_at(r, s, L);
    double v = 0;
    for (int j = 0; j < kSP; j++) v += p.at(e.sp[j][0], e.sp[j][1])*L[j];
    CHECK(v == doctest::Approx(p.at(r, s)).epsilon(1e-12));
  }
}

TEST_CASE("basis gradients match finite differences") {
  const ReferenceElement& e = reference_element();
  double h = 1e-6;
  double pts[3][2] = {{0.2, 0.3}, {0.11, 0.47}, {0.55, 0.21}};
  for (auto& pt : pts) {
    double Lr[kSP], Ls[kSP], Lp[kSP], Lm[kSP];
    e.basis_grad_at(pt[0], pt[1], Lr, Ls);
    e.basis_at(pt[0] + h, pt[1], Lp);
    e.basis_at(pt[0] - h, pt[1], Lm);
    for (int j = 0; j < kSP; j++)
      CHECK(Lr[j] == doctest::Approx((Lp[j] - Lm[j])/(2*h)).epsilon(1e-8));
    e.basis_at(pt[0], pt[1] + h, Lp);
    e.basis_at(pt[0], pt[1] - h, Lm);
    for (int j = 0; j < kSP; j++)
      CHECK(Ls[j] == doctest::Approx((Lp[j] - Lm[j])/(2*h)).epsilon(1e-8));
  }
}

TEST_CASE("nodal derivative matrices differentiate cubics exactly") {
  const ReferenceElement& e = reference_element();
  std::mt19937 rng(3);
  for (int trial = 0; trial < 3; trial++) {
    Cubic p = random_cubic(rng);
    double f[kSP];
    for (int m = 0; m < kSP; m++) f[m] = p.at(e.sp[m][0], e.sp[m][1]);
    for (int j = 0; j < kSP; j++) {
      double dr = 0, ds = 0;
      for (int m = 0; m < kSP; m++) {
        dr += e.dLdr[j][m]*f[m];
        ds += e.dLds[j][m]*f[m];
      }
      CHECK(dr == doctest::Approx(p.dr(e.sp[j][0], e.sp[j][1])).epsilon(1e-11).scale(1.0));
      CHECK(ds == doctest::Approx(p.ds(e.sp[j][0], e.sp[j][1])).epsilon(1e-11).scale(1.0));
    }
  }
}

TEST_CASE("cell-average weights integrate monomials exactly") {
  const ReferenceElement& e = reference_element();
  for (int a = 0; a + 0 <= 3; a++)
    for (int b = 0; a + b <= 3; b++) {
      double got = 0;
      for (int j = 0; j < kSP; j++)
        got += e.cellavg[j]*std::pow(e.sp[j][0], a)*std::pow(e.sp[j][1], b);
      double want = tri_monomial(a, b)/0.5;  // mean over the triangle
      CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("mass matrix matches independent quadrature") {
  const ReferenceElement& e = reference_element();
  Rule2 q = duffy_tri(8);
  for (int i = 0; i < kSP; i++)
    for (int j = i; j < kSP; j++) {
      double want = 0;
      for (size_t k = 0; k < q.w.size(); k++) {
        double L[kSP];
        e.basis_at(q.r[k], q.s[k], L);
        want += q.w[k]*L[i]*L[j];
      }
      CHECK(e.mass[i][j] == doctest::Approx(want).epsilon(1e-11).scale(0.01));
      CHECK(e.mass[i][j] == doctest::Approx(e.mass[j][i]).epsilon(1e-13).scale(0.01));
    }
}

TEST_CASE("edge weights integrate cubics along the edge") {
  const ReferenceElement& e = reference_element();
  for (int k = 0; k <= 3; k++) {
    double got = 0;
    for (int l = 0; l < kFP; l++)
      got += e.edge_w[l]*std::pow(e.edge_xi[l], k);
    CHECK(got == doctest::Approx(1.0/(k + 1)).epsilon(1e-13));
  }
}

TEST_CASE("edge solution points sit at the edge parameters") {
  const ReferenceElement& e = reference_element();
  const double v[3][2] = {{0, 0}, {1, 0}, {0, 1}};
  for (int s = 0; s < 3; s++) {
    const double* p = v[s];
    const double* n = v[(s + 1)%3];
    for (int l = 0; l < kFP; l++) {
      double xi = e.edge_xi[l];
      int j = e.edge_sp[s][l];
      CHECK(e.sp[j][0] == doctest::Approx(p[0] + xi*(n[0] - p[0])).epsilon(1e-14));
      CHECK(e.sp[j][1] == doctest::Approx(p[1] + xi*(n[1] - p[1])).epsilon(1e-14));
    }
  }
}

TEST_CASE("lift solves the edge-moment system against the mass matrix") {
  const ReferenceElement& e = reference_element();
  const double v[3][2] = {{0, 0}, {1, 0}, {0, 1}};
  Rule1 g = gl01(6);
  for (int s = 0; s < 3; s++) {
    const double* p = v[s];
    const double* n = v[(s + 1)%3];
    for (int m = 0; m < kSP; m++)
      for (int l = 0; l < kFP; l++) {
        // edge moment of basis m against the 1D interpolant of FP slot l
        double want = 0;
        for (size_t k = 0; k < g.x.size(); k++) {
          double xi = g.x[k];
          double L[kSP];
          e.basis_at(p[0] + xi*(n[0] - p[0]), p[1] + xi*(n[1] - p[1]), L);
          double ell = 1;
          for (int kk = 0; kk < kFP; kk++)
            if (kk != l)
              ell *= (xi - e.edge_xi[kk])/(e.edge_xi[l] - e.edge_xi[kk]);
          want += g.w[k]*L[m]*ell;
        }
        double got = 0;
        for (int j = 0; j < kSP; j++) got += e.mass[m][j]*e.lift[j][s][l];
        CHECK(2.0*got == doctest::Approx(want).epsilon(1e-11).scale(0.1));
      }
  }
}

TEST_CASE("subcell averages and recovery invert each other on cubics") {
  const ReferenceElement& e = reference_element();
  Rule2 q = duffy_tri(6);
  std::mt19937 rng(5);
  Cubic p = random_cubic(rng);
  double f[kSP], avg[kSub];
  for (int m = 0; m < kSP; m++) f[m] = p.at(e.sp[m][0], e.sp[m][1]);
  for (int t = 0; t < kSub; t++) {
    double got = 0;
    for (int m = 0; m < kSP; m++) got += e.subavg[t][m]*f[m];
    // independent subtriangle average
    const double* A = e.subvert[e.subtri[t][0]];
    const double* B = e.subvert[e.subtri[t][1]];
    const double* C = e.subvert[e.subtri[t][2]];
    double want = 0, wsum = 0;
    for (size_t k = 0; k < q.w.size(); k++) {
      double r = A[0] + q.r[k]*(B[0] - A[0]) + q.s[k]*(C[0] - A[0]);
      double s = A[1] + q.r[k]*(B[1] - A[1]) + q.s[k]*(C[1] - A[1]);
      want += q.w[k]*p.at(r, s);
      wsum += q.w[k];
    }
    want /= wsum;
    CHECK(got == doctest::Approx(want).epsilon(1e-11).scale(1.0));
    avg[t] = got;
  }
  for (int j = 0; j < kSP; j++) {
    double rec = 0;
    for (int t = 0; t < kSub; t++) rec += e.recover[j][t]*avg[t];
    CHECK(rec == doctest::Approx(f[j]).epsilon(1e-10).scale(1.0));
  }
  // the sixteen equal-area subcells tile the cell
  double csub = 0, cavg = 0;
  for (int t = 0; t < kSub; t++)
    for (int m = 0; m < kSP; m++) csub += e.subavg[t][m]*f[m]/kSub;
  for (int m = 0; m < kSP; m++) cavg += e.cellavg[m]*f[m];
  CHECK(csub == doctest::Approx(cavg).epsilon(1e-12).scale(1.0));
}

TEST_CASE("sub-edge tables are geometrically consistent") {
  const ReferenceElement& e = reference_element();
  int boundary = 0;
  for (int se = 0; se < kSubEdge; se++) {
    const SubEdge& s = e.subedge[se];
    CHECK(s.len > 0);
    CHECK(s.nx*s.nx + s.ny*s.ny == doctest::Approx(1.0).epsilon(1e-13));
    if (s.right < 0) {
      boundary++;
      CHECK(s.main_edge >= 0);
      CHECK(e.boundary_se[s.main_edge][s.seg] == se);
    } else {
      // outward from left: points from the left centroid toward the right
      double dx = e.subcent[s.right][0] - e.subcent[s.left][0];
      double dy = e.subcent[s.right][1] - e.subcent[s.left][1];
      CHECK(s.nx*dx + s.ny*dy > 0);
    }
  }
  CHECK(boundary == 12);
  for (int t = 0; t < kSub; t++)
    for (int f = 0; f < 3; f++) {
      int nb = e.sub_nbr[t][f];
      const SubEdge& s = e.subedge[e.subface[t][f]];
      if (nb >= 0) {
        CHECK(((s.left == t && s.right == nb) || (s.left == nb && s.right == t)));
      } else {
        int code = -nb - 1;
        CHECK(s.main_edge == code/kSubN);
        CHECK(s.seg == code%kSubN);
      }
    }
  for (int l = 0; l < kFP; l++) {
    double xi = e.edge_xi[l];
    int m = e.fp_seg[l];
    CHECK(xi >= m/double(kSubN) - 1e-12);
    CHECK(xi <= (m + 1)/double(kSubN) + 1e-12);
  }
}
