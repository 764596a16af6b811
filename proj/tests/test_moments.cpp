#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "trikin/moments.hpp"

using namespace trikin;

// Brute-force velocity-space integrals against which the closed-form moment
// tables are checked. Everything here goes through 1D composite Simpson on a
// wide window around the mean; nothing is shared with the implementation.
namespace {

double simpson(double lo, double hi, int n, double (*f)(double, double, double),
               double mean, double lam) {
  double h = (hi - lo)/n;
  double acc = f(lo, mean, lam) + f(hi, mean, lam);
  for (int i = 1; i < n; i++)
    acc += (i%2 ? 4.0 : 2.0)*f(lo + i*h, mean, lam);
  return acc*h/3.0;
}

double kern0(double u, double mean, double lam) {
  return std::sqrt(lam/M_PI)*std::exp(-lam*(u - mean)*(u - mean));
}

int g_pow;
double kernp(double u, double mean, double lam) {
  return std::pow(u, g_pow)*kern0(u, mean, lam);
}

// <u^p> over the normalized 1D Maxwellian, full line or one-sided
double umom(double mean, double lam, int p, int half) {
  double sig = 1.0/std::sqrt(2.0*lam);
  double lo = mean - 16*sig, hi = mean + 16*sig;
  if (half > 0) lo = std::max(lo, 0.0);
  if (half < 0) hi = std::min(hi, 0.0);
  if (lo >= hi) return 0.0;
  g_pow = p;
  return simpson(lo, hi, 8192, kernp, mean, lam);
}

// <xi^(2r)> for K internal degrees of freedom, composed from single-dof
// quadrature moments (assumes integer K, enough for the tests)
double ximom(double lam, int K, int r) {
  double m2 = umom(0, lam, 2, 0);
  double m4 = umom(0, lam, 4, 0);
  if (r == 0) return 1.0;
  if (r == 1) return K*m2;
  return K*m4 + K*(K - 1)*m2*m2;
}

// A polynomial in (u, v, xi^2) held as monomial -> coefficient. psi products
// expand into these and integrate term by term.
using Poly = std::map<std::array<int, 3>, double>;

Poly psi_poly(int i) {
  if (i == 0) return {{{0, 0, 0}, 1.0}};
  if (i == 1) return {{{1, 0, 0}, 1.0}};
  if (i == 2) return {{{0, 1, 0}, 1.0}};
  return {{{2, 0, 0}, 0.5}, {{0, 2, 0}, 0.5}, {{0, 0, 1}, 0.5}};
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (auto& [ma, ca] : a)
    for (auto& [mb, cb] : b)
      out[{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}] += ca*cb;
  return out;
}

Poly scaled(const Poly& a, double s) {
  Poly out = a;
  for (auto& [m, c] : out) c *= s;
  return out;
}

Poly add(Poly a, const Poly& b) {
  for (auto& [m, c] : b) a[m] += c;
  return a;
}

double integrate(const Poly& p, const GasState& g, int K, int half) {
  double acc = 0;
  for (auto& [m, c] : p)
    acc += c*umom(g.U, g.lam, m[0], half)*umom(g.V, g.lam, m[1], 0)*
           ximom(g.lam, K, m[2]);
  return acc;
}

Poly slope_poly(const Vec4& s) {
  Poly p;
  for (int i = 0; i < 4; i++) p = add(p, scaled(psi_poly(i), s[i]));
  return p;
}

Poly upow(int p, int q) { return {{{p, q, 0}, 1.0}}; }

GasState state(double rho, double U, double V, double p) {
  GasState g;
  g.rho = rho;
  g.U = U;
  g.V = V;
  g.p = p;
  g.lam = 0.5*rho/p;
  return g;
}

}  // namespace

TEST_CASE("one-sided and full velocity moments match quadrature") {
  const int K = 3;
  for (GasState g : {state(1, 0.3, -0.2, 0.8), state(2.5, -1.7, 0.9, 3.1),
                     state(0.1, 4.0, 0.0, 0.04)}) {
    MomentTable t = moments(g, K);
    for (int n = 0; n < 7; n++) {
      double scale = std::pow(std::fabs(g.U) + 1.0/std::sqrt(g.lam), n);
      CHECK(t.u[n] == doctest::Approx(umom(g.U, g.lam, n, 0)).epsilon(1e-9));
      CHECK(t.up[n] - umom(g.U, g.lam, n, +1) ==
            doctest::Approx(0.0).scale(scale).epsilon(1e-9));
      CHECK(t.um[n] - umom(g.U, g.lam, n, -1) ==
            doctest::Approx(0.0).scale(scale).epsilon(1e-9));
      CHECK(t.v[n] == doctest::Approx(umom(g.V, g.lam, n, 0)).epsilon(1e-9));
    }
    for (int r = 0; r < 3; r++)
      CHECK(t.xi[r] == doctest::Approx(ximom(g.lam, K, r)).epsilon(1e-9));
  }
}

TEST_CASE("psi moments match monomial quadrature") {
  const int K = 3;
  GasState g = state(1.4, 0.6, -1.1, 2.0);
  MomentTable t = moments(g, K);
  for (int p = 0; p <= 2; p++)
    for (int q = 0; q <= 2; q++)
      for (int half : {0, +1, -1}) {
        Vec4 got = psi_mom(t, p, q, 0, half);
        for (int i = 0; i < 4; i++) {
          Poly mono = mul(upow(p, q), psi_poly(i));
          double want = integrate(mono, g, K, half);
          CHECK(got[i] == doctest::Approx(want).epsilon(1e-8).scale(1.0));
        }
      }
}

TEST_CASE("slope moments match expanded quadrature") {
  const int K = 3;
  GasState g = state(0.9, -0.4, 0.7, 1.3);
  MomentTable t = moments(g, K);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int trial = 0; trial < 3; trial++) {
    Vec4 s = {d(rng), d(rng), d(rng), d(rng)};
    for (int half : {0, +1, -1}) {
      Vec4 got = slope_psi_mom(t, s, 1, 0, half);
      Poly sp = slope_poly(s);
      for (int i = 0; i < 4; i++) {
        Poly mono = mul(mul(upow(1, 0), sp), psi_poly(i));
        double want = integrate(mono, g, K, half);
        CHECK(got[i] == doctest::Approx(want).epsilon(1e-8).scale(1.0));
      }
    }
  }
}

TEST_CASE("micro slopes invert the psi-psi Gram matrix") {
  const int K = 3;
  GasState g = state(1.2, 0.35, -0.6, 0.9);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int trial = 0; trial < 4; trial++) {
    Vec4 b = {d(rng), d(rng), d(rng), d(rng)};
    Vec4 c = micro_slopes(g, b, K);
    Poly cp = slope_poly(c);
    // rho <(c.psi) psi_i> must reproduce b
    for (int i = 0; i < 4; i++) {
      double got = g.rho*integrate(mul(cp, psi_poly(i)), g, K, 0);
      CHECK(got == doctest::Approx(b[i]).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("time slope satisfies the compatibility condition") {
  const int K = 3;
  GasState g = state(1.1, 0.25, 0.45, 1.7);
  MomentTable t = moments(g, K);
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> d(-1, 1);
  Vec4 bx = {d(rng), d(rng), d(rng), d(rng)};
  Vec4 by = {d(rng), d(rng), d(rng), d(rng)};
  Vec4 ax = micro_slopes(g, bx, K);
  Vec4 ay = micro_slopes(g, by, K);
  Vec4 A = time_slope(g, t, ax, ay, K);
  // rho <(A.psi + u (ax.psi) + v (ay.psi)) psi_i> = 0
  Poly total = add(add(slope_poly(A), mul(upow(1, 0), slope_poly(ax))),
                   mul(upow(0, 1), slope_poly(ay)));
  for (int i = 0; i < 4; i++) {
    double got = g.rho*integrate(mul(total, psi_poly(i)), g, K, 0);
    CHECK(got == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
  }
}
