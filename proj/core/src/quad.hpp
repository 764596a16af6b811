#pragma once
#include <cmath>
#include <vector>

namespace trikin::quad {

struct Rule1D {
  std::vector<double> x, w;
};

// Gauss-Legendre on [0,1], nodes by Newton on P_n.
inline Rule1D gauss_legendre_01(int n) {
  Rule1D r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; i++) {
    double t = std::cos(M_PI*(i + 0.75)/(n + 0.5));
    for (int it = 0; it < 100; it++) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; k++) {
        double p2 = ((2*k - 1)*t*p1 - (k - 1)*p0)/k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n*(t*p1 - p0)/(t*t - 1.0);
      double dt = p1/dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; k++) {
      double p2 = ((2*k - 1)*t*p1 - (k - 1)*p0)/k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n*(t*p1 - p0)/(t*t - 1.0);
    r.x[i] = 0.5*(1.0 - t);  // descending t -> ascending x
    r.w[i] = 1.0/((1.0 - t*t)*dp*dp);
  }
  return r;
}

struct RuleTri {
  std::vector<double> r, s, w;  // weights sum to 1/2
};

// Duffy map of an n x n tensor rule; exact for degree >= 2n-2.
inline RuleTri duffy(int n) {
  Rule1D g = gauss_legendre_01(n);
  RuleTri t;
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      t.r.push_back(g.x[i]);
      t.s.push_back(g.x[j]*(1.0 - g.x[i]));
      t.w.push_back(g.w[i]*g.w[j]*(1.0 - g.x[i]));
    }
  return t;
}

}  // namespace trikin::quad
