#include "trikin/refelem.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <utility>

#include "quad.hpp"

namespace trikin {

namespace {

// Monomial basis {1, r, s, r^2, rs, s^2, r^3, r^2 s, r s^2, s^3}.
void monomials(double r, double s, double* m) {
  m[0] = 1;
  m[1] = r;
  m[2] = s;
  m[3] = r*r;
  m[4] = r*s;
  m[5] = s*s;
  m[6] = r*r*r;
  m[7] = r*r*s;
  m[8] = r*s*s;
  m[9] = s*s*s;
}

void monomial_grads(double r, double s, double* mr, double* ms) {
  double zr[kSP] = {0, 1, 0, 2*r, s, 0, 3*r*r, 2*r*s, s*s, 0};
  double zs[kSP] = {0, 0, 1, 0, r, 2*s, 0, r*r, 2*r*s, 3*s*s};
  for (int i = 0; i < kSP; i++) {
    mr[i] = zr[i];
    ms[i] = zs[i];
  }
}

ReferenceElement build() {
  ReferenceElement e;

  // Edge nodes: endpoints plus the degree-3 Gauss-Lobatto interior pair.
  const double a = 0.5*(1.0 - 1.0/std::sqrt(5.0));
  e.edge_xi[0] = 0.0;
  e.edge_xi[1] = a;
  e.edge_xi[2] = 1.0 - a;
  e.edge_xi[3] = 1.0;
  e.edge_w[0] = 1.0/12.0;
  e.edge_w[1] = 5.0/12.0;
  e.edge_w[2] = 5.0/12.0;
  e.edge_w[3] = 1.0/12.0;

  // Vertices 0,1,2; interior edge nodes 3..8 (edge 0: V0->V1, 1: V1->V2,
  // 2: V2->V0); barycenter 9.
  const double v[3][2] = {{0, 0}, {1, 0}, {0, 1}};
  for (int k = 0; k < 3; k++) {
    e.sp[k][0] = v[k][0];
    e.sp[k][1] = v[k][1];
  }
  for (int s = 0; s < 3; s++) {
    const double* p = v[s];
    const double* q = v[(s + 1)%3];
    for (int l = 0; l < 2; l++) {
      double xi = e.edge_xi[1 + l];
      e.sp[3 + 2*s + l][0] = p[0] + xi*(q[0] - p[0]);
      e.sp[3 + 2*s + l][1] = p[1] + xi*(q[1] - p[1]);
    }
    e.edge_sp[s][0] = s;
    e.edge_sp[s][1] = 3 + 2*s;
    e.edge_sp[s][2] = 3 + 2*s + 1;
    e.edge_sp[s][3] = (s + 1)%3;
  }
  e.sp[9][0] = 1.0/3.0;
  e.sp[9][1] = 1.0/3.0;

  Eigen::Matrix<double, kSP, kSP> V;
  for (int i = 0; i < kSP; i++) {
    double m[kSP];
    monomials(e.sp[i][0], e.sp[i][1], m);
    for (int j = 0; j < kSP; j++) V(i, j) = m[j];
  }
  Eigen::Matrix<double, kSP, kSP> C = V.inverse();
  for (int i = 0; i < kSP; i++)
    for (int j = 0; j < kSP; j++) e.vander_inv[i][j] = C(i, j);

  for (int j = 0; j < kSP; j++) {
    double mr[kSP], ms[kSP];
    monomial_grads(e.sp[j][0], e.sp[j][1], mr, ms);
    for (int m = 0; m < kSP; m++) {
      double dr = 0, ds = 0;
      for (int k = 0; k < kSP; k++) {
        dr += C(k, m)*mr[k];
        ds += C(k, m)*ms[k];
      }
      e.dLdr[j][m] = dr;
      e.dLds[j][m] = ds;
    }
  }

  // Mass matrix and subcell averages share one volume rule (degree 10).
  quad::RuleTri tri = quad::duffy(6);
  Eigen::Matrix<double, kSP, kSP> M = Eigen::Matrix<double, kSP, kSP>::Zero();
  for (size_t q = 0; q < tri.w.size(); q++) {
    double L[kSP];
    e.basis_at(tri.r[q], tri.s[q], L);  // uses vander_inv set above
    for (int i = 0; i < kSP; i++)
      for (int j = 0; j < kSP; j++) M(i, j) += tri.w[q]*L[i]*L[j];
  }
  for (int i = 0; i < kSP; i++)
    for (int j = 0; j < kSP; j++) e.mass[i][j] = M(i, j);
  for (int j = 0; j < kSP; j++) {
    double s = 0;
    for (int k = 0; k < kSP; k++) s += M(j, k);  // integral of L_j
    e.cellavg[j] = 2.0*s;
  }

  // Correction coefficients: (1/2) M^-1 c, with c_{m,s,l} the edge integral
  // of L_m against the 1D edge interpolation polynomial of FP slot l. The
  // 1/2 is the reference-triangle area entering the physical mass matrix.
  quad::Rule1D g1 = quad::gauss_legendre_01(4);
  Eigen::Matrix<double, kSP, kSP> Minv = M.inverse();
  for (int s = 0; s < 3; s++) {
    const double* p = v[s];
    const double* q = v[(s + 1)%3];
    Eigen::Matrix<double, kSP, kFP> c = Eigen::Matrix<double, kSP, kFP>::Zero();
    for (size_t iq = 0; iq < g1.x.size(); iq++) {
      double xi = g1.x[iq];
      double L[kSP];
      e.basis_at(p[0] + xi*(q[0] - p[0]), p[1] + xi*(q[1] - p[1]), L);
      // 1D cubic Lagrange through the four edge_xi nodes
      double ell[kFP];
      for (int l = 0; l < kFP; l++) {
        double val = 1;
        for (int k = 0; k < kFP; k++)
          if (k != l) val *= (xi - e.edge_xi[k])/(e.edge_xi[l] - e.edge_xi[k]);
        ell[l] = val;
      }
      for (int m = 0; m < kSP; m++)
        for (int l = 0; l < kFP; l++) c(m, l) += g1.w[iq]*L[m]*ell[l];
    }
    Eigen::Matrix<double, kSP, kFP> alpha = 0.5*Minv*c;
    for (int j = 0; j < kSP; j++)
      for (int l = 0; l < kFP; l++) e.lift[j][s][l] = alpha(j, l);
  }

  // ---- uniform 4x4 refinement lattice ----
  int vid[kSubN + 1][kSubN + 1];
  {
    int n = 0;
    for (int j = 0; j <= kSubN; j++)
      for (int i = 0; i + j <= kSubN; i++) {
        vid[i][j] = n;
        e.subvert[n][0] = i/double(kSubN);
        e.subvert[n][1] = j/double(kSubN);
        n++;
      }
  }
  {
    int t = 0;
    for (int j = 0; j < kSubN; j++)
      for (int i = 0; i + j < kSubN; i++) {
        e.subtri[t][0] = vid[i][j];
        e.subtri[t][1] = vid[i + 1][j];
        e.subtri[t][2] = vid[i][j + 1];
        t++;
      }
    for (int j = 0; j + 1 < kSubN; j++)
      for (int i = 0; i + j + 1 < kSubN; i++) {
        e.subtri[t][0] = vid[i + 1][j];
        e.subtri[t][1] = vid[i + 1][j + 1];
        e.subtri[t][2] = vid[i][j + 1];
        t++;
      }
  }
  for (int t = 0; t < kSub; t++) {
    e.subcent[t][0] = e.subcent[t][1] = 0;
    for (int k = 0; k < 3; k++) {
      e.subcent[t][0] += e.subvert[e.subtri[t][k]][0]/3.0;
      e.subcent[t][1] += e.subvert[e.subtri[t][k]][1]/3.0;
    }
  }

  // Sub-edges from the shared-face map. Boundary faces are tagged with the
  // main edge and the segment index counted along that edge's direction.
  {
    std::map<std::pair<int, int>, int> face;  // sorted vertex pair -> subedge
    int ne = 0;
    for (int t = 0; t < kSub; t++)
      for (int f = 0; f < 3; f++) {
        int va = e.subtri[t][f];
        int vb = e.subtri[t][(f + 1)%3];
        std::pair<int, int> key = std::minmax(va, vb);
        auto it = face.find(key);
        if (it == face.end()) {
          SubEdge se;
          se.left = t;
          se.right = -1;
          se.main_edge = se.seg = -1;
          double ax = e.subvert[va][0], ay = e.subvert[va][1];
          double bx = e.subvert[vb][0], by = e.subvert[vb][1];
          se.mid[0] = 0.5*(ax + bx);
          se.mid[1] = 0.5*(ay + by);
          double dx = bx - ax, dy = by - ay;
          se.len = std::sqrt(dx*dx + dy*dy);
          se.nx = dy/se.len;
          se.ny = -dx/se.len;
          face[key] = ne;
          e.subedge[ne] = se;
          e.sub_nbr[t][f] = ne;  // temporarily store subedge id
          ne++;
        } else {
          e.subedge[it->second].right = t;
          e.sub_nbr[t][f] = it->second;
        }
      }
    // boundary tags
    for (int m = 0; m < kSubN; m++) {
      struct {
        int a, b;
      } seg[3] = {{vid[m][0], vid[m + 1][0]},
                  {vid[kSubN - m][m], vid[kSubN - m - 1][m + 1]},
                  {vid[0][kSubN - m], vid[0][kSubN - m - 1]}};
      for (int s = 0; s < 3; s++) {
        std::pair<int, int> key = std::minmax(seg[s].a, seg[s].b);
        int id = face.at(key);
        e.subedge[id].main_edge = s;
        e.subedge[id].seg = m;
        e.boundary_se[s][m] = id;
      }
    }
    // replace subedge ids with neighbor ids / boundary codes
    for (int t = 0; t < kSub; t++)
      for (int f = 0; f < 3; f++) {
        e.subface[t][f] = e.sub_nbr[t][f];
        const SubEdge& se = e.subedge[e.subface[t][f]];
        if (se.right < 0)
          e.sub_nbr[t][f] = -(1 + se.main_edge*kSubN + se.seg);
        else
          e.sub_nbr[t][f] = (se.left == t) ? se.right : se.left;
      }
  }

  // FP slot -> segment it falls in (endpoints to the outer segments)
  for (int l = 0; l < kFP; l++) {
    double xi = e.edge_xi[l];
    int m = std::min(kSubN - 1, int(xi*kSubN));
    e.fp_seg[l] = m;
  }

  // S: exact subcell averages of the basis (affine map per subcell)
  quad::RuleTri st = quad::duffy(4);
  for (int t = 0; t < kSub; t++) {
    const double* A = e.subvert[e.subtri[t][0]];
    const double* B = e.subvert[e.subtri[t][1]];
    const double* Cc = e.subvert[e.subtri[t][2]];
    for (int j = 0; j < kSP; j++) e.subavg[t][j] = 0;
    double wsum = 0;
    for (size_t q = 0; q < st.w.size(); q++) {
      double r = A[0] + st.r[q]*(B[0] - A[0]) + st.s[q]*(Cc[0] - A[0]);
      double s = A[1] + st.r[q]*(B[1] - A[1]) + st.s[q]*(Cc[1] - A[1]);
      double L[kSP];
      e.basis_at(r, s, L);
      for (int j = 0; j < kSP; j++) e.subavg[t][j] += st.w[q]*L[j];
      wsum += st.w[q];
    }
    for (int j = 0; j < kSP; j++) e.subavg[t][j] /= wsum;
  }

  // P: least squares in a zero-mean cubic basis, so the recovered polynomial
  // keeps the cell average of the input averages exactly. P S = I on cubics.
  {
    Eigen::Matrix<double, kSub, kSP - 1> G;
    Eigen::Matrix<double, kSP, kSP - 1> Phi;
    double mbar[kSP];  // cell means of the monomials
    for (int k = 0; k < kSP; k++) {
      double sum = 0;
      for (size_t q = 0; q < tri.w.size(); q++) {
        double m[kSP];
        monomials(tri.r[q], tri.s[q], m);
        sum += tri.w[q]*m[k];
      }
      mbar[k] = sum/0.5;
    }
    for (int t = 0; t < kSub; t++) {
      const double* A = e.subvert[e.subtri[t][0]];
      const double* B = e.subvert[e.subtri[t][1]];
      const double* Cc = e.subvert[e.subtri[t][2]];
      double acc[kSP] = {0};
      double wsum = 0;
      for (size_t q = 0; q < st.w.size(); q++) {
        double r = A[0] + st.r[q]*(B[0] - A[0]) + st.s[q]*(Cc[0] - A[0]);
        double s = A[1] + st.r[q]*(B[1] - A[1]) + st.s[q]*(Cc[1] - A[1]);
        double m[kSP];
        monomials(r, s, m);
        for (int k = 0; k < kSP; k++) acc[k] += st.w[q]*m[k];
        wsum += st.w[q];
      }
      for (int k = 1; k < kSP; k++) G(t, k - 1) = acc[k]/wsum - mbar[k];
    }
    for (int j = 0; j < kSP; j++) {
      double m[kSP];
      monomials(e.sp[j][0], e.sp[j][1], m);
      for (int k = 1; k < kSP; k++) Phi(j, k - 1) = m[k] - mbar[k];
    }
    Eigen::Matrix<double, kSP - 1, kSub> fit =
        (G.transpose()*G).ldlt().solve(G.transpose());
    // P = 1 w^T + Phi fit (I - 1 w^T), w uniform (equal subcell areas)
    Eigen::Matrix<double, kSub, kSub> center =
        Eigen::Matrix<double, kSub, kSub>::Identity();
    center -= Eigen::Matrix<double, kSub, kSub>::Constant(1.0/kSub);
    Eigen::Matrix<double, kSP, kSub> P = Phi*fit*center;
    P += Eigen::Matrix<double, kSP, kSub>::Constant(1.0/kSub);
    for (int j = 0; j < kSP; j++)
      for (int t = 0; t < kSub; t++) e.recover[j][t] = P(j, t);
  }

  return e;
}

}  // namespace

void ReferenceElement::basis_at(double r, double s, double* L) const {
  double m[kSP];
  monomials(r, s, m);
  for (int j = 0; j < kSP; j++) {
    double val = 0;
    for (int k = 0; k < kSP; k++) val += vander_inv[k][j]*m[k];
    L[j] = val;
  }
}

void ReferenceElement::basis_grad_at(double r, double s, double* Lr,
                                     double* Ls) const {
  double mr[kSP], ms[kSP];
  monomial_grads(r, s, mr, ms);
  for (int j = 0; j < kSP; j++) {
    double vr = 0, vs = 0;
    for (int k = 0; k < kSP; k++) {
      vr += vander_inv[k][j]*mr[k];
      vs += vander_inv[k][j]*ms[k];
    }
    Lr[j] = vr;
    Ls[j] = vs;
  }
}

const ReferenceElement& reference_element() {
  static const ReferenceElement e = build();
  return e;
}

}  // namespace trikin
