// Closed-form Ricci evaluators.
//
// Doubly warped products dr^2 + f1(r)^2 g_{N1} + f2(r)^2 g_{N2} over
// Einstein fibers (unit S^3: lambda = 2, n = 3):
//   Ric_rr = -n1 f1''/f1 - n2 f2''/f2
//   Ric_11 = lambda1/f1^2 - f1''/f1 + (f1'/f1)^2 - (f1'/f1)(n1 f1'/f1 + n2 f2'/f2)
//   Ric_22 symmetric.
// The lambda/f^2 normalization is the unit-vector convention: a constant
// first fiber f1 = d gives Ric_11 = 2/d^2.
//
// Frame metrics: a frame with constant bracket coefficients c_ijk declared
// orthonormal has constant Christoffel coefficients
//   G_ijk = (c_ijk + c_kij - c_jki)/2,
// and its curvature is a finite sum over frame indices; ricci_frame
// evaluates it densely (dimension <= 8 here).
//
// S^1-principal bundles with totally geodesic fibers (fiber length f,
// curvature 2-form omega):
//   Ric(U,U) = -Lap f / f + (f^2/4)|omega|^2
//   Ric(U,X) = ( -f (div omega)(X) + 3 omega[X, grad f] ) / 2
//   Ric(X,X) = Ric_B(X,X) - (f^2/2)|omega[X]|^2 - Hess f(X,X)/f
// with |omega|^2 the full double-index sum.
#ifndef SNOWCONE_CURVATURE_HPP
#define SNOWCONE_CURVATURE_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "snowcone/interval.hpp"
#include "snowcone/profile.hpp"

namespace snowcone {

struct RicciComponents {
    double rr = 0.0;
    double aa = 0.0;  // first-fiber unit direction
    double ii = 0.0;  // second-fiber unit direction
    bool at_seam = false;
    double offdiag_bound = 0.0;  // |Ric_ir| budget when a metric family term is present
};

struct WarpJets {
    int n1 = 3, n2 = 3;
    double lam1 = 2.0, lam2 = 2.0;
    Jet f1, f2;
};

inline RicciComponents ricci_doubly_warped(const WarpJets& w) {
    RicciComponents rc;
    rc.at_seam = w.f1.at_seam || w.f2.at_seam;
    const bool has1 = w.n1 > 0, has2 = w.n2 > 0;
    if (has1 && !(w.f1.f > 0)) throw std::domain_error("ricci_doubly_warped: f1 <= 0");
    if (has2 && !(w.f2.f > 0)) throw std::domain_error("ricci_doubly_warped: f2 <= 0");
    double q1 = has1 ? w.f1.df / w.f1.f : 0.0;
    double q2 = has2 ? w.f2.df / w.f2.f : 0.0;
    rc.rr = (has1 ? -w.n1 * w.f1.ddf / w.f1.f : 0.0) + (has2 ? -w.n2 * w.f2.ddf / w.f2.f : 0.0);
    // Factored so a unit-slope cone gives an exact zero.
    if (has1)
        rc.aa = (w.lam1 - (w.n1 - 1) * w.f1.df * w.f1.df) / (w.f1.f * w.f1.f) -
                w.f1.ddf / w.f1.f - w.n2 * q1 * q2;
    if (has2)
        rc.ii = (w.lam2 - (w.n2 - 1) * w.f2.df * w.f2.df) / (w.f2.f * w.f2.f) -
                w.f2.ddf / w.f2.f - w.n1 * q1 * q2;
    return rc;
}

struct DoublyWarpedMetric {
    int n1 = 3, n2 = 3;
    double lam1 = 2.0, lam2 = 2.0;
    const WarpProfile* f1 = nullptr;
    const WarpProfile* f2 = nullptr;
};

inline RicciComponents ricci_doubly_warped(const DoublyWarpedMetric& m, double r) {
    WarpJets w;
    w.n1 = m.n1;
    w.n2 = m.n2;
    w.lam1 = m.lam1;
    w.lam2 = m.lam2;
    if (m.n1 > 0) w.f1 = m.f1->jet(r);
    if (m.n2 > 0) w.f2 = m.f2->jet(r);
    return ricci_doubly_warped(w);
}

struct RicciEnclosure {
    Interval rr{0.0}, aa{0.0}, ii{0.0};
};

// Interval form over profile enclosures; requires f > 0 on the interval.
inline RicciEnclosure ricci_doubly_warped_iv(const DoublyWarpedMetric& m, const Interval& I) {
    RicciEnclosure out;
    ProfileEnclosure e1, e2;
    if (m.n1 > 0) {
        e1 = m.f1->enclose(I);
        if (!(e1.f.lo > 0)) throw std::domain_error("ricci_doubly_warped_iv: f1 not positive");
    }
    if (m.n2 > 0) {
        e2 = m.f2->enclose(I);
        if (!(e2.f.lo > 0)) throw std::domain_error("ricci_doubly_warped_iv: f2 not positive");
    }
    Interval q1 = m.n1 > 0 ? e1.df / e1.f : Interval(0.0);
    Interval q2 = m.n2 > 0 ? e2.df / e2.f : Interval(0.0);
    Interval trace = double(m.n1) * q1 + double(m.n2) * q2;
    Interval rr(0.0);
    if (m.n1 > 0) rr = rr - double(m.n1) * (e1.ddf / e1.f);
    if (m.n2 > 0) rr = rr - double(m.n2) * (e2.ddf / e2.f);
    out.rr = rr;
    if (m.n1 > 0) out.aa = m.lam1 / sq(e1.f) - e1.ddf / e1.f + sq(q1) - q1 * trace;
    if (m.n2 > 0) out.ii = m.lam2 / sq(e2.f) - e2.ddf / e2.f + sq(q2) - q2 * trace;
    return out;
}

// ---------------------------------------------------------------------------
// Frame algebras

class FrameAlgebra {
public:
    explicit FrameAlgebra(int dim) : dim_(dim), c_(static_cast<size_t>(dim * dim * dim), 0.0) {
        if (dim < 1 || dim > 8) throw std::invalid_argument("FrameAlgebra: dimension out of range");
    }

    int dim() const { return dim_; }

    double c(int i, int j, int k) const { return c_[idx(i, j, k)]; }

    // Sets <[e_i,e_j],e_k> = v and the antisymmetric partner.
    void set_bracket(int i, int j, int k, double v) {
        c_[idx(i, j, k)] = v;
        c_[idx(j, i, k)] = -v;
    }

    bool antisymmetric(double tol = 0.0) const {
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                for (int k = 0; k < dim_; ++k)
                    if (std::fabs(c_[idx(i, j, k)] + c_[idx(j, i, k)]) > tol) return false;
        return true;
    }

    double christoffel(int i, int j, int k) const {
        return 0.5 * (c(i, j, k) + c(k, i, j) - c(j, k, i));
    }

private:
    size_t idx(int i, int j, int k) const {
        if (i < 0 || j < 0 || k < 0 || i >= dim_ || j >= dim_ || k >= dim_)
            throw std::out_of_range("FrameAlgebra: index");
        return static_cast<size_t>((i * dim_ + j) * dim_ + k);
    }
    int dim_;
    std::vector<double> c_;
};

using Matrix = std::vector<std::vector<double>>;

// Ricci tensor of the metric that declares the frame orthonormal.
// R(e_i,e_j)e_k = nab_i nab_j e_k - nab_j nab_i e_k - nab_{[e_i,e_j]} e_k
// with constant coefficients; Ric_ab = sum_i <R(e_i,e_a)e_b, e_i>.
inline Matrix ricci_frame(const FrameAlgebra& F) {
    if (!F.antisymmetric(1e-12)) throw std::invalid_argument("ricci_frame: c not antisymmetric");
    const int d = F.dim();
    auto R = [&](int i, int j, int k, int l) {
        double s = 0.0;
        for (int m = 0; m < d; ++m) {
            s += F.christoffel(j, k, m) * F.christoffel(i, m, l);
            s -= F.christoffel(i, k, m) * F.christoffel(j, m, l);
            s -= F.c(i, j, m) * F.christoffel(m, k, l);
        }
        return s;
    };
    Matrix ric(static_cast<size_t>(d), std::vector<double>(static_cast<size_t>(d), 0.0));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            double s = 0.0;
            for (int i = 0; i < d; ++i) s += R(i, a, b, i);
            ric[static_cast<size_t>(a)][static_cast<size_t>(b)] = s;
        }
    return ric;
}

// Bracket table of the frame
//   T = (U1 + k V1)/f,  X2 = U2,  X3 = U3,
//   W1 = (-k U1 + V1)/a,  W2 = V2/(ab),  W3 = V3/(ab)
// on S^3 x S^3 with right-invariant bases [U_i,U_j] = 2 eps_ijk U_k.
// Index order: 0=T, 1=X2, 2=X3, 3=W1, 4=W2, 5=W3.
inline FrameAlgebra brackets_s3s3(int k, double f, double a, double b) {
    if (!(f > 0) || !(a > 0) || !(b > 0)) throw std::invalid_argument("brackets_s3s3: scales must be positive");
    const double kk = static_cast<double>(k);
    const double opk2 = 1.0 + kk * kk;
    FrameAlgebra F(6);
    F.set_bracket(0, 1, 2, 2.0 / f);            // [T,X2] = (2/f) X3
    F.set_bracket(2, 0, 1, 2.0 / f);            // [X3,T] = (2/f) X2
    F.set_bracket(1, 2, 0, 2.0 * f / opk2);     // [X2,X3] = (2f/(1+k^2)) T - (2ka/(1+k^2)) W1
    F.set_bracket(1, 2, 3, -2.0 * kk * a / opk2);
    F.set_bracket(0, 4, 5, 2.0 * kk / f);       // [T,W2] = (2k/f) W3
    F.set_bracket(5, 0, 4, 2.0 * kk / f);       // [W3,T] = (2k/f) W2
    F.set_bracket(3, 4, 5, 2.0 / a);            // [W1,W2] = (2/a) W3
    F.set_bracket(5, 3, 4, 2.0 / a);            // [W3,W1] = (2/a) W2
    F.set_bracket(4, 5, 0, 2.0 * kk * f / (opk2 * a * a * b * b));
    F.set_bracket(4, 5, 3, 2.0 / (opk2 * a * b * b));
    F.set_bracket(3, 1, 2, -2.0 * kk / a);      // [W1,X2] = -(2k/a) X3
    F.set_bracket(2, 3, 1, -2.0 * kk / a);      // [X3,W1] = -(2k/a) X2
    return F;
}

// Round-product parameters: f = a = sqrt(1+k^2), b = 1/sqrt(1+k^2) turn the
// frame into an orthogonal change of basis of the unit product metric.
inline FrameAlgebra brackets_s3s3_round(int k) {
    double s = std::sqrt(1.0 + static_cast<double>(k) * k);
    return brackets_s3s3(k, s, s, 1.0 / s);
}

// Structure constants of a single unit S^3: c_ijk = 2 eps_ijk.
inline FrameAlgebra unit_s3_algebra() {
    FrameAlgebra F(3);
    F.set_bracket(0, 1, 2, 2.0);
    F.set_bracket(1, 2, 0, 2.0);
    F.set_bracket(2, 0, 1, 2.0);
    return F;
}

// ---------------------------------------------------------------------------
// S^1-principal bundle components (scalar/interval form)

struct S1BundleData {
    Interval f{1.0};            // fiber length
    Interval lap_f{0.0};        // Laplacian of f on the base
    Interval hess_ff{0.0};      // Hess f(X,X) for the queried unit X
    Interval omega_sq{0.0};     // |omega|^2, full double-index sum
    Interval omega_x_sq{0.0};   // |omega[X]|^2
    Interval div_omega_x{0.0};  // (div omega)(X)
    Interval omega_x_gradf{0.0};
    Interval ric_base_xx{0.0};
};

struct S1BundleRicci {
    Interval uu{0.0}, ux{0.0}, xx{0.0};
};

inline S1BundleRicci s1_bundle_ricci(const S1BundleData& d) {
    if (!(d.f.lo > 0)) throw std::domain_error("s1_bundle_ricci: fiber length must be positive");
    S1BundleRicci r;
    r.uu = -(d.lap_f / d.f) + (sq(d.f) / 4.0) * d.omega_sq;
    r.ux = 0.5 * (-(d.f * d.div_omega_x) + 3.0 * d.omega_x_gradf);
    r.xx = d.ric_base_xx - (sq(d.f) / 2.0) * d.omega_x_sq - d.hess_ff / d.f;
    return r;
}

// |omega|^2 and omega entries of the S^1 fiber direction `t` of a frame
// algebra, for cross-checks: omega(e_j, e_k) = c_kjt / f.
inline double frame_omega_sq(const FrameAlgebra& F, int t, double f) {
    double s = 0.0;
    for (int j = 0; j < F.dim(); ++j) {
        if (j == t) continue;
        for (int k = 0; k < F.dim(); ++k) {
            if (k == t) continue;
            double w = F.c(k, j, t) / f;
            s += w * w;
        }
    }
    return s;
}

}  // namespace snowcone

#endif
