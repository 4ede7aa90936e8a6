// The action-twisting chain: seven stages that carry S^3_delta x C(S^3_{1-eps})
// with the (1,k)-circle action to S^3_{delta-hat R} x C(S^3_{1-eps-hat}) with the
// (1,0)-action, certifying componentwise Ric >= 0 on every stage.
//
// Stage map (local coordinate in brackets):
//   X1 [r]      bend the cone cross-section from 1-eps down to slope 1/4.
//   X2 [rho]    lift the constant first sphere to slope delta2 = 1e-9 delta.
//   X3 [rho]    recenter both factors on a common cone vertex (shift by c2).
//   X4 [tau]    the cross-section twisting zone; verified through the scalar
//               sufficient system with assumed family bounds (M, c0).
//   X5 [r/R4]   turn the first factor's linear growth into r^alpha.
//   X6 [lambda] reopen the cone factor from slope 1/16 to 1-eps-hat; the
//               slope climbs over a log-width Lambda ~ 4e10/eps-hat, so this
//               stage lives in lambda = ln(r/anchor).
//   X7 [r/R6]   level the first factor off at the constant delta-hat.
//
// Stage constants R4..R7 are iterated-exponentially large at default inputs
// and are carried as TowerReal, with the relative log-offsets that the tower
// representation would absorb kept separately as doubles.
#ifndef SNOWCONE_TWIST_CHAIN_HPP
#define SNOWCONE_TWIST_CHAIN_HPP

#include <cmath>
#include <sstream>

#include "snowcone/stage.hpp"

namespace snowcone {

struct X4Constants {
    double M = 10.0;
    double c0 = 1.0;
};

struct Step2Inputs {
    double eps = 0.5;
    double eps_hat = 0.01;
    LogVal delta = LogVal::of(0.01);
    long long k = 1;
    X4Constants x4{};
    CertifyOptions copts{};
};

class ParameterWindowEmpty : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// X4 window: the twisting zone [1e4 R3, R4] with interpolation speed
// t'(r) = 1/(G r ln r lnln r), G = lnlnln R4 - lnlnln(1e4 R3).  The family
// metrics obey |g'| + |grad g'| <= M t'(r) (assumed bound), and the five
// displayed sufficient conditions are monotone in G:
//   cross:  G >= 2 (M+1)^2                 (makes |Ric_ir| <= 1/(r ln r lnln r))
//   rr:     K15 G^2 lambda0 >= 20 M^2      (rr >= (1/100) K15/(r^2 ln r (lnln r)^2))
//   ii:     6 - 5 h'^2 - small(M,G) >= 1/2
//   case 1: b <= a/(1e3 lnln r):  G >= 0.4 (M+1)^2 / K15
//   case 2: b >= a/(1e3 lnln r):  G lambda0 >= 8e3 (M+1)^2
// with K15 = lnln(15 R3), lambda0 = ln(1e4 R3), w0 = ln lambda0.

struct X4Window {
    double R3 = 0.0;
    double lambda0 = 0.0, w0 = 0.0, K15 = 0.0;
    double G = 0.0;
    TowerReal R4;
    std::vector<CertStatement> statements;
    bool feasible = false;
};

namespace detail {
inline bool x4_conditions(double G, double K15, double lambda0, double w0, double r0, double M) {
    if (!(G > 0)) return false;
    double Mp1 = M + 1.0;
    bool cross = G >= 2.0 * Mp1 * Mp1;
    bool rr = K15 * G * G * lambda0 >= 20.0 * M * M;
    double gp = M / (G * r0 * lambda0 * w0);  // |g'| bound at the window corner
    bool ii = 1.0 - 3.5 * gp / r0 - 0.5 * gp * gp >= 0.5;
    bool case1 = G >= 0.4 * Mp1 * Mp1 / K15;
    bool case2 = G * lambda0 >= 8.0e3 * Mp1 * Mp1;
    return cross && rr && ii && case1 && case2;
}
}  // namespace detail

inline X4Window solve_x4_window(double R3, const X4Constants& x4) {
    X4Window w;
    w.R3 = R3;
    double r0 = 1e4 * R3;
    w.lambda0 = std::log(r0);
    w.w0 = std::log(w.lambda0);
    w.K15 = std::log(std::log(15.0 * R3));
    if (!(w.K15 > 0)) throw ParameterWindowEmpty("x4 window: lnln(15 R3) must be positive");

    // Monotone bisection on G: all five conditions relax as G grows.
    double lo = 1e-9, hi = 1.0;
    while (!detail::x4_conditions(hi, w.K15, w.lambda0, w.w0, r0, x4.M) && hi < 1e15) hi *= 2.0;
    if (!detail::x4_conditions(hi, w.K15, w.lambda0, w.w0, r0, x4.M))
        throw ParameterWindowEmpty("x4 window: no admissible interpolation gap");
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (detail::x4_conditions(mid, w.K15, w.lambda0, w.w0, r0, x4.M))
            hi = mid;
        else
            lo = mid;
    }
    w.G = hi * (1.0 + 1e-9);  // safety over the bisection boundary
    double v0 = std::log(w.w0);  // lnlnln(1e4 R3)
    w.R4 = TowerReal::exp_tower(
        TowerReal::exp_tower(TowerReal::exp_tower(TowerReal::from_double(v0 + w.G))));
    w.feasible = true;

    const double M = x4.M, Mp1 = M + 1.0, G = w.G;
    auto cond = [&](std::string name, std::string detail_s, Interval v) {
        w.statements.push_back(make_arithmetic_statement(std::move(name), std::move(detail_s), v,
                                                         0.0, /*conditional=*/true));
    };
    cond("X4 cross-term bound", "G - 2(M+1)^2 >= 0 makes |Ric_ir| <= 1/(r ln r lnln r)",
         Interval(G) - 2.0 * Mp1 * Mp1);
    cond("X4 rr lower bound",
         "K15 G^2 lambda0 - 20 M^2 >= 0 gives Ric_rr >= (1/100) K15 / (r^2 ln r (lnln r)^2)",
         Interval(w.K15) * Interval(G) * Interval(G) * Interval(w.lambda0) - 20.0 * M * M);
    {
        Interval gp = Interval(M) / (Interval(G) * Interval(r0) * Interval(w.lambda0) * Interval(w.w0));
        cond("X4 ii >= 1/2", "6 - 5 h'^2 - (7/2r)|g'| - |g'|^2/2 >= 1/2 at the window corner",
             Interval(1.0) - (3.5 / r0) * gp - 0.5 * sq(gp) - 0.5);
    }
    cond("X4 v-direction case b small",
         "for b <= a/(1e3 lnln r): G K15 - 0.4 (M+1)^2 >= 0 dominates the cross term",
         Interval(G) * Interval(w.K15) - 0.4 * Mp1 * Mp1);
    cond("X4 v-direction case b large",
         "for b >= a/(1e3 lnln r): G lambda0 - 8e3 (M+1)^2 >= 0 dominates the cross term",
         Interval(G) * Interval(w.lambda0) - 8.0e3 * Mp1 * Mp1);

    // Shape verification of the interpolation profile h2 on the window
    // (unconditional: these only use the closed form of h2).
    const double A_over_r = 0.1;        // A = 1e3 R3, r >= 1e4 R3
    const double K = w.K15 / 16.0;
    Interval q(0.0, 1.0 / w.w0);        // 1/w over the window
    Interval il(0.0, 1.0 / w.lambda0);  // 1/lambda
    Interval t(0.0, A_over_r);          // A/r
    Interval slope = 0.75 + K * q - K * (1.0 - t) * sq(q) * il;
    w.statements.push_back(make_arithmetic_statement(
        "X4 h2 slope in [0,1]", "h2' = 3/4 + K/w - K(1-A/r)/(w^2 lambda)",
        Interval(std::min(slope.lo - 0.0, 1.0 - slope.hi))));
    Interval hr = t + slope * (1.0 - t);  // h2/r
    w.statements.push_back(
        make_arithmetic_statement("X4 h2 >= r/2", "h2/r = A/r + h2'(1 - A/r) >= 1/2", hr - 0.5));
    // h2'' = -(K/(r w^2 lambda)) [1 + A/r - (1 - A/r)(2/w + 1)/lambda]; dropping
    // the positive A/r term, the bracket must clear 16/100 so that
    // h''/h <= -(1/100) K15/(r^2 ln r (lnln r)^2).
    Interval bracket = 1.0 - (1.0 - t) * (2.0 * q + 1.0) * il;
    w.statements.push_back(make_arithmetic_statement(
        "X4 h2 curvature bound", "h2'' bracket >= 16/100 certifies the rr input bound",
        bracket - 0.16));
    return w;
}

// ---------------------------------------------------------------------------

struct Step2Result {
    std::vector<StageOutcome> stages;

    // Outer-model normalization (the annulus handed to the gluing step).
    TowerReal R_prop;
    TowerReal delta_hat_prop;
    double ln_delta_hat_prop = 0.0;

    // Construction-scale constants.
    double R1 = 20.0, R2 = 1e4, c2 = 0.0, R3 = 0.0;
    double alpha = 0.0, G = 0.0, Lambda = 0.0;
    TowerReal R4, R5, R6, R7, c5, delta_hat_constr;
    double ln_R5_over_R4 = 0.0, ln_R6_over_R4 = 0.0, ln_R7_over_R4 = 0.0;

    std::vector<std::string> notes;

    bool all_certified() const {
        for (const StageOutcome& s : stages)
            if (!s.all_certified()) return false;
        return true;
    }
    bool conditional() const {
        for (const StageOutcome& s : stages)
            if (s.conditional()) return true;
        return false;
    }
};

namespace detail {
inline WarpProfile const_profile(double lo, double hi, double v) {
    return WarpProfile({PieceEntry{lo, hi, AnalyticPiece::constant(v), true}});
}
inline WarpProfile line_profile(double lo, double hi, double x0, double y0, double slope) {
    return WarpProfile({PieceEntry{lo, hi, AnalyticPiece::line(x0, y0, slope), true}});
}

// Quintic smoothstep and derivatives for the X6 slope climb.
inline Interval s5(const Interval& u) {
    auto val = [](double x) {
        x = std::clamp(x, 0.0, 1.0);
        return x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
    };
    return Interval(val(u.lo), val(u.hi)).inflated();  // monotone increasing
}
inline Interval s5_d(const Interval& u) { return 30.0 * bump(u); }
inline Interval s5_dd(const Interval& u) { return 30.0 * bump_d(u); }
inline double s5_pt(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
}
inline double s5_d_pt(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return 30.0 * x * x * (1.0 - x) * (1.0 - x);
}
inline double s5_dd_pt(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
}
}  // namespace detail

// X6 closed forms: h(r) = r * phi(lambda), lambda = ln(r / anchor),
// phi = 1/16 + dphi * s5(lambda / Lambda); f = c5 r^alpha with
// ln(r/f) = A6 + (1 - alpha) lambda.
struct X6Forms {
    double Lambda = 0.0;
    double dphi = 0.0;   // (1 - eps_hat) - 1/16
    double alpha = 0.0;
    double A6 = 0.0;

    Interval phi(const Interval& lam) const {
        return 1.0 / 16.0 + dphi * detail::s5(lam / Lambda);
    }
    Interval dphi_dl(const Interval& lam) const {
        return (dphi / Lambda) * detail::s5_d(lam / Lambda);
    }
    Interval hprime(const Interval& lam) const { return phi(lam) + dphi_dl(lam); }
    Interval r_hpp(const Interval& lam) const {  // r h''
        return dphi * (detail::s5_d(lam / Lambda) / Lambda +
                       detail::s5_dd(lam / Lambda) / (Lambda * Lambda));
    }

    double phi_pt(double l) const { return 1.0 / 16.0 + dphi * detail::s5_pt(l / Lambda); }
    double dphi_dl_pt(double l) const { return (dphi / Lambda) * detail::s5_d_pt(l / Lambda); }
    double hprime_pt(double l) const { return phi_pt(l) + dphi_dl_pt(l); }
    double r_hpp_pt(double l) const {
        return dphi * (detail::s5_d_pt(l / Lambda) / Lambda +
                       detail::s5_dd_pt(l / Lambda) / (Lambda * Lambda));
    }

    // r^2 * Ricci components.
    Interval rr_iv(const Interval& lam) const {
        return -3.0 * (r_hpp(lam) / phi(lam)) + 3.0 * alpha * (1.0 - alpha);
    }
    Interval ii_iv(const Interval& lam) const {
        Interval ph = phi(lam), hp = hprime(lam);
        return (2.0 - 2.0 * sq(hp)) / sq(ph) - r_hpp(lam) / ph - (3.0 * alpha) * (hp / ph);
    }
    Interval aa_iv(const Interval& lam) const {
        Interval ph = phi(lam), hp = hprime(lam);
        Interval big = 2.0 * exp(2.0 * (A6 + (1.0 - alpha) * lam));
        return big + alpha * (1.0 - alpha) - 2.0 * alpha * alpha - (3.0 * alpha) * (hp / ph);
    }
    double rr_pt(double l) const {
        return -3.0 * r_hpp_pt(l) / phi_pt(l) + 3.0 * alpha * (1.0 - alpha);
    }
    double ii_pt(double l) const {
        double ph = phi_pt(l), hp = hprime_pt(l);
        return (2.0 - 2.0 * hp * hp) / (ph * ph) - r_hpp_pt(l) / ph - 3.0 * alpha * hp / ph;
    }
    double aa_pt(double l) const {
        double ph = phi_pt(l), hp = hprime_pt(l);
        double e = 2.0 * (A6 + (1.0 - alpha) * l);
        double big = e > 709.0 ? std::numeric_limits<double>::infinity() : 2.0 * std::exp(e);
        return big + alpha * (1.0 - alpha) - 2.0 * alpha * alpha - 3.0 * alpha * hp / ph;
    }
};

inline Step2Result build_step2_chain(const Step2Inputs& in) {
    if (!(in.eps > 0.0 && in.eps < 0.75))
        throw ParameterWindowEmpty(
            "twist chain: eps must lie in (0, 3/4) so the cone can bend to slope 1/4");
    if (!(in.eps_hat > 0.0 && in.eps_hat < 0.9))
        throw ParameterWindowEmpty("twist chain: eps_hat must lie in (0, 0.9)");
    if (in.k < 1) throw std::invalid_argument("twist chain: k >= 1");

    Step2Result R;
    const double s = in.delta.ln;  // ln delta
    const double eps = in.eps, eh = in.eps_hat;
    const CertifyOptions& co = in.copts;

    // ---- X1: bend the cone from slope 1-eps to slope 1/4, crossing at r = 1.
    {
        StageOutcome st;
        st.name = "X1";
        st.coordinate_note = "cone radius r (input annulus unit scale)";
        WarpProfile h = smooth_concave_min(AnalyticPiece::line(0.0, 0.0, 1.0 - eps),
                                           AnalyticPiece::line(1.0, 1.0 - eps, 0.25), 1e-2, 40.0);
        WarpProfile f = detail::const_profile(1e-2, 40.0, 1.0);
        WarpedStage w;
        w.f_scaled = &f;
        w.ln_f_scale = s;
        w.h = &h;
        Interval dom(1e-2, 30.0);
        st.local_domain = dom;
        st.certs = certify_warped_stage(w, dom, co, "X1 ");
        st.certs.push_back(certify_component(
            "X1 Ric_ii >= (2eps-eps^2)/h^2", "h^2 Ric_ii - (2eps - eps^2) >= 0",
            [&h, eps](const Interval& I) {
                ProfileEnclosure e = h.enclose(I);
                return (2.0 - 2.0 * sq(e.df)) - e.ddf * e.f - (2.0 * eps - eps * eps);
            },
            [&h, eps](double r) {
                Jet j = h.jet(r);
                return (2.0 - 2.0 * j.df * j.df) - j.ddf * j.f - (2.0 * eps - eps * eps);
            },
            dom, co));
        st.numbers["R1"] = R.R1;
        st.numbers["coordinate_shift_to_next"] = 4.0 * (1.0 - eps) - 1.0;
        st.numbers["seam_residual_c1"] = h.max_seam_residual_c1();
        st.f_local = f;
        st.ln_f_scale = s;
        st.h_local = h;
        R.stages.push_back(std::move(st));
    }

    // ---- X2: lift the first sphere, both factors smoothed on one window at R2.
    const double d2_ratio = 1e-9;    // delta2 / delta
    const double inv_ratio = 1e9;    // delta / delta2, kept exact
    R.c2 = inv_ratio - R.R2;
    R.R3 = 3.0 * R.c2 - 2.0 * R.R2;
    {
        StageOutcome st;
        st.name = "X2";
        st.coordinate_note = "rho = r - 1 + 4(1-eps)";
        // The first factor's const->line transition is convex, so the radial
        // component leans on the strict concavity of h: h's window strictly
        // contains f's, keeping |h''| bounded below where f'' > 0.
        const double wh = 144.0, wf = 36.0;
        SmoothingOptions so_f, so_h;
        so_f.window_override = wf;
        so_h.window_override = wh;
        WarpProfile f = smooth_convex_max(AnalyticPiece::constant(1.0),
                                          AnalyticPiece::line(R.R2, 1.0, d2_ratio), 15.0, 1.2e6,
                                          so_f);
        WarpProfile h = smooth_concave_min(AnalyticPiece::line(0.0, 0.0, 0.25),
                                           AnalyticPiece::line(R.R2, R.R2 / 4.0, 1.0 / 6.0), 15.0,
                                           1.2e6, so_h);
        WarpedStage w;
        w.f_scaled = &f;
        w.ln_f_scale = s;
        w.h = &h;
        Interval dom(15.0, 1.05e6);
        st.local_domain = dom;
        st.certs = certify_warped_stage(w, dom, co, "X2 ");
        // The displayed bound chains, as arithmetic facts in ratio form.
        st.certs.push_back(make_arithmetic_statement(
            "X2 rr chain positive", "(3/R2)(4e-4/(7 R2) - delta2/delta) > 0",
            (3.0 / Interval(R.R2)) * (Interval(4e-4) / (7.0 * R.R2) - d2_ratio)));
        {
            Interval dsq = exp(Interval(2.0 * s));  // delta^2, saturating
            Interval v = 1.0 - dsq * (d2_ratio / R.R2) - dsq * (200.0 * d2_ratio * d2_ratio) -
                         dsq * (60.0 * d2_ratio / R.R2);
            st.certs.push_back(make_arithmetic_statement(
                "X2 aa chain positive",
                "delta (1/delta - delta2/R2 - 200 delta2^2/delta - 60 delta2/R2) > 0", v));
        }
        st.certs.push_back(make_arithmetic_statement(
            "X2 ii chain positive", "15/(14 R2) + 1e-4/R2 - (15/2) delta2/delta > 0",
            Interval(15.0) / (14.0 * R.R2) + Interval(1e-4) / R.R2 - 7.5 * d2_ratio));
        st.numbers["R2"] = R.R2;
        st.numbers["delta2_over_delta"] = d2_ratio;
        st.numbers["c2"] = R.c2;
        st.numbers["window_f"] = wf;
        st.numbers["window_h"] = wh;
        st.f_local = f;
        st.ln_f_scale = s;
        st.h_local = h;
        R.stages.push_back(std::move(st));
    }

    // ---- X3: recenter the second factor on the common vertex at -c2.
    {
        StageOutcome st;
        st.name = "X3";
        st.coordinate_note = "rho (as X2); shifts to tau = rho + c2 afterwards";
        WarpProfile f = detail::line_profile(9e4, 12.0 * R.R3, R.R2, 1.0, d2_ratio);
        WarpProfile h = smooth_concave_min(
            AnalyticPiece::line(R.R2, R.R2 / 4.0, 1.0 / 6.0),
            AnalyticPiece::line(R.R3, (R.R3 + R.c2) / 8.0, 1.0 / 8.0), 9e4, 12.0 * R.R3);
        WarpedStage w;
        w.f_scaled = &f;
        w.ln_f_scale = s;
        w.h = &h;
        Interval dom(1e5, 11.0 * R.R3);
        st.local_domain = dom;
        st.certs = certify_warped_stage(w, dom, co, "X3 ");
        st.certs.push_back(certify_component(
            "X3 aa display nonneg", "2/(delta2^2 (rho+c2)) - 2/(rho+c2) - 6/rho >= 0",
            [&, s](const Interval& I) {
                Interval rc = I + R.c2;
                return 2.0 * exp(Interval(-2.0 * s)) * (inv_ratio * inv_ratio) / rc - 2.0 / rc -
                       6.0 / I;
            },
            [&, s](double r) {
                double rc = r + R.c2;
                double e = std::exp(-2.0 * s);
                return 2.0 * e * inv_ratio * inv_ratio / rc - 2.0 / rc - 6.0 / r;
            },
            dom, co));
        {
            const double m3 = 2.0 * 35.0 / 36.0 - 1.0 / 16.0;
            st.certs.push_back(certify_component(
                "X3 ii display bound", "h^2 Ric_ii >= 2*35/36 - 1/16",
                [&f, &h, m3](const Interval& I) {
                    ProfileEnclosure eh = h.enclose(I);
                    ProfileEnclosure ef = f.enclose(I);
                    return (2.0 - 2.0 * sq(eh.df)) - eh.ddf * eh.f -
                           3.0 * (ef.df / ef.f) * eh.df * eh.f - m3;
                },
                [&f, &h, m3](double r) {
                    Jet jh = h.jet(r), jf = f.jet(r);
                    return (2.0 - 2.0 * jh.df * jh.df) - jh.ddf * jh.f -
                           3.0 * (jf.df / jf.f) * jh.df * jh.f - m3;
                },
                dom, co));
        }
        st.numbers["R3"] = R.R3;
        st.numbers["coordinate_shift_to_next"] = R.c2;
        st.f_local = f;
        st.ln_f_scale = s;
        st.h_local = h;
        R.stages.push_back(std::move(st));
    }

    // ---- X4: the twisting zone, certified through the sufficient system.
    X4Window xw = solve_x4_window(R.R3, in.x4);
    R.G = xw.G;
    R.R4 = xw.R4;
    {
        StageOutcome st;
        st.name = "X4";
        st.coordinate_note = "tau = rho + c2; twisting window [1e4 R3, R4]";
        st.local_domain = Interval(1e4 * R.R3, 1e4 * R.R3);  // window start; top is R4
        st.certs = xw.statements;
        st.numbers["lambda0"] = xw.lambda0;
        st.numbers["w0"] = xw.w0;
        st.numbers["K15"] = xw.K15;
        st.numbers["G"] = xw.G;
        st.numbers["M"] = in.x4.M;
        st.numbers["c0"] = in.x4.c0;
        st.big_numbers["R4"] = xw.R4;
        st.notes =
            "verdicts conditional on the assumed family bounds (M, c0); "
            "R4 = exp(exp(exp(lnlnln(1e4 R3) + G)))";
        st.anchor = xw.R4;
        R.stages.push_back(std::move(st));
    }

    // ---- X5: first factor from linear to r^alpha growth, in units of R4.
    R.alpha = 1e-3 * eh;
    const double ln_delta4 = s + std::log(0.5e-9);  // delta4 = delta2/2
    {
        StageOutcome st;
        st.name = "X5";
        st.coordinate_note = "rho = r / R4 (scale-invariant certification)";
        st.anchor = R.R4;
        double ctil = std::pow(1e2, 1.0 - R.alpha);
        WarpProfile f = smooth_concave_min(AnalyticPiece::line(0.0, 0.0, 1.0),
                                           AnalyticPiece::power(ctil, R.alpha), 0.4, 1.3e5);
        WarpProfile h = detail::line_profile(0.4, 1.3e5, 0.0, 0.0, 1.0 / 16.0);
        WarpedStage w;
        w.f_scaled = &f;
        w.ln_f_scale = ln_delta4;
        w.h = &h;
        Interval dom(0.5, 1e5);
        st.local_domain = dom;
        st.certs = certify_warped_stage(w, dom, co, "X5 ");
        st.numbers["alpha"] = R.alpha;
        st.numbers["ln_delta4"] = ln_delta4;
        st.f_local = f;
        st.ln_f_scale = ln_delta4;
        st.h_local = h;
        R.stages.push_back(std::move(st));
    }
    R.R5 = R.R4 * TowerReal::from_double(1e4);
    R.ln_R5_over_R4 = std::log(1e4);

    // ---- X6: slope climb in lambda = ln(r / (10 R5)).
    const double dphi = (1.0 - eh) - 1.0 / 16.0;
    R.Lambda = 2.0 * 1.875 * dphi / (1e-10 * eh);
    X6Forms x6;
    x6.Lambda = R.Lambda;
    x6.dphi = dphi;
    x6.alpha = R.alpha;
    x6.A6 = (1.0 - R.alpha) * std::log(1e3) - ln_delta4;
    {
        StageOutcome st;
        st.name = "X6";
        st.coordinate_note = "lambda = ln(r / (10 R5)); climb width Lambda";
        st.anchor = R.R5 * TowerReal::from_double(10.0);
        Interval dom(0.0, R.Lambda + std::log(92.0));
        st.local_domain = dom;
        st.certs.push_back(certify_component(
            "X6 Ric_rr >= 0", "r^2 rr = -3 (r h'')/phi + 3 alpha (1-alpha)",
            [&x6](const Interval& I) { return x6.rr_iv(I); },
            [&x6](double l) { return x6.rr_pt(l); }, dom, co));
        st.certs.push_back(certify_component(
            "X6 Ric_aa >= 0", "r^2 aa = 2 (r/f)^2 + alpha(1-alpha) - 2 alpha^2 - 3 alpha h'/phi",
            [&x6](const Interval& I) { return x6.aa_iv(I); },
            [&x6](double l) { return x6.aa_pt(l); }, dom, co));
        st.certs.push_back(certify_component(
            "X6 Ric_ii >= 0", "r^2 ii = (2 - 2 h'^2)/phi^2 - (r h'')/phi - 3 alpha h'/phi",
            [&x6](const Interval& I) { return x6.ii_iv(I); },
            [&x6](double l) { return x6.ii_pt(l); }, dom, co));
        // The construction bounds the paper imposes on the climb.
        st.certs.push_back(certify_component(
            "X6 |r h''| < 1e-10 eps_hat", "interpolation curvature budget",
            [&x6, eh](const Interval& I) { return 1e-10 * eh - abs(x6.r_hpp(I)); },
            [&x6, eh](double l) { return 1e-10 * eh - std::fabs(x6.r_hpp_pt(l)); }, dom, co));
        st.certs.push_back(certify_component(
            "X6 |h'| < 1 - eps_hat/10", "slope stays below the reopened cone slope",
            [&x6, eh](const Interval& I) { return (1.0 - 0.1 * eh) - x6.hprime(I); },
            [&x6, eh](double l) { return (1.0 - 0.1 * eh) - x6.hprime_pt(l); }, dom, co));
        st.numbers["Lambda"] = R.Lambda;
        st.numbers["A6"] = x6.A6;
        st.numbers["dphi"] = dphi;
        R.stages.push_back(std::move(st));
    }
    R.ln_R6_over_R4 = R.ln_R5_over_R4 + std::log(10.0) + R.Lambda + std::log(1e2);
    R.R6 = R.R4 * TowerReal::from_ln(R.ln_R6_over_R4);

    // ---- X7: level the first factor off at delta-hat, in units of R6.
    const double ln_f_scale_7 =
        (std::log(1e2) + ln_delta4) - R.alpha * std::log(1e2) - (1.0 - R.alpha) * R.ln_R6_over_R4;
    {
        StageOutcome st;
        st.name = "X7";
        st.coordinate_note = "rho = r / R6";
        st.anchor = R.R6;
        WarpProfile f = smooth_concave_min(AnalyticPiece::power(1.0, R.alpha),
                                           AnalyticPiece::constant(std::pow(1e3, R.alpha)), 0.5,
                                           1.3e5);
        WarpProfile h = detail::line_profile(0.5, 1.3e5, 0.0, 0.0, 1.0 - eh);
        WarpedStage w;
        w.f_scaled = &f;
        w.ln_f_scale = ln_f_scale_7;
        w.h = &h;
        Interval dom(0.6, 1.1e5);
        st.local_domain = dom;
        st.certs = certify_warped_stage(w, dom, co, "X7 ");
        st.numbers["ln_f_scale"] = ln_f_scale_7;
        st.f_local = f;
        st.ln_f_scale = ln_f_scale_7;
        st.h_local = h;
        R.stages.push_back(std::move(st));
    }
    R.ln_R7_over_R4 = R.ln_R6_over_R4 + std::log(1e5);
    R.R7 = R.R4 * TowerReal::from_ln(R.ln_R7_over_R4);
    R.notes.push_back("R5 = 1e4 R4 (the 1e4 R5 display is a typo; only this reading matches the plateau table)");

    // delta-hat and the outer normalization: the input annulus sits at scale
    // 1e-2, so R_prop = 1e-2 R7 and delta_hat_prop R_prop = 1e-2 delta_hat.
    const double ln_c5_rel = std::log(1e2) + ln_delta4 - R.alpha * std::log(1e2);  // ln c5 - (1-a) ln R4
    R.c5 = R.R4.pow(1.0 - R.alpha) * TowerReal::from_ln(ln_c5_rel);
    const double ln_dhat_rel = ln_c5_rel + R.alpha * (std::log(1e3) + R.ln_R6_over_R4);
    R.delta_hat_constr = R.R4 * TowerReal::from_ln(ln_dhat_rel);
    R.ln_delta_hat_prop = ln_dhat_rel - R.ln_R7_over_R4;
    R.delta_hat_prop = TowerReal::from_ln(R.ln_delta_hat_prop);
    R.R_prop = R.R7 * TowerReal::from_ln(-std::log(1e2));
    return R;
}

}  // namespace snowcone

#endif
