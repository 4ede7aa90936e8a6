// Extending the action: the bent annulus, the cap necks, and the k-fold
// equivariant gluing.
//
// The bent annulus profile is
//   h1 = (1-eps') r,   h2 = R sin((r - r_R)/R),   h3 = (1-eps)(r + r_eps),
// with r_eps fixed so h1 and h3 cross at 1e2 k, and (R, r_R) solved so that
// h2 is tangent to h1 at s1 and to h3 at s2.  Tangency of a line to the
// concave sine branch puts the line above the cap globally, so
// h2 <= min(h1, h3) follows from the tangency system plus concavity.
// The cap neck uses hh1 = (1-eps-hat) r and hh2 = R sin((r - rh_R)/R) with
// the unique single-contact rh_R; near its boundary the neck is a polar
// annulus of the same radius-R sphere the bent annulus contains, which is
// what makes the k glued copies fit isometrically.
#ifndef SNOWCONE_ACTION_EXTENSION_HPP
#define SNOWCONE_ACTION_EXTENSION_HPP

#include <cmath>

#include "snowcone/hopf_maps.hpp"
#include "snowcone/rootfind.hpp"
#include "snowcone/stage.hpp"
#include "snowcone/twist_chain.hpp"

namespace snowcone {

struct SineCapSolution {
    double eps = 0, eps_prime = 0;
    long long k = 1;
    double r_eps = 0;     // offset making h1, h3 cross at 1e2 k
    double R = 0;         // cap sphere radius
    double r_R = 0;       // cap pole offset
    double s1 = 0, s2 = 0;  // tangency radii, s1 <= 1e2 k <= s2
    double r_hat = 0;     // boundary half-width (sqrt eps gap) * 1e2 k / 100

    double max_tangency_residual = 0;  // value+slope mismatches at s1, s2
    double band_R_gap = 0;             // band slack: bound - |R - 1e2 k/sqrt(2 eps)|
    double band_rR_gap = 0;            // 1e2 k eps' - r_R
    double chord_check_min = 0;        // min over samples of (r - r_R) - h2(r)

    double h1(double r) const { return (1.0 - eps_prime) * r; }
    double h2(double r) const { return R * std::sin((r - r_R) / R); }
    double h3(double r) const { return (1.0 - eps) * (r + r_eps); }
};

inline SineCapSolution solve_sine_cap(double eps, double eps_prime, long long k) {
    if (!(eps > 0 && eps < 1) || !(eps_prime > 0 && eps_prime < eps))
        throw std::invalid_argument("solve_sine_cap: need 0 < eps' < eps < 1");
    if (!(eps - eps_prime <= eps / 1e2 * (1.0 + 1e-9)))
        throw std::invalid_argument("solve_sine_cap: need eps - eps' <= eps/100");
    if (!(std::sqrt(eps) - std::sqrt(eps_prime) <= 0.1 * std::sqrt(eps)))
        throw std::invalid_argument("solve_sine_cap: outside the estimate regime");

    SineCapSolution s;
    s.eps = eps;
    s.eps_prime = eps_prime;
    s.k = k;
    const double kk = static_cast<double>(k);
    s.r_eps = (eps - eps_prime) * 1e2 * kk / (1.0 - eps);
    s.r_hat = (std::sqrt(eps) - std::sqrt(eps_prime)) / (1e2 * std::sqrt(eps)) * 1e2 * kk;

    const double A = std::acos(1.0 - eps_prime);
    const double B = std::acos(1.0 - eps);
    const double PA = std::tan(A) - A;
    const double PB = std::tan(B) - B;

    // For a given R, the smallest admissible pole offsets against each line
    // are r_R1(R) = R(tanA - A) and r_R3(R) = R(tanB - B) - r_eps; the cap
    // touches both lines when they agree.
    auto mismatch = [&](double R) { return R * (PA - PB) + s.r_eps; };
    double center = 1e2 * kk / std::sqrt(2.0 * eps);
    double lo = 1e-3 * center, hi = 1e3 * center;
    RootResult root = find_root(mismatch, lo, hi);
    if (!root.converged) throw std::runtime_error("solve_sine_cap: tangency root did not converge");
    s.R = root.x;
    s.r_R = s.R * PA;
    s.s1 = s.R * std::tan(A);
    s.s2 = s.R * std::tan(B) - s.r_eps;

    auto rel = [](double a, double b, double scale) { return std::fabs(a - b) / std::max(1.0, scale); };
    double r1 = rel(s.h2(s.s1), s.h1(s.s1), s.s1);
    double r2 = rel(std::cos((s.s1 - s.r_R) / s.R), 1.0 - eps_prime, 1.0);
    double r3 = rel(s.h2(s.s2), s.h3(s.s2), s.s2);
    double r4 = rel(std::cos((s.s2 - s.r_R) / s.R), 1.0 - eps, 1.0);
    s.max_tangency_residual = std::max(std::max(r1, r2), std::max(r3, r4));

    double band = 1e3 * kk * (std::sqrt(eps) + (std::sqrt(eps) - std::sqrt(eps_prime)) / std::sqrt(eps));
    s.band_R_gap = band - std::fabs(s.R - center);
    s.band_rR_gap = 1e2 * kk * eps_prime - s.r_R;

    s.chord_check_min = 0.0;
    for (int i = 0; i <= 10000; ++i) {
        double r = s.r_R + (M_PI * s.R) * i / 10000.0;
        s.chord_check_min = std::min(s.chord_check_min, (r - s.r_R) - s.h2(r));
    }
    return s;
}

struct HatCapSolution {
    double R = 0;
    double eps_hat = 0;      // the value actually used
    double s_hat = 0;        // single tangency radius
    double r_hat_R = 0;      // pole offset
    double max_tangency_residual = 0;
    double band_s_gap = 0;   // (eps-hat + sqrt2 eps-hat^{3/2}) R - |s_hat - sqrt(2 eps-hat) R|
    double band_rR_gap = 0;  // 2 eps-hat R - r_hat_R

    double h1(double r) const { return (1.0 - eps_hat) * r; }
    double h2(double r) const { return R * std::sin((r - r_hat_R) / R); }
};

inline HatCapSolution solve_hat_cap(double R, double eps_hat) {
    if (!(R > 0) || !(eps_hat > 0 && eps_hat < 1))
        throw std::invalid_argument("solve_hat_cap: need R > 0, eps_hat in (0,1)");
    HatCapSolution h;
    h.R = R;
    h.eps_hat = eps_hat;
    const double A = std::acos(1.0 - eps_hat);
    h.s_hat = R * std::tan(A);
    h.r_hat_R = R * (std::tan(A) - A);
    double rv = std::fabs(h.h2(h.s_hat) - h.h1(h.s_hat)) / std::max(1.0, h.s_hat);
    double rd = std::fabs(std::cos((h.s_hat - h.r_hat_R) / R) - (1.0 - eps_hat));
    h.max_tangency_residual = std::max(rv, rd);
    h.band_s_gap = (eps_hat + std::sqrt(2.0) * std::pow(eps_hat, 1.5)) * R -
                   std::fabs(h.s_hat - std::sqrt(2.0 * eps_hat) * R);
    h.band_rR_gap = 2.0 * eps_hat * R - h.r_hat_R;
    return h;
}

// Largest eps-hat (not exceeding the request) whose cap fits in half the
// boundary width: s_hat(eps-hat) <= r_hat / 2.
inline double hat_cap_feasible_eps_hat(double R, double r_hat, double requested) {
    double target = r_hat / (2.0 * R);
    // s_hat/R = tan(arccos(1 - e)) is increasing in e; invert with margin.
    double lo = 0.0, hi = std::min(requested, 0.9);
    auto shat_over_R = [](double e) { return std::tan(std::acos(1.0 - e)); };
    if (shat_over_R(hi) <= target) return hi;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (shat_over_R(mid) <= target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.9 * lo;
}

struct PunctureCenter {
    long long index = 0;
    double radius = 0;      // cone radius coordinate (= 1e2 k)
    QZ hopf_angle_turns;    // a/k of a full turn
};

struct Step3Assembly {
    SineCapSolution cap;
    HatCapSolution hat;
    double eps_hat_requested = 0;
    double r_tilde = 0;  // gluing sphere radius: 2 s_hat - r_hat_R

    WarpProfile bent_annulus_h;  // h1 | h2 | h3 with C^1 tangential joins
    WarpProfile neck_h;          // hh1 | hh2 up to the boundary 2 s_hat
    double ln_delta = 0;

    std::vector<PunctureCenter> centers;
    std::vector<GlueMap> glue_maps;
    QZ gamma;        // generator of the extended action
    QZ gamma_hat;    // gamma^k
    ActionWeights weights;

    StageOutcome annulus_stage;
    StageOutcome neck_stage;
    std::vector<CertStatement> assembly_checks;

    bool all_certified() const {
        if (!annulus_stage.all_certified() || !neck_stage.all_certified()) return false;
        for (const CertStatement& c : assembly_checks)
            if (!c.holds()) return false;
        return true;
    }
};

struct Step3Inputs {
    double eps = 0.5;
    double eps_prime = 0.4996;
    LogVal delta = LogVal::of(0.01);
    long long k = 3;
    double eps_hat = 0.01;
    BigInt hat_order = 2;  // |gamma-hat|; the extended generator has order k * hat_order
    CertifyOptions copts{};
};

inline Step3Assembly build_step3_assembly(const Step3Inputs& in) {
    Step3Assembly a;
    a.eps_hat_requested = in.eps_hat;
    a.cap = solve_sine_cap(in.eps, in.eps_prime, in.k);
    double eh = hat_cap_feasible_eps_hat(a.cap.R, a.cap.r_hat, in.eps_hat);
    if (!(eh > 0)) throw ParameterWindowEmpty("step3: no feasible eps-hat for the neck");
    a.hat = solve_hat_cap(a.cap.R, eh);
    a.r_tilde = 2.0 * a.hat.s_hat - a.hat.r_hat_R;
    a.ln_delta = in.delta.ln;

    const double kk = static_cast<double>(in.k);
    double dom_hi = std::max(1e5 * kk, 10.0 * a.cap.s2);

    // Bent annulus: exact pieces with tangential joins.
    {
        std::vector<PieceEntry> es;
        es.push_back({0.0, a.cap.s1, AnalyticPiece::line(0.0, 0.0, 1.0 - in.eps_prime), true});
        es.push_back({a.cap.s1, a.cap.s2, AnalyticPiece::sine_cap(a.cap.R, a.cap.r_R), true});
        es.push_back(
            {a.cap.s2, dom_hi, AnalyticPiece::line(-a.cap.r_eps, 0.0, 1.0 - in.eps), true});
        a.bent_annulus_h = WarpProfile(std::move(es));
    }
    // Neck: line then cap, out to the boundary at 2 s_hat.
    {
        std::vector<PieceEntry> es;
        es.push_back({0.0, a.hat.s_hat, AnalyticPiece::line(0.0, 0.0, 1.0 - eh), true});
        es.push_back({a.hat.s_hat, 2.0 * a.hat.s_hat, AnalyticPiece::sine_cap(a.cap.R, a.hat.r_hat_R),
                      true});
        a.neck_h = WarpProfile(std::move(es));
    }

    WarpProfile f_const_a(
        {PieceEntry{0.0, dom_hi, AnalyticPiece::constant(1.0), true}});
    {
        WarpedStage w;
        w.f_scaled = &f_const_a;
        w.ln_f_scale = in.delta.ln;
        w.h = &a.bent_annulus_h;
        a.annulus_stage.name = "bent-annulus";
        a.annulus_stage.coordinate_note = "cone radius r";
        a.annulus_stage.local_domain = Interval(1e-3, 0.99 * dom_hi);
        a.annulus_stage.certs = certify_warped_stage(w, a.annulus_stage.local_domain, in.copts,
                                                     "annulus ");
        a.annulus_stage.numbers["seam_residual_c1"] = a.bent_annulus_h.max_seam_residual_c1();
        a.annulus_stage.h_local = a.bent_annulus_h;
    }
    WarpProfile f_const_n(
        {PieceEntry{0.0, 2.0 * a.hat.s_hat, AnalyticPiece::constant(1.0), true}});
    {
        WarpedStage w;
        w.f_scaled = &f_const_n;
        w.ln_f_scale = in.delta.ln;
        w.h = &a.neck_h;
        a.neck_stage.name = "neck";
        a.neck_stage.coordinate_note = "cone radius r (per glued copy)";
        a.neck_stage.local_domain = Interval(1e-6 * a.hat.s_hat, 2.0 * a.hat.s_hat);
        a.neck_stage.certs = certify_warped_stage(w, a.neck_stage.local_domain, in.copts, "neck ");
        a.neck_stage.numbers["seam_residual_c1"] = a.neck_h.max_seam_residual_c1();
        a.neck_stage.h_local = a.neck_h;
    }

    // Group data and gluing maps.
    BigInt order = in.hat_order * in.k;
    a.gamma = QZ(1, order);
    a.gamma_hat = a.gamma.pow(BigInt(in.k));
    a.weights = ActionWeights{1, static_cast<long long>(in.hat_order)};
    for (long long i = 0; i < in.k; ++i) {
        a.centers.push_back(PunctureCenter{i, 1e2 * kk, QZ(i, in.k)});
        a.glue_maps.push_back(GlueMap{a.gamma, i, a.weights});
    }

    // Assembly coherence checks.
    auto check = [&](std::string name, std::string detail_s, double slack) {
        a.assembly_checks.push_back(
            make_arithmetic_statement(std::move(name), std::move(detail_s), Interval(slack)));
    };
    check("r_tilde < r_R", "the gluing sphere stays inside the cap pole offset",
          a.cap.r_R - a.r_tilde);
    double rho0 = 1e2 * kk - a.cap.r_R;  // polar distance of the centers from the cap pole
    check("gluing balls inside the cap",
          "[rho0 - r_tilde, rho0 + r_tilde] within the cap polar range",
          std::min(rho0 - a.r_tilde - (a.cap.s1 - a.cap.r_R),
                   (a.cap.s2 - a.cap.r_R) - (rho0 + a.r_tilde)));
    check("tangency residuals < 1e-10", "bent annulus cap",
          1e-10 - a.cap.max_tangency_residual);
    check("neck tangency residual < 1e-10", "neck cap", 1e-10 - a.hat.max_tangency_residual);
    check("cap band: |R - 1e2 k/sqrt(2 eps)|", "within the stated tolerance band", a.cap.band_R_gap);
    check("cap band: r_R <= 1e2 k eps'", "pole offset band", a.cap.band_rR_gap);
    check("neck band: |s_hat - sqrt(2 eps-hat) R|", "within the stated band", a.hat.band_s_gap);
    check("neck band: r_hat_R <= 2 eps-hat R", "pole offset band", a.hat.band_rR_gap);
    check("s_hat <= r_hat/2", "neck fits the boundary half-width",
          a.cap.r_hat / 2.0 - a.hat.s_hat);

    // Collar isometry: both collars are polar annuli of the radius-R sphere;
    // compare the polar profiles at matched distances.
    {
        double worst = 0.0;
        for (int i = 0; i <= 64; ++i) {
            double rho = a.r_tilde * (0.9 + 0.1 * i / 64.0);
            double annulus_val = a.cap.R * std::sin(rho / a.cap.R);
            double neck_val = a.neck_h.jet(rho + a.hat.r_hat_R).f;
            worst = std::max(worst, std::fabs(annulus_val - neck_val) / std::max(1.0, annulus_val));
        }
        check("collar isometry residual < 1e-10", "neck boundary matches the cap annulus",
              1e-10 - worst);
    }
    return a;
}

// Action on the disjoint union of k neck copies: gamma sends copy a to copy
// a+1 and applies gamma-hat when wrapping.  Returns the largest deviation of
// the wrap relation phi^k = gamma-hat . phi^0 over the samples.
inline double wrap_around_residual(const Step3Assembly& a, std::uint64_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    auto phi0 = [](const S3Pair& p) { return p; };
    for (std::uint64_t i = 0; i < samples; ++i) {
        S3Pair p = random_s3_pair(rng);
        S3Pair lhs = glue_map(a.gamma, static_cast<long long>(a.glue_maps.size()), a.weights, phi0, p);
        S3Pair rhs = act_ab(TurnAngle{a.gamma_hat}, phi0(p), a.weights);
        worst = std::max(worst, lhs.dist(rhs));
    }
    return worst;
}

}  // namespace snowcone

#endif
