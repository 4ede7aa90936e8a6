// The background model: S^3_delta x C(S^3_{1-eps}) capped off smoothly.
// Metric ansatz dr^2 + delta^2 g_{S^3} + h(r)^2 g_{S^3} with
//   h = smoothed min{ r, 1e-4 + (1-eps)(r - 1e-4) },
// exact cone slope 1 below 1e-5, exact slope 1-eps above 1e-3, concave in
// between.  Componentwise Ricci:
//   rr = -3 h''/h >= 0,   aa = 2/delta^2,   ii = 2(1-h'^2)/h^2 - h''/h >= 0,
// the last two because |h'| <= 1 follows from concavity and h'(0) = 1.
#ifndef SNOWCONE_BASE_MODEL_HPP
#define SNOWCONE_BASE_MODEL_HPP

#include "snowcone/stage.hpp"

namespace snowcone {

struct BaseModelInputs {
    double eps = 0.5;
    LogVal delta = LogVal::of(0.01);
    Interval certify_domain{1e-6, 1e3};
    CertifyOptions copts{};
};

struct BaseModelResult {
    WarpProfile h;
    WarpProfile f_scaled;  // constant 1; true sphere size is e^{ln delta}
    double ln_delta = 0.0;
    LogVal delta;
    double eps = 0.0;
    StageOutcome stage;
    double isometric_tail_radius = 1e-2;

    bool all_certified() const { return stage.all_certified(); }
};

inline BaseModelResult build_base_model(const BaseModelInputs& in) {
    if (!(in.eps >= 0.0 && in.eps < 1.0)) throw std::invalid_argument("build_base_model: eps in [0,1)");
    const double cross = 1e-4;
    double dom_lo = 0.0;
    double dom_hi = std::max(in.certify_domain.hi * 1.25, 10.0);

    AnalyticPiece cone = AnalyticPiece::line(0.0, 0.0, 1.0);
    AnalyticPiece tail = AnalyticPiece::line(cross, cross, 1.0 - in.eps);

    BaseModelResult out;
    out.eps = in.eps;
    out.ln_delta = in.delta.ln;
    out.delta = in.delta;
    // eps = 0 degenerates: the pieces coincide and the smoother hands back
    // the single cone line.
    out.h = smooth_concave_min(cone, tail, dom_lo, dom_hi);
    out.f_scaled = WarpProfile({PieceEntry{dom_lo, dom_hi, AnalyticPiece::constant(1.0), true}});

    WarpedStage w;
    w.f_scaled = &out.f_scaled;
    w.ln_f_scale = in.delta.ln;
    w.h = &out.h;

    StageOutcome& st = out.stage;
    st.name = "base-model";
    st.coordinate_note = "cone radius r";
    st.local_domain = in.certify_domain;
    st.certs = certify_warped_stage(w, in.certify_domain, in.copts);

    // Slope bound |h'| <= 1 (concavity + unit slope at the tip).
    st.certs.push_back(certify_component(
        "|h'| <= 1", "1 - h'^2 >= 0 on the certification domain",
        [&h = out.h](const Interval& I) {
            ProfileEnclosure e = h.enclose(I);
            return 1.0 - sq(e.df);
        },
        [&h = out.h](double r) {
            double d = h.jet(r).df;
            return 1.0 - d * d;
        },
        in.certify_domain, in.copts));

    // Concavity of the smoothing arc (flagged pieces satisfy h'' <= 0).
    st.certs.push_back(certify_component(
        "h'' <= 0", "concavity on the flagged pieces",
        [&h = out.h](const Interval& I) { return -h.enclose(I).ddf; },
        [&h = out.h](double r) { return -h.jet(r).ddf; }, in.certify_domain, in.copts));

    double c1 = out.h.max_seam_residual_c1();
    st.certs.push_back(make_arithmetic_statement("seam residual < 1e-10",
                                                 "value and slope continuity at the seams",
                                                 Interval(1e-10 - c1), 0.0));

    st.numbers["eps"] = in.eps;
    st.numbers["ln_delta"] = in.delta.ln;
    st.numbers["tip_exact_below"] = 1e-5;
    st.numbers["tail_exact_above"] = 1e-3;
    st.numbers["isometric_tail_radius"] = out.isometric_tail_radius;
    double dv = in.delta.value_saturating();
    if (std::isfinite(dv) && dv > 0) st.numbers["aa_exact"] = 2.0 / (dv * dv);
    out.stage.f_local = out.f_scaled;
    out.stage.ln_f_scale = in.delta.ln;
    out.stage.h_local = out.h;
    return out;
}

// Pointwise components of the base model (pure evaluation, no intervals).
inline RicciComponents base_model_ricci(const BaseModelResult& b, double r) {
    WarpJets wj;
    wj.f1 = Jet{b.delta.value_saturating(), 0.0, 0.0, false};
    wj.f2 = b.h.jet(r);
    return ricci_doubly_warped(wj);
}

}  // namespace snowcone

#endif
