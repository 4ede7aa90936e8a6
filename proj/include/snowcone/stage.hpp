// Shared machinery for the construction stages: a doubly warped ansatz whose
// first warp factor may carry an extreme value scale, plus the certificate
// record types the stage builders emit.
//
// Scale handling.  Ricci nonnegativity is scale invariant (scaling metric
// and radius by s multiplies every component by s^-2), so each stage is
// certified in its own anchored coordinates.  Within a stage the first
// fiber's size can still be exp(+-1e13) away from the radial scale; only the
// lam1/f^2 term of the first-fiber component sees the absolute size, and it
// enters through a saturating exponential of the stored log-scale, which
// keeps enclosures sound at any magnitude (exp saturates to [0,.] or
// [DBL_MAX, inf) endpoints).
#ifndef SNOWCONE_STAGE_HPP
#define SNOWCONE_STAGE_HPP

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "snowcone/certify.hpp"
#include "snowcone/curvature.hpp"
#include "snowcone/profile.hpp"
#include "snowcone/tower.hpp"

namespace snowcone {

// A positive quantity carried by its natural log (value = e^ln).  When the
// value fits a double it is kept verbatim so user-supplied constants stay
// bit-exact through the pipeline.
struct LogVal {
    double ln = 0.0;
    double exact = std::numeric_limits<double>::quiet_NaN();

    static LogVal of(double v) {
        if (!(v > 0)) throw std::invalid_argument("LogVal: needs positive value");
        return LogVal{std::log(v), v};
    }
    static LogVal from_ln(double l) {
        LogVal v{l, std::numeric_limits<double>::quiet_NaN()};
        if (l > -700.0 && l < 700.0) v.exact = std::exp(l);
        return v;
    }
    double value_saturating() const {
        if (!std::isnan(exact)) return exact;
        return ln > 709.0 ? std::numeric_limits<double>::infinity() : std::exp(ln);
    }
};

struct CertStatement {
    std::string name;
    std::string detail;
    CertificationResult result;
    bool conditional = false;  // depends on assumed constants (reported, not proven here)
    bool arithmetic = false;   // closed-form value check, no bisection involved
    Interval value{0.0};       // evaluated value for arithmetic statements

    bool holds() const { return result.certified(); }
};

inline CertStatement make_arithmetic_statement(std::string name, std::string detail, Interval v,
                                               double margin = 0.0, bool conditional = false) {
    CertStatement s;
    s.name = std::move(name);
    s.detail = std::move(detail);
    s.arithmetic = true;
    s.conditional = conditional;
    s.value = v;
    s.result.status = v.lo >= margin ? CertificationResult::Status::Certified
                                     : CertificationResult::Status::CounterexampleFound;
    if (!s.result.certified()) s.result.witness = Counterexample{0.0, v.lo};
    return s;
}

// Doubly warped ansatz dr^2 + f^2 g_{S^3} + h^2 g_{S^3} in stage-local
// coordinates; true f = exp(ln_f_scale) * f_scaled.
struct WarpedStage {
    int n1 = 3, n2 = 3;
    double lam1 = 2.0, lam2 = 2.0;
    const WarpProfile* f_scaled = nullptr;
    double ln_f_scale = 0.0;
    const WarpProfile* h = nullptr;

    // lam1 * e^{-2 ln_f_scale} / f_scaled^2, saturating and sound.
    Interval fiber1_curvature_iv(const Interval& fs) const {
        Interval base = lam1 / sq(fs);
        if (ln_f_scale == 0.0) return base;
        return base * exp(Interval(-2.0 * ln_f_scale));
    }
    double fiber1_curvature_pt(double fsv) const {
        if (ln_f_scale == 0.0) return lam1 / (fsv * fsv);
        return lam1 / (fsv * fsv) * std::exp(-2.0 * ln_f_scale);
    }

    Interval rr_iv(const Interval& I) const {
        Interval v(0.0);
        if (n1 > 0) {
            ProfileEnclosure e = f_scaled->enclose(I);
            v = v - double(n1) * (e.ddf / e.f);
        }
        if (n2 > 0) {
            ProfileEnclosure e = h->enclose(I);
            v = v - double(n2) * (e.ddf / e.f);
        }
        return v;
    }

    // First-fiber component, factored so the lam1/f^2 term is isolated:
    // aa = lam1/f^2 - f''/f - (n1-1)(f'/f)^2 - n2 (f'/f)(h'/h).
    Interval aa_iv(const Interval& I) const {
        ProfileEnclosure ef = f_scaled->enclose(I);
        Interval qf = ef.df / ef.f;
        Interval v = fiber1_curvature_iv(ef.f) - ef.ddf / ef.f - double(n1 - 1) * sq(qf);
        if (n2 > 0) {
            ProfileEnclosure eh = h->enclose(I);
            v = v - double(n2) * (qf * (eh.df / eh.f));
        }
        return v;
    }

    // Second-fiber component, factored so the constant-slope cone is exact:
    // ii = (lam2 - (n2-1) h'^2)/h^2 - h''/h - n1 (f'/f)(h'/h).
    Interval ii_iv(const Interval& I) const {
        ProfileEnclosure eh = h->enclose(I);
        Interval v = (lam2 - double(n2 - 1) * sq(eh.df)) / sq(eh.f) - eh.ddf / eh.f;
        if (n1 > 0) {
            ProfileEnclosure ef = f_scaled->enclose(I);
            v = v - double(n1) * ((ef.df / ef.f) * (eh.df / eh.f));
        }
        return v;
    }

    double rr_pt(double r) const {
        double v = 0.0;
        if (n1 > 0) {
            Jet j = f_scaled->jet(r);
            v -= n1 * j.ddf / j.f;
        }
        if (n2 > 0) {
            Jet j = h->jet(r);
            v -= n2 * j.ddf / j.f;
        }
        return v;
    }
    double aa_pt(double r) const {
        Jet jf = f_scaled->jet(r);
        double qf = jf.df / jf.f;
        double v = fiber1_curvature_pt(jf.f) - jf.ddf / jf.f - (n1 - 1) * qf * qf;
        if (n2 > 0) {
            Jet jh = h->jet(r);
            v -= n2 * qf * (jh.df / jh.f);
        }
        return v;
    }
    double ii_pt(double r) const {
        Jet jh = h->jet(r);
        double qh = jh.df / jh.f;
        double v = (lam2 - (n2 - 1) * jh.df * jh.df) / (jh.f * jh.f) - jh.ddf / jh.f;
        if (n1 > 0) {
            Jet jf = f_scaled->jet(r);
            v -= n1 * (jf.df / jf.f) * qh;
        }
        return v;
    }
};

inline CertStatement certify_component(const std::string& name, const std::string& detail,
                                       const IntervalField& F, const PointField& f,
                                       const Interval& domain, const CertifyOptions& opts,
                                       bool conditional = false) {
    CertStatement s;
    s.name = name;
    s.detail = detail;
    s.conditional = conditional;
    s.result = certify_nonneg(F, f, domain, opts);
    return s;
}

// The three componentwise nonnegativity certificates of a stage.
inline std::vector<CertStatement> certify_warped_stage(const WarpedStage& w, const Interval& domain,
                                                       const CertifyOptions& opts,
                                                       const std::string& prefix = "") {
    std::vector<CertStatement> out;
    out.push_back(certify_component(prefix + "Ric_rr >= 0", "radial component",
                                    [&w](const Interval& I) { return w.rr_iv(I); },
                                    [&w](double r) { return w.rr_pt(r); }, domain, opts));
    if (w.n1 > 0)
        out.push_back(certify_component(prefix + "Ric_aa >= 0", "first fiber component",
                                        [&w](const Interval& I) { return w.aa_iv(I); },
                                        [&w](double r) { return w.aa_pt(r); }, domain, opts));
    if (w.n2 > 0)
        out.push_back(certify_component(prefix + "Ric_ii >= 0", "second fiber component",
                                        [&w](const Interval& I) { return w.ii_iv(I); },
                                        [&w](double r) { return w.ii_pt(r); }, domain, opts));
    return out;
}

struct StageOutcome {
    std::string name;
    std::string coordinate_note;
    TowerReal anchor = TowerReal::from_double(1.0);
    Interval local_domain{0.0};
    std::vector<CertStatement> certs;
    std::map<std::string, double> numbers;
    std::map<std::string, TowerReal> big_numbers;
    std::optional<WarpProfile> f_local;
    double ln_f_scale = 0.0;
    std::optional<WarpProfile> h_local;
    std::string notes;

    bool all_certified() const {
        for (const CertStatement& c : certs)
            if (!c.holds()) return false;
        return true;
    }
    bool conditional() const {
        for (const CertStatement& c : certs)
            if (c.conditional) return true;
        return false;
    }
};

}  // namespace snowcone

#endif
