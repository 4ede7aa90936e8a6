// Piecewise-analytic warp profiles with exact first and second derivatives
// and sound interval enclosures per piece.
//
// Piece inventory: lines, sine caps R*sin((r-r0)/R), powers c*r^alpha,
// constants, and C^2 smoothing arcs.  An arc replaces the kink of
// min{left,right} at a transversal crossing: the derivative is blended with
// a cubic smoothstep between the two pieces' derivatives (plus a closed-form
// bump that makes the integral land exactly on the right piece), so h' and
// h'' have closed forms, h'' <= 0 whenever the slopes decrease across the
// crossing, and the arc meets both neighbors C^2.  Arc values are recovered
// from validated integral tables.
#ifndef SNOWCONE_PROFILE_HPP
#define SNOWCONE_PROFILE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "snowcone/interval.hpp"
#include "snowcone/rootfind.hpp"

namespace snowcone {

struct Jet {
    double f = 0.0;
    double df = 0.0;
    double ddf = 0.0;
    bool at_seam = false;  // one-sided evaluation at a piece boundary
};

struct ProfileEnclosure {
    Interval f{0.0};
    Interval df{0.0};
    Interval ddf{0.0};
};

class AnalyticPiece {
public:
    enum class Kind { Line, SineCap, Power, Constant };

    static AnalyticPiece line(double x0, double y0, double slope) {
        AnalyticPiece p;
        p.kind_ = Kind::Line;
        p.a_ = x0;
        p.b_ = y0;
        p.c_ = slope;
        return p;
    }
    static AnalyticPiece sine_cap(double radius, double r0) {
        if (radius <= 0) throw std::invalid_argument("sine_cap: radius must be positive");
        AnalyticPiece p;
        p.kind_ = Kind::SineCap;
        p.a_ = radius;
        p.b_ = r0;
        return p;
    }
    static AnalyticPiece power(double coeff, double alpha) {
        AnalyticPiece p;
        p.kind_ = Kind::Power;
        p.a_ = coeff;
        p.b_ = alpha;
        return p;
    }
    static AnalyticPiece constant(double v) {
        AnalyticPiece p;
        p.kind_ = Kind::Constant;
        p.a_ = v;
        return p;
    }

    Kind kind() const { return kind_; }

    Jet jet(double r) const {
        Jet j;
        switch (kind_) {
            case Kind::Line:
                j.f = b_ + c_ * (r - a_);
                j.df = c_;
                j.ddf = 0.0;
                break;
            case Kind::SineCap: {
                double t = (r - b_) / a_;
                j.f = a_ * std::sin(t);
                j.df = std::cos(t);
                j.ddf = -std::sin(t) / a_;
                break;
            }
            case Kind::Power:
                j.f = a_ * std::pow(r, b_);
                j.df = a_ * b_ * std::pow(r, b_ - 1.0);
                j.ddf = a_ * b_ * (b_ - 1.0) * std::pow(r, b_ - 2.0);
                break;
            case Kind::Constant:
                j.f = a_;
                break;
        }
        return j;
    }

    ProfileEnclosure enclose(const Interval& I) const {
        ProfileEnclosure e;
        switch (kind_) {
            case Kind::Line: {
                double v1 = b_ + c_ * (I.lo - a_);
                double v2 = b_ + c_ * (I.hi - a_);
                e.f = Interval(std::min(v1, v2), std::max(v1, v2)).inflated();
                e.df = Interval(c_);
                e.ddf = Interval(0.0);
                break;
            }
            case Kind::SineCap: {
                Interval t = (I - b_) / a_;
                e.f = a_ * sin(t);
                e.df = cos(t);
                e.ddf = -(sin(t) / a_);
                break;
            }
            case Kind::Power: {
                e.f = a_ * pow(I, b_);
                e.df = (a_ * b_) * pow(I, b_ - 1.0);
                e.ddf = (a_ * b_ * (b_ - 1.0)) * pow(I, b_ - 2.0);
                break;
            }
            case Kind::Constant:
                e.f = Interval(a_);
                e.df = Interval(0.0);
                e.ddf = Interval(0.0);
                break;
        }
        return e;
    }

private:
    Kind kind_ = Kind::Constant;
    double a_ = 0.0, b_ = 0.0, c_ = 0.0;
};

namespace detail {
inline double smoothstep(double u) { return u * u * (3.0 - 2.0 * u); }
inline double smoothstep_d(double u) { return 6.0 * u * (1.0 - u); }
inline double bump(double u) {
    double v = u * (1.0 - u);
    return v * v;
}
inline double bump_d(double u) { return 2.0 * u * (1.0 - u) * (1.0 - 2.0 * u); }

inline Interval clamp_range(Interval v, double lo, double hi) {
    return Interval(std::clamp(v.lo, lo, hi), std::clamp(v.hi, lo, hi));
}

inline Interval smoothstep(const Interval& u) {
    // Monotone increasing from [0,1] onto [0,1].
    return clamp_range(Interval(smoothstep(std::clamp(u.lo, 0.0, 1.0)),
                                smoothstep(std::clamp(u.hi, 0.0, 1.0)))
                           .inflated(),
                       0.0, 1.0);
}
inline Interval smoothstep_d(const Interval& u) {
    // Range [0, 1.5]; peak at u = 1/2.
    double lo = std::min(smoothstep_d(std::clamp(u.lo, 0.0, 1.0)), smoothstep_d(std::clamp(u.hi, 0.0, 1.0)));
    double hi = (u.lo <= 0.5 && u.hi >= 0.5)
                    ? 1.5
                    : std::max(smoothstep_d(std::clamp(u.lo, 0.0, 1.0)),
                               smoothstep_d(std::clamp(u.hi, 0.0, 1.0)));
    return clamp_range(Interval(lo, hi).inflated(), 0.0, 1.5);
}
inline Interval bump(const Interval& u) {
    // Range [0, 1/16]; peak at u = 1/2, zero at the ends.
    double lo = std::min(bump(std::clamp(u.lo, 0.0, 1.0)), bump(std::clamp(u.hi, 0.0, 1.0)));
    double hi = (u.lo <= 0.5 && u.hi >= 0.5)
                    ? 0.0625
                    : std::max(bump(std::clamp(u.lo, 0.0, 1.0)), bump(std::clamp(u.hi, 0.0, 1.0)));
    return clamp_range(Interval(lo, hi).inflated(), 0.0, 0.0625);
}
inline Interval bump_d(const Interval& u) {
    // Critical points of B' = 2u(1-u)(1-2u) on [0,1]: u = (1 -+ 1/sqrt(3))/2;
    // range [-B'max, B'max] with B'max = 1/(6 sqrt(3)).
    constexpr double uc1 = 0.21132486540518713;
    constexpr double uc2 = 0.78867513459481287;
    constexpr double bmax = 0.09622504486493764;
    double cl = std::clamp(u.lo, 0.0, 1.0), ch = std::clamp(u.hi, 0.0, 1.0);
    double lo = std::min(bump_d(cl), bump_d(ch));
    double hi = std::max(bump_d(cl), bump_d(ch));
    if (cl <= uc1 && ch >= uc1) {
        lo = std::min(lo, bump_d(uc1));
        hi = std::max(hi, bump_d(uc1));
    }
    if (cl <= uc2 && ch >= uc2) {
        lo = std::min(lo, bump_d(uc2));
        hi = std::max(hi, bump_d(uc2));
    }
    return clamp_range(Interval(lo, hi).inflated(), -bmax, bmax);
}

// 2u(1-u) on [0,1]: zero at the ends (exactly, including in intervals),
// peak 1/2 at u = 1/2.
inline Interval two_u_one_minus_u(const Interval& u) {
    auto val = [](double x) { return 2.0 * x * (1.0 - x); };
    double cl = std::clamp(u.lo, 0.0, 1.0), ch = std::clamp(u.hi, 0.0, 1.0);
    double lo = std::min(val(cl), val(ch));
    double hi = (cl <= 0.5 && ch >= 0.5) ? 0.5 : std::max(val(cl), val(ch));
    Interval out = Interval(lo, hi).inflated();
    if (cl == 0.0 || ch == 0.0 || cl == 1.0 || ch == 1.0) out.lo = std::max(out.lo, 0.0);
    return clamp_range(out, 0.0, 0.5);
}
}  // namespace detail

class SmoothArc {
public:
    SmoothArc(AnalyticPiece left, AnalyticPiece right, double a, double b)
        : left_(left), right_(right), a_(a), b_(b) {
        if (!(b_ > a_)) throw std::invalid_argument("SmoothArc: empty window");
        compute_nu();
        build_tables();
    }

    double lo() const { return a_; }
    double hi() const { return b_; }
    double nu() const { return nu_; }

    // The derivative blend uses a single weight W(u) = sigma(u) + nu B(u):
    //   h'(s) = L'(s) + W(u) (R'(s) - L'(s)),
    // where nu is the correction that makes the integral land exactly on the
    // right piece (nu = 0 for line-line).  For enclosures the weight and its
    // derivative are kept in factored form,
    //   W = u^2 [(3 - 2u) + nu (1-u)^2],   W' = 2u(1-u) [3 + nu (1 - 2u)],
    // whose factors have definite signs for |nu| < 3; this preserves the
    // sign structure of h'' all the way into the window endpoints, which a
    // sum of separately enclosed terms would lose.
    double weight(double u) const {
        u = std::clamp(u, 0.0, 1.0);
        return u * u * ((3.0 - 2.0 * u) + nu_ * (1.0 - u) * (1.0 - u));
    }
    double weight_d(double u) const {
        u = std::clamp(u, 0.0, 1.0);
        return 2.0 * u * (1.0 - u) * (3.0 + nu_ * (1.0 - 2.0 * u));
    }

    double dvalue(double s) const {
        double u = (s - a_) / (b_ - a_);
        Jet l = left_.jet(s), r = right_.jet(s);
        return l.df + weight(u) * (r.df - l.df);
    }

    double ddvalue(double s) const {
        double u = (s - a_) / (b_ - a_);
        double w = b_ - a_;
        double W = weight(u);
        Jet l = left_.jet(s), r = right_.jet(s);
        return (1.0 - W) * l.ddf + W * r.ddf + weight_d(u) * (r.df - l.df) / w;
    }

    Jet jet(double s) const {
        Jet j;
        j.f = value(s);
        j.df = dvalue(s);
        j.ddf = ddvalue(s);
        return j;
    }

    double value(double s) const {
        if (s <= a_) return left_.jet(a_).f;
        if (s >= b_) return right_.jet(b_).f;
        double cellw = (b_ - a_) / kCells;
        int i = std::min(static_cast<int>((s - a_) / cellw), kCells - 1);
        double x0 = a_ + i * cellw;
        return cum_pt_[static_cast<size_t>(i)] + simpson(x0, s);
    }

    ProfileEnclosure enclose(const Interval& I) const {
        ProfileEnclosure e;
        e.df = dvalue_iv(I);
        e.ddf = ddvalue_iv(I);
        double cellw = (b_ - a_) / kCells;
        int i0 = std::clamp(static_cast<int>(std::floor((I.lo - a_) / cellw)), 0, kCells - 1);
        int i1 = std::clamp(static_cast<int>(std::floor((I.hi - a_) / cellw)), 0, kCells - 1);
        Interval f = cell_range_[static_cast<size_t>(i0)];
        for (int i = i0 + 1; i <= i1; ++i) f = Interval::hull(f, cell_range_[static_cast<size_t>(i)]);
        e.f = f;
        return e;
    }

private:
    static constexpr int kCells = 2048;

    AnalyticPiece left_, right_;
    double a_, b_;
    double nu_ = 0.0;
    std::vector<double> cum_pt_;      // accurate values at cell nodes
    std::vector<Interval> cum_iv_;    // validated values at cell nodes
    std::vector<Interval> cell_range_;  // validated value range per cell

    Interval weight_iv(const Interval& u) const {
        Interval uc = detail::clamp_range(u, 0.0, 1.0);
        Interval one_minus = detail::clamp_range(1.0 - uc, 0.0, 1.0);
        Interval S = (3.0 - 2.0 * uc) + nu_ * sq(one_minus);
        double wmax = 1.0 + std::max(0.0, nu_) * 0.0625;
        return detail::clamp_range(sq(uc) * S, 0.0, wmax);
    }
    Interval weight_d_iv(const Interval& u) const {
        Interval uc = detail::clamp_range(u, 0.0, 1.0);
        Interval P = detail::two_u_one_minus_u(uc);
        Interval Q = 3.0 + nu_ * (1.0 - 2.0 * uc);
        return P * Q;  // P >= 0 and Q > 0 for |nu| < 3
    }

    Interval dvalue_iv(const Interval& I) const {
        Interval u = (I - a_) / (b_ - a_);
        Interval W = weight_iv(u);
        ProfileEnclosure l = left_.enclose(I), r = right_.enclose(I);
        return l.df + W * (r.df - l.df);
    }
    Interval ddvalue_iv(const Interval& I) const {
        Interval u = (I - a_) / (b_ - a_);
        Interval W = weight_iv(u);
        Interval Wd = weight_d_iv(u);
        ProfileEnclosure l = left_.enclose(I), r = right_.enclose(I);
        return (1.0 - W) * l.ddf + W * r.ddf + Wd * (r.df - l.df) / (b_ - a_);
    }

    double simpson(double x0, double x1) const {
        if (x1 <= x0) return 0.0;
        const int n = 8;
        double h = (x1 - x0) / n;
        double s = dvalue(x0) + dvalue(x1);
        for (int i = 1; i < n; ++i) s += dvalue(x0 + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
        return s * h / 3.0;
    }

    void compute_nu() {
        // nu makes integral(h') match the right piece's value at b exactly:
        // D = right(b) - left(a) - integral(sigma-blend), and
        // nu = D / integral(B(u) (R' - L')).
        nu_ = 0.0;
        if (left_.kind() == AnalyticPiece::Kind::Line && right_.kind() == AnalyticPiece::Kind::Line)
            return;  // the symmetric blend integrates exactly for line pairs
        double target = right_.jet(b_).f - left_.jet(a_).f;
        const int n = 4096;
        double h = (b_ - a_) / n;
        auto blend = [&](double s) {
            double u = (s - a_) / (b_ - a_);
            double sg = detail::smoothstep(u);
            return left_.jet(s).df + sg * (right_.jet(s).df - left_.jet(s).df);
        };
        auto weight = [&](double s) {
            double u = (s - a_) / (b_ - a_);
            return detail::bump(u) * (right_.jet(s).df - left_.jet(s).df);
        };
        double acc = blend(a_) + blend(b_), accw = weight(a_) + weight(b_);
        for (int i = 1; i < n; ++i) {
            double c = (i % 2 == 1 ? 4.0 : 2.0);
            acc += blend(a_ + i * h) * c;
            accw += weight(a_ + i * h) * c;
        }
        double integral = acc * h / 3.0;
        double wint = accw * h / 3.0;
        if (wint == 0.0) throw std::invalid_argument("SmoothArc: degenerate correction weight");
        nu_ = (target - integral) / wint;
        if (!(std::fabs(nu_) < 3.0))
            throw std::invalid_argument("SmoothArc: window too wide for the curvature mismatch");
    }

    void build_tables() {
        double cellw = (b_ - a_) / kCells;
        cum_pt_.resize(kCells + 1);
        cum_iv_.resize(kCells + 1);
        cell_range_.resize(kCells);
        cum_pt_[0] = left_.jet(a_).f;
        cum_iv_[0] = Interval(cum_pt_[0]).inflated();
        for (int i = 0; i < kCells; ++i) {
            double x0 = a_ + i * cellw, x1 = x0 + cellw;
            cum_pt_[static_cast<size_t>(i) + 1] = cum_pt_[static_cast<size_t>(i)] + simpson(x0, x1);
            Interval dh = dvalue_iv(Interval(x0, x1));
            Interval step = Interval(cellw) * dh;
            cell_range_[static_cast<size_t>(i)] =
                cum_iv_[static_cast<size_t>(i)] +
                Interval(std::min(0.0, step.lo), std::max(0.0, step.hi));
            cum_iv_[static_cast<size_t>(i) + 1] = cum_iv_[static_cast<size_t>(i)] + step;
        }
    }
};

using PieceBody = std::variant<AnalyticPiece, SmoothArc>;

struct PieceEntry {
    double lo = 0.0;
    double hi = 0.0;
    PieceBody body;
    bool concave = false;  // flagged pieces must satisfy f'' <= 0 pointwise

    Jet jet(double r) const {
        return std::visit([&](const auto& p) { return p.jet(r); }, body);
    }
    ProfileEnclosure enclose(const Interval& I) const {
        return std::visit([&](const auto& p) { return p.enclose(I); }, body);
    }
};

class WarpProfile {
public:
    WarpProfile() = default;
    explicit WarpProfile(std::vector<PieceEntry> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw std::invalid_argument("WarpProfile: no pieces");
        for (size_t i = 0; i + 1 < entries_.size(); ++i)
            if (std::fabs(entries_[i].hi - entries_[i + 1].lo) >
                1e-12 * (1.0 + std::fabs(entries_[i].hi)))
                throw std::invalid_argument("WarpProfile: pieces not contiguous");
    }

    double domain_lo() const { return entries_.front().lo; }
    double domain_hi() const { return entries_.back().hi; }
    const std::vector<PieceEntry>& entries() const { return entries_; }

    std::vector<double> seams() const {
        std::vector<double> s;
        for (size_t i = 0; i + 1 < entries_.size(); ++i) s.push_back(entries_[i].hi);
        return s;
    }

    Jet jet(double r) const {
        const PieceEntry& e = entry_for(r);
        Jet j = e.jet(r);
        for (double s : seams())
            if (r == s) j.at_seam = true;
        return j;
    }

    // One-sided jet at a seam (or anywhere): from_left picks the piece ending at r.
    Jet jet_side(double r, bool from_left) const {
        for (size_t i = 0; i < entries_.size(); ++i) {
            const PieceEntry& e = entries_[i];
            if (from_left ? (r > e.lo && r <= e.hi) : (r >= e.lo && r < e.hi)) {
                Jet j = e.jet(r);
                j.at_seam = (r == e.lo || r == e.hi);
                return j;
            }
        }
        return jet(r);
    }

    ProfileEnclosure enclose(const Interval& I) const {
        if (I.lo < domain_lo() - 1e-9 * (1 + std::fabs(domain_lo())) || I.hi > domain_hi() + 1e-9 * (1 + std::fabs(domain_hi())))
            throw std::out_of_range("WarpProfile::enclose: interval outside domain");
        bool any = false;
        ProfileEnclosure acc;
        for (const PieceEntry& e : entries_) {
            double lo = std::max(I.lo, e.lo), hi = std::min(I.hi, e.hi);
            if (lo > hi) continue;
            ProfileEnclosure pe = e.enclose(Interval(lo, hi));
            if (!any) {
                acc = pe;
                any = true;
            } else {
                acc.f = Interval::hull(acc.f, pe.f);
                acc.df = Interval::hull(acc.df, pe.df);
                acc.ddf = Interval::hull(acc.ddf, pe.ddf);
            }
        }
        if (!any) throw std::out_of_range("WarpProfile::enclose: empty intersection");
        return acc;
    }

    struct SeamResidual {
        double r = 0.0;
        double value_gap = 0.0;
        double slope_gap = 0.0;
        double curvature_gap = 0.0;
    };

    std::vector<SeamResidual> seam_residuals() const {
        std::vector<SeamResidual> out;
        for (double s : seams()) {
            Jet l = jet_side(s, true), r = jet_side(s, false);
            double scale = std::max({1.0, std::fabs(l.f), std::fabs(r.f)});
            out.push_back({s, std::fabs(l.f - r.f) / scale, std::fabs(l.df - r.df),
                           std::fabs(l.ddf - r.ddf)});
        }
        return out;
    }

    double max_seam_residual_c1() const {
        double m = 0.0;
        for (const SeamResidual& s : seam_residuals()) m = std::max({m, s.value_gap, s.slope_gap});
        return m;
    }

private:
    const PieceEntry& entry_for(double r) const {
        for (const PieceEntry& e : entries_)
            if (r >= e.lo && r <= e.hi) return e;
        throw std::out_of_range("WarpProfile: point outside domain");
    }

    std::vector<PieceEntry> entries_;
};

struct SmoothingOptions {
    double window_fraction = 0.1;    // of the distance to the nearest seam
    double dip_tolerance = 1e-3;     // h >= (1 - dip) * min(pieces) on the window
    std::optional<double> window_override;  // exact half-width, for coordinated stages
};

class SmoothingError : public std::runtime_error {
public:
    enum class Kind { NoCrossing, MultipleCrossings, SlopeOrder };
    SmoothingError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

// C^2 concave replacement for min{left,right} on [dlo, dhi].  The pieces
// must cross exactly once with decreasing slope across the crossing.
inline WarpProfile smooth_concave_min(const AnalyticPiece& left, const AnalyticPiece& right,
                                      double dlo, double dhi, const SmoothingOptions& opts = {}) {
    auto gap = [&](double r) { return left.jet(r).f - right.jet(r).f; };
    // Locate sign changes on a fine grid.
    const int n = 4096;
    double scale = 0.0;
    int changes = 0;
    double bracket_lo = 0, bracket_hi = 0;
    double prev = gap(dlo);
    for (int i = 1; i <= n; ++i) {
        double x = dlo + (dhi - dlo) * i / n;
        double g = gap(x);
        scale = std::max(scale, std::fabs(left.jet(x).f));
        if ((prev < 0) != (g < 0) && (prev != 0 || g != 0)) {
            ++changes;
            bracket_lo = dlo + (dhi - dlo) * (i - 1) / n;
            bracket_hi = x;
        }
        prev = g;
    }
    double worst = 0.0;
    for (int i = 0; i <= 64; ++i) worst = std::max(worst, std::fabs(gap(dlo + (dhi - dlo) * i / 64)));
    if (worst <= 1e-14 * std::max(1.0, scale)) {
        // Identical pieces: nothing to smooth.
        return WarpProfile({PieceEntry{dlo, dhi, left, true}});
    }
    if (changes == 0)
        throw SmoothingError(SmoothingError::Kind::NoCrossing, "smooth_concave_min: pieces do not cross");
    if (changes > 1)
        throw SmoothingError(SmoothingError::Kind::MultipleCrossings,
                             "smooth_concave_min: pieces cross more than once");

    RootResult root = find_root(gap, bracket_lo, bracket_hi);
    double rc = root.x;
    Jet jl = left.jet(rc), jr = right.jet(rc);
    if (!(jl.df > jr.df))
        throw SmoothingError(SmoothingError::Kind::SlopeOrder,
                             "smooth_concave_min: slopes must decrease across the crossing");

    double dm = jl.df - jr.df;
    double ystar = std::fabs(jl.f);
    double w = std::min(opts.window_fraction * (rc - dlo), opts.window_fraction * (dhi - rc));
    if (ystar > 0) {
        // Max dip of the blend below min(pieces) is (3/16) w dm; keep it within tolerance.
        double wdip = (16.0 / 3.0) * opts.dip_tolerance * ystar / dm * 0.9;
        w = std::min(w, wdip);
    }
    if (opts.window_override) w = *opts.window_override;
    if (!(w > 0)) throw SmoothingError(SmoothingError::Kind::NoCrossing, "smooth_concave_min: empty window");

    double a = rc - w, b = rc + w;
    std::vector<PieceEntry> entries;
    entries.push_back(PieceEntry{dlo, a, left, true});
    entries.push_back(PieceEntry{a, b, SmoothArc(left, right, a, b), true});
    entries.push_back(PieceEntry{b, dhi, right, true});
    return WarpProfile(std::move(entries));
}

// Convex counterpart: C^2 replacement for max{left,right} at a transversal
// crossing where the slope increases.  Same blend; the arc satisfies
// h'' >= 0 and lies above the max by at most (3/16) w (slope gap).
inline WarpProfile smooth_convex_max(const AnalyticPiece& left, const AnalyticPiece& right,
                                     double dlo, double dhi, const SmoothingOptions& opts = {}) {
    auto gap = [&](double r) { return left.jet(r).f - right.jet(r).f; };
    const int n = 4096;
    int changes = 0;
    double bracket_lo = 0, bracket_hi = 0, prev = gap(dlo);
    for (int i = 1; i <= n; ++i) {
        double x = dlo + (dhi - dlo) * i / n;
        double g = gap(x);
        if ((prev < 0) != (g < 0) && (prev != 0 || g != 0)) {
            ++changes;
            bracket_lo = dlo + (dhi - dlo) * (i - 1) / n;
            bracket_hi = x;
        }
        prev = g;
    }
    if (changes == 0)
        throw SmoothingError(SmoothingError::Kind::NoCrossing, "smooth_convex_max: pieces do not cross");
    if (changes > 1)
        throw SmoothingError(SmoothingError::Kind::MultipleCrossings,
                             "smooth_convex_max: pieces cross more than once");
    RootResult root = find_root(gap, bracket_lo, bracket_hi);
    double rc = root.x;
    Jet jl = left.jet(rc), jr = right.jet(rc);
    if (!(jl.df < jr.df))
        throw SmoothingError(SmoothingError::Kind::SlopeOrder,
                             "smooth_convex_max: slopes must increase across the crossing");
    double w = std::min(opts.window_fraction * (rc - dlo), opts.window_fraction * (dhi - rc));
    double ystar = std::fabs(jl.f);
    if (ystar > 0)
        w = std::min(w, (16.0 / 3.0) * opts.dip_tolerance * ystar / (jr.df - jl.df) * 0.9);
    if (opts.window_override) w = *opts.window_override;
    if (!(w > 0)) throw SmoothingError(SmoothingError::Kind::NoCrossing, "smooth_convex_max: empty window");
    double a = rc - w, b = rc + w;
    std::vector<PieceEntry> entries;
    entries.push_back(PieceEntry{dlo, a, left, true});
    entries.push_back(PieceEntry{a, b, SmoothArc(left, right, a, b), false});  // convex arc
    entries.push_back(PieceEntry{b, dhi, right, true});
    return WarpProfile(std::move(entries));
}

struct FiniteDiffAudit {
    double max_rel_err_d1 = 0.0;
    double max_rel_err_d2 = 0.0;
    double worst_r = 0.0;
};

// Central-difference check of f' and f'' away from seams.  The step is
// 1e-3 relative: large enough that double rounding noise (~eps |f| / h on
// the first difference) stays below 1e-12 for exact lines, small enough
// that the O(h^2) truncation stays below the 1e-6 budget on curved pieces.
inline FiniteDiffAudit finite_diff_audit(const WarpProfile& p, int points_per_piece = 24) {
    FiniteDiffAudit a;
    for (const PieceEntry& e : p.entries()) {
        double span = e.hi - e.lo;
        if (!(span > 0)) continue;
        for (int i = 1; i <= points_per_piece; ++i) {
            double r = e.lo + span * i / (points_per_piece + 1.0);
            // Narrow smoothing arcs pack third derivatives of order
            // (slope gap)/width^2, so the step also scales with the span.
            double h = std::min({1e-3 * std::max(1.0, std::fabs(r)), span / 2000.0,
                                 0.25 * std::min(r - e.lo, e.hi - r)});
            if (!(h > 0)) continue;
            Jet jc = e.jet(r), jp = e.jet(r + h), jm = e.jet(r - h);
            double d1 = (jp.f - jm.f) / (2.0 * h);
            double d2 = (jp.f - 2.0 * jc.f + jm.f) / (h * h);
            double s1 = std::max(1.0, std::fabs(jc.df));
            double s2 = std::max(1.0, std::fabs(jc.ddf));
            double e1 = std::fabs(d1 - jc.df) / s1;
            double e2 = std::fabs(d2 - jc.ddf) / s2;
            if (e1 > a.max_rel_err_d1) {
                a.max_rel_err_d1 = e1;
                a.worst_r = r;
            }
            a.max_rel_err_d2 = std::max(a.max_rel_err_d2, e2);
        }
    }
    return a;
}

}  // namespace snowcone

#endif
