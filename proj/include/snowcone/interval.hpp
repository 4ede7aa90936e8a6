// Outward-rounded interval arithmetic for one-variable certification.
//
// Portable soundness model: operations are computed in round-to-nearest and
// inflated outward by a fixed ulp budget, except that results detected as
// exact (additive cancellation test, fma residual for products/quotients)
// are kept as-is.  Exactness detection matters: the constructions contain
// regions where a certified quantity is identically zero (unit-slope cones),
// and blanket inflation would turn margin-0 certificates into false
// negatives there.  Transcendental calls are always inflated; the budget
// dominates glibc's documented error bounds.
#ifndef SNOWCONE_INTERVAL_HPP
#define SNOWCONE_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace snowcone {

namespace detail {
constexpr int kUlps = 4;

inline double step_down(double x) {
    for (int i = 0; i < kUlps; ++i) x = std::nextafter(x, -std::numeric_limits<double>::infinity());
    return x;
}
inline double step_up(double x) {
    for (int i = 0; i < kUlps; ++i) x = std::nextafter(x, std::numeric_limits<double>::infinity());
    return x;
}

inline bool add_exact(double a, double b, double s) {
    return std::isfinite(s) && (s - a == b) && (s - b == a);
}
inline double add_down(double a, double b) {
    double s = a + b;
    return add_exact(a, b, s) ? s : step_down(s);
}
inline double add_up(double a, double b) {
    double s = a + b;
    return add_exact(a, b, s) ? s : step_up(s);
}

inline bool mul_exact(double a, double b, double p) {
    return std::isfinite(p) && std::fma(a, b, -p) == 0.0;
}
inline double mul_down(double a, double b) {
    double p = a * b;
    return mul_exact(a, b, p) ? p : step_down(p);
}
inline double mul_up(double a, double b) {
    double p = a * b;
    return mul_exact(a, b, p) ? p : step_up(p);
}

inline bool div_exact(double a, double b, double q) {
    return std::isfinite(q) && std::isfinite(a) && std::fma(q, b, -a) == 0.0;
}
inline double div_down(double a, double b) {
    double q = a / b;
    return div_exact(a, b, q) ? q : step_down(q);
}
inline double div_up(double a, double b) {
    double q = a / b;
    return div_exact(a, b, q) ? q : step_up(q);
}
}  // namespace detail

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    explicit Interval(double v) : lo(v), hi(v) {}
    Interval(double l, double h) : lo(l), hi(h) {
        if (std::isnan(l) || std::isnan(h) || l > h)
            throw std::invalid_argument("Interval: bad endpoints");
    }

    static Interval hull(const Interval& a, const Interval& b) {
        return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
    }
    static Interval entire() {
        return Interval(-std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity());
    }

    double mid() const {
        double m = 0.5 * (lo + hi);
        if (!std::isfinite(m)) m = std::isfinite(lo) ? lo : hi;
        return m;
    }
    double width() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }

    Interval inflated() const { return Interval(detail::step_down(lo), detail::step_up(hi)); }
};

inline Interval operator-(const Interval& a) { return Interval(-a.hi, -a.lo); }

inline Interval operator+(const Interval& a, const Interval& b) {
    return Interval(detail::add_down(a.lo, b.lo), detail::add_up(a.hi, b.hi));
}
inline Interval operator-(const Interval& a, const Interval& b) {
    return Interval(detail::add_down(a.lo, -b.hi), detail::add_up(a.hi, -b.lo));
}
inline Interval operator*(const Interval& a, const Interval& b) {
    double lo = std::min(std::min(detail::mul_down(a.lo, b.lo), detail::mul_down(a.lo, b.hi)),
                         std::min(detail::mul_down(a.hi, b.lo), detail::mul_down(a.hi, b.hi)));
    double hi = std::max(std::max(detail::mul_up(a.lo, b.lo), detail::mul_up(a.lo, b.hi)),
                         std::max(detail::mul_up(a.hi, b.lo), detail::mul_up(a.hi, b.hi)));
    if (std::isnan(lo) || std::isnan(hi)) {  // 0 * inf at an endpoint
        auto fix = [](double v, double alt) { return std::isnan(v) ? alt : v; };
        lo = fix(lo, -std::numeric_limits<double>::infinity());
        hi = fix(hi, std::numeric_limits<double>::infinity());
    }
    return Interval(lo, hi);
}
inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo <= 0.0 && b.hi >= 0.0)
        throw std::domain_error("Interval: division by interval containing zero");
    double lo = std::min(std::min(detail::div_down(a.lo, b.lo), detail::div_down(a.lo, b.hi)),
                         std::min(detail::div_down(a.hi, b.lo), detail::div_down(a.hi, b.hi)));
    double hi = std::max(std::max(detail::div_up(a.lo, b.lo), detail::div_up(a.lo, b.hi)),
                         std::max(detail::div_up(a.hi, b.lo), detail::div_up(a.hi, b.hi)));
    return Interval(lo, hi);
}

inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

inline Interval sq(const Interval& a) {
    double l = std::min(std::fabs(a.lo), std::fabs(a.hi));
    double h = std::max(std::fabs(a.lo), std::fabs(a.hi));
    if (a.lo <= 0.0 && a.hi >= 0.0) l = 0.0;
    return Interval(detail::mul_down(l, l), detail::mul_up(h, h));
}

inline Interval abs(const Interval& a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return -a;
    return Interval(0.0, std::max(-a.lo, a.hi));
}

inline Interval sqrt(const Interval& a) {
    if (a.lo < 0) throw std::domain_error("Interval: sqrt of negative");
    return Interval(detail::step_down(std::sqrt(a.lo)), detail::step_up(std::sqrt(a.hi)));
}

// exp with saturation: endpoints clamp soundly to 0 / DBL_MAX / +inf.
inline Interval exp(const Interval& a) {
    double lo = a.lo < -745.0 ? 0.0 : detail::step_down(std::exp(a.lo));
    double hi = a.hi > 709.0 ? std::numeric_limits<double>::infinity()
                             : detail::step_up(std::exp(a.hi));
    if (lo < 0) lo = 0;
    if (!std::isfinite(lo)) lo = std::numeric_limits<double>::max();
    return Interval(lo, hi);
}

inline Interval log(const Interval& a) {
    if (a.lo <= 0) throw std::domain_error("Interval: log of non-positive");
    return Interval(detail::step_down(std::log(a.lo)), detail::step_up(std::log(a.hi)));
}

// x^p for x > 0, real exponent; monotone in x for either sign of p.
inline Interval pow(const Interval& a, double p) {
    if (a.lo <= 0) throw std::domain_error("Interval: pow needs positive base");
    double v1 = std::pow(a.lo, p), v2 = std::pow(a.hi, p);
    return Interval(detail::step_down(std::min(v1, v2)), detail::step_up(std::max(v1, v2)));
}

namespace detail {
// Does [lo,hi] contain a point equal to `target` mod 2*pi?
inline bool contains_mod_2pi(double lo, double hi, double target) {
    constexpr double twopi = 6.283185307179586476925286766559;
    if (hi - lo >= twopi) return true;
    double k = std::floor((lo - target) / twopi);
    double cand = target + (k + 1.0) * twopi;
    for (double c : {cand - twopi, cand, cand + twopi})
        if (c >= lo - 1e-9 && c <= hi + 1e-9) return true;
    return false;
}
}  // namespace detail

inline Interval sin(const Interval& a) {
    constexpr double half_pi = 1.5707963267948966;
    double lo, hi;
    if (detail::contains_mod_2pi(a.lo, a.hi, half_pi))
        hi = 1.0;
    else
        hi = detail::step_up(std::max(std::sin(a.lo), std::sin(a.hi)));
    if (detail::contains_mod_2pi(a.lo, a.hi, 3.0 * half_pi))
        lo = -1.0;
    else
        lo = detail::step_down(std::min(std::sin(a.lo), std::sin(a.hi)));
    return Interval(std::max(lo, -1.0), std::min(hi, 1.0));
}

inline Interval cos(const Interval& a) {
    constexpr double pi = 3.141592653589793;
    double lo, hi;
    if (detail::contains_mod_2pi(a.lo, a.hi, 0.0))
        hi = 1.0;
    else
        hi = detail::step_up(std::max(std::cos(a.lo), std::cos(a.hi)));
    if (detail::contains_mod_2pi(a.lo, a.hi, pi))
        lo = -1.0;
    else
        lo = detail::step_down(std::min(std::cos(a.lo), std::cos(a.hi)));
    return Interval(std::max(lo, -1.0), std::min(hi, 1.0));
}

inline Interval imin(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo, b.lo), std::min(a.hi, b.hi));
}
inline Interval imax(const Interval& a, const Interval& b) {
    return Interval(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
}

inline std::ostream& operator<<(std::ostream& os, const Interval& iv) {
    return os << "[" << iv.lo << ", " << iv.hi << "]";
}

}  // namespace snowcone

#endif
