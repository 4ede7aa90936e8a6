// Extended-range positive scalar stored as an iterated exponential,
//   value = exp^level(m),
// for construction constants that overflow double (the twist-chain radii
// reach exp(exp(exp(~3e4))) at default inputs).  Level 0 holds any finite
// double (signed); levels >= 1 are positive by construction.  Arithmetic
// keeps the smallest level that can represent the value; once a value
// lives at level >= 2, factors whose logarithm is below the resolution of
// the stored mantissa are absorbed (this is exact at double precision).
#ifndef SNOWCONE_TOWER_HPP
#define SNOWCONE_TOWER_HPP

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace snowcone {

class TowerReal {
public:
    TowerReal() : level_(0), m_(0.0) {}

    static TowerReal from_double(double v) {
        if (!std::isfinite(v)) throw std::invalid_argument("TowerReal: non-finite seed");
        TowerReal t;
        t.level_ = 0;
        t.m_ = v;
        return t;
    }

    // value = exp(x), x any finite double (covers e^{+-1e308}).
    static TowerReal from_ln(double x) {
        if (!std::isfinite(x)) throw std::invalid_argument("TowerReal: non-finite log seed");
        TowerReal t;
        t.level_ = 1;
        t.m_ = x;
        t.normalize();
        return t;
    }

    static TowerReal exp_tower(const TowerReal& x) {
        // exp of a tower value.  Level-0: lift to level 1.  Level >= 1: bump the level.
        if (x.level_ == 0) return from_ln(x.m_);
        if (x.m_ <= 0) {
            // x = exp^L(m) with m <= 0 is a modest number; demotion below makes
            // this unreachable for canonical inputs, but handle it anyway.
            return from_ln(x.to_double());
        }
        TowerReal t;
        t.level_ = x.level_ + 1;
        t.m_ = x.m_;
        t.normalize();
        return t;
    }

    int level() const { return level_; }
    double mantissa() const { return m_; }

    bool positive() const { return level_ > 0 || m_ > 0; }
    bool finite() const { return true; }  // every tower value is a finite real
    bool is_zero() const { return level_ == 0 && m_ == 0.0; }

    // Natural log as a tower.  Requires a positive value.
    TowerReal ln() const {
        if (!positive()) throw std::domain_error("TowerReal::ln of non-positive value");
        if (level_ == 0) return from_double(std::log(m_));
        TowerReal t;
        t.level_ = level_ - 1;
        t.m_ = m_;
        t.normalize();
        return t;
    }

    // ln saturated into a double (+-inf if the log itself overflows).
    double ln_double() const {
        TowerReal l = ln();
        return l.to_double();
    }

    double to_double() const {
        if (level_ == 0) return m_;
        if (level_ == 1) return m_ > 709.0 ? std::numeric_limits<double>::infinity() : std::exp(m_);
        return m_ > 0 ? std::numeric_limits<double>::infinity() : std::exp(std::exp(m_));
    }

    friend TowerReal operator*(const TowerReal& a, const TowerReal& b) {
        if (a.is_zero() || b.is_zero()) return TowerReal();
        if (a.level_ == 0 && b.level_ == 0) {
            double p = a.m_ * b.m_;
            if (std::isfinite(p) && std::fabs(p) < kPromote) return from_double(p);
        }
        if (!a.positive() || !b.positive())
            throw std::domain_error("TowerReal: negative multiply beyond level 0");
        return exp_tower(add(a.ln(), b.ln()));
    }

    friend TowerReal operator/(const TowerReal& a, const TowerReal& b) {
        if (!b.positive()) throw std::domain_error("TowerReal: divide by non-positive");
        if (a.is_zero()) return TowerReal();
        if (a.level_ == 0 && b.level_ == 0) {
            double q = a.m_ / b.m_;
            if (std::isfinite(q) && std::fabs(q) < kPromote && q != 0.0) return from_double(q);
        }
        if (!a.positive()) throw std::domain_error("TowerReal: negative divide beyond level 0");
        return exp_tower(sub(a.ln(), b.ln()));
    }

    friend TowerReal operator+(const TowerReal& a, const TowerReal& b) { return add(a, b); }

    TowerReal pow(double p) const {
        if (!positive()) throw std::domain_error("TowerReal::pow of non-positive");
        return exp_tower(scale(ln(), p));
    }

    // -1 / 0 / +1 three-way comparison.
    friend int cmp(const TowerReal& a, const TowerReal& b) {
        bool ap = a.positive(), bp = b.positive();
        if (!ap && !bp) return a.m_ < b.m_ ? -1 : (a.m_ > b.m_ ? 1 : 0);  // both level-0 and <= 0
        if (!ap) return -1;
        if (!bp) return 1;
        if (a.level_ == b.level_) return a.m_ < b.m_ ? -1 : (a.m_ > b.m_ ? 1 : 0);
        // exp^L is increasing, so compare logs of the higher-level side.
        if (a.level_ > b.level_) return cmp(a.ln(), b.ln());
        return -cmp(b.ln(), a.ln());
    }
    friend bool operator<(const TowerReal& a, const TowerReal& b) { return cmp(a, b) < 0; }
    friend bool operator>(const TowerReal& a, const TowerReal& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const TowerReal& a, const TowerReal& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const TowerReal& a, const TowerReal& b) { return cmp(a, b) >= 0; }

    std::string str() const {
        char buf[64];
        if (level_ == 0) {
            std::snprintf(buf, sizeof(buf), "%.9g", m_);
            return buf;
        }
        double v = to_double();
        if (std::isfinite(v) && v >= 1e-300) {
            std::snprintf(buf, sizeof(buf), "%.9g", v);
            return buf;
        }
        std::string s;
        std::snprintf(buf, sizeof(buf), "%.9g", m_);
        s = buf;
        for (int i = 0; i < level_; ++i) s = "exp(" + s + ")";
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const TowerReal& t) { return os << t.str(); }

private:
    static constexpr double kPromote = 1e300;   // level-0 / mantissa ceiling
    static constexpr double kDemote = 690.0;    // exp(m) stays below kPromote

    int level_;
    double m_;

    void normalize() {
        while (level_ >= 1 && m_ > kPromote) {
            m_ = std::log(m_);
            ++level_;
        }
        while (level_ >= 1 && m_ <= kDemote) {
            double v = std::exp(m_);
            if (level_ == 1) {
                if (v == 0.0 || v >= kPromote) break;  // keep tiny/huge values at level 1
                m_ = v;
                level_ = 0;
            } else {
                m_ = v;
                --level_;
            }
        }
    }

    static TowerReal scale(const TowerReal& x, double p) {
        // x * p for a scalar p > 0 (x may be any tower); used for pow via logs.
        if (p <= 0) {
            if (p == 0) return TowerReal();
            if (x.level_ == 0) return from_double(x.m_ * p);
            throw std::domain_error("TowerReal: negative scale of leveled value");
        }
        if (x.level_ == 0) {
            double v = x.m_ * p;
            if (std::isfinite(v) && std::fabs(v) < kPromote) return from_double(v);
        }
        if (!x.positive()) throw std::domain_error("TowerReal: scale of negative leveled value");
        return exp_tower(add(x.ln(), from_double(std::log(p))));
    }

    static TowerReal add(const TowerReal& a, const TowerReal& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.level_ == 0 && b.level_ == 0) {
            double s = a.m_ + b.m_;
            if (std::isfinite(s) && std::fabs(s) < kPromote) return from_double(s);
        }
        // Signed adds beyond level 0 only arise with one modest level-0 term.
        const TowerReal& big = (cmp_abs(a, b) >= 0) ? a : b;
        const TowerReal& sml = (cmp_abs(a, b) >= 0) ? b : a;
        if (!big.positive() || !sml.positive()) {
            if (sml.level_ == 0 && sml.m_ <= 0) return sub(big, from_double(-sml.m_));
            throw std::domain_error("TowerReal: unsupported signed add");
        }
        double r = ratio(sml, big);
        return exp_tower(add(big.ln(), from_double(std::log1p(r))));
    }

    static TowerReal sub(const TowerReal& a, const TowerReal& b) {
        // a - b; both positive here unless both level 0.
        if (b.is_zero()) return a;
        if (a.level_ == 0 && b.level_ == 0) {
            double s = a.m_ - b.m_;
            if (std::isfinite(s) && std::fabs(s) < kPromote) return from_double(s);
        }
        int c = cmp(a, b);
        if (c == 0) return TowerReal();
        if (c < 0) {
            TowerReal n = sub(b, a);
            if (n.level_ != 0) throw std::domain_error("TowerReal: negative result beyond level 0");
            return from_double(-n.m_);
        }
        double r = ratio(b, a);
        if (r >= 1.0) return TowerReal();  // equal at double resolution
        return exp_tower(add(a.ln(), from_double(std::log1p(-r))));
    }

    static int cmp_abs(const TowerReal& a, const TowerReal& b) {
        TowerReal aa = a, bb = b;
        if (aa.level_ == 0) aa.m_ = std::fabs(aa.m_);
        if (bb.level_ == 0) bb.m_ = std::fabs(bb.m_);
        return cmp(aa, bb);
    }

    // sml/big in [0,1] as a double, 0 when below resolution.
    static double ratio(const TowerReal& sml, const TowerReal& big) {
        TowerReal d = sub_ln(sml, big);
        if (d.level_ == 0) return d.m_ <= -745.0 ? 0.0 : std::exp(d.m_);
        return 0.0;  // leveled negative gap: ratio underflows
    }

    // ln(sml) - ln(big), saturated to level 0 when huge-negative.
    static TowerReal sub_ln(const TowerReal& sml, const TowerReal& big) {
        TowerReal ls = sml.ln(), lb = big.ln();
        if (ls.level_ == 0 && lb.level_ == 0) {
            double d = ls.m_ - lb.m_;
            return from_double(std::isfinite(d) ? d : -kPromote);
        }
        // One of the logs is itself leveled; the gap is beyond resolution.
        return from_double(-kPromote);
    }
};

}  // namespace snowcone

#endif
