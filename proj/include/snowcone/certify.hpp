// Rigorous one-variable inequality certification by adaptive bisection over
// interval enclosures, with a plain-grid soundness audit.
//
// certify_nonneg(F, f, D, opts) proves F >= margin on D when every leaf
// subinterval's enclosure clears the margin; a reported counterexample is
// always re-verified by direct point evaluation before it is returned.
// Depth exhaustion yields "inconclusive", never a silent pass.
#ifndef SNOWCONE_CERTIFY_HPP
#define SNOWCONE_CERTIFY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "snowcone/interval.hpp"

namespace snowcone {

struct CertifyOptions {
    double margin = 0.0;
    int max_depth = 40;
    std::uint64_t max_nodes = 4'000'000;
};

struct Counterexample {
    double r = 0.0;
    double value = 0.0;
};

struct CertificationResult {
    enum class Status { Certified, CounterexampleFound, Inconclusive };
    Status status = Status::Inconclusive;
    std::optional<Counterexample> witness;
    Interval worst_box{0.0};   // deepest unresolved box (inconclusive) or witness box
    std::uint64_t nodes = 0;
    int max_depth_reached = 0;

    bool certified() const { return status == Status::Certified; }
    std::string status_str() const {
        switch (status) {
            case Status::Certified: return "certified";
            case Status::CounterexampleFound: return "counterexample";
            default: return "inconclusive";
        }
    }
};

using IntervalField = std::function<Interval(const Interval&)>;
using PointField = std::function<double(double)>;

namespace detail {
inline bool certify_rec(const IntervalField& F, const PointField& f, Interval I,
                        const CertifyOptions& o, int depth, CertificationResult& res) {
    ++res.nodes;
    if (depth > res.max_depth_reached) res.max_depth_reached = depth;
    if (res.nodes > o.max_nodes) {
        res.status = CertificationResult::Status::Inconclusive;
        res.worst_box = I;
        return false;
    }
    Interval v;
    try {
        v = F(I);
    } catch (const std::exception&) {
        // Enclosure failure (seam / domain guard): treat as unresolved and split.
        v = Interval::entire();
    }
    if (v.lo >= o.margin) return true;
    if (f && v.hi < o.margin) {
        double m = I.mid();
        double pv = f(m);
        if (pv < o.margin) {
            res.status = CertificationResult::Status::CounterexampleFound;
            res.witness = Counterexample{m, pv};
            res.worst_box = I;
            return false;
        }
        // Loose enclosure; fall through and split.
    }
    if (depth >= o.max_depth || !(I.width() > 0)) {
        if (f) {
            double pv = f(I.mid());
            if (pv < o.margin) {
                res.status = CertificationResult::Status::CounterexampleFound;
                res.witness = Counterexample{I.mid(), pv};
                res.worst_box = I;
                return false;
            }
        }
        res.status = CertificationResult::Status::Inconclusive;
        res.worst_box = I;
        return false;
    }
    double m = I.mid();
    if (!certify_rec(F, f, Interval(I.lo, m), o, depth + 1, res)) return false;
    return certify_rec(F, f, Interval(m, I.hi), o, depth + 1, res);
}
}  // namespace detail

inline CertificationResult certify_nonneg(const IntervalField& F, const PointField& f,
                                          const Interval& domain, const CertifyOptions& opts = {}) {
    CertificationResult res;
    if (detail::certify_rec(F, f, domain, opts, 0, res))
        res.status = CertificationResult::Status::Certified;
    return res;
}

struct SoundnessAudit {
    double min_value = 0.0;
    double argmin = 0.0;
    std::uint64_t samples = 0;
    bool passed(double margin, double slack = 1e-12) const { return min_value >= margin - slack; }
};

// Random point audit of a certified field: log-uniform over positive
// domains, uniform otherwise; deterministic under the given seed.
inline SoundnessAudit soundness_audit(const PointField& f, const Interval& domain,
                                      std::uint64_t n_samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SoundnessAudit a;
    a.samples = n_samples;
    bool log_scale = domain.lo > 0 && domain.hi / domain.lo > 1e3;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    bool first = true;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        double u = uni(rng);
        double r = log_scale ? domain.lo * std::exp(u * std::log(domain.hi / domain.lo))
                             : domain.lo + u * (domain.hi - domain.lo);
        double v = f(r);
        if (first || v < a.min_value) {
            a.min_value = v;
            a.argmin = r;
            first = false;
        }
    }
    return a;
}

}  // namespace snowcone

#endif
