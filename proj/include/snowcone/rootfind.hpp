// Bracketed scalar root finding: bisection refined by secant steps that are
// rejected whenever they leave the bracket, so convergence never depends on
// the refinement behaving.
#ifndef SNOWCONE_ROOTFIND_HPP
#define SNOWCONE_ROOTFIND_HPP

#include <cmath>
#include <functional>
#include <stdexcept>

namespace snowcone {

struct RootResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

inline RootResult find_root(const std::function<double(double)>& f, double a, double b,
                            double xtol = 1e-14, int max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return {a, 0.0, 0, true};
    if (fb == 0.0) return {b, 0.0, 0, true};
    if ((fa > 0) == (fb > 0)) throw std::invalid_argument("find_root: endpoints do not bracket");
    RootResult r;
    for (int i = 0; i < max_iter; ++i) {
        double m;
        // Secant candidate; fall back to the midpoint when it is useless.
        double denom = fb - fa;
        if (denom != 0.0) {
            m = b - fb * (b - a) / denom;
            if (!(m > std::min(a, b) && m < std::max(a, b))) m = 0.5 * (a + b);
        } else {
            m = 0.5 * (a + b);
        }
        if (i % 2 == 1) m = 0.5 * (a + b);  // guarantee bracket shrinkage
        double fm = f(m);
        r.iterations = i + 1;
        if (fm == 0.0 || std::fabs(b - a) <= xtol * (1.0 + std::fabs(m))) {
            r.x = m;
            r.fx = fm;
            r.converged = true;
            return r;
        }
        if ((fm > 0) == (fa > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    r.x = 0.5 * (a + b);
    r.fx = f(r.x);
    r.converged = std::fabs(b - a) <= 1e-9 * (1.0 + std::fabs(r.x));
    return r;
}

}  // namespace snowcone

#endif
