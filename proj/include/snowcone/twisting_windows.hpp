// Closed-form admissible windows for the refined twisting family: bounds on
// the fiber scale lambda_t, the circle-fiber length f_t, the perturbation
// size eps_t, and the first-sphere size delta(k), each carrying the
// inequality it satisfies.  The two-region estimate for the perturbed fiber
// length splits at |omega|^2 = 1e-2 c0.
#ifndef SNOWCONE_TWISTING_WINDOWS_HPP
#define SNOWCONE_TWISTING_WINDOWS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "snowcone/stage.hpp"

namespace snowcone {

struct WindowEntry {
    std::string quantity;
    double upper_bound = 0.0;
    std::string inequality;
    bool binding = true;  // false when the tau = 0 case makes it vacuous
};

struct TwistingWindows {
    long long k = 1;
    double M = 0, c0 = 0, tau = 0, a_third = 0;
    std::vector<WindowEntry> entries;
    bool nonempty = true;

    double bound(const std::string& q) const {
        double b = std::numeric_limits<double>::infinity();
        for (const WindowEntry& e : entries)
            if (e.quantity == q && e.binding) b = std::min(b, e.upper_bound);
        return b;
    }
};

// k: action weight; M: uniform bound on the connection data and its first
// derivatives; c0: lower bound for the mean of |omega|^2; tau: requested
// uniform positivity (tau = 0 reproduces the Ric >= 0 case); a_third: the
// volume-normalized scale of the twisting family at its midpoint.
inline TwistingWindows refined_twisting_windows(long long k, double M, double c0, double tau,
                                                double a_third = 0.25) {
    if (!(M > 0) || !(c0 > 0) || !(tau >= 0) || !(a_third > 0))
        throw std::invalid_argument("refined_twisting_windows: positive inputs required");
    if (!(tau < 1))
        throw std::invalid_argument("refined_twisting_windows: tau must be below the fiber Ricci floor");
    TwistingWindows w;
    w.k = k;
    w.M = M;
    w.c0 = c0;
    w.tau = tau;
    w.a_third = a_third;

    // Fiber scale of the sphere bundle: Ric[X,X] = 4 - lambda^2 |Omega[X]|^2 > 1.
    w.entries.push_back({"lambda_t", std::sqrt(3.0) / M,
                         "4 - lambda_t^2 |Omega[X]|^2 > 1 with |Omega[X]| <= M"});

    // Circle-fiber length: in the small-|omega|^2 region the vertical gain
    // eps c0^2 (20 M^2)^{-2} / (2 f) must beat the cross term (3/2) M^2 eps.
    double f1 = c0 * c0 / (1200.0 * M * M * M * M * M * M);
    w.entries.push_back({"f_t", f1,
                         "eps c0^2/(400 M^4 2 f) > (3/2) M^2 eps  (region |omega|^2 < 1e-2 c0)"});
    // Horizontal floor: Ric_h(H,H) - f^2 M^2 / 2 > tau with Ric_h > 1.
    double f2 = std::sqrt(std::max(1e-300, 1.0 - tau)) / M;
    w.entries.push_back({"f_t", f2, "Ric_h(H,H) - f_t^2 M^2/2 > tau with Ric_h > 1"});

    double f = std::min(f1, f2);
    // Perturbation size: |f-tilde - f| stays within f/2.
    w.entries.push_back({"eps_t", f / (2.0 * M), "eps_t < f_t/(2M) keeps f_t/2 < f-tilde < 2 f_t"});
    // Large-|omega|^2 region: f^2 c0/400 - eps/f > f^2 c0/800.
    w.entries.push_back({"eps_t", f * f * f * c0 / 800.0,
                         "f_t^2 c0/400 - eps_t/f_t > f_t^2 c0/800  (region |omega|^2 > 1e-2 c0)"});
    // Horizontal slack share: 4 M eps / f <= (1 - tau)/4.
    w.entries.push_back({"eps_t", (1.0 - tau) * f / (16.0 * M),
                         "4 M eps_t / f_t <= (1 - tau)/4 preserves the horizontal floor"});
    // Positive-definiteness against the cross term in the small region:
    // (eps c0^2/(800 M^4 f)) * tau >= (3/2 M^2 eps)^2.
    {
        bool binding = tau > 0;
        double bound = binding ? tau * c0 * c0 / (1800.0 * M * M * M * M * M * M * M * M * f)
                               : std::numeric_limits<double>::infinity();
        w.entries.push_back({"eps_t", bound,
                             "Ric(T,T) Ric(H,H) >= Ric(T,H)^2 in the small-|omega|^2 region",
                             binding});
    }
    // First-sphere size for the rescaled family.
    w.entries.push_back({"delta", 8.0 * a_third * a_third, "delta <= 8 a_{1/3}^2"});

    for (const WindowEntry& e : w.entries)
        if (e.binding && !(e.upper_bound > 0)) w.nonempty = false;
    return w;
}

}  // namespace snowcone

#endif
