// Level-by-level parameter propagation for the inductive construction.
//
// Row j holds the level parameters (r_j, delta_j, R_j, delta-hat_j,
// eps-hat_j).  The transition j -> j+1 picks eps-hat_j from the gluing
// feasibility at (eps_{j+1}, eps'_{j+1} = 0.99 eps_{j+1}), runs the twist
// chain at (eps_j, eps-hat_j, delta_j, k_{<= j-1}), and propagates
//   r_{j+1} = 1e2 k_{j+1} R_j r_j          (orbit-scale proxy)
//   delta_{j+1} = delta-hat_j R_j r_j / r_{j+1} = delta-hat_j / (1e2 k_{j+1}).
// r_1 = 1 is the normalization anchor.  The proxy stands in for the true
// displacement distance, which is not computable at this level of the model.
#ifndef SNOWCONE_SCHEDULE_HPP
#define SNOWCONE_SCHEDULE_HPP

#include "snowcone/action_extension.hpp"
#include "snowcone/qz.hpp"
#include "snowcone/twist_chain.hpp"

namespace snowcone {

struct ScheduleLevel {
    int j = 0;                      // 0-based row
    long long k_j = 2;              // chain entry
    long long twist_k = 1;          // k_{<= j-1}, the twisting weight
    double eps = 0, eps_prime = 0, eps_hat = 0;
    TowerReal r = TowerReal::from_double(1.0);
    LogVal delta = LogVal::of(1.0);
    TowerReal R = TowerReal::from_double(1.0);          // twist-chain output
    TowerReal delta_hat = TowerReal::from_double(1.0);  // twist-chain output
    TowerReal growth_ratio = TowerReal::from_double(1.0);  // r_{j+1} / (k_j r_j)
    bool has_transition = false;
    bool certified = false;
    bool conditional = false;
};

struct ScheduleResult {
    std::vector<ScheduleLevel> levels;
    bool all_feasible = true;
    bool ratios_increasing = true;  // growth trend of r_{j+1}/(k_j r_j)
};

struct ScheduleInputs {
    std::vector<long long> ks;      // chain entries k_0..k_J
    std::vector<double> epsilons;   // eps_j; extended by halving when short
    double delta1 = 0.01;
    X4Constants x4{};
    CertifyOptions copts{};
};

inline ScheduleResult schedule_induction(const ScheduleInputs& in) {
    if (in.ks.empty()) throw std::invalid_argument("schedule: empty chain");
    for (long long k : in.ks)
        if (k < 2) throw std::invalid_argument("schedule: chain entries must be >= 2");
    if (!(in.delta1 > 0)) throw std::invalid_argument("schedule: delta1 must be positive");

    auto eps_at = [&](size_t j) {
        if (j < in.epsilons.size()) return in.epsilons[j];
        double e = in.epsilons.empty() ? 0.5 : in.epsilons.back();
        for (size_t i = in.epsilons.empty() ? 0 : in.epsilons.size() - 1; i < j; ++i) e *= 0.5;
        return e;
    };

    ScheduleResult out;
    const size_t n = in.ks.size();
    long long cum = 1;
    TowerReal prev_ratio = TowerReal::from_double(1.0);
    ScheduleLevel cur;
    cur.j = 0;
    cur.k_j = in.ks[0];
    cur.twist_k = 1;
    cur.eps = eps_at(0);
    cur.r = TowerReal::from_double(1.0);
    cur.delta = LogVal::of(in.delta1);

    for (size_t j = 0; j < n; ++j) {
        cur.j = static_cast<int>(j);
        cur.k_j = in.ks[j];
        cur.twist_k = cum;
        cur.eps = eps_at(j);
        if (!(cur.eps > 0 && cur.eps < 0.75))
            throw ParameterWindowEmpty("schedule: eps_j must lie in (0, 3/4)");
        if (j + 1 < n) {
            double eps_next = eps_at(j + 1);
            cur.eps_prime = 0.99 * eps_next;
            long long k_next = in.ks[j + 1];
            // Gluing feasibility at the next level fixes eps-hat_j.
            SineCapSolution cap = solve_sine_cap(eps_next, cur.eps_prime, k_next);
            cur.eps_hat = hat_cap_feasible_eps_hat(cap.R, cap.r_hat, 1e-2);
            Step2Inputs s2;
            s2.eps = cur.eps;
            s2.eps_hat = cur.eps_hat;
            s2.delta = cur.delta;
            s2.k = cur.twist_k;
            s2.x4 = in.x4;
            s2.copts = in.copts;
            Step2Result tw = build_step2_chain(s2);
            cur.R = tw.R_prop;
            cur.delta_hat = tw.delta_hat_prop;
            cur.certified = tw.all_certified();
            cur.conditional = tw.conditional();
            cur.has_transition = true;

            ScheduleLevel next;
            next.j = static_cast<int>(j) + 1;
            next.r = TowerReal::from_double(1e2 * static_cast<double>(k_next)) * cur.R * cur.r;
            next.delta =
                LogVal::from_ln(tw.ln_delta_hat_prop - std::log(1e2 * static_cast<double>(k_next)));
            // r_{j+1} / (k_j r_j) = 1e2 k_{j+1} R_j / k_j
            cur.growth_ratio = TowerReal::from_double(1e2 * static_cast<double>(k_next) /
                                                      static_cast<double>(cur.k_j)) *
                               cur.R;
            if (!(cur.growth_ratio > TowerReal::from_double(1.0))) out.all_feasible = false;
            if (j > 0 && !(cur.growth_ratio > prev_ratio)) out.ratios_increasing = false;
            prev_ratio = cur.growth_ratio;
            out.levels.push_back(cur);
            cur = next;
            cum *= in.ks[j];
        } else {
            cur.has_transition = false;
            cur.certified = true;
            out.levels.push_back(cur);
        }
    }
    return out;
}

}  // namespace snowcone

#endif
