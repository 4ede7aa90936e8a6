// Unit quaternions as S^3 = SU(2), with the complex-pair view
// q = u1 + u2 j, u1 = w + x i, u2 = y + z i, used by the Hopf actions.
// Left multiplication by the unit complex e^{i theta} is the left Hopf
// rotation; it multiplies both complex components by e^{i theta}.
#ifndef SNOWCONE_QUATERNION_HPP
#define SNOWCONE_QUATERNION_HPP

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "snowcone/qz.hpp"

namespace snowcone {

struct Quat {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    static Quat identity() { return Quat{}; }

    static Quat from_complex_pair(std::complex<double> u1, std::complex<double> u2) {
        return Quat{u1.real(), u1.imag(), u2.real(), u2.imag()};
    }
    std::complex<double> u1() const { return {w, x}; }
    std::complex<double> u2() const { return {y, z}; }

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

    Quat normalized() const {
        double n = norm();
        if (!(n > 0)) throw std::domain_error("Quat: zero norm");
        return Quat{w / n, x / n, y / n, z / n};
    }

    Quat conj() const { return Quat{w, -x, -y, -z}; }
    Quat inverse() const { return conj(); }  // unit quaternions

    friend Quat operator*(const Quat& a, const Quat& b) {
        return Quat{a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                    a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                    a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                    a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }

    // Complex-pair product, the independent route for cross-checks:
    // (u1 + u2 j)(v1 + v2 j) = (u1 v1 - u2 conj(v2)) + (u1 v2 + u2 conj(v1)) j.
    static Quat mul_complex_pair(const Quat& a, const Quat& b) {
        std::complex<double> r1 = a.u1() * b.u1() - a.u2() * std::conj(b.u2());
        std::complex<double> r2 = a.u1() * b.u2() + a.u2() * std::conj(b.u1());
        return from_complex_pair(r1, r2);
    }

    double dist(const Quat& o) const {
        double dw = w - o.w, dx = x - o.x, dy = y - o.y, dz = z - o.z;
        return std::sqrt(dw * dw + dx * dx + dy * dy + dz * dz);
    }
};

// Angles kept as exact fractions of a full turn where they come from Q/Z
// elements; converted to radians only at evaluation.
struct TurnAngle {
    QZ turns;  // angle = 2*pi*turns

    static TurnAngle from_qz(const QZ& q) { return TurnAngle{q}; }
    double radians() const { return 2.0 * M_PI * turns.to_double(); }
    TurnAngle times(const BigInt& m) const { return TurnAngle{turns.pow(m)}; }
    bool is_zero() const { return turns.is_identity(); }
};

// Left Hopf rotation by angle theta: left multiplication by e^{i theta}.
// Zero angle is the identity exactly.
inline Quat hopf_act(double theta, const Quat& p) {
    if (theta == 0.0) return p;
    Quat rot{std::cos(theta), std::sin(theta), 0.0, 0.0};
    return (rot * p).normalized();
}

struct S3Pair {
    Quat first;
    Quat second;

    S3Pair normalized() const { return S3Pair{first.normalized(), second.normalized()}; }
    double dist(const S3Pair& o) const {
        double d1 = first.dist(o.first), d2 = second.dist(o.second);
        return std::sqrt(d1 * d1 + d2 * d2);
    }
};

struct ActionWeights {
    long long a = 1;
    long long b = 0;
};

// (a,b)-Hopf rotational action: theta . (g1,g2) = (a theta . g1, b theta . g2).
inline S3Pair act_ab(double theta, const S3Pair& p, const ActionWeights& w) {
    return S3Pair{hopf_act(static_cast<double>(w.a) * theta, p.first),
                  hopf_act(static_cast<double>(w.b) * theta, p.second)};
}

// Exact-angle variant: per-factor angles are reduced mod 1 turn before the
// trig call, so full turns act as the identity exactly.
inline S3Pair act_ab(const TurnAngle& t, const S3Pair& p, const ActionWeights& w) {
    QZ fa = t.turns.pow(BigInt(w.a));
    QZ fb = t.turns.pow(BigInt(w.b));
    S3Pair out = p;
    if (!fa.is_identity()) out.first = hopf_act(2.0 * M_PI * fa.to_double(), out.first);
    if (!fb.is_identity()) out.second = hopf_act(2.0 * M_PI * fb.to_double(), out.second);
    return out;
}

inline Quat random_unit_quat(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Quat q{g(rng), g(rng), g(rng), g(rng)};
    return q.normalized();
}

inline S3Pair random_s3_pair(std::mt19937_64& rng) {
    return S3Pair{random_unit_quat(rng), random_unit_quat(rng)};
}

}  // namespace snowcone

#endif
