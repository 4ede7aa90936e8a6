// Explicit diffeomorphisms of S^3 x S^3.
//
// phi_k untwists the (1,k)-action into the (1,0)-action:
//   phi_k(u, z) = (u, q_k(u) . z),
//   q_k(u) = (conj(u1)^k, -u2^k) / sqrt(|u1|^{2k} + |u2|^{2k}),
// where the prefactor pair is a unit quaternion acting by left
// multiplication (its expanded coordinates are
// (conj(u1)^k z1 + u2^k conj(z2), -u2^k conj(z1) + conj(u1)^k z2)).
// Left multiplication makes phi_k equivariant for the right S^3 action on
// the second factor, and q_k(e^{i theta} u) = q_k(u) e^{-i k theta} gives
// the untwisting identity phi_k(theta .(1,k) p) = theta .(1,0) phi_k(p).
// For k = 1 the prefactor is u^{-1}, the Lie-group form (u, u^{-1} z).
//
// Mapping-class generator words use the letters
//   p1 (g1, g1 g2)   p2 (g1 g2^-1, g2)   p3 (g1, g2 g1^-1)   p4 (g2 g1, g2)
//   K1 (g2 g1 g2^-1, g2)   K2 (g1, g1 g2 g1^-1)
//   f<k>: the phi_k above.
// Grammar: letters joined by '.', with an optional '^-1' per letter.
#ifndef SNOWCONE_HOPF_MAPS_HPP
#define SNOWCONE_HOPF_MAPS_HPP

#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "snowcone/quaternion.hpp"

namespace snowcone {

inline S3Pair phi_1(const S3Pair& p) {
    return S3Pair{p.first, (p.first.inverse() * p.second).normalized()};
}

namespace detail {
inline Quat phi_k_prefactor(const Quat& u, int k) {
    std::complex<double> a = std::pow(std::conj(u.u1()), k);
    std::complex<double> b = -std::pow(u.u2(), k);
    double n = std::sqrt(std::norm(a) + std::norm(b));
    return Quat::from_complex_pair(a / n, b / n);
}
}  // namespace detail

inline S3Pair phi_k(int k, const S3Pair& p) {
    if (k < 1) throw std::invalid_argument("phi_k: k must be >= 1");
    Quat q = detail::phi_k_prefactor(p.first, k);
    return S3Pair{p.first, (q * p.second).normalized()};
}

inline S3Pair phi_k_inverse(int k, const S3Pair& p) {
    Quat q = detail::phi_k_prefactor(p.first, k);
    return S3Pair{p.first, (q.conj() * p.second).normalized()};
}

// pi_0 Diff(S^3 x S^3) generator letters and the kernel generators.
inline S3Pair gen_p1(const S3Pair& p) { return {p.first, (p.first * p.second).normalized()}; }
inline S3Pair gen_p1_inv(const S3Pair& p) { return {p.first, (p.first.inverse() * p.second).normalized()}; }
inline S3Pair gen_p2(const S3Pair& p) { return {(p.first * p.second.inverse()).normalized(), p.second}; }
inline S3Pair gen_p2_inv(const S3Pair& p) { return {(p.first * p.second).normalized(), p.second}; }
inline S3Pair gen_p3(const S3Pair& p) { return {p.first, (p.second * p.first.inverse()).normalized()}; }
inline S3Pair gen_p3_inv(const S3Pair& p) { return {p.first, (p.second * p.first).normalized()}; }
inline S3Pair gen_p4(const S3Pair& p) { return {(p.second * p.first).normalized(), p.second}; }
inline S3Pair gen_p4_inv(const S3Pair& p) { return {(p.second.inverse() * p.first).normalized(), p.second}; }
inline S3Pair gen_k1(const S3Pair& p) {
    return {(p.second * p.first * p.second.inverse()).normalized(), p.second};
}
inline S3Pair gen_k1_inv(const S3Pair& p) {
    return {(p.second.inverse() * p.first * p.second).normalized(), p.second};
}
inline S3Pair gen_k2(const S3Pair& p) {
    return {p.first, (p.first * p.second * p.first.inverse()).normalized()};
}
inline S3Pair gen_k2_inv(const S3Pair& p) {
    return {p.first, (p.first.inverse() * p.second * p.first).normalized()};
}

struct DiffeoLetter {
    enum class Name { P1, P2, P3, P4, K1, K2, Fk };
    Name name = Name::P1;
    int k = 1;             // parameter for Fk
    bool inverse = false;

    S3Pair apply(const S3Pair& p) const {
        switch (name) {
            case Name::P1: return inverse ? gen_p1_inv(p) : gen_p1(p);
            case Name::P2: return inverse ? gen_p2_inv(p) : gen_p2(p);
            case Name::P3: return inverse ? gen_p3_inv(p) : gen_p3(p);
            case Name::P4: return inverse ? gen_p4_inv(p) : gen_p4(p);
            case Name::K1: return inverse ? gen_k1_inv(p) : gen_k1(p);
            case Name::K2: return inverse ? gen_k2_inv(p) : gen_k2(p);
            case Name::Fk: return inverse ? phi_k_inverse(k, p) : phi_k(k, p);
        }
        return p;
    }
    std::string str() const {
        std::string s;
        switch (name) {
            case Name::P1: s = "p1"; break;
            case Name::P2: s = "p2"; break;
            case Name::P3: s = "p3"; break;
            case Name::P4: s = "p4"; break;
            case Name::K1: s = "K1"; break;
            case Name::K2: s = "K2"; break;
            case Name::Fk: s = "f" + std::to_string(k); break;
        }
        if (inverse) s += "^-1";
        return s;
    }
};

class DiffeoWord {
public:
    DiffeoWord() = default;
    explicit DiffeoWord(std::vector<DiffeoLetter> letters) : letters_(std::move(letters)) {}

    // Grammar: dot-separated letters, each optionally followed by ^-1,
    // e.g. "p1.p3.K1^-1.f3".
    static DiffeoWord parse(const std::string& text) {
        std::vector<DiffeoLetter> out;
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, '.')) {
            if (tok.empty()) throw std::invalid_argument("DiffeoWord: empty letter");
            DiffeoLetter l;
            std::string base = tok;
            if (base.size() >= 3 && base.substr(base.size() - 3) == "^-1") {
                l.inverse = true;
                base = base.substr(0, base.size() - 3);
            }
            if (base == "p1") l.name = DiffeoLetter::Name::P1;
            else if (base == "p2") l.name = DiffeoLetter::Name::P2;
            else if (base == "p3") l.name = DiffeoLetter::Name::P3;
            else if (base == "p4") l.name = DiffeoLetter::Name::P4;
            else if (base == "K1") l.name = DiffeoLetter::Name::K1;
            else if (base == "K2") l.name = DiffeoLetter::Name::K2;
            else if (base.size() >= 2 && base[0] == 'f') {
                l.name = DiffeoLetter::Name::Fk;
                try {
                    l.k = std::stoi(base.substr(1));
                } catch (...) {
                    throw std::invalid_argument("DiffeoWord: bad f<k> letter: " + tok);
                }
                if (l.k < 1) throw std::invalid_argument("DiffeoWord: f<k> needs k >= 1");
            } else {
                throw std::invalid_argument("DiffeoWord: unknown letter: " + tok);
            }
            out.push_back(l);
        }
        if (out.empty()) throw std::invalid_argument("DiffeoWord: empty word");
        return DiffeoWord(std::move(out));
    }

    const std::vector<DiffeoLetter>& letters() const { return letters_; }
    size_t size() const { return letters_.size(); }

    // Letters apply left-to-right: word "a.b" maps p to b(a(p)).
    S3Pair apply(const S3Pair& p) const {
        S3Pair q = p;
        for (const DiffeoLetter& l : letters_) q = l.apply(q);
        return q;
    }

    DiffeoWord inverse() const {
        std::vector<DiffeoLetter> rev(letters_.rbegin(), letters_.rend());
        for (DiffeoLetter& l : rev) l.inverse = !l.inverse;
        return DiffeoWord(std::move(rev));
    }

    std::string str() const {
        std::string s;
        for (size_t i = 0; i < letters_.size(); ++i) {
            if (i) s += ".";
            s += letters_[i].str();
        }
        return s;
    }

private:
    std::vector<DiffeoLetter> letters_;
};

// Gluing map phi^(a) = gamma^a . phi applied to p: the twist map followed by
// the a-th power of the group rotation, acting with the supplied weights.
// The family satisfies phi^(a + k) = gamma^k . phi^(a).
struct GlueMap {
    QZ gamma;               // generator gamma_j as a fraction of a turn
    long long a = 0;        // 0 <= a < k_j for the canonical maps
    ActionWeights weights;  // how gamma acts on the two factors

    S3Pair apply_after(const S3Pair& twisted) const {
        TurnAngle t{gamma.pow(BigInt(a))};
        return act_ab(t, twisted, weights);
    }
};

inline S3Pair glue_map(const QZ& gamma, long long a, const ActionWeights& w,
                       const std::function<S3Pair(const S3Pair&)>& phi, const S3Pair& p) {
    GlueMap g{gamma, a, w};
    return g.apply_after(phi(p));
}

// ---------------------------------------------------------------------------
// Freeness of finite cyclic subgroups of the (a,b)-action.
//
// A Hopf rotation is a left translation, so it moves every point of the unit
// sphere the same distance 2|sin(angle/2)|; the (a,b)-action of theta =
// 2 pi m / n has a fixed point iff both factor rotations are full turns.

struct FreenessWitness {
    BigInt order;
    BigInt power;     // the fixing element is theta = 2 pi power / order
    S3Pair point;     // a fixed point (every point is fixed)
    double displacement = 0.0;
};

struct FreenessReport {
    bool free = true;
    std::optional<FreenessWitness> witness;
    double min_sampled_displacement = 0.0;  // over nonidentity elements and samples
    double max_formula_error = 0.0;         // sampled vs closed-form displacement
    std::uint64_t samples = 0;
};

inline FreenessReport freeness_check(const ActionWeights& w, const std::vector<BigInt>& orders,
                                     std::uint64_t samples, std::uint64_t seed) {
    FreenessReport rep;
    std::mt19937_64 rng(seed);
    bool first = true;
    for (const BigInt& n : orders) {
        if (n <= 1) continue;
        for (BigInt m = 1; m < n; ++m) {
            QZ frac(m, n);
            QZ ra = frac.pow(BigInt(w.a));
            QZ rb = frac.pow(BigInt(w.b));
            if (ra.is_identity() && rb.is_identity()) {
                S3Pair pt{Quat::identity(), Quat::identity()};
                rep.free = false;
                if (!rep.witness) rep.witness = FreenessWitness{n, m, pt, 0.0};
                continue;
            }
            // Closed-form displacement of the left translation pair.
            auto disp = [](const QZ& f) {
                return 2.0 * std::fabs(std::sin(M_PI * f.to_double()));
            };
            double expect = std::hypot(disp(ra), disp(rb));
            std::uint64_t per = std::max<std::uint64_t>(1, samples / 8);
            for (std::uint64_t s = 0; s < per; ++s) {
                S3Pair p = random_s3_pair(rng);
                S3Pair q = act_ab(TurnAngle{frac}, p, w);
                double d = p.dist(q);
                rep.max_formula_error = std::max(rep.max_formula_error, std::fabs(d - expect));
                if (first || d < rep.min_sampled_displacement) {
                    rep.min_sampled_displacement = d;
                    first = false;
                }
                ++rep.samples;
            }
        }
    }
    return rep;
}

}  // namespace snowcone

#endif
