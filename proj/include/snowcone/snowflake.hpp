// Combinatorial model of the cover: one vertex per coset at each level,
// edges by coset projection, and the group action with its carry into the
// vertex's own level.  All materialized slices are finite truncations at
// the chain's top level.
#ifndef SNOWCONE_SNOWFLAKE_HPP
#define SNOWCONE_SNOWFLAKE_HPP

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "snowcone/qz.hpp"

namespace snowcone {

// Vertex of the level-j slice: the coset is coded by the digit tail on
// levels j+1..J.
struct VertexId {
    int level = 0;
    DigitVector tail;  // supported on (level, J]

    friend bool operator==(const VertexId& a, const VertexId& b) {
        return a.level == b.level && a.tail == b.tail;
    }
    friend bool operator<(const VertexId& a, const VertexId& b) {
        if (a.level != b.level) return a.level < b.level;
        return a.tail.digits() < b.tail.digits();
    }

    std::string str() const {
        std::string s = "v[" + std::to_string(level) + ";";
        for (size_t i = 0; i < tail.digits().size(); ++i) {
            if (i) s += ",";
            s += tail.digits()[i].str();
        }
        return s + "]";
    }
};

inline void validate_vertex(const VertexId& v, const GeneratorChain& chain) {
    if (v.level < 0 || v.level > chain.top_level())
        throw std::out_of_range("VertexId: level out of range");
    if (!v.tail.empty() && (v.tail.level_lo() != v.level + 1 || v.tail.level_hi() != chain.top_level()))
        throw std::invalid_argument("VertexId: tail must cover levels level+1..J");
    v.tail.validate(chain);
}

// Coset projection: drop the level-(j+1) digit, move one level up.
inline VertexId edge_map(const VertexId& v, const GeneratorChain& chain) {
    validate_vertex(v, chain);
    if (v.level >= chain.top_level()) throw std::out_of_range("edge_map: already at top level");
    const int J = chain.top_level();
    std::vector<BigInt> d;
    if (!v.tail.empty())
        d.assign(v.tail.digits().begin() + 1, v.tail.digits().end());
    return VertexId{v.level + 1, DigitVector(v.level + 2, J, std::move(d))};
}

struct GammaActionResult {
    VertexId vertex;   // target coset
    QZ internal;       // gamma_j^{c_j} * gamma_{<=j}, the element acting inside the copy
    bool carry = false;
};

// Action of gamma on the level-j vertex v: split gamma at level j, multiply
// tails with carry, return the target vertex and the internal element.
inline GammaActionResult gamma_action(const QZ& gamma, const VertexId& v, const GeneratorChain& chain) {
    validate_vertex(v, chain);
    SplitResult sp = split_at(gamma, chain, v.level);
    TailProduct tp = tail_product_with_carry(sp.tail, v.tail, chain, v.level);
    QZ internal = sp.head;
    if (tp.carry) internal = internal + chain.gamma(v.level);
    return GammaActionResult{VertexId{v.level, tp.tail}, internal, tp.carry};
}

// All vertices of the level-j slice (|V_j| = prod_{i>j} k_i, truncated).
inline std::vector<VertexId> level_slice(const GeneratorChain& chain, int j) {
    if (j < 0 || j > chain.top_level()) throw std::out_of_range("level_slice: level out of range");
    const int J = chain.top_level();
    std::vector<VertexId> out;
    std::vector<BigInt> digits(static_cast<size_t>(J - j), 0);
    while (true) {
        out.push_back(VertexId{j, DigitVector(j + 1, J, digits)});
        int i = static_cast<int>(digits.size()) - 1;
        while (i >= 0) {
            digits[static_cast<size_t>(i)] += 1;
            if (digits[static_cast<size_t>(i)] < chain.k(j + 1 + i)) break;
            digits[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

// All elements of Gamma_J.
inline std::vector<QZ> group_elements(const GeneratorChain& chain) {
    std::vector<QZ> out;
    const BigInt n = chain.total_order();
    for (BigInt i = 0; i < n; ++i) out.emplace_back(i, n);
    return out;
}

// ---------------------------------------------------------------------------
// Tangent cones at infinity

enum class ScaleRegime {
    AtRj,                 // blowdown exactly at the jump scale
    BetweenRjAndOrbit,    // between the jump scale and the orbit scale
    AtOrbitScale,         // at the orbit scale k_j r_j
    BetweenOrbitAndNext,  // cross-section size s in [0,1] within the neck
    ApproachingNext       // reopening toward the next jump scale
};

struct KLimit {
    bool finite = true;
    long long k = 1;
    static KLimit of(long long kk) { return KLimit{true, kk}; }
    static KLimit infinite() { return KLimit{false, 0}; }
};

struct ConeDescriptor {
    enum class Kind { LensCone, R4, R3xS1, R3, HalfLine, S2Cone };
    Kind kind = Kind::R4;
    double s = 1.0;                 // lens-cone cross-section size
    long long k = 1;                // lens order
    long long basepoint_offset = 0; // distance of the basepoint from the cone point
    double radius = 0.0;            // S2Cone cross-section radius

    std::string str() const {
        std::ostringstream os;
        switch (kind) {
            case Kind::LensCone: os << "C(S3_" << s << "/Z_" << k << ")"; break;
            case Kind::R4: os << "R4"; break;
            case Kind::R3xS1: os << "R3xS1"; break;
            case Kind::R3: os << "R3"; break;
            case Kind::HalfLine: os << "half-line"; break;
            case Kind::S2Cone: os << "C(S2_" << radius << ")"; break;
        }
        if (basepoint_offset) os << " @dist " << basepoint_offset;
        return os.str();
    }

    friend bool operator==(const ConeDescriptor& a, const ConeDescriptor& b) {
        return a.kind == b.kind && a.s == b.s && a.k == b.k &&
               a.basepoint_offset == b.basepoint_offset && a.radius == b.radius;
    }
};

class InvalidRegime : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RegimeQuery {
    ScaleRegime regime = ScaleRegime::AtRj;
    double s = 1.0;  // only read for BetweenOrbitAndNext
};

inline ConeDescriptor classify_tangent_cone(const RegimeQuery& q, const KLimit& kl) {
    ConeDescriptor d;
    switch (q.regime) {
        case ScaleRegime::AtRj:
            if (kl.finite) {
                d.kind = ConeDescriptor::Kind::LensCone;
                d.s = 1.0;
                d.k = kl.k;
                d.basepoint_offset = kl.k;
            } else {
                d.kind = ConeDescriptor::Kind::R3xS1;
            }
            return d;
        case ScaleRegime::BetweenRjAndOrbit:
            if (kl.finite)
                throw InvalidRegime(
                    "between the jump and orbit scales a bounded k collapses into the jump-scale case");
            d.kind = ConeDescriptor::Kind::R3;
            return d;
        case ScaleRegime::AtOrbitScale:
            if (kl.finite)
                throw InvalidRegime("the orbit-scale blowdown is only distinct when k -> infinity");
            d.kind = ConeDescriptor::Kind::S2Cone;
            d.radius = 0.5;
            return d;
        case ScaleRegime::BetweenOrbitAndNext:
            if (q.s < 0.0 || q.s > 1.0) throw InvalidRegime("cross-section size must lie in [0,1]");
            if (q.s == 0.0) {
                d.kind = ConeDescriptor::Kind::HalfLine;
                return d;
            }
            if (!kl.finite)
                throw InvalidRegime("past the orbit scale an unbounded k has already degenerated");
            d.kind = kl.k == 1 && q.s == 1.0 ? ConeDescriptor::Kind::R4 : ConeDescriptor::Kind::LensCone;
            d.s = q.s;
            d.k = kl.k;
            return d;
        case ScaleRegime::ApproachingNext:
            d.kind = ConeDescriptor::Kind::R4;
            return d;
    }
    throw InvalidRegime("unknown regime");
}

enum class ChainPolicy { CyclicPrimes, CyclicIntegers, ConstantP };

// Flattened generator sequence of the policy: segments 2; 2,3; 2,3,4; ...
// (integers), 2; 2,3; 2,3,5; ... (primes), or p,p,p,... (constant).
inline std::vector<long long> policy_prefix(ChainPolicy policy, long long p, size_t length) {
    std::vector<long long> out;
    auto is_prime = [](long long n) {
        if (n < 2) return false;
        for (long long d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    long long segment_end = 2;
    while (out.size() < length) {
        switch (policy) {
            case ChainPolicy::ConstantP:
                out.push_back(p);
                break;
            case ChainPolicy::CyclicIntegers:
                for (long long k = 2; k <= segment_end && out.size() < length; ++k) out.push_back(k);
                ++segment_end;
                break;
            case ChainPolicy::CyclicPrimes:
                for (long long k = 2; k <= segment_end && out.size() < length; ++k)
                    if (is_prime(k)) out.push_back(k);
                ++segment_end;
                break;
        }
    }
    return out;
}

struct ConeEnumeration {
    std::vector<long long> prefix;            // flattened k_j sequence examined
    std::map<long long, int> recurrence;      // occurrences of each k <= bound
    std::vector<ConeDescriptor> realized;     // distinct descriptors realized
    bool every_k_recurs_twice = false;
    bool unbounded_policy = false;            // k -> infinity regimes realized
};

inline ConeEnumeration enumerate_cones(ChainPolicy policy, long long bound, long long p = 2,
                                       size_t max_prefix = 4096) {
    ConeEnumeration e;
    e.unbounded_policy = policy != ChainPolicy::ConstantP;
    size_t len = 1;
    while (len <= max_prefix) {
        e.prefix = policy_prefix(policy, p, len);
        e.recurrence.clear();
        for (long long k : e.prefix)
            if (k <= bound) e.recurrence[k]++;
        bool ok = true;
        for (long long k = 2; k <= bound; ++k) {
            bool reachable = policy != ChainPolicy::ConstantP || k == p;
            if (reachable && e.recurrence[k] < 2) ok = false;
        }
        if (bound < 2) ok = true;
        if (ok) {
            e.every_k_recurs_twice = true;
            break;
        }
        len *= 2;
    }
    for (auto& [k, cnt] : e.recurrence) {
        (void)cnt;
        e.realized.push_back(classify_tangent_cone({ScaleRegime::AtRj, 1.0}, KLimit::of(k)));
        e.realized.push_back(
            classify_tangent_cone({ScaleRegime::BetweenOrbitAndNext, 0.5}, KLimit::of(k)));
    }
    e.realized.push_back(classify_tangent_cone({ScaleRegime::BetweenOrbitAndNext, 0.0}, KLimit::of(2)));
    if (e.unbounded_policy) {
        e.realized.push_back(classify_tangent_cone({ScaleRegime::AtRj, 1.0}, KLimit::infinite()));
        e.realized.push_back(
            classify_tangent_cone({ScaleRegime::BetweenRjAndOrbit, 1.0}, KLimit::infinite()));
        e.realized.push_back(classify_tangent_cone({ScaleRegime::AtOrbitScale, 1.0}, KLimit::infinite()));
    }
    return e;
}

}  // namespace snowcone

#endif
