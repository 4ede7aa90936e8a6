#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "snowcone/report.hpp"
#include "snowcone/snowflake.hpp"

using namespace snowcone;

namespace {
DigitVector tail_of(const GeneratorChain& chain, int level, std::vector<long long> ds) {
    std::vector<BigInt> v(ds.begin(), ds.end());
    return DigitVector(level + 1, chain.top_level(), std::move(v));
}
}  // namespace

TEST_CASE("edge map projects cosets", "[snowflake]") {
    GeneratorChain chain = GeneratorChain::from_ints({2, 3});
    VertexId v{0, tail_of(chain, 0, {2})};
    VertexId t = edge_map(v, chain);
    CHECK(t.level == 1);
    CHECK(t.tail.empty());
    CHECK_THROWS_AS(edge_map(t, chain), std::out_of_range);

    // Section choosing the dropped digit 0 followed by the projection is the
    // identity on the upper level.
    GeneratorChain big = GeneratorChain::from_ints({2, 3, 4});
    for (const VertexId& w : level_slice(big, 1)) {
        std::vector<BigInt> d{BigInt(0)};
        d.insert(d.end(), w.tail.digits().begin(), w.tail.digits().end());
        VertexId lifted{0, DigitVector(1, big.top_level(), d)};
        CHECK(edge_map(lifted, big) == w);
    }
}

TEST_CASE("in-degree equals the dropped radix", "[snowflake]") {
    GeneratorChain chain = GeneratorChain::from_ints({2, 3, 4});
    for (int j = 0; j < chain.top_level(); ++j) {
        std::map<std::string, int> indeg;
        for (const VertexId& v : level_slice(chain, j)) indeg[edge_map(v, chain).str()]++;
        CHECK(BigInt(indeg.size()) ==
              chain.total_order() / chain.cumulative(j + 1));
        for (const auto& [key, n] : indeg) {
            (void)key;
            CHECK(BigInt(n) == chain.k(j + 1));
        }
    }
}

TEST_CASE("group action on vertices with carries", "[snowflake]") {
    GeneratorChain chain = GeneratorChain::from_ints({2, 3});
    // gamma in Gamma_j fixes the vertex and acts internally by itself.
    VertexId v{0, tail_of(chain, 0, {2})};
    GammaActionResult r = gamma_action(QZ(1, 2), v, chain);
    CHECK(r.vertex == v);
    CHECK(r.internal == QZ(1, 2));
    CHECK_FALSE(r.carry);

    // gamma = 1/6 on the a1 = 2 vertex: the tail wraps and carries.
    r = gamma_action(QZ(1, 6), v, chain);
    CHECK(r.vertex.tail.digit_at_level(1) == 0);
    CHECK(r.carry);
    CHECK(r.internal == QZ(1, 2));  // gamma_0^{c_0}, no head part
}

TEST_CASE("action laws on truncated slices", "[snowflake]") {
    for (auto ks : {std::vector<long long>{2, 3, 4}, {3, 3, 3}, {5, 7}}) {
        GeneratorChain chain = GeneratorChain::from_ints(ks);
        REQUIRE(chain.total_order() <= 1000);
        std::vector<QZ> gamma = group_elements(chain);
        for (int j = 0; j <= chain.top_level(); ++j) {
            std::vector<VertexId> slice = level_slice(chain, j);
            // Freeness: only the identity fixes a vertex with trivial
            // internal part.
            for (const QZ& g : gamma)
                for (const VertexId& v : slice) {
                    GammaActionResult r = gamma_action(g, v, chain);
                    if (r.vertex == v && r.internal.is_identity()) CHECK(g.is_identity());
                }
            // Transitivity on the slice.
            std::set<std::string> orbit;
            for (const QZ& g : gamma) orbit.insert(gamma_action(g, slice.front(), chain).vertex.str());
            CHECK(orbit.size() == slice.size());
            // Compatibility with the projection.
            if (j < chain.top_level())
                for (const QZ& g : gamma)
                    for (const VertexId& v : slice)
                        CHECK(edge_map(gamma_action(g, v, chain).vertex, chain) ==
                              gamma_action(g, edge_map(v, chain), chain).vertex);
        }
    }
}

TEST_CASE("tangent cone classifier case table", "[snowflake]") {
    ConeDescriptor d = classify_tangent_cone({ScaleRegime::AtRj, 1.0}, KLimit::of(5));
    CHECK(d.kind == ConeDescriptor::Kind::LensCone);
    CHECK(d.k == 5);
    CHECK(d.s == 1.0);
    CHECK(d.basepoint_offset == 5);

    CHECK(classify_tangent_cone({ScaleRegime::AtRj, 1.0}, KLimit::infinite()).kind ==
          ConeDescriptor::Kind::R3xS1);
    CHECK(classify_tangent_cone({ScaleRegime::BetweenRjAndOrbit, 1.0}, KLimit::infinite()).kind ==
          ConeDescriptor::Kind::R3);
    ConeDescriptor s2 = classify_tangent_cone({ScaleRegime::AtOrbitScale, 1.0}, KLimit::infinite());
    CHECK(s2.kind == ConeDescriptor::Kind::S2Cone);
    CHECK(s2.radius == 0.5);

    ConeDescriptor lens = classify_tangent_cone({ScaleRegime::BetweenOrbitAndNext, 0.37}, KLimit::of(4));
    CHECK(lens.kind == ConeDescriptor::Kind::LensCone);
    CHECK(lens.s == 0.37);
    CHECK(lens.k == 4);
    CHECK(classify_tangent_cone({ScaleRegime::BetweenOrbitAndNext, 0.0}, KLimit::of(9)).kind ==
          ConeDescriptor::Kind::HalfLine);
    CHECK(classify_tangent_cone({ScaleRegime::BetweenOrbitAndNext, 1.0}, KLimit::of(1)).kind ==
          ConeDescriptor::Kind::R4);
    CHECK(classify_tangent_cone({ScaleRegime::ApproachingNext, 1.0}, KLimit::of(7)).kind ==
          ConeDescriptor::Kind::R4);

    // Documented invalid combinations.
    CHECK_THROWS_AS(classify_tangent_cone({ScaleRegime::BetweenRjAndOrbit, 1.0}, KLimit::of(3)),
                    InvalidRegime);
    CHECK_THROWS_AS(classify_tangent_cone({ScaleRegime::AtOrbitScale, 1.0}, KLimit::of(3)),
                    InvalidRegime);
    CHECK_THROWS_AS(classify_tangent_cone({ScaleRegime::BetweenOrbitAndNext, 0.5}, KLimit::infinite()),
                    InvalidRegime);
    CHECK_THROWS_AS(classify_tangent_cone({ScaleRegime::BetweenOrbitAndNext, 1.5}, KLimit::of(2)),
                    InvalidRegime);
}

TEST_CASE("classifier totality over the regime grid", "[snowflake]") {
    for (ScaleRegime reg : {ScaleRegime::AtRj, ScaleRegime::BetweenRjAndOrbit,
                            ScaleRegime::AtOrbitScale, ScaleRegime::BetweenOrbitAndNext,
                            ScaleRegime::ApproachingNext})
        for (bool finite : {true, false}) {
            KLimit kl = finite ? KLimit::of(3) : KLimit::infinite();
            try {
                ConeDescriptor d = classify_tangent_cone({reg, 0.5}, kl);
                (void)d;
            } catch (const InvalidRegime&) {
                // documented combination
            }
        }
}

TEST_CASE("cone enumeration policies", "[snowflake]") {
    ConeEnumeration e = enumerate_cones(ChainPolicy::CyclicIntegers, 4);
    CHECK(e.every_k_recurs_twice);
    for (long long k = 2; k <= 4; ++k) CHECK(e.recurrence.at(k) >= 2);
    // The flattened prefix begins 2; 2,3; 2,3,4; ...
    REQUIRE(e.prefix.size() >= 6);
    CHECK(e.prefix[0] == 2);
    CHECK(e.prefix[1] == 2);
    CHECK(e.prefix[2] == 3);
    CHECK(e.prefix[3] == 2);
    CHECK(e.prefix[4] == 3);
    CHECK(e.prefix[5] == 4);
    CHECK(e.unbounded_policy);

    ConeEnumeration c = enumerate_cones(ChainPolicy::ConstantP, 2, 2);
    for (long long k : c.prefix) CHECK(k == 2);
    CHECK_FALSE(c.unbounded_policy);

    ConeEnumeration p = enumerate_cones(ChainPolicy::CyclicPrimes, 3);
    CHECK(p.every_k_recurs_twice);
    for (long long k : p.prefix) CHECK((k == 2 || k == 3 || k == 5 || k == 7 || k == 11 || k > 11));

    ConeEnumeration trivial = enumerate_cones(ChainPolicy::CyclicIntegers, 1);
    CHECK(trivial.every_k_recurs_twice);
}

TEST_CASE("graph exports", "[snowflake]") {
    GeneratorChain chain = GeneratorChain::from_ints({2, 3});
    Json j = graph_json(chain);
    CHECK(j["levels"].size() == 2);
    CHECK(j["levels"][0]["vertices"].size() == 3);  // |V_0| = k_1
    CHECK(j["levels"][1]["vertices"].size() == 1);
    std::string dot = graph_dot(chain);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("->") != std::string::npos);
}
