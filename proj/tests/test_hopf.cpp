#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "snowcone/hopf_maps.hpp"

using namespace snowcone;

TEST_CASE("quaternion product against the complex-pair route", "[hopf]") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 500; ++t) {
        Quat a = random_unit_quat(rng), b = random_unit_quat(rng);
        Quat p = a * b, q = Quat::mul_complex_pair(a, b);
        CHECK(p.dist(q) < 1e-14);
    }
    Quat e = Quat::identity();
    Quat a = random_unit_quat(rng);
    CHECK((e * a).dist(a) == 0.0);
    CHECK((a * a.inverse()).dist(e) < 1e-15);
    // Associativity on samples.
    for (int t = 0; t < 100; ++t) {
        Quat x = random_unit_quat(rng), y = random_unit_quat(rng), z = random_unit_quat(rng);
        CHECK(((x * y) * z).dist(x * (y * z)) < 1e-14);
    }
}

TEST_CASE("hopf rotation basics", "[hopf]") {
    std::mt19937_64 rng(4);
    Quat p = random_unit_quat(rng);
    CHECK(hopf_act(0.0, p).dist(p) < 1e-15);
    // Angle pi multiplies both complex components by -1.
    Quat q = hopf_act(M_PI, p);
    CHECK(std::abs(q.u1() + p.u1()) < 1e-14);
    CHECK(std::abs(q.u2() + p.u2()) < 1e-14);
    // Group law: pi/2 twice equals pi once.
    for (int t = 0; t < 100; ++t) {
        Quat x = random_unit_quat(rng);
        CHECK(hopf_act(M_PI / 2, hopf_act(M_PI / 2, x)).dist(hopf_act(M_PI, x)) < 1e-13);
    }
}

TEST_CASE("weighted action examples", "[hopf]") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    for (int t = 0; t < 50; ++t) {
        S3Pair p = random_s3_pair(rng);
        double th = u(rng);
        // (1,0): the second factor never moves.
        CHECK(act_ab(th, p, {1, 0}).second.dist(p.second) == 0.0);
        // (0,0): identity.
        CHECK(act_ab(th, p, {0, 0}).dist(p) == 0.0);
        // (1,k) at theta = 2 pi / k: full turn on the second factor.
        long long k = 2 + static_cast<long long>(t % 5);
        S3Pair q = act_ab(2.0 * M_PI / static_cast<double>(k), p, {1, k});
        CHECK(q.second.dist(p.second) < 1e-12);
        CHECK(q.first.dist(hopf_act(2.0 * M_PI / static_cast<double>(k), p.first)) < 1e-14);
        // Exact-angle route: full turns act as the identity exactly.
        S3Pair qe = act_ab(TurnAngle{QZ(1, k)}, p, {0, k});
        CHECK(qe.dist(p) == 0.0);
        // Group law.
        double t1 = u(rng), t2 = u(rng);
        CHECK(act_ab(t1, act_ab(t2, p, {1, 3}), {1, 3}).dist(act_ab(t1 + t2, p, {1, 3})) < 1e-12);
    }
}

TEST_CASE("phi_1 closed form", "[hopf]") {
    std::mt19937_64 rng(6);
    Quat q = random_unit_quat(rng);
    S3Pair a{Quat::identity(), q};
    CHECK(phi_1(a).first.dist(Quat::identity()) == 0.0);
    CHECK(phi_1(a).second.dist(q) < 1e-15);
    S3Pair b{q, q};
    CHECK(phi_1(b).second.dist(Quat::identity()) < 1e-14);
    // phi_1 agrees with the k = 1 member of the family.
    for (int t = 0; t < 200; ++t) {
        S3Pair p = random_s3_pair(rng);
        CHECK(phi_1(p).dist(phi_k(1, p)) < 1e-14);
    }
}

TEST_CASE("phi_k equivariance and bijection", "[hopf]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    for (int k : {1, 2, 3, 5}) {
        double worst_left = 0, worst_right = 0, worst_bij = 0;
        for (int t = 0; t < 1000; ++t) {
            S3Pair p = random_s3_pair(rng);
            double th = u(rng);
            worst_left = std::max(
                worst_left,
                phi_k(k, act_ab(th, p, {1, k})).dist(act_ab(th, phi_k(k, p), {1, 0})));
            Quat g = random_unit_quat(rng);
            S3Pair lhs = phi_k(k, S3Pair{p.first, (p.second * g).normalized()});
            S3Pair rhs = phi_k(k, p);
            rhs.second = (rhs.second * g).normalized();
            worst_right = std::max(worst_right, lhs.dist(rhs));
            worst_bij = std::max(worst_bij, phi_k_inverse(k, phi_k(k, p)).dist(p));
        }
        CHECK(worst_left < 1e-12);
        CHECK(worst_right < 1e-12);
        CHECK(worst_bij < 1e-10);
    }
    // k = 1 on (e, z): the prefactor is the identity.
    std::mt19937_64 rng2(8);
    Quat z = random_unit_quat(rng2);
    S3Pair ez{Quat::identity(), z};
    CHECK(phi_k(1, ez).second.dist(z) < 1e-14);
    CHECK_THROWS_AS(phi_k(0, ez), std::invalid_argument);
}

TEST_CASE("diffeo words parse, evaluate, invert", "[hopf]") {
    DiffeoWord w = DiffeoWord::parse("p1.p3.K1^-1.f2");
    CHECK(w.size() == 4);
    CHECK(w.str() == "p1.p3.K1^-1.f2");
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
        S3Pair p = random_s3_pair(rng);
        CHECK(w.inverse().apply(w.apply(p)).dist(p) < 1e-10);
    }
    // Each letter against its closed form, per-letter inverse round trip.
    for (const char* word : {"p1", "p2", "p3", "p4", "K1", "K2", "f1", "f3"}) {
        DiffeoWord l = DiffeoWord::parse(word);
        for (int t = 0; t < 50; ++t) {
            S3Pair p = random_s3_pair(rng);
            CHECK(l.inverse().apply(l.apply(p)).dist(p) < 1e-12);
        }
    }
    // p1 is the homology-level generator (g1, g1 g2).
    S3Pair p = random_s3_pair(rng);
    CHECK(DiffeoWord::parse("p1").apply(p).second.dist((p.first * p.second).normalized()) < 1e-14);

    CHECK_THROWS_AS(DiffeoWord::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(DiffeoWord::parse("p9"), std::invalid_argument);
    CHECK_THROWS_AS(DiffeoWord::parse("p1..p2"), std::invalid_argument);
    CHECK_THROWS_AS(DiffeoWord::parse("f0"), std::invalid_argument);
    CHECK_THROWS_AS(DiffeoWord::parse("fx"), std::invalid_argument);
}

TEST_CASE("glue maps and the wrap-around relation", "[hopf]") {
    std::mt19937_64 rng(10);
    const long long k = 3;
    const BigInt order = 12;  // |gamma| = k * |gamma-hat|
    QZ gamma(1, order);
    ActionWeights w{1, 4};  // gamma-hat = gamma^3 rotates only the first factor... speed |g|/k
    auto phi = [](const S3Pair& p) { return phi_k(2, p); };

    for (int t = 0; t < 100; ++t) {
        S3Pair p = random_s3_pair(rng);
        // a = 0 is the twist map itself.
        CHECK(glue_map(gamma, 0, w, phi, p).dist(phi(p)) == 0.0);
        // Wrap-around: a = k differs from a = 0 by the gamma-hat action.
        S3Pair lhs = glue_map(gamma, k, w, phi, p);
        S3Pair rhs = act_ab(TurnAngle{gamma.pow(BigInt(k))}, phi(p), w);
        CHECK(lhs.dist(rhs) < 1e-12);
    }

    // The indexed-copy action table: gamma . (y, a) = (y, a+1) for a < k-1
    // and (gamma-hat . y, 0) at the wrap.
    struct IndexedPoint {
        S3Pair y;
        long long copy;
    };
    auto act_gamma = [&](const IndexedPoint& pt) {
        IndexedPoint out = pt;
        if (pt.copy < k - 1) {
            out.copy = pt.copy + 1;
        } else {
            out.copy = 0;
            out.y = act_ab(TurnAngle{gamma.pow(BigInt(k))}, pt.y, w);
        }
        return out;
    };
    IndexedPoint pt{random_s3_pair(rng), 0};
    IndexedPoint cur = pt;
    for (int i = 0; i < k; ++i) cur = act_gamma(cur);
    CHECK(cur.copy == 0);
    CHECK(cur.y.dist(act_ab(TurnAngle{gamma.pow(BigInt(k))}, pt.y, w)) < 1e-12);
    // Applying gamma |gamma| times over the copies returns to the start.
    cur = pt;
    for (BigInt i = 0; i < order; ++i) cur = act_gamma(cur);
    CHECK(cur.copy == 0);
    CHECK(cur.y.dist(pt.y) < 1e-10);
}

TEST_CASE("freeness of weighted circle subgroups", "[hopf]") {
    // (1,0), order 2: the antipodal map on the first factor moves every point.
    FreenessReport r = freeness_check({1, 0}, {BigInt(2)}, 64, 1);
    CHECK(r.free);
    CHECK(r.min_sampled_displacement == Catch::Approx(2.0).epsilon(1e-12));

    // (0,2), order 2: theta = pi acts at speed 2 on the second factor only,
    // a full turn; every point is fixed.
    r = freeness_check({0, 2}, {BigInt(2)}, 64, 1);
    CHECK_FALSE(r.free);
    REQUIRE(r.witness);
    CHECK(r.witness->order == 2);
    CHECK(r.witness->power == 1);

    // (1,k) is free for every finite cyclic order.
    for (long long k : {2, 3, 6}) {
        r = freeness_check({1, k}, {BigInt(6), BigInt(24)}, 200, 7);
        CHECK(r.free);
        CHECK(r.min_sampled_displacement > 0.0);
        CHECK(r.max_formula_error < 1e-12);
    }
    // A factor shared by both weights and the order gives a fixed element
    // (m = 2 here turns both factors fully); coprime weights stay free.
    CHECK_FALSE(freeness_check({2, 4}, {BigInt(4)}, 16, 3).free);
    CHECK(freeness_check({2, 3}, {BigInt(30)}, 16, 3).free);
}
