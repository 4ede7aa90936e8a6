#include <catch2/catch_amalgamated.hpp>

#include "snowcone/qz.hpp"

using namespace snowcone;

TEST_CASE("chain subgroup orders", "[qz]") {
    CHECK(chain_subgroup_order(GeneratorChain::from_ints({2, 3}), 1) == 6);
    CHECK(chain_subgroup_order(GeneratorChain::from_ints({2}), 0) == 2);
    GeneratorChain c234 = GeneratorChain::from_ints({2, 3, 4});
    CHECK(chain_subgroup_order(c234, 2) == 24);
    // (1/24)^4 = 4/24 = 1/6 = gamma_1.
    CHECK(c234.gamma(2).pow(4) == c234.gamma(1));
    CHECK_THROWS_AS(chain_subgroup_order(c234, 3), std::out_of_range);
    CHECK_THROWS_AS(chain_subgroup_order(c234, -1), std::out_of_range);
    CHECK_THROWS_AS(GeneratorChain::from_ints({2, 1}), std::invalid_argument);
}

TEST_CASE("generator tower relations", "[qz]") {
    GeneratorChain chain = GeneratorChain::from_ints({2, 3, 4, 5});
    for (int j = 1; j <= chain.top_level(); ++j)
        CHECK(chain.gamma(j).pow(chain.k(j)) == chain.gamma(j - 1));
    CHECK(chain.gamma(0).pow(chain.k(0)).is_identity());
    CHECK(chain.gamma(2).order() == 24);
}

TEST_CASE("digit decomposition examples", "[qz]") {
    GeneratorChain chain = GeneratorChain::from_ints({2, 3});
    DigitVector d = decompose(QZ(5, 6), chain);
    CHECK(d.digit_at_level(0) == 1);
    CHECK(d.digit_at_level(1) == 2);
    CHECK(decompose(QZ(), chain).is_zero());
    DigitVector h = decompose(QZ(1, 2), chain);
    CHECK(h.digit_at_level(0) == 1);
    CHECK(h.digit_at_level(1) == 0);
    CHECK_THROWS_AS(decompose(QZ(1, 5), chain), std::invalid_argument);
}

TEST_CASE("recompose inverts decompose exhaustively", "[qz]") {
    for (auto ks : {std::vector<long long>{2, 3}, {2, 3, 4, 5}, {7, 11}, {9973}, {10, 10, 10}}) {
        GeneratorChain chain = GeneratorChain::from_ints(ks);
        const BigInt n = chain.total_order();
        REQUIRE(n <= 10000);
        for (BigInt i = 0; i < n; ++i) {
            QZ g(i, n);
            CHECK(decompose(g, chain).recompose(chain) == g);
        }
    }
}

TEST_CASE("set splitting examples and bijection count", "[qz]") {
    GeneratorChain chain = GeneratorChain::from_ints({2, 3});
    SplitResult s = split_at(QZ(5, 6), chain, 0);
    CHECK(s.head == QZ(1, 2));
    CHECK(s.tail.digit_at_level(1) == 2);

    s = split_at(QZ(1, 2), chain, 0);
    CHECK(s.head == QZ(1, 2));
    CHECK(s.tail.is_zero());

    s = split_at(QZ(1, 6), chain, 0);
    CHECK(s.head.is_identity());
    CHECK(s.tail.digit_at_level(1) == 1);

    // Bijection by counting: distinct (head, tail) pairs exhaust Gamma_J.
    GeneratorChain big = GeneratorChain::from_ints({2, 3, 4});
    for (int j = 0; j < big.top_level(); ++j) {
        std::set<std::pair<std::string, std::vector<BigInt>>> seen;
        const BigInt n = big.total_order();
        for (BigInt i = 0; i < n; ++i) {
            SplitResult sp = split_at(QZ(i, n), big, j);
            seen.insert({sp.head.str(), sp.tail.digits()});
        }
        CHECK(BigInt(seen.size()) == n);
    }
}

TEST_CASE("tail products carry at most one unit", "[qz]") {
    GeneratorChain chain = GeneratorChain::from_ints({2, 3});
    DigitVector t1(1, 1, {BigInt(1)});
    DigitVector t2(1, 1, {BigInt(2)});
    TailProduct p = tail_product_with_carry(t1, t1, chain, 0);
    CHECK_FALSE(p.carry);
    CHECK(p.tail.digit_at_level(1) == 2);

    p = tail_product_with_carry(t2, t2, chain, 0);
    CHECK(p.carry);
    CHECK(p.tail.digit_at_level(1) == 1);

    DigitVector zero(1, 1, {BigInt(0)});
    p = tail_product_with_carry(zero, t2, chain, 0);
    CHECK_FALSE(p.carry);
    CHECK(p.tail.digit_at_level(1) == 2);
}

TEST_CASE("tail product agrees with the rational oracle exhaustively", "[qz]") {
    // Oracle: add the tail values as exact rationals, decompose, and read
    // off the carry digit at the split level.
    for (auto ks : {std::vector<long long>{2, 3, 4}, {3, 5, 2}, {6, 7}}) {
        GeneratorChain chain = GeneratorChain::from_ints(ks);
        const int J = chain.top_level();
        for (int j = 0; j < J; ++j) {
            std::vector<DigitVector> tails;
            std::vector<BigInt> digits(static_cast<size_t>(J - j), 0);
            while (true) {
                tails.emplace_back(j + 1, J, digits);
                int i = static_cast<int>(digits.size()) - 1;
                while (i >= 0) {
                    digits[static_cast<size_t>(i)] += 1;
                    if (digits[static_cast<size_t>(i)] < chain.k(j + 1 + i)) break;
                    digits[static_cast<size_t>(i)] = 0;
                    --i;
                }
                if (i < 0) break;
            }
            for (const DigitVector& a : tails)
                for (const DigitVector& b : tails) {
                    TailProduct p = tail_product_with_carry(a, b, chain, j);
                    QZ sum = a.recompose(chain) + b.recompose(chain);
                    DigitVector full = decompose(sum, chain);
                    for (int lev = 0; lev < j; ++lev) REQUIRE(full.digit_at_level(lev) == 0);
                    BigInt carry_digit = full.digit_at_level(j);
                    REQUIRE((carry_digit == 0 || carry_digit == 1));
                    CHECK(p.carry == (carry_digit == 1));
                    for (int lev = j + 1; lev <= J; ++lev)
                        CHECK(p.tail.digit_at_level(lev) == full.digit_at_level(lev));
                }
        }
    }
}

TEST_CASE("qz group law basics", "[qz]") {
    QZ a(3, 4), b(1, 2);
    CHECK(a + b == QZ(1, 4));
    CHECK((a + a.inverse()).is_identity());
    CHECK(a.pow(BigInt(-1)) == a.inverse());
    CHECK(QZ(5, 10) == QZ(1, 2));
    CHECK_THROWS_AS(QZ(1, 0), std::invalid_argument);
}
