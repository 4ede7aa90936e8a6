#include <catch2/catch_amalgamated.hpp>

#include "snowcone/tower.hpp"

using namespace snowcone;

TEST_CASE("tower round trips and ordering", "[tower]") {
    TowerReal a = TowerReal::from_double(42.0);
    CHECK(a.to_double() == 42.0);
    CHECK(a.ln_double() == Catch::Approx(std::log(42.0)));

    TowerReal b = TowerReal::from_ln(1000.0);  // e^1000, beyond double
    CHECK(b.positive());
    CHECK(std::isinf(b.to_double()));
    CHECK(b.ln_double() == Catch::Approx(1000.0));

    CHECK(a < b);
    CHECK(b > a);
    CHECK(TowerReal::from_double(2.0) < TowerReal::from_double(3.0));
}

TEST_CASE("tower multiplication adds logs", "[tower]") {
    TowerReal x = TowerReal::from_ln(500.0);
    TowerReal y = TowerReal::from_ln(600.0);
    TowerReal p = x * y;
    CHECK(p.ln_double() == Catch::Approx(1100.0));
    TowerReal q = p / y;
    CHECK(q.ln_double() == Catch::Approx(500.0).margin(1e-6));

    TowerReal tiny = TowerReal::from_ln(-3.5e12);
    CHECK(tiny.positive());
    CHECK(tiny.to_double() == 0.0);  // underflows double but is a positive real
    CHECK(tiny < TowerReal::from_double(1.0));
    CHECK((tiny * TowerReal::from_ln(3.5e12)).ln_double() == Catch::Approx(0.0).margin(1.0));
}

TEST_CASE("tower pow and iterated exponentials", "[tower]") {
    TowerReal r4 = TowerReal::exp_tower(
        TowerReal::exp_tower(TowerReal::exp_tower(TowerReal::from_double(31228.0))));
    CHECK(r4.level() >= 3);
    CHECK(r4.positive());
    CHECK(r4.finite());
    CHECK(r4 > TowerReal::from_ln(1e300));

    TowerReal lll = r4.ln().ln().ln();
    CHECK(lll.to_double() == Catch::Approx(31228.0));

    // At representable heights pow scales the log.
    TowerReal x = TowerReal::from_ln(1000.0);
    CHECK(x.pow(0.5).ln_double() == Catch::Approx(500.0));
    CHECK(x.pow(3.0).ln_double() == Catch::Approx(3000.0));
    // At iterated-exponential heights a root is below the mantissa's
    // resolution: lnlnln(sqrt(x)) == lnlnln(x) at double precision.
    TowerReal powed = r4.pow(0.5);
    CHECK(powed.ln().ln().ln().to_double() == Catch::Approx(31228.0).margin(1e-9));
    CHECK(cmp(powed, r4) == 0);
}

TEST_CASE("tower absorption of modest factors", "[tower]") {
    TowerReal r4 = TowerReal::exp_tower(
        TowerReal::exp_tower(TowerReal::exp_tower(TowerReal::from_double(100.0))));
    TowerReal scaled = r4 * TowerReal::from_double(1e4);
    // The factor is below the representation's resolution at this height.
    CHECK(cmp(scaled, r4) == 0);
    TowerReal sum = r4 + TowerReal::from_double(5.0);
    CHECK(cmp(sum, r4) == 0);

    // At low levels nothing is absorbed.
    TowerReal s = TowerReal::from_double(3.0) + TowerReal::from_double(4.0);
    CHECK(s.to_double() == 7.0);
}

TEST_CASE("tower strings are readable", "[tower]") {
    CHECK(TowerReal::from_double(2.5).str() == "2.5");
    TowerReal big = TowerReal::from_ln(4000.0);
    CHECK(big.str().find("exp(") == 0);
}
