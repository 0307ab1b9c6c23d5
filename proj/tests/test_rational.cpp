#include <doctest.h>

#include "rpbis/rational.hpp"

using rpbis::Rat;

TEST_CASE("rationals normalize to lowest terms") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(0, 7) == Rat(0));
    CHECK(Rat(6, 3) == Rat(2));
    CHECK(Rat(1, -2) == Rat(-1, 2));
}

TEST_CASE("arithmetic is exact") {
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(1, 2) - Rat(1, 2) == Rat(0));
    CHECK(Rat(2, 5) + Rat(2, 5) + Rat(1, 10) + Rat(1, 10) == Rat(1));
    CHECK(Rat(1, 3) * Rat(3, 7) == Rat(1, 7));
    // The classic float trap: 0.1 + 0.2 == 0.3 exactly here.
    CHECK(Rat::from_decimal("0.1") + Rat::from_decimal("0.2") == Rat(3, 10));
}

TEST_CASE("decimal literals convert exactly") {
    CHECK(Rat::from_decimal("0.25") == Rat(1, 4));
    CHECK(Rat::from_decimal("0.5") == Rat(1, 2));
    CHECK(Rat::from_decimal("1.0") == Rat(1));
    CHECK(Rat::from_decimal("0.7") == Rat(7, 10));
}

TEST_CASE("comparisons cross-multiply") {
    CHECK(Rat(1, 3) < Rat(1, 2));
    CHECK(Rat(2, 3) > Rat(3, 5));
    CHECK(Rat(1, 2) <= Rat(2, 4));
    CHECK_FALSE(Rat(1, 2) < Rat(1, 2));
}

TEST_CASE("rendering") {
    CHECK(Rat(1, 2).str() == "1/2");
    CHECK(Rat(1).str() == "1");
    CHECK(Rat(0).str() == "0");
    CHECK(Rat(3, 5).str_decimal() == "0.6");
    CHECK(Rat(7, 10).str_decimal() == "0.7");
    CHECK(Rat(1, 4).str_decimal() == "0.25");
    // 1/3 has no finite decimal expansion; falls back to the fraction.
    CHECK(Rat(1, 3).str_decimal() == "1/3");
    CHECK(Rat(1).str_decimal() == "1");
}

TEST_CASE("probability range check") {
    CHECK(Rat(1, 2).is_prob());
    CHECK(Rat(0).is_prob());
    CHECK(Rat(1).is_prob());
    CHECK_FALSE(Rat(3, 2).is_prob());
    CHECK_FALSE(Rat(-1, 2).is_prob());
}
