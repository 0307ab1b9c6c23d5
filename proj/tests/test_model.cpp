#include <doctest.h>

#include "testutil.hpp"

#include "rpbis/model.hpp"

using namespace rpbis;

TEST_CASE("make_dist builds two-point uniform") {
    Dist d = Dist::make({{0, Rat(1, 2)}, {1, Rat(1, 2)}});
    REQUIRE(d.entries().size() == 2);
    CHECK(d.at(0) == Rat(1, 2));
    CHECK(d.at(1) == Rat(1, 2));
}

TEST_CASE("make_dist merges duplicate states by summation") {
    Dist d = Dist::make({{0, Rat(1, 2)}, {0, Rat(1, 2)}});
    REQUIRE(d.entries().size() == 1);
    CHECK(d.at(0) == Rat(1));
}

TEST_CASE("make_dist rejects bad inputs") {
    CHECK_THROWS_AS(Dist::make({{0, Rat(1, 3)}, {1, Rat(1, 3)}}), Error);
    try {
        Dist::make({{0, Rat(1, 3)}, {1, Rat(1, 3)}});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::SumNotOne);
    }
    try {
        Dist::make({{0, Rat(-1, 2)}, {1, Rat(3, 2)}});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::NegativeProb);
    }
    // Zero entries are dropped, the rest must still sum to 1.
    Dist d = Dist::make({{0, Rat(0)}, {1, Rat(1)}});
    CHECK(d.entries().size() == 1);
}

TEST_CASE("make_dist is order-insensitive") {
    Dist a = Dist::make({{0, Rat(1, 4)}, {1, Rat(3, 4)}});
    Dist b = Dist::make({{1, Rat(3, 4)}, {0, Rat(1, 4)}});
    CHECK(a == b);
}

TEST_CASE("dist_mass sums exactly over a state set") {
    Dist d = Dist::make({{0, Rat(1, 2)}, {1, Rat(1, 2)}});
    CHECK(dist_mass(d, {0}) == Rat(1, 2));
    CHECK(dist_mass(d, {}) == Rat(0));
    CHECK(dist_mass(d, {0, 1}) == Rat(1));
    // Support invariant: full support always carries mass exactly 1.
    std::vector<StateId> supp;
    for (const auto& [s, p] : d.entries()) supp.push_back(s);
    CHECK(dist_mass(d, supp) == Rat(1));
}

TEST_CASE("fixture A masses match the drawn system") {
    Rplts sys = testutil::load_fixture("fixtureA.rplts");
    CHECK(sys.num_states() == 6);
    StateId t1 = sys.state_or_throw("t1");
    const Dist* d = sys.transition(t1, *sys.find_action("a"));
    REQUIRE(d != nullptr);
    CHECK(dist_mass(*d, {sys.state_or_throw("u_bc"), sys.state_or_throw("nil")}) == Rat(1));
}

TEST_CASE("validate_rplts enforces reactive determinism") {
    // Same (s, a) with two distinct distributions.
    std::vector<RawTransition> raw;
    raw.push_back({"s", "a", {{"x", Rat(1)}}});
    raw.push_back({"s", "a", {{"y", Rat(1)}}});
    try {
        validate_rplts(raw);
        FAIL("expected DuplicateTransition");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::DuplicateTransition);
    }
    // Listing the identical distribution twice is permitted.
    raw[1] = {"s", "a", {{"x", Rat(1)}}};
    CHECK_NOTHROW(validate_rplts(raw));
}

TEST_CASE("empty transition list is a valid all-terminal system") {
    Rplts sys = validate_rplts({});
    CHECK(sys.num_states() == 0);
}

TEST_CASE("unknown state lookups throw") {
    Rplts sys = testutil::load_fixture("fixtureA.rplts");
    CHECK_THROWS_AS(sys.state_or_throw("zz"), Error);
}
