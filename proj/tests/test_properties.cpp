#include <doctest.h>

#include "properties.hpp"

TEST_CASE("chebfun invariants on 100 random functions") {
    const auto r = props::chebfun_invariants(100);
    INFO(r.first);
    CHECK(r.ok(100));
}

TEST_CASE("conditions invariants on 100 random instances") {
    const auto r = props::conditions_invariants(100);
    INFO(r.first);
    CHECK(r.ok(100));
}

TEST_CASE("region nesting and distance Lipschitz property on 100 random regions") {
    const auto r = props::region_invariants(100);
    INFO(r.first);
    CHECK(r.ok(100));
}
