#include <doctest.h>

#include <set>

#include "fdgl/prng.hpp"
#include "support.hpp"

using namespace fdgl;

TEST_SUITE("prng") {

TEST_CASE("lcg construction") {
    CHECK_THROWS_AS(lcg(0, 1, 1, 0), std::domain_error);
    CHECK_THROWS_AS(lcg(9, 3, 1, 0), NotPeriodicError);
    auto s = lcg(9, 4, 1, 0);
    CHECK(s.mod == 9);
    CHECK(s.dim() == 1);
}

TEST_CASE("lcg full period examples") {
    CHECK(certify_full_period(lcg(9, 4, 1, 0)));
    CHECK(measured_period(lcg(9, 4, 1, 0), 100) == std::optional<u64>(9));
    for (u64 m : {1, 2, 7, 64, 1000}) {
        CHECK(certify_full_period(lcg(m, 1, 1, 0)));
        CHECK(measured_period(lcg(m, 1, 1, 0), 2000) == std::optional<u64>(m));
    }
    CHECK_FALSE(certify_full_period(lcg(8, 3, 1, 0)));
    CHECK(measured_period(lcg(8, 3, 1, 0), 100) != std::optional<u64>(8));
    CHECK(certified_period(lcg(9, 4, 1, 5)) == std::optional<u64>(9));
}

TEST_CASE("streams") {
    auto out = stream(lcg(9, 4, 1, 0), 9);
    CHECK(out == std::vector<u64>{0, 1, 5, 3, 4, 8, 6, 7, 2});
    std::set<u64> seen(out.begin(), out.end());
    CHECK(seen.size() == 9);
    CHECK(stream(lcg(17, 1, 0, 5), 6) == std::vector<u64>(6, 5));
    CHECK(stream(lcg(9, 4, 1, 0), 20) == stream(lcg(9, 4, 1, 0), 20));
    auto spec = lcg(9, 4, 1, 0);
    RngStream cur(spec);
    CHECK(cur.next() == 0);
    CHECK(cur.next() == 1);
    CHECK(cur.state() == std::vector<u64>{5});
}

TEST_CASE("vector generators") {
    auto P2 = parse_poly("x^2+x+1", 2);
    CHECK(measured_period(vecgen(2, P2, {1}), 100) == std::optional<u64>(3));
    auto P5 = parse_poly("x^5+x^2+1", 2);
    auto v = vecgen(2, P5, {1, 0, 1});
    CHECK(v.seed == std::vector<u64>{1, 0, 1, 0, 0});
    CHECK(certify_full_period(v));
    CHECK(certified_period(v) == std::optional<u64>(31));
    CHECK(measured_period(v, 100) == std::optional<u64>(31));
    auto z = vecgen(2, P5, {});
    CHECK(measured_period(z, 10) == std::optional<u64>(1));
    CHECK(certified_period(z) == std::optional<u64>(1));
    CHECK_FALSE(certify_full_period(z));
    CHECK_THROWS_AS(vecgen(2, parse_poly("x^3+x", 2), {1}), std::domain_error);
    CHECK_THROWS_AS(vecgen(3, parse_poly("2x^2+1", 3), {1}), std::domain_error);
    // non-primitive: the seed's period divides the polynomial order
    auto Q = parse_poly("x^4+x^3+x^2+x+1", 2);
    auto q = vecgen(2, Q, {1});
    CHECK_FALSE(certify_full_period(q));
    CHECK(poly_order(Q) % *measured_period(q, 100) == 0);
}

TEST_CASE("output packing") {
    auto v = vecgen(3, parse_poly("x^2+x+2", 3), {2, 1});
    CHECK(word_bits(v) == 2);  // bits per coordinate
    CHECK(pack(v, {2, 1}) == (2u | (1u << 2)));
    auto big = vecgen(2, *first_primitive(2, 63), {1});
    CHECK(word_bits(big) == 1);
    CHECK(pack(big, std::vector<u64>(63, 1)) == (u64(1) << 63) - 1);
    auto too_big = vecgen(2, parse_poly("x^65+x+1", 2), {1});
    CHECK_THROWS_AS(pack(too_big, too_big.seed), CapacityError);
    CHECK_THROWS_AS(RngStream{too_big}, CapacityError);
    auto v5 = vecgen(5, parse_poly("x^3+x+2", 5), {4, 3, 2});
    CHECK(word_bits(v5) == 3);
    CHECK(pack(v5, v5.seed) == (4u | (3u << 3) | (2u << 6)));
    CHECK(pack(lcg(1000, 1, 1, 999), {999}) == 999);
}

TEST_CASE("primitive vecgen visits every nonzero state") {
    for (auto [p, d] : {std::pair<u64, unsigned>{2, 4}, {2, 7}, {3, 3}, {5, 2}}) {
        for (auto& P : enum_primitive(p, d)) {
            auto spec = vecgen(p, P, {1});
            std::set<std::vector<u64>> seen;
            auto s = spec.seed;
            do {
                REQUIRE(seen.insert(s).second);
                s = step(spec, s);
            } while (s != spec.seed);
            REQUIRE(seen.size() == ipow(p, d) - 1);
            REQUIRE(!seen.count(std::vector<u64>(d, 0)));
        }
    }
}

}
