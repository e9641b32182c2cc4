#include <doctest.h>

#include "fdgl/ffpoly.hpp"
#include "fdgl/matrix.hpp"

using namespace fdgl;

namespace {

FpPoly P(const char* s, u64 p) { return parse_poly(s, p); }

// least o <= cap with Q | x^o - 1, by direct divisibility
u64 naive_order(const FpPoly& Q, u64 cap) {
    u64 p = Q.modulus();
    for (u64 o = 1; o <= cap; ++o) {
        FpPoly t = FpPoly::monomial(p, static_cast<unsigned>(o)) - FpPoly::constant(p, 1);
        if ((t % Q).is_zero()) return o;
    }
    return 0;
}

u64 naive_matrix_order(const ModMatrix& A, u64 cap) {
    ModMatrix B = A;
    for (u64 k = 1; k <= cap; ++k) {
        if (B.is_identity()) return k;
        B = B * A;
    }
    return 0;
}

}  // namespace

TEST_SUITE("ffpoly") {

TEST_CASE("arithmetic") {
    CHECK(P("x+1", 2) * P("x+1", 2) == P("x^2+1", 2));
    CHECK(gcd(P("x^2+x+1", 2), P("x^3-1", 2)) == P("x^2+x+1", 2));
    CHECK(pow_mod(FpPoly::x(2), u64(3), P("x^2+x+1", 2)) == FpPoly::constant(2, 1));
    CHECK_THROWS_AS(P("x", 2) + P("x", 3), std::domain_error);
    CHECK_THROWS_AS(divmod(P("x", 3), FpPoly(3)), std::domain_error);
    auto [q, r] = divmod(P("x^5+2x+1", 3), P("x^2+1", 3));
    CHECK(q * P("x^2+1", 3) + r == P("x^5+2x+1", 3));
    CHECK(r.degree() < 2);
}

TEST_CASE("parsing and printing") {
    CHECK(P("1+x+x^4", 2) == P("x^4+x+1", 2));
    CHECK(parse_poly("x^4+x+1 mod 2").str_full() == "x^4+x+1 mod 2");
    CHECK(parse_poly("x^2+1@3").modulus() == 3);
    CHECK(P("x^2-1", 5).str() == "x^2+4");
    CHECK(FpPoly::from_code(2, P("x^4+x+1", 2).code()) == P("x^4+x+1", 2));
}

TEST_CASE("irreducibility") {
    CHECK(is_irreducible(P("x^2+x+1", 2)));
    CHECK_FALSE(is_irreducible(P("x^2+1", 2)));
    CHECK(is_irreducible(P("x^2+1", 3)));
    CHECK_THROWS_AS(is_irreducible(FpPoly::constant(2, 1)), std::domain_error);
    // count monic irreducibles of degree d over F_p against the necklace formula
    auto mobius = [](u64 n) {
        int mu = 1;
        for (auto [q, e] : factor(n)) {
            if (e > 1) return 0;
            mu = -mu;
        }
        return mu;
    };
    for (u64 p : {2, 3, 5})
        for (unsigned d = 1; ipow(p, d) <= 4000; ++d) {
            u64 count = 0;
            for (u64 c = 0; c < ipow(p, d); ++c)
                count += is_irreducible(FpPoly::from_code(p, c + ipow(p, d)));
            std::int64_t expect = 0;
            for (u64 k : divisors(d)) expect += mobius(d / k) * static_cast<std::int64_t>(ipow(p, k));
            REQUIRE(count * d == static_cast<u64>(expect));
        }
}

TEST_CASE("factorization multiplies back") {
    for (u64 p : {2, 3, 5})
        for (u64 c = 1; c < 3000 && c < ipow(p, 7); c += 7) {
            FpPoly Q = FpPoly::from_code(p, c);
            if (Q.degree() < 1) continue;
            FpPoly prod = FpPoly::constant(p, Q.lead());
            for (auto& f : factor_poly(Q)) {
                REQUIRE(is_irreducible(f.poly));
                prod = prod * pow(f.poly, f.multiplicity);
            }
            REQUIRE(prod == Q);
        }
}

TEST_CASE("poly_order") {
    CHECK(poly_order(P("x-1", 2)) == 1);
    CHECK(poly_order(pow(P("x-1", 2), 2)) == 2);
    CHECK(poly_order(pow(P("x-1", 2), 3)) == 4);
    CHECK(poly_order(P("x^2+x+1", 2)) == 3);
    CHECK_THROWS_AS(poly_order(P("x^2+x", 2)), std::domain_error);
}

TEST_CASE("order of powers of irreducibles") {
    for (u64 p : {2, 3, 5})
        for (unsigned d = 1; d <= 4; ++d)
            for (u64 c = 0; c < ipow(p, d); ++c) {
                FpPoly Q = FpPoly::from_code(p, c + ipow(p, d));
                if (Q.coeff(0) == 0 || !is_irreducible(Q)) continue;
                u64 o = poly_order(Q);
                for (unsigned k = 1; k <= 4; ++k) {
                    u64 corr = 1;
                    while (corr < k) corr *= p;
                    FpPoly Qk = pow(Q, k);
                    u64 ok = poly_order(Qk);
                    REQUIRE(ok == o * corr);
                    if (ok <= 2000) REQUIRE(naive_order(Qk, 2000) == ok);
                }
            }
}

TEST_CASE("primitivity") {
    CHECK(is_primitive(P("x^2+x+1", 2)));
    CHECK_FALSE(is_primitive(P("x^4+x^3+x^2+x+1", 2)));
    CHECK(poly_order(P("x^4+x^3+x^2+x+1", 2)) == 5);
    CHECK_THROWS_AS(is_primitive(P("x^2+1", 2)), std::domain_error);
    for (u64 p : {3, 5, 7, 11, 13})
        for (u64 g = 1; g < p; ++g)
            CHECK(is_primitive(FpPoly::linear(p, g)) == (mult_order(static_cast<std::int64_t>(g), p) == p - 1));
}

TEST_CASE("enumeration") {
    CHECK(enum_primitive(2, 2) == std::vector<FpPoly>{P("x^2+x+1", 2)});
    CHECK(enum_primitive(2, 4) == std::vector<FpPoly>{P("x^4+x+1", 2), P("x^4+x^3+1", 2)});
    CHECK(enum_primitive(2, 5).size() == 6);
    // top of the 64-bit code range
    CHECK(first_primitive(2, 63) == std::optional<FpPoly>(P("x^63+x+1", 2)));
    CHECK(first_primitive(3, 2) == std::optional<FpPoly>(P("x^2+x+2", 3)));
    for (u64 p : {2, 3, 5})
        for (unsigned d = 1; d <= 8 && ipow(p, d) <= 400000; ++d) {
            auto v = enum_primitive(p, d);
            REQUIRE(v.size() == euler_phi(ipow(p, d) - 1) / d);
            CHECK(v.size() == primitive_count(p, d));
            CHECK(std::is_sorted(v.begin(), v.end()));
        }
}

TEST_CASE("companion matrices") {
    CHECK(companion(P("x-1", 2)) == ModMatrix::identity(2, 1));
    CHECK(companion(P("x^2+x+1", 2)) == ModMatrix::from_rows(2, {{0, 1}, {1, 1}}));
    CHECK(companion(pow(P("x-2", 3), 2)) == ModMatrix::from_rows(3, {{0, 2}, {1, 1}}));
    CHECK_THROWS_AS(companion(P("2x+1", 3)), std::domain_error);
    CHECK(charpoly(companion(P("x^4+x^3+1", 2))) == P("x^4+x^3+1", 2));
}

TEST_CASE("companion order equals polynomial order") {
    for (u64 p : {2, 3, 5})
        for (unsigned d = 1; d <= 4; ++d)
            for (u64 c = 0; c < ipow(p, d); ++c) {
                FpPoly Q = FpPoly::from_code(p, c + ipow(p, d));
                if (Q.coeff(0) == 0) continue;
                REQUIRE(naive_matrix_order(companion(Q), 1000) == poly_order(Q));
            }
}

}
