#include <doctest.h>

#include <numeric>

#include "fdgl/numtheory.hpp"

using namespace fdgl;

namespace {

// plain trial division, used as the oracle
Factorization naive_factor(u64 n) {
    Factorization f;
    for (u64 p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) n /= p, ++e;
        if (e) f.push_back({p, e});
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

u64 naive_phi(u64 n) {
    u64 c = 0;
    for (u64 k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
    return c;
}

}  // namespace

TEST_SUITE("numtheory") {

TEST_CASE("factor examples") {
    CHECK(factor(u64(1)).empty());
    CHECK(factor(u64(12)) == Factorization{{2, 2}, {3, 1}});
    CHECK(factor(u64(2047)) == Factorization{{23, 1}, {89, 1}});
    CHECK(factor(u64(2047)) == naive_factor(2047));
}

TEST_CASE("factor agrees with trial division and multiplies back") {
    for (u64 n = 1; n <= 20000; ++n) {
        auto f = factor(n);
        REQUIRE(f == naive_factor(n));
        CHECK(multiply_out(f) == n);
    }
}

TEST_CASE("factor large inputs") {
    // 2^64 - 1 = 3 5 17 257 641 65537 6700417
    auto f = factor(~u64(0));
    CHECK(f == Factorization{{3, 1}, {5, 1}, {17, 1}, {257, 1}, {641, 1}, {65537, 1}, {6700417, 1}});
    u64 p = 4294967291ull, q = 4294967279ull;  // two primes near 2^32
    CHECK(factor(p * q) == Factorization{{q, 1}, {p, 1}});
    CHECK(factor(u64(18446744073709551557ull)) == Factorization{{18446744073709551557ull, 1}});
    // 2^61 - 1 is prime, 2^59 - 1 = 179951 3203431780337
    CHECK(factor((u64(1) << 61) - 1).size() == 1);
    CHECK(factor((u64(1) << 59) - 1) == Factorization{{179951, 1}, {3203431780337ull, 1}});
    CHECK_THROWS_AS(factor(u64(0)), std::domain_error);
}

TEST_CASE("factor BigInt") {
    BigInt n = BigInt(1) << 64;
    CHECK(factor(n) == Factorization{{2, 64}});
    BigInt big = BigInt(1000003) * BigInt(~u64(0));
    auto f = factor(big);
    CHECK(f.front() == PrimePower{3, 1});
    CHECK(f.size() == 8);
}

TEST_CASE("euler_phi") {
    CHECK(euler_phi(9) == 6);
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(15) == 8);
    CHECK(euler_phi(15) == naive_phi(15));
    for (u64 n = 1; n <= 600; ++n) REQUIRE(euler_phi(n) == naive_phi(n));
    // multiplicative on coprime pairs
    for (u64 a = 1; a <= 60; ++a)
        for (u64 b = 1; b <= 60; ++b)
            if (std::gcd(a, b) == 1) REQUIRE(euler_phi(a * b) == euler_phi(a) * euler_phi(b));
    for (u64 p : {2, 3, 5, 7, 11})
        for (unsigned k = 1; k <= 5; ++k) CHECK(euler_phi(ipow(p, k)) == ipow(p, k - 1) * (p - 1));
}

TEST_CASE("mult_order") {
    CHECK(mult_order(1, 17) == 1);
    CHECK(mult_order(2, 3) == 2);
    CHECK(mult_order(2, 7) == 3);
    CHECK(mult_order(-1, 7) == 2);
    CHECK_THROWS_AS(mult_order(6, 9), std::domain_error);
    for (u64 n = 2; n <= 300; ++n)
        for (u64 a = 1; a < n; ++a) {
            if (std::gcd(a, n) != 1) continue;
            u64 k = mult_order(static_cast<std::int64_t>(a), n);
            REQUIRE(euler_phi(n) % k == 0);
            REQUIRE(powmod(a, k, n) == 1);
            u64 naive = 1, x = a % n;
            while (x != 1 % n) x = x * a % n, ++naive;
            REQUIRE(k == naive);
        }
}

TEST_CASE("primitive_roots") {
    CHECK(primitive_roots(2, 2) == std::vector<u64>{3});
    CHECK(primitive_roots(2, 1) == std::vector<u64>{1});
    CHECK(primitive_roots(3, 2) == std::vector<u64>{2, 5});
    CHECK(primitive_roots(7, 1) == std::vector<u64>{3, 5});
    CHECK_THROWS_AS(primitive_roots(2, 3), std::domain_error);
    for (u64 p : {3, 5, 7, 11, 13})
        for (unsigned m = 1; ipow(p, m) < 3000; ++m) {
            u64 q = ipow(p, m);
            auto r = primitive_roots(p, m);
            CHECK(r.size() == euler_phi(euler_phi(q)));
            for (u64 g : r) REQUIRE(mult_order(static_cast<std::int64_t>(g), q) == euler_phi(q));
            CHECK(std::is_sorted(r.begin(), r.end()));
        }
}

TEST_CASE("full divisors and T0") {
    CHECK(t0_set(1).divisors == std::vector<u64>{1});
    CHECK(full_divisors(12).divisors == std::vector<u64>{1, 3, 4, 12});
    CHECK(full_divisors(21).divisors == std::vector<u64>{1, 3, 7, 21});
    CHECK(t0_set(21).divisors == std::vector<u64>{1, 3, 7});
    for (u64 n = 1; n <= 3000; ++n) {
        auto T = full_divisors(n);
        for (u64 d : divisors(n)) {
            bool full = true;
            for (auto [p, e] : factor(d)) full = full && valuation(n, p) == e;
            bool listed = std::find(T.divisors.begin(), T.divisors.end(), d) != T.divisors.end();
            REQUIRE(full == listed);
        }
        for (u64 t : t0_set(n).divisors) {
            REQUIRE(is_power_of_two(t + 1));
            REQUIRE(std::find(T.divisors.begin(), T.divisors.end(), t) != T.divisors.end());
        }
    }
}

TEST_CASE("rational helpers") {
    CHECK(to_string(parse_rational("6/8")) == "3/4");
    CHECK(to_string(parse_rational("1")) == "1");
    CHECK_THROWS(parse_rational("x/2"));
    CHECK_THROWS_AS(ipow(2, 64), CapacityError);
    CHECK_THROWS_AS(lcm(u64(1) << 40, (u64(1) << 40) - 1), CapacityError);
}

}
