#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fdgl/errors.hpp"

namespace fdgl {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct PrimePower {
    u64 prime;
    unsigned exponent;
    bool operator==(const PrimePower&) const = default;
};
using Factorization = std::vector<PrimePower>;

// Trial division below 10^6, then Brent/Pollard rho with deterministic
// Miller-Rabin. Any n < 2^64 works. The BigInt overload takes n as long as
// the cofactor left after removing primes < 10^6 fits in 64 bits.
Factorization factor(u64 n);
Factorization factor(const BigInt& n);
u64 multiply_out(const Factorization& f);

bool is_prime(u64 n);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
u64 gcd(u64 a, u64 b);
u64 lcm(u64 a, u64 b);  // CapacityError on overflow
u64 ipow(u64 b, unsigned e);  // CapacityError on overflow
std::optional<u64> checked_mul(u64 a, u64 b);
unsigned valuation(u64 n, u64 p);
bool is_power_of_two(u64 n);
unsigned log2_exact(u64 n);  // n must be a power of two
std::optional<PrimePower> as_prime_power(u64 n);
u64 inverse_mod(u64 a, u64 m);  // domain_error if not a unit
std::string to_string(const Factorization& f);

u64 euler_phi(u64 n);
std::vector<u64> divisors(u64 n);
std::vector<u64> prime_divisors(u64 n);

// least k >= 1 with a^k = 1 mod n
u64 mult_order(std::int64_t a, u64 n);
u64 mult_order(u64 a, u64 n, const Factorization& phi_factors);

// all generators of (Z/p^m)^*; p^m in {2,4} allowed
std::vector<u64> primitive_roots(u64 p, unsigned m);

struct FullDivisorSet {
    u64 base = 1;
    std::vector<u64> divisors;
};
FullDivisorSet full_divisors(u64 n);
FullDivisorSet t0_set(u64 n);

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& s);

}  // namespace fdgl
