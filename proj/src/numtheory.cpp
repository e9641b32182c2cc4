#include "fdgl/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fdgl {

namespace {

constexpr u64 kSieveLimit = 1000000;

const std::vector<u64>& small_primes() {
    static const std::vector<u64> primes = [] {
        std::vector<bool> comp(kSieveLimit, false);
        std::vector<u64> out;
        for (u64 i = 2; i < kSieveLimit; ++i) {
            if (comp[i]) continue;
            out.push_back(i);
            for (u64 j = i * i; j < kSieveLimit; j += i) comp[j] = true;
        }
        return out;
    }();
    return primes;
}

bool miller_rabin(u64 n, u64 a) {
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u64 x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Brent's variant; n odd composite, no small factors
u64 rho(u64 n) {
    u64 c = 1;
    for (;;) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min<u64>(128, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd(q, n);
                k += 128;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
        ++c;
    }
}

void factor_large(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = rho(n);
    factor_large(d, out);
    factor_large(n / d, out);
}

Factorization collect(std::vector<u64>& primes) {
    std::sort(primes.begin(), primes.end());
    Factorization f;
    for (u64 p : primes) {
        if (!f.empty() && f.back().prime == p)
            ++f.back().exponent;
        else
            f.push_back({p, 1});
    }
    return f;
}

}  // namespace

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

std::optional<u64> checked_mul(u64 a, u64 b) {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
    return r;
}

u64 lcm(u64 a, u64 b) {
    if (a == 0 || b == 0) return 0;
    auto r = checked_mul(a / gcd(a, b), b);
    if (!r) throw CapacityError("lcm exceeds 64 bits");
    return *r;
}

u64 ipow(u64 b, unsigned e) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        auto x = checked_mul(r, b);
        if (!x) throw CapacityError("power exceeds 64 bits");
        r = *x;
    }
    return r;
}

unsigned valuation(u64 n, u64 p) {
    if (n == 0) throw std::domain_error("valuation of 0");
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

bool is_power_of_two(u64 n) { return n != 0 && (n & (n - 1)) == 0; }

unsigned log2_exact(u64 n) {
    if (!is_power_of_two(n)) throw std::domain_error("not a power of two");
    return static_cast<unsigned>(__builtin_ctzll(n));
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    // these bases are deterministic for all n < 3.3e24
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

Factorization factor(u64 n) {
    if (n == 0) throw std::domain_error("factor(0)");
    std::vector<u64> primes;
    for (u64 p : small_primes()) {
        if (p * p > n) break;
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    if (n > 1) {
        if (n < kSieveLimit * kSieveLimit) {
            primes.push_back(n);  // no factor below sqrt(n)
        } else {
            factor_large(n, primes);
        }
    }
    return collect(primes);
}

Factorization factor(const BigInt& n_in) {
    if (n_in <= 0) throw std::domain_error("factor of non-positive integer");
    if (n_in <= BigInt(std::numeric_limits<u64>::max())) return factor(static_cast<u64>(n_in));
    BigInt n = n_in;
    std::vector<u64> primes;
    for (u64 p : small_primes()) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    if (n > BigInt(std::numeric_limits<u64>::max()))
        throw CapacityError("factor: cofactor beyond 2^64 after trial division");
    auto rest = factor(static_cast<u64>(n));
    for (auto& pp : rest)
        for (unsigned i = 0; i < pp.exponent; ++i) primes.push_back(pp.prime);
    return collect(primes);
}

u64 multiply_out(const Factorization& f) {
    u64 r = 1;
    for (auto& pp : f) {
        auto x = checked_mul(r, ipow(pp.prime, pp.exponent));
        if (!x) throw CapacityError("product exceeds 64 bits");
        r = *x;
    }
    return r;
}

std::optional<PrimePower> as_prime_power(u64 n) {
    if (n < 2) return std::nullopt;
    auto f = factor(n);
    if (f.size() != 1) return std::nullopt;
    return f[0];
}

u64 inverse_mod(u64 a, u64 m) {
    if (m == 1) return 0;
    __int128 t = 0, nt = 1;
    __int128 r = m, nr = a % m;
    while (nr) {
        __int128 q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) throw std::domain_error("not invertible modulo " + std::to_string(m));
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

std::string to_string(const Factorization& f) {
    std::ostringstream os;
    for (size_t i = 0; i < f.size(); ++i) {
        if (i) os << " * ";
        os << f[i].prime;
        if (f[i].exponent > 1) os << "^" << f[i].exponent;
    }
    if (f.empty()) os << "1";
    return os.str();
}

u64 euler_phi(u64 n) {
    if (n == 0) throw std::domain_error("euler_phi(0)");
    u64 r = 1;
    for (auto& pp : factor(n)) r *= ipow(pp.prime, pp.exponent - 1) * (pp.prime - 1);
    return r;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> d{1};
    for (auto& pp : factor(n)) {
        size_t sz = d.size();
        u64 q = 1;
        for (unsigned e = 1; e <= pp.exponent; ++e) {
            q *= pp.prime;
            for (size_t i = 0; i < sz; ++i) d.push_back(d[i] * q);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> out;
    for (auto& pp : factor(n)) out.push_back(pp.prime);
    return out;
}

u64 mult_order(u64 a, u64 n, const Factorization& lam) {
    // lam: factorization of a multiple of the order (phi(n) usually)
    if (n == 1) return 1;
    a %= n;
    if (gcd(a, n) != 1) throw std::domain_error("mult_order: gcd(a, n) != 1");
    u64 k = multiply_out(lam);
    if (powmod(a, k, n) != 1) throw std::domain_error("mult_order: exponent is not a multiple of the order");
    for (auto& pp : lam) {
        for (unsigned i = 0; i < pp.exponent; ++i) {
            if (k % pp.prime == 0 && powmod(a, k / pp.prime, n) == 1)
                k /= pp.prime;
            else
                break;
        }
    }
    return k;
}

u64 mult_order(std::int64_t a, u64 n) {
    if (n == 0) throw std::domain_error("mult_order: modulus 0");
    std::int64_t r = a % static_cast<std::int64_t>(n);
    if (r < 0) r += static_cast<std::int64_t>(n);
    return mult_order(static_cast<u64>(r), n, factor(euler_phi(n)));
}

std::vector<u64> primitive_roots(u64 p, unsigned m) {
    if (m == 0) throw std::domain_error("primitive_roots: m must be positive");
    if (p == 2) {
        if (m == 1) return {1};
        if (m == 2) return {3};
        throw std::domain_error("primitive_roots: (Z/2^m)^* is not cyclic for m >= 3");
    }
    if (!is_prime(p)) throw std::domain_error("primitive_roots: p must be prime");
    u64 q = ipow(p, m);
    u64 ph = q / p * (p - 1);
    auto pf = factor(ph);
    std::vector<u64> out;
    for (u64 g = 1; g < q; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (auto& pp : pf) {
            if (powmod(g, ph / pp.prime, q) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(g);
    }
    return out;
}

FullDivisorSet full_divisors(u64 n) {
    if (n == 0) throw std::domain_error("full_divisors(0)");
    FullDivisorSet s;
    s.base = n;
    s.divisors = {1};
    for (auto& pp : factor(n)) {
        u64 q = ipow(pp.prime, pp.exponent);
        size_t sz = s.divisors.size();
        for (size_t i = 0; i < sz; ++i) s.divisors.push_back(s.divisors[i] * q);
    }
    std::sort(s.divisors.begin(), s.divisors.end());
    return s;
}

FullDivisorSet t0_set(u64 n) {
    auto s = full_divisors(n);
    std::erase_if(s.divisors, [](u64 t) { return !is_power_of_two(t + 1); });
    return s;
}

std::string to_string(const Rational& r) { return r.str(); }

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt a(s.substr(0, slash)), b(s.substr(slash + 1));
        if (b == 0) throw std::domain_error("zero denominator");
        return Rational(a, b);
    } catch (const std::runtime_error&) {
        throw std::domain_error("malformed rational '" + s + "'");
    }
}

}  // namespace fdgl
