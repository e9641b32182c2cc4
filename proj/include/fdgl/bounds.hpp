#pragma once

#include <string>
#include <vector>

#include "fdgl/fdg.hpp"

namespace fdgl {

struct RationalInterval {
    Rational lo, hi;

    RationalInterval() = default;
    RationalInterval(Rational l, Rational h);  // domain_error if l > h
    static RationalInterval point(const Rational& x) { return {x, x}; }
    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const RationalInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool below(const RationalInterval& o) const { return hi < o.lo; }
};
// both operands nonnegative
RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator*(const Rational& c, const RationalInterval& a);

// floor(x * 10^k) rendered as "0.xxxx"; x >= 0
std::string decimal_floor(const Rational& x, unsigned k);
// digits shared by floor renderings of lo and hi, at most k of them
std::string certified_decimal(const RationalInterval& I, unsigned k);
// true iff d <= lo and hi < d + 10^-k, where d has k decimals
bool pins_digits(const RationalInterval& I, const std::string& decimal);
Rational parse_decimal(const std::string& s);

// exp(-x) for rational x > 0; alternating Taylor sums, remainder below tol
RationalInterval exp_neg(const Rational& x, const Rational& tol = Rational(1, BigInt(1) << 80));

// prod_{n >= m} (1 - 2^-n), lower end from the exponential tail estimate
RationalInterval tail_bounds(unsigned m);
// prod over primes p >= q of (1 - 2^-p), by the same estimate, q >= 2
RationalInterval prime_tail(u64 q);

// partial products over primes up to `cut` plus the tail estimate
RationalInterval rho0(u64 cut = 37);
RationalInterval rho1(u64 cut = 37);
RationalInterval prime_product(u64 cut = 37);  // prod over all primes

struct BoundVerdict {
    std::string id;
    RationalInterval value;  // the lower-bound product
    std::string claim;
    bool verified = false;
};
std::vector<BoundVerdict> anlem_certify(unsigned max_degree = 22);

struct GapViolation {
    Rational lambda;
    std::string shape;
};
// candidate lambda values of the classified shapes with |G| <= 2^log2_max_order, inside (lo, hi]
std::vector<GapViolation> gap_scan(const Rational& lo, const Rational& hi, unsigned log2_max_order = 60);

struct LimitTerm {
    u64 n = 0;
    unsigned degree = 0;
    Rational lambda;
    FpPoly witness;
};
// o from the odd primes of Lambda(base); with spec_variant, from the odd primes of |G|
struct LimitSequence {
    Rational rho;
    u64 Lambda = 0;
    u64 o = 1;
    std::vector<LimitTerm> terms;
};
LimitSequence limit_sequence(const FdgSpec& base, u64 n_max, bool spec_variant = false);

}  // namespace fdgl
