#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fdgl/numtheory.hpp"

namespace fdgl {

class FpPoly {
public:
    FpPoly() = default;
    explicit FpPoly(u64 p);
    FpPoly(u64 p, std::vector<u64> coeffs_low_first);

    static FpPoly constant(u64 p, u64 c);
    static FpPoly monomial(u64 p, unsigned deg, u64 c = 1);
    static FpPoly x(u64 p) { return monomial(p, 1); }
    // x - g
    static FpPoly linear(u64 p, u64 g);

    u64 modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const std::vector<u64>& coeffs() const { return c_; }
    u64 coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    u64 lead() const { return c_.empty() ? 0 : c_.back(); }
    u64 eval(u64 x) const;
    FpPoly monic() const;

    // ascending integer code sum c_i p^i; defines the enumeration order
    u64 code() const;
    static FpPoly from_code(u64 p, u64 code);

    std::string str() const;       // "x^4+x+1"
    std::string str_full() const;  // "x^4+x+1 mod 2"

    bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator<(const FpPoly& o) const;

private:
    void trim();
    u64 p_ = 2;
    std::vector<u64> c_;
};

FpPoly operator+(const FpPoly& a, const FpPoly& b);
FpPoly operator-(const FpPoly& a, const FpPoly& b);
FpPoly operator-(const FpPoly& a);
FpPoly operator*(const FpPoly& a, const FpPoly& b);
FpPoly scale(const FpPoly& a, u64 c);

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
FpPoly operator%(const FpPoly& a, const FpPoly& b);
FpPoly operator/(const FpPoly& a, const FpPoly& b);
FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m);
FpPoly pow_mod(const FpPoly& base, const BigInt& e, const FpPoly& m);
FpPoly pow_mod(const FpPoly& base, u64 e, const FpPoly& m);
FpPoly pow(const FpPoly& base, unsigned e);
FpPoly gcd(const FpPoly& a, const FpPoly& b);  // monic, gcd(0,0) = 0
FpPoly derivative(const FpPoly& a);

bool is_irreducible(const FpPoly& P);

struct PolyFactor {
    FpPoly poly;  // monic irreducible
    unsigned multiplicity;
    bool operator==(const PolyFactor&) const = default;
};

// monic factorization, ascending by (degree, code); leading constant dropped
std::vector<PolyFactor> factor_poly(const FpPoly& P, u64 seed = 0x9e3779b97f4a7c15ull);

// least o with Q | x^o - 1
u64 poly_order(const FpPoly& Q);
bool is_primitive(const FpPoly& P);

// monic primitive polynomials of degree d, ascending code
std::vector<FpPoly> enum_primitive(u64 p, unsigned d);
std::optional<FpPoly> first_primitive(u64 p, unsigned d);
// phi(p^d - 1)/d
u64 primitive_count(u64 p, unsigned d);

// "x^4+x+1 mod 2", "x^2+1@3", or plain text with p given
FpPoly parse_poly(std::string_view text);
FpPoly parse_poly(std::string_view text, u64 p);

}  // namespace fdgl
