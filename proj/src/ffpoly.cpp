#include "fdgl/ffpoly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fdgl {

namespace {

void check_same(const FpPoly& a, const FpPoly& b) {
    if (a.modulus() != b.modulus()) throw std::domain_error("polynomials over different primes");
}

u64 addm(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}

u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

}  // namespace

FpPoly::FpPoly(u64 p) : p_(p) {
    if (p < 2) throw std::domain_error("FpPoly: modulus must be prime");
}

FpPoly::FpPoly(u64 p, std::vector<u64> c) : p_(p), c_(std::move(c)) {
    if (p < 2) throw std::domain_error("FpPoly: modulus must be prime");
    for (auto& x : c_) x %= p_;
    trim();
}

void FpPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::constant(u64 p, u64 c) { return FpPoly(p, {c}); }

FpPoly FpPoly::monomial(u64 p, unsigned deg, u64 c) {
    std::vector<u64> v(deg + 1, 0);
    v[deg] = c;
    return FpPoly(p, std::move(v));
}

FpPoly FpPoly::linear(u64 p, u64 g) { return FpPoly(p, {(p - g % p) % p, 1}); }

u64 FpPoly::eval(u64 x) const {
    u64 r = 0;
    x %= p_;
    for (size_t i = c_.size(); i-- > 0;) r = addm(mulmod(r, x, p_), c_[i], p_);
    return r;
}

FpPoly FpPoly::monic() const {
    if (c_.empty()) return *this;
    return scale(*this, inverse_mod(c_.back(), p_));
}

u64 FpPoly::code() const {
    u64 r = 0;
    for (size_t i = c_.size(); i-- > 0;) {
        auto x = checked_mul(r, p_);
        if (!x || *x + c_[i] < *x) throw CapacityError("polynomial code exceeds 64 bits");
        r = *x + c_[i];
    }
    return r;
}

FpPoly FpPoly::from_code(u64 p, u64 code) {
    std::vector<u64> v;
    while (code) {
        v.push_back(code % p);
        code /= p;
    }
    return FpPoly(p, std::move(v));
}

bool FpPoly::operator<(const FpPoly& o) const {
    if (p_ != o.p_) return p_ < o.p_;
    if (degree() != o.degree()) return degree() < o.degree();
    for (size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

std::string FpPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        u64 c = c_[i];
        if (!c) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << c;
            continue;
        }
        if (c != 1) os << c;
        os << "x";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

std::string FpPoly::str_full() const { return str() + " mod " + std::to_string(p_); }

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    check_same(a, b);
    u64 p = a.modulus();
    std::vector<u64> v(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (size_t i = 0; i < v.size(); ++i) v[i] = addm(a.coeff(i), b.coeff(i), p);
    return FpPoly(p, std::move(v));
}

FpPoly operator-(const FpPoly& a) {
    std::vector<u64> v = a.coeffs();
    for (auto& x : v) x = (a.modulus() - x) % a.modulus();
    return FpPoly(a.modulus(), std::move(v));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) { return a + (-b); }

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    check_same(a, b);
    u64 p = a.modulus();
    if (a.is_zero() || b.is_zero()) return FpPoly(p);
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<u64> v(x.size() + y.size() - 1, 0);
    for (size_t i = 0; i < x.size(); ++i) {
        if (!x[i]) continue;
        for (size_t j = 0; j < y.size(); ++j) v[i + j] = addm(v[i + j], mulmod(x[i], y[j], p), p);
    }
    return FpPoly(p, std::move(v));
}

FpPoly scale(const FpPoly& a, u64 c) {
    std::vector<u64> v = a.coeffs();
    for (auto& x : v) x = mulmod(x, c % a.modulus(), a.modulus());
    return FpPoly(a.modulus(), std::move(v));
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
    check_same(a, b);
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    u64 p = a.modulus();
    if (a.degree() < b.degree()) return {FpPoly(p), a};
    std::vector<u64> r = a.coeffs();
    const auto& d = b.coeffs();
    size_t db = d.size() - 1;
    u64 inv = inverse_mod(d.back(), p);
    std::vector<u64> q(r.size() - db, 0);
    for (size_t i = r.size(); i-- > db;) {
        u64 c = mulmod(r[i], inv, p);
        if (!c) continue;
        q[i - db] = c;
        for (size_t j = 0; j <= db; ++j) r[i - db + j] = subm(r[i - db + j], mulmod(c, d[j], p), p);
    }
    r.resize(db);
    return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
}

FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }
FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }

FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m) { return (a * b) % m; }

FpPoly pow_mod(const FpPoly& base, const BigInt& e, const FpPoly& m) {
    if (e < 0) throw std::domain_error("negative exponent");
    FpPoly r = FpPoly::constant(base.modulus(), 1) % m;
    FpPoly b = base % m;
    unsigned bits = e == 0 ? 0 : static_cast<unsigned>(msb(e)) + 1;
    for (unsigned i = bits; i-- > 0;) {
        r = mulmod(r, r, m);
        if (bit_test(e, i)) r = mulmod(r, b, m);
    }
    return r;
}

FpPoly pow_mod(const FpPoly& base, u64 e, const FpPoly& m) { return pow_mod(base, BigInt(e), m); }

FpPoly pow(const FpPoly& base, unsigned e) {
    FpPoly r = FpPoly::constant(base.modulus(), 1);
    for (unsigned i = 0; i < e; ++i) r = r * base;
    return r;
}

FpPoly gcd(const FpPoly& a_in, const FpPoly& b_in) {
    check_same(a_in, b_in);
    FpPoly a = a_in, b = b_in;
    while (!b.is_zero()) {
        FpPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FpPoly derivative(const FpPoly& a) {
    u64 p = a.modulus();
    if (a.degree() < 1) return FpPoly(p);
    std::vector<u64> v(a.coeffs().size() - 1);
    for (size_t i = 1; i < a.coeffs().size(); ++i) v[i - 1] = mulmod(a.coeffs()[i], i % p, p);
    return FpPoly(p, std::move(v));
}

namespace {

// x^(p^k) mod m, by k Frobenius steps
FpPoly frob_power(const FpPoly& h, unsigned k, const FpPoly& m) {
    FpPoly r = h % m;
    for (unsigned i = 0; i < k; ++i) r = pow_mod(r, m.modulus(), m);
    return r;
}

// p-th root of a polynomial whose derivative vanishes
FpPoly pth_root(const FpPoly& f) {
    u64 p = f.modulus();
    std::vector<u64> v;
    for (size_t i = 0; i < f.coeffs().size(); i += p) v.push_back(f.coeffs()[i]);
    // coefficients of F_p are fixed by Frobenius
    return FpPoly(p, std::move(v));
}

void square_free(const FpPoly& f, unsigned mult, std::vector<std::pair<FpPoly, unsigned>>& out) {
    u64 p = f.modulus();
    FpPoly one = FpPoly::constant(p, 1);
    FpPoly c = gcd(f, derivative(f));
    FpPoly w = f / c;
    unsigned i = 1;
    while (w.degree() > 0) {
        FpPoly y = gcd(w, c);
        FpPoly fac = w / y;
        if (fac.degree() > 0) out.push_back({fac.monic(), i * mult});
        w = y;
        c = c / y;
        ++i;
    }
    if (c.degree() > 0) square_free(pth_root(c.monic()), mult * static_cast<unsigned>(p), out);
}

std::vector<std::pair<FpPoly, unsigned>> distinct_degree(FpPoly f) {
    u64 p = f.modulus();
    std::vector<std::pair<FpPoly, unsigned>> out;
    FpPoly X = FpPoly::x(p);
    FpPoly w = X % f;
    unsigned i = 1;
    while (f.degree() >= 2 * static_cast<int>(i)) {
        w = pow_mod(w, p, f);
        FpPoly g = gcd(w - X, f);
        if (g.degree() > 0) {
            out.push_back({g, i});
            f = f / g;
            w = w % f;
        }
        ++i;
    }
    if (f.degree() > 0) out.push_back({f.monic(), static_cast<unsigned>(f.degree())});
    return out;
}

void equal_degree(const FpPoly& f, unsigned d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    if (f.degree() == static_cast<int>(d)) {
        out.push_back(f.monic());
        return;
    }
    u64 p = f.modulus();
    std::uniform_int_distribution<u64> coef(0, p - 1);
    BigInt e = (boost::multiprecision::pow(BigInt(p), d) - 1) / 2;
    for (;;) {
        std::vector<u64> v(static_cast<size_t>(f.degree()));
        for (auto& x : v) x = coef(rng);
        FpPoly a(p, std::move(v));
        if (a.degree() < 1) continue;
        FpPoly b;
        if (p == 2) {
            // trace map a + a^2 + ... + a^(2^(d-1))
            FpPoly t = a % f, s = a % f;
            for (unsigned k = 1; k < d; ++k) {
                t = mulmod(t, t, f);
                s = s + t;
            }
            b = s;
        } else {
            b = pow_mod(a, e, f) - FpPoly::constant(p, 1);
        }
        FpPoly g = gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
    }
}

}  // namespace

bool is_irreducible(const FpPoly& P_in) {
    if (P_in.degree() < 1) throw std::domain_error("is_irreducible: constant polynomial");
    FpPoly P = P_in.monic();
    u64 p = P.modulus();
    unsigned n = static_cast<unsigned>(P.degree());
    if (n == 1) return true;
    FpPoly X = FpPoly::x(p);
    if (!(frob_power(X, n, P) == X % P)) return false;
    for (auto& q : factor(static_cast<u64>(n))) {
        FpPoly h = frob_power(X, n / static_cast<unsigned>(q.prime), P);
        if (gcd(h - X, P).degree() != 0) return false;
    }
    return true;
}

std::vector<PolyFactor> factor_poly(const FpPoly& P, u64 seed) {
    if (P.is_zero()) throw std::domain_error("factor_poly: zero polynomial");
    std::vector<PolyFactor> res;
    if (P.degree() == 0) return res;
    std::mt19937_64 rng(seed);
    std::vector<std::pair<FpPoly, unsigned>> sf;
    square_free(P.monic(), 1, sf);
    std::map<FpPoly, unsigned> acc;
    for (auto& [g, mult] : sf) {
        for (auto& [h, d] : distinct_degree(g)) {
            std::vector<FpPoly> parts;
            equal_degree(h, d, rng, parts);
            for (auto& q : parts) acc[q] += mult;
        }
    }
    for (auto& [q, m] : acc) res.push_back({q, m});
    return res;
}

namespace {

// order of x modulo irreducible P with P(0) != 0
u64 irreducible_order(const FpPoly& P) {
    u64 p = P.modulus();
    unsigned d = static_cast<unsigned>(P.degree());
    u64 N = ipow(p, d) - 1;
    FpPoly X = FpPoly::x(p);
    FpPoly one = FpPoly::constant(p, 1);
    u64 o = N;
    for (auto& q : factor(N)) {
        for (unsigned i = 0; i < q.exponent; ++i) {
            if (pow_mod(X, o / q.prime, P) == one)
                o /= q.prime;
            else
                break;
        }
    }
    return o;
}

// x has order exactly p^d - 1 mod P; implies P irreducible
bool has_full_order(const FpPoly& P, const Factorization& nf, u64 N) {
    FpPoly X = FpPoly::x(P.modulus());
    FpPoly one = FpPoly::constant(P.modulus(), 1);
    if (!(pow_mod(X, N, P) == one)) return false;
    for (auto& q : nf)
        if (pow_mod(X, N / q.prime, P) == one) return false;
    return true;
}

}  // namespace

u64 poly_order(const FpPoly& Q) {
    if (Q.degree() < 1) throw std::domain_error("poly_order: degree must be positive");
    if (Q.coeff(0) == 0) throw std::domain_error("poly_order: Q(0) = 0");
    u64 p = Q.modulus();
    u64 o = 1;
    for (auto& [P, k] : factor_poly(Q)) {
        u64 t = 1;
        while (t < k) t = *checked_mul(t, p);
        o = lcm(o, *checked_mul(irreducible_order(P), t));
    }
    return o;
}

bool is_primitive(const FpPoly& P) {
    if (P.degree() < 1 || !is_irreducible(P)) throw std::domain_error("is_primitive: input must be irreducible");
    if (P.coeff(0) == 0) return false;  // only x itself
    return poly_order(P) == ipow(P.modulus(), static_cast<unsigned>(P.degree())) - 1;
}

u64 primitive_count(u64 p, unsigned d) { return euler_phi(ipow(p, d) - 1) / d; }

std::optional<FpPoly> first_primitive(u64 p, unsigned d) {
    if (!is_prime(p)) throw std::domain_error("first_primitive: p must be prime");
    if (d == 0) throw std::domain_error("first_primitive: degree must be positive");
    u64 N = ipow(p, d) - 1;
    auto nf = factor(N);
    // monic codes of degree d are p^d + low with low < p^d
    u64 start = ipow(p, d);
    u64 scanned = 0;
    for (u64 low = 1; low < start; ++low) {
        u64 c = start + low;
        if (c % p == 0) continue;
        if (++scanned > limits().max_poly_scan) throw CapacityError("first_primitive: scan limit reached");
        FpPoly P = FpPoly::from_code(p, c);
        if (has_full_order(P, nf, N)) return P;
    }
    return std::nullopt;
}

std::vector<FpPoly> enum_primitive(u64 p, unsigned d) {
    // minimal polynomials of alpha^k over F_p, alpha a root of the first
    // primitive polynomial, k over cyclotomic coset leaders coprime to N
    auto P0 = first_primitive(p, d);
    if (!P0) throw std::logic_error("enum_primitive: no primitive polynomial found");
    if (d == 1) {
        std::vector<FpPoly> out;
        for (u64 g : primitive_roots(p, 1)) out.push_back(FpPoly::linear(p, g));
        std::sort(out.begin(), out.end());
        return out;
    }
    u64 N = ipow(p, d) - 1;
    u64 count = primitive_count(p, d);
    if (count > limits().max_poly_scan) throw CapacityError("enum_primitive: too many primitive polynomials");
    std::vector<bool> seen(N, false);
    std::vector<FpPoly> out;
    out.reserve(count);
    FpPoly X = FpPoly::x(p);
    for (u64 k = 1; k < N; ++k) {
        if (seen[k] || gcd(k, N) != 1) continue;
        // conjugates alpha^(k p^i)
        std::vector<FpPoly> roots;
        u64 e = k;
        do {
            seen[e] = true;
            roots.push_back(pow_mod(X, e, *P0));
            e = mulmod(e, p, N);
        } while (e != k);
        // prod (Y - r) with coefficients in F_p[x]/P0
        std::vector<FpPoly> poly{FpPoly::constant(p, 1)};
        for (auto& r : roots) {
            std::vector<FpPoly> next(poly.size() + 1, FpPoly(p));
            for (size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] = next[i + 1] + poly[i];
                next[i] = next[i] - mulmod(poly[i], r, *P0);
            }
            poly = std::move(next);
        }
        std::vector<u64> c;
        for (auto& q : poly) {
            if (q.degree() > 0) throw std::logic_error("enum_primitive: minimal polynomial outside F_p");
            c.push_back(q.coeff(0));
        }
        out.emplace_back(p, std::move(c));
    }
    std::sort(out.begin(), out.end());
    if (out.size() != count) throw std::logic_error("enum_primitive: count mismatch");
    return out;
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view s, u64 p) : s_(s), p_(p) {}

    FpPoly parse() {
        FpPoly r = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::domain_error("polynomial syntax: " + what + " in '" + std::string(s_) + "'");
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }
    u64 number() {
        skip();
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected number");
        BigInt v = 0;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) v = v * 10 + (s_[i_++] - '0');
        return static_cast<u64>(v % p_);
    }
    u64 exponent() {
        skip();
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected exponent");
        u64 v = 0;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            v = v * 10 + static_cast<u64>(s_[i_++] - '0');
            if (v > 100000) fail("exponent too large");
        }
        return v;
    }
    FpPoly expr() {
        FpPoly r(p_);
        bool neg = false;
        if (peek('-')) {
            ++i_;
            neg = true;
        } else if (peek('+')) {
            ++i_;
        }
        FpPoly t = term();
        r = neg ? -t : t;
        for (;;) {
            if (peek('+')) {
                ++i_;
                r = r + term();
            } else if (peek('-')) {
                ++i_;
                r = r - term();
            } else {
                return r;
            }
        }
    }
    bool starts_factor() {
        skip();
        if (i_ >= s_.size()) return false;
        char c = s_[i_];
        return c == '(' || c == 'x' || c == 'X' || std::isdigit(static_cast<unsigned char>(c));
    }
    FpPoly term() {
        FpPoly r = power();
        for (;;) {
            if (peek('*')) {
                ++i_;
                r = r * power();
            } else if (starts_factor()) {
                r = r * power();  // implicit product, e.g. 2x
            } else {
                return r;
            }
        }
    }
    FpPoly power() {
        FpPoly b = primary();
        if (peek('^')) {
            ++i_;
            b = pow(b, static_cast<unsigned>(exponent()));
        }
        return b;
    }
    FpPoly primary() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            FpPoly r = expr();
            if (!peek(')')) fail("missing ')'");
            ++i_;
            return r;
        }
        if (c == 'x' || c == 'X') {
            ++i_;
            return FpPoly::x(p_);
        }
        return FpPoly::constant(p_, number());
    }

    std::string_view s_;
    u64 p_;
    size_t i_ = 0;
};

}  // namespace

FpPoly parse_poly(std::string_view text, u64 p) {
    if (!is_prime(p)) throw std::domain_error("polynomial modulus " + std::to_string(p) + " is not prime");
    return PolyParser(text, p).parse();
}

FpPoly parse_poly(std::string_view text) {
    std::string_view body, mod;
    auto at = text.rfind('@');
    auto m = text.rfind("mod");
    if (at != std::string_view::npos) {
        body = text.substr(0, at);
        mod = text.substr(at + 1);
    } else if (m != std::string_view::npos) {
        body = text.substr(0, m);
        mod = text.substr(m + 3);
    } else {
        throw std::domain_error("polynomial '" + std::string(text) + "' lacks 'mod p' or '@p'");
    }
    std::string ms(mod);
    ms.erase(std::remove_if(ms.begin(), ms.end(), [](unsigned char c) { return std::isspace(c); }), ms.end());
    if (ms.empty() || !std::all_of(ms.begin(), ms.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw std::domain_error("bad modulus in '" + std::string(text) + "'");
    return parse_poly(body, std::stoull(ms));
}

}  // namespace fdgl
