#include "fdgl/bounds.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace fdgl {

namespace {

Rational pow2_inv(unsigned n) { return Rational(BigInt(1), BigInt(1) << n); }
Rational one_minus(unsigned n) { return 1 - pow2_inv(n); }

u64 next_prime(u64 n) {
    u64 q = n + 1;
    while (!is_prime(q)) ++q;
    return q;
}

// prod of the listed factors and of all primes in [from, cut], times the tail beyond cut
RationalInterval product_with_tail(const std::vector<unsigned>& extra, u64 from, u64 cut) {
    Rational head = 1;
    for (unsigned n : extra) head *= one_minus(n);
    for (u64 p = from; p <= cut; ++p)
        if (is_prime(p)) head *= one_minus(static_cast<unsigned>(p));
    return RationalInterval::point(head) * prime_tail(next_prime(std::max<u64>(cut, from - 1)));
}

BigInt pow10(unsigned k) { return boost::multiprecision::pow(BigInt(10), k); }

BigInt floor_of(const Rational& x) {
    BigInt n = numerator(x), d = denominator(x);
    BigInt q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

std::string render(const BigInt& scaled, unsigned k) {
    std::string s = scaled.str();
    if (k == 0) return s;
    if (s.size() <= k) s.insert(0, k + 1 - s.size(), '0');
    s.insert(s.size() - k, ".");
    return s;
}

}  // namespace

RationalInterval::RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::domain_error("interval with lo > hi");
}

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
    if (a.lo < 0 || b.lo < 0) throw std::domain_error("interval product needs nonnegative operands");
    return {a.lo * b.lo, a.hi * b.hi};
}

RationalInterval operator*(const Rational& c, const RationalInterval& a) {
    if (c < 0) throw std::domain_error("negative scale");
    return {c * a.lo, c * a.hi};
}

std::string decimal_floor(const Rational& x, unsigned k) {
    if (x < 0) throw std::domain_error("decimal_floor of a negative number");
    return render(floor_of(x * pow10(k)), k);
}

std::string certified_decimal(const RationalInterval& I, unsigned k) {
    for (unsigned j = k + 1; j-- > 0;) {
        BigInt a = floor_of(I.lo * pow10(j)), b = floor_of(I.hi * pow10(j));
        if (a == b) return render(a, j);
    }
    return "?";
}

Rational parse_decimal(const std::string& s) {
    auto dot = s.find('.');
    std::string digits = s;
    unsigned k = 0;
    if (dot != std::string::npos) {
        digits = s.substr(0, dot) + s.substr(dot + 1);
        k = static_cast<unsigned>(s.size() - dot - 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad decimal: " + s);
    // a leading 0 would make cpp_int read octal
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    return Rational(BigInt(digits), pow10(k));
}

bool pins_digits(const RationalInterval& I, const std::string& decimal) {
    auto dot = decimal.find('.');
    unsigned k = dot == std::string::npos ? 0 : static_cast<unsigned>(decimal.size() - dot - 1);
    Rational d = parse_decimal(decimal);
    return d <= I.lo && I.hi < d + Rational(BigInt(1), pow10(k));
}

RationalInterval exp_neg(const Rational& x, const Rational& tol) {
    if (x < 0) throw std::domain_error("exp_neg needs x >= 0");
    if (x == 0) return RationalInterval::point(1);
    // terms decrease once k > x, from then on consecutive partial sums bracket the limit
    BigInt start = floor_of(x) + 1;
    Rational term = 1, sum = 1;
    unsigned k = 0;
    for (;;) {
        Rational next = term * x / (k + 1);
        Rational nsum = sum;
        if (k % 2 == 0) nsum -= next; else nsum += next;
        ++k;
        if (BigInt(k) > start && next < tol) {
            return sum < nsum ? RationalInterval(sum, nsum) : RationalInterval(nsum, sum);
        }
        term = next;
        sum = nsum;
    }
}

RationalInterval tail_bounds(unsigned m) {
    if (m == 0) throw std::domain_error("tail_bounds needs m >= 1");
    Rational x = m >= 2 ? pow2_inv(m - 2) : Rational(2);
    return {exp_neg(x).lo, one_minus(m)};
}

RationalInterval prime_tail(u64 q) {
    if (q < 2) throw std::domain_error("prime_tail needs q >= 2");
    if (q > 4000) throw CapacityError("prime_tail cut too large");
    u64 p = is_prime(q) ? q : next_prime(q);
    Rational x = q >= 2 ? pow2_inv(static_cast<unsigned>(q - 2)) : Rational(2);
    return {exp_neg(x).lo, one_minus(static_cast<unsigned>(p))};
}

RationalInterval prime_product(u64 cut) { return product_with_tail({}, 2, cut); }

RationalInterval rho0(u64 cut) { return Rational(4, 5) * prime_product(cut); }

RationalInterval rho1(u64 cut) {
    if (cut < 11) throw std::domain_error("rho1 cut below 11");
    return Rational(8, 9) * product_with_tail({3, 5, 8, 49}, 11, cut);
}

namespace {

// min of prod (1 - 2^-d) over pairwise coprime degree sets inside [min_d, max_d] minus `banned`
Rational min_type_lambda(unsigned min_d, unsigned max_d, const std::vector<unsigned>& banned) {
    Rational best = 1;
    std::vector<unsigned> chosen;
    std::function<void(unsigned, const Rational&)> go = [&](unsigned from, const Rational& lam) {
        if (lam < best) best = lam;
        for (unsigned d = from; d <= max_d; ++d) {
            if (std::find(banned.begin(), banned.end(), d) != banned.end()) continue;
            bool ok = true;
            for (unsigned c : chosen)
                if (gcd(c, d) != 1) { ok = false; break; }
            if (!ok) continue;
            chosen.push_back(d);
            go(d + 1, lam * one_minus(d));
            chosen.pop_back();
        }
    };
    go(min_d, Rational(1));
    return best;
}

RationalInterval expr(const Rational& c, const std::vector<unsigned>& ns, unsigned exp_pow) {
    Rational head = c;
    for (unsigned n : ns) head *= one_minus(n);
    return RationalInterval::point(head) * exp_neg(pow2_inv(exp_pow));
}

}  // namespace

std::vector<BoundVerdict> anlem_certify(unsigned max_degree) {
    const u64 cut = 37;
    struct Item {
        std::string id;
        std::vector<unsigned> extra;
        u64 from;
        unsigned min_d;
        std::vector<unsigned> banned;
    };
    std::vector<Item> items = {
        {"bound 1", {}, 2, 2, {}},
        {"bound 2", {4}, 3, 3, {}},
        {"bound 3", {6}, 5, 3, {3, 4}},
        {"bound 4", {4, 9}, 5, 3, {3}},
        {"bound 5", {3, 8, 25}, 7, 3, {4, 5}},
        {"bound 6", {3, 5, 8, 49}, 11, 3, {4, 7}},
        {"bound 7", {8}, 3, 3, {4}},
        {"bound 8", {3, 4, 25}, 7, 3, {5}},
    };
    const Rational c1 = parse_decimal("0.63038"), c2 = parse_decimal("0.78797");
    std::vector<BoundVerdict> out;
    for (const Item& it : items) {
        BoundVerdict v;
        v.id = it.id;
        v.value = product_with_tail(it.extra, it.from, cut);
        Rational floor_lambda = min_type_lambda(it.min_d, max_degree, it.banned);
        bool types_ok = floor_lambda > v.value.hi;
        bool ok = v.value.lo > 0 && v.value.hi < 1 && types_ok;
        std::ostringstream claim;
        claim << "types up to degree " << max_degree << " stay above it";
        if (it.id == "bound 1") {
            ok = ok && v.value.lo > c1 && c1 > Rational(9, 16);
            Rational head = 1;
            for (unsigned q : {2, 3, 5, 7, 11, 13, 17}) head *= one_minus(q);
            ok = ok && head * prime_tail(19).lo > c1;
            ok = ok && Rational(6, 7) * c1 > parse_decimal("0.54") && parse_decimal("0.54") > rho0().hi;
            claim << "; > 0.63038 > 9/16";
        } else if (it.id == "bound 2") {
            ok = ok && v.value.lo > c2 && c1 / Rational(3, 4) * Rational(15, 16) > c2;
            ok = ok && Rational(22, 23) * c2 > parse_decimal("0.753") && parse_decimal("0.753") > rho1().hi;
            ok = ok && expr(Rational(2, 3), {3, 4, 5}, 5).lo > parse_decimal("0.51");
            claim << "; > 0.78797";
        } else if (it.id == "bound 3") {
            auto e = expr(Rational(4, 5), {5, 6, 7}, 9);
            ok = ok && e.lo > parse_decimal("0.755") && e.hi <= Rational(4, 5) * v.value.lo;
            claim << "; times 4/5 > 0.755";
        } else if (it.id == "bound 4") {
            auto e = expr(Rational(6, 7), {4, 5, 7, 9}, 9);
            ok = ok && e.lo > parse_decimal("0.76") && e.hi <= Rational(6, 7) * v.value.lo;
            claim << "; times 6/7 > 0.76";
        } else if (it.id == "bound 5") {
            auto e = expr(Rational(8, 9), {3, 7, 8}, 9);
            ok = ok && e.lo > parse_decimal("0.76") && e.hi <= Rational(8, 9) * v.value.lo;
            claim << "; times 8/9 > 0.76";
        } else if (it.id == "bound 6") {
            auto r1 = rho1();
            auto scaled = Rational(8, 9) * v.value;
            ok = ok && scaled.lo <= r1.hi && r1.lo <= scaled.hi;
            ok = ok && Rational(8, 9) * one_minus(3) * one_minus(5) * one_minus(7) < parse_decimal("0.748");
            claim << "; equals 9/8 rho1";
        } else if (it.id == "bound 7") {
            auto e = expr(Rational(10, 11), {3, 5, 7, 8}, 9);
            ok = ok && e.lo > parse_decimal("0.76") && e.hi <= Rational(10, 11) * v.value.lo;
            claim << "; times 10/11 > 0.76";
        } else {
            auto e = expr(Rational(12, 13), {3, 4, 7, 11}, 11);
            ok = ok && e.lo > parse_decimal("0.7505") && e.hi <= Rational(12, 13) * v.value.lo;
            claim << "; times 12/13 > 0.7505";
        }
        v.claim = claim.str();
        v.verified = ok;
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<GapViolation> gap_scan(const Rational& lo, const Rational& hi, unsigned log2_max_order) {
    std::vector<GapViolation> out;
    if (hi <= lo) return out;
    if (lo < Rational(1, 2)) throw std::domain_error("gap_scan covers lambda > 1/2 only");
    if (log2_max_order > 63) throw CapacityError("gap_scan order bound above 2^63");
    const u64 max_order = log2_max_order == 63 ? (u64(1) << 63) : (u64(1) << log2_max_order);
    std::vector<unsigned> chosen;
    auto shape = [&](u64 q) {
        std::ostringstream s;
        s << "(";
        for (size_t i = 0; i < chosen.size(); ++i) s << (i ? "," : "") << chosen[i];
        s << ")";
        if (q > 1) s << " x q=" << q;
        return s.str();
    };
    u64 work = 0;
    std::function<void(unsigned, unsigned, const Rational&)> go = [&](unsigned from, unsigned used,
                                                                      const Rational& lam2) {
        if (lam2 <= lo) return;
        if (!chosen.empty() && lam2 <= hi) {
            out.push_back({lam2, shape(1)});
        } else if (lam2 > hi) {
            // lam2 (1 - 1/q) in (lo, hi]  iff  q in (lam2/(lam2-lo), lam2/(lam2-hi)]
            BigInt qa = floor_of(lam2 / (lam2 - lo)) + 1, qb = floor_of(lam2 / (lam2 - hi));
            u64 room = max_order >> used;
            if (qb > BigInt(room)) qb = BigInt(room);
            if (qa <= qb) {
                if (qb - qa > 10000000) throw CapacityError("gap_scan odd range too wide");
                for (u64 q = static_cast<u64>(qa); q <= static_cast<u64>(qb); ++q) {
                    if (q % 2 == 0 || q < 3) continue;
                    if (++work > 100000000) throw CapacityError("gap_scan work cap");
                    if (!as_prime_power(q)) continue;
                    bool coprime = true;
                    for (unsigned d : chosen)
                        if (gcd((u64(1) << d) - 1, q - 1) != 1) { coprime = false; break; }
                    if (coprime) out.push_back({lam2 * (1 - Rational(1, q)), shape(q)});
                }
            }
        }
        for (unsigned d = from; used + d <= log2_max_order; ++d) {
            bool ok = true;
            for (unsigned c : chosen)
                if (gcd(c, d) != 1) { ok = false; break; }
            if (!ok) continue;
            chosen.push_back(d);
            go(d + 1, used + d, lam2 * one_minus(d));
            chosen.pop_back();
        }
    };
    go(2, 0, Rational(1));
    return out;
}

LimitSequence limit_sequence(const FdgSpec& base, u64 n_max, bool spec_variant) {
    FiniteMap f = evaluate(base);
    if (!f.bijective()) throw NotPeriodicError("base is not periodic");
    LimitSequence s;
    s.rho = f.lambda();
    s.Lambda = f.Lambda();
    u64 src = spec_variant ? f.size() : s.Lambda;
    for (u64 p : prime_divisors(src))
        if (p != 2) s.o = lcm(s.o, mult_order(2, p));
    for (u64 n = 1; n <= n_max; ++n) {
        auto deg = checked_mul(n, s.o);
        if (!deg || *deg + 1 > 63) throw CapacityError("limit sequence degree above 63");
        unsigned d = static_cast<unsigned>(*deg + 1);
        u64 w = (u64(1) << d) - 1;
        if (gcd(w, s.Lambda) != 1)
            throw std::domain_error("2^" + std::to_string(d) + "-1 is not coprime to Lambda of the base");
        auto P = first_primitive(2, d);
        if (!P) throw std::logic_error("no primitive polynomial found");
        s.terms.push_back({n, d, s.rho * one_minus(d), *P});
    }
    return s;
}

}  // namespace fdgl
