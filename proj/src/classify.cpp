#include "fdgl/classify.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

namespace fdgl {

Rho::Rho(u64 a, u64 b) {
    if (b == 0) throw std::domain_error("rho: zero denominator");
    u64 g = gcd(a, b);
    num = a / g;
    den = b / g;
    if (num > den || 2 * static_cast<u128>(num) < den) throw std::domain_error("rho must lie in [1/2, 1], got " + str());
}

Rho::Rho(const Rational& r) {
    BigInt a = numerator(r), b = denominator(r);
    if (a < 0 || b > BigInt(~0ull) || a > BigInt(~0ull)) throw std::domain_error("rho out of range");
    *this = Rho(static_cast<u64>(a), static_cast<u64>(b));
}

Rho parse_rho(const std::string& s) { return Rho(parse_rational(s)); }

namespace {

using Desc = IsoClassDescriptor;

Rational frac(const BigInt& a, const BigInt& b) { return Rational(a, b); }
BigInt pow2(unsigned d) { return BigInt(1) << d; }
BigInt bgcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

Rational lam2(unsigned d) { return 1 - frac(1, pow2(d)); }

Rational odd_lambda(const OddPart& o) {
    switch (o.type) {
        case OddPart::Type::none: return 1;
        case OddPart::Type::cyclic:
        case OddPart::Type::jordan: return 1 - frac(1, o.p);
        case OddPart::Type::elementary: return 1 - frac(1, BigInt(ipow(o.p, o.m)));
    }
    return 0;
}

// Lambda of the odd part; for the cyclic family its least member
BigInt odd_Lambda(const OddPart& o) {
    switch (o.type) {
        case OddPart::Type::none: return 1;
        case OddPart::Type::cyclic: return BigInt(euler_phi(ipow(o.p, o.m)));
        case OddPart::Type::jordan: return BigInt(o.p * (o.p - 1));
        case OddPart::Type::elementary: return BigInt(ipow(o.p, o.m) - 1);
    }
    return 0;
}

u64 odd_order(const OddPart& o) {
    switch (o.type) {
        case OddPart::Type::none: return 1;
        case OddPart::Type::jordan: return o.p * o.p;
        default: return ipow(o.p, o.m);
    }
}

void add_two_part(Desc& d, const std::vector<unsigned>& frob, std::vector<std::string>& parts) {
    for (unsigned k : frob) {
        parts.push_back("V(P" + std::to_string(k) + ")");
        d.side_conditions.push_back("P" + std::to_string(k) + " primitive of degree " + std::to_string(k) + " over F_2");
    }
}

void add_odd_part(Desc& d, const OddPart& o, bool family, std::vector<std::string>& parts) {
    std::string P = std::to_string(o.p);
    switch (o.type) {
        case OddPart::Type::none: break;
        case OddPart::Type::cyclic:
            if (family) {
                parts.push_back("M(" + P + "^m,g)");
                d.side_conditions.push_back("m >= " + std::to_string(o.m));
                d.side_conditions.push_back("g primitive root mod " + P + "^m");
            } else {
                std::string q = std::to_string(ipow(o.p, o.m));
                parts.push_back("M(" + q + ",g)");
                d.side_conditions.push_back("g primitive root mod " + q);
            }
            break;
        case OddPart::Type::elementary:
            parts.push_back("V(Q" + std::to_string(o.m) + "@" + P + ")");
            d.side_conditions.push_back("Q" + std::to_string(o.m) + " primitive of degree " + std::to_string(o.m) +
                                        " over F_" + P);
            break;
        case OddPart::Type::jordan:
            parts.push_back("V((x-g)^2@" + P + ")");
            d.side_conditions.push_back("g generator of F_" + P + "^*");
            break;
    }
}

std::optional<BigInt> count_witnesses(const std::vector<unsigned>& frob, const OddPart& o) {
    try {
        BigInt c = 1;
        for (unsigned k : frob) c *= primitive_count(2, k);
        switch (o.type) {
            case OddPart::Type::none: break;
            case OddPart::Type::cyclic: c *= euler_phi(euler_phi(ipow(o.p, o.m))); break;
            case OddPart::Type::jordan: c *= euler_phi(o.p - 1); break;
            case OddPart::Type::elementary: c *= primitive_count(o.p, o.m); break;
        }
        return c;
    } catch (const CapacityError&) {
        return std::nullopt;
    }
}

Desc make_abelian(const std::vector<unsigned>& frob, const OddPart& o, bool family) {
    Desc d;
    d.kind = family ? Desc::Kind::family : Desc::Kind::finite;
    d.frobenius = frob;
    std::sort(d.frobenius.begin(), d.frobenius.end());
    d.odd = o;
    if (o.type == OddPart::Type::none)
        d.shape = frob.empty() ? Desc::Shape::trivial : Desc::Shape::two_group;
    else
        d.shape = frob.empty() ? Desc::Shape::odd_group : Desc::Shape::mixed;
    Rational lam = odd_lambda(o);
    unsigned D = 0;
    for (unsigned k : d.frobenius) {
        lam *= lam2(k);
        D += k;
    }
    d.lambda = Rho(lam);
    d.min_order = checked_mul(ipow(2, D), odd_order(o)).value_or(0);
    if (d.min_order == 0) throw CapacityError("descriptor group order exceeds 64 bits");
    std::vector<std::string> parts;
    add_two_part(d, d.frobenius, parts);
    add_odd_part(d, o, family, parts);
    if (parts.empty()) parts.push_back("1");
    for (size_t i = 0; i < parts.size(); ++i) d.spec_template += (i ? " * " : "") + parts[i];
    if (!family) d.witness_count = count_witnesses(d.frobenius, o);
    d.lambda_maximal = is_lambda_maximal(d);
    return d;
}

Desc make_boundary(const std::string& spec, bool maximal) {
    Desc d;
    d.shape = Desc::Shape::boundary;
    d.instance = parse_spec(spec);
    d.spec_template = d.instance->str();
    d.lambda = Rho(1, 2);
    d.lambda_maximal = maximal;
    d.witness_count = BigInt(1);
    d.min_order = d.instance->group_order();
    return d;
}

bool family_m_ok(u64 n, u64 m) {
    if (m >= n) return false;
    for (u64 p : prime_divisors(n))
        if (m % p != 1 % p) return false;
    if (n % 4 == 0 && m % 4 != 1) return false;
    return true;
}

Desc make_nonabelian(Desc::Shape s) {
    Desc d;
    d.kind = Desc::Kind::family;
    d.shape = s;
    d.lambda = Rho(1, 2);
    d.lambda_maximal = true;
    const char* cong = "m = 1 mod p for every prime p | ";
    switch (s) {
        case Desc::Shape::dihedral:
            d.spec_template = "Dih(n,m)";
            d.side_conditions = {"n >= 3", std::string(cong) + "n", "m = 1 mod 4 if 4 | n"};
            d.min_order = 6;
            break;
        case Desc::Shape::dicyclic:
            d.spec_template = "Dic(n,m)";
            d.side_conditions = {"n >= 4 even", std::string(cong) + "n", "m = 1 mod 4 if 4 | n"};
            d.min_order = 8;
            break;
        case Desc::Shape::dklein:
            d.spec_template = "DK(o,m)";
            d.side_conditions = {"o >= 3 odd", std::string(cong) + "o"};
            d.min_order = 24;
            break;
        default:
            d.spec_template = "DicK(o,m)";
            d.side_conditions = {"o >= 3 odd", std::string(cong) + "o"};
            d.min_order = 24;
            d.notes.push_back("x^2 = r1 r2");
            break;
    }
    d.side_conditions.insert(d.side_conditions.begin() + 1, "m in Z_" + std::string(s == Desc::Shape::dklein || s == Desc::Shape::dicklein ? "o" : "n"));
    return d;
}

// ascending tuples of pairwise coprime parts >= lo summing to n
void coprime_partitions(unsigned n, unsigned lo, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (unsigned d = lo; d <= n; ++d) {
        bool ok = std::all_of(cur.begin(), cur.end(), [&](unsigned c) { return std::gcd(c, d) == 1; });
        if (!ok) continue;
        cur.push_back(d);
        coprime_partitions(n - d, d + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<unsigned>> frobenius_types(unsigned n) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    coprime_partitions(n, 2, cur, out);
    return out;
}

auto sort_key(const Desc& d) {
    return std::make_tuple(d.nonabelian(), d.min_order, d.odd.p, d.frobenius, static_cast<int>(d.odd.type), d.odd.m,
                           static_cast<int>(d.kind), d.spec_template);
}

void canonical_sort(std::vector<Desc>& v) {
    std::stable_sort(v.begin(), v.end(), [](const Desc& x, const Desc& y) { return sort_key(x) < sort_key(y); });
}

std::optional<PrimePower> big_prime_power(const BigInt& q) {
    if (q > BigInt(~0ull)) throw CapacityError("prime-power test beyond 64 bits");
    return as_prime_power(static_cast<u64>(q));
}

unsigned log2_big(const BigInt& v) { return static_cast<unsigned>(msb(v)); }

bool is_pow2_big(const BigInt& v) { return v > 0 && (v & (v - 1)) == 0; }

struct Solver {
    Rational rho;
    u64 a, b;
    std::vector<Desc>& out;
    std::vector<std::string>& notes;

    void emit(std::vector<unsigned> frob, const OddPart& o, bool family) { out.push_back(make_abelian(frob, o, family)); }

    void run() {
        auto bf = factor(b);
        unsigned k = 0;
        u64 p = 0;
        unsigned l = 0;
        for (auto& pp : bf) {
            if (pp.prime == 2)
                k = pp.exponent;
            else {
                p = pp.prime;
                l = pp.exponent;
            }
        }
        (void)k;
        std::vector<u64> T0;
        for (u64 t : t0_set(a).divisors)
            if (t > 1) T0.push_back(t);
        std::vector<u64> Todd;
        for (u64 t : full_divisors(a).divisors)
            if (t % 2) Todd.push_back(t);

        std::vector<u64> S;
        std::function<void(size_t)> rec = [&](size_t i) {
            handle(S, p, l, Todd);
            for (size_t j = i; j < T0.size(); ++j) {
                bool ok = std::all_of(S.begin(), S.end(), [&](u64 s) { return gcd(s, T0[j]) == 1; });
                if (!ok) continue;
                S.push_back(T0[j]);
                rec(j + 1);
                S.pop_back();
            }
        };
        rec(0);
    }

    void handle(const std::vector<u64>& S, u64 p, unsigned l, const std::vector<u64>& Todd) {
        Rational lamS = 1;
        BigInt LamS = 1;
        std::vector<unsigned> degS;
        for (u64 t : S) {
            unsigned d = log2_exact(t + 1);
            degS.push_back(d);
            lamS *= lam2(d);
            LamS *= t;
        }
        if (!S.empty() && lamS <= Rational(1, 2)) return;
        const u64 iter_cap = 2 * b + 64;

        if (l >= 1) {
            u64 pl = ipow(p, l);
            // p-part is V(Q) of degree l with no p in the 2-part
            if (l >= 2 && !S.empty() && lamS * (1 - frac(1, pl)) == rho && bgcd(LamS, BigInt(pl - 1)) == 1)
                emit(degS, {OddPart::Type::elementary, p, l}, false);
            // cyclic of any exponent or (x-g)^2, only when nu_p(b) = 1
            if (l == 1 && !S.empty() && lamS * (1 - frac(1, p)) == rho && bgcd(LamS, BigInt(p - 1)) == 1) {
                if (LamS % p == 0) {
                    notes.push_back("conservative path: p | Lambda of the 2-part for " + std::to_string(p) +
                                    "; subcase skipped as already covered");
                } else {
                    emit(degS, {OddPart::Type::cyclic, p, 1}, false);
                    emit(degS, {OddPart::Type::cyclic, p, 2}, true);
                    emit(degS, {OddPart::Type::jordan, p, 2}, false);
                }
            }
            // one 2-part factor carries p^l'; nu_p(2^{d_1}-1) = l' and m = l + l'
            if (lamS <= rho) return;
            for (u64 t1 : Todd) {
                if (!std::all_of(S.begin(), S.end(), [&](u64 s) { return gcd(s, t1) == 1; })) continue;
                BigInt pw = p;
                for (u64 lp = 1;; ++lp, pw *= p) {
                    if (lp > iter_cap) throw std::logic_error("monotone solve did not terminate");
                    BigInt v = pw * t1 + 1;
                    unsigned m = l + static_cast<unsigned>(lp);
                    Rational val = (1 - frac(1, v)) * (1 - frac(1, boost::multiprecision::pow(BigInt(p), m))) * lamS;
                    if (val > rho) break;
                    if (val != rho || !is_pow2_big(v)) continue;
                    Rational lam_two = lamS * (1 - frac(1, v));
                    BigInt pm1 = boost::multiprecision::pow(BigInt(p), m) - 1;
                    if (bgcd(v - 1, LamS) != 1 || lam_two <= Rational(1, 2) || bgcd((v - 1) * LamS, pm1) != 1) continue;
                    auto deg = degS;
                    deg.push_back(log2_big(v));
                    emit(deg, {OddPart::Type::elementary, p, m}, false);
                }
            }
            return;
        }

        // b is a power of two: p unknown, 2^{d_1} - 1 = p^m t_1
        if (lamS <= rho) return;
        for (u64 t1 : Todd) {
            if (!std::all_of(S.begin(), S.end(), [&](u64 s) { return gcd(s, t1) == 1; })) continue;
            for (unsigned d1 = 2;; ++d1) {
                if (d1 > iter_cap) throw std::logic_error("monotone solve did not terminate");
                BigInt w = pow2(d1) - 1;
                if (w % t1 != 0) continue;
                BigInt q = w / t1;
                if (q == 1) continue;
                Rational val = (1 - frac(1, w + 1)) * (1 - frac(1, q)) * lamS;
                if (val > rho) break;
                if (val != rho) continue;
                auto pp = big_prime_power(q);
                if (!pp || pp->prime == 2) continue;
                Rational lam_two = lamS * lam2(d1);
                if (bgcd(w, LamS) != 1 || lam_two <= Rational(1, 2) || bgcd(w * LamS, q - 1) != 1) continue;
                auto deg = degS;
                deg.push_back(d1);
                OddPart o = pp->exponent == 1 ? OddPart{OddPart::Type::cyclic, pp->prime, 1}
                                              : OddPart{OddPart::Type::elementary, pp->prime, pp->exponent};
                emit(deg, o, false);
            }
        }
    }
};

void self_check(const ClassificationResult& r) {
    for (auto& d : r.descriptors) {
        if (d.min_order > 10000) continue;
        auto inst = expand(d, std::max<u64>(d.min_order, 1));
        if (inst.empty()) inst = expand(d, 10000);
        if (inst.empty()) continue;
        if (evaluate(inst.front()).lambda() != d.lambda.value())
            throw std::logic_error("self-check failed for " + inst.front().str());
    }
}

}  // namespace

bool IsoClassDescriptor::nonabelian() const {
    return shape == Shape::dihedral || shape == Shape::dicyclic || shape == Shape::dklein || shape == Shape::dicklein;
}

std::string IsoClassDescriptor::group_str() const {
    switch (shape) {
        case Shape::boundary: return spec_group(*instance)->name();
        case Shape::dihedral: return "D(2n)";
        case Shape::dicyclic: return "Dic(2n)";
        case Shape::dklein: return "D(Z2^2 x Zo)";
        case Shape::dicklein: return "Dic(Z2^2 x Zo)";
        default: break;
    }
    unsigned D = 0;
    for (unsigned k : frobenius) D += k;
    std::vector<std::string> parts;
    if (D) parts.push_back(D == 1 ? "Z2" : "Z2^" + std::to_string(D));
    switch (odd.type) {
        case OddPart::Type::none: break;
        case OddPart::Type::cyclic:
            parts.push_back(kind == Kind::family ? "Z(" + std::to_string(odd.p) + "^m)" : "Z" + std::to_string(ipow(odd.p, odd.m)));
            break;
        case OddPart::Type::jordan: parts.push_back("Z" + std::to_string(odd.p) + "^2"); break;
        case OddPart::Type::elementary:
            parts.push_back("Z" + std::to_string(odd.p) + (odd.m == 1 ? "" : "^" + std::to_string(odd.m)));
            break;
    }
    if (parts.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) s += (i ? " x " : "") + parts[i];
    return s;
}

std::vector<IsoClassDescriptor> classify_elementary_abelian(u64 p, unsigned n, ElAbMode mode) {
    if (!is_prime(p) || n == 0) throw std::domain_error("classify_elementary_abelian: need prime p and n >= 1");
    std::vector<Desc> out;
    bool gt = mode != ElAbMode::eq_half, eq = mode != ElAbMode::gt_half;
    if (p == 2) {
        if (gt)
            for (auto& t : frobenius_types(n)) {
                Rational lam = 1;
                for (unsigned k : t) lam *= lam2(k);
                if (lam > Rational(1, 2)) out.push_back(make_abelian(t, {}, false));
            }
        if (eq) {
            if (n == 1) out.push_back(make_boundary("M(2,1)", true));
            if (n == 2) out.push_back(make_boundary("V(x^2+1@2)", false));
            if (n == 3) out.push_back(make_boundary("V(x^3+x^2+x+1@2)", false));
        }
    } else if (gt) {
        if (n == 1)
            out.push_back(make_abelian({}, {OddPart::Type::cyclic, p, 1}, false));
        else
            out.push_back(make_abelian({}, {OddPart::Type::elementary, p, n}, false));
        if (n == 2) out.push_back(make_abelian({}, {OddPart::Type::jordan, p, 2}, false));
    }
    canonical_sort(out);
    return out;
}

ClassificationResult classify_rho(const Rho& rho, const ClassifyOptions& opt) {
    ClassificationResult r;
    r.rho = rho;
    auto& out = r.descriptors;
    const u64 a = rho.num, b = rho.den;
    Rational val = rho.value();

    if (a == 1 && b == 1) {
        out.push_back(make_abelian({}, {}, false));
        return r;
    }

    auto bf = factor(b);
    size_t odd_primes = std::count_if(bf.begin(), bf.end(), [](const PrimePower& pp) { return pp.prime != 2; });
    if (odd_primes >= 2) {
        r.empty_reason = "denominator has two distinct odd primes";
        return r;
    }

    if (a == 1 && b == 2) {
        out.push_back(make_boundary("M(2,1)", true));
        out.push_back(make_boundary("M(4,3)", true));
        out.push_back(make_boundary("End(Z2 x Z4,[[1,1],[2,1]])", true));
        out.push_back(make_boundary("V(x^2+1@2)", false));
        out.push_back(make_boundary("V(x^3+x^2+x+1@2)", false));
        for (auto s : {Desc::Shape::dihedral, Desc::Shape::dicyclic, Desc::Shape::dklein, Desc::Shape::dicklein})
            out.push_back(make_nonabelian(s));
    } else if (odd_primes == 0) {
        // primary 2-groups: Frobenius types of log2(b) whose numerator product is a
        unsigned k = log2_exact(b);
        for (auto& t : frobenius_types(k)) {
            BigInt prod = 1;
            for (unsigned d : t) prod *= pow2(d) - 1;
            if (prod == a) out.push_back(make_abelian(t, {}, false));
        }
    } else if (bf.size() == 1) {
        u64 p = bf[0].prime;
        unsigned l = bf[0].exponent;
        if (l == 1 && a == p - 1) {
            out.push_back(make_abelian({}, {OddPart::Type::cyclic, p, 1}, true));
            out.push_back(make_abelian({}, {OddPart::Type::jordan, p, 2}, false));
        } else if (l >= 2 && a == b - 1) {
            out.push_back(make_abelian({}, {OddPart::Type::elementary, p, l}, false));
        }
    }

    Solver{val, a, b, out, r.notes}.run();
    canonical_sort(out);
    if (out.empty()) r.empty_reason = "no classified shape attains this value";
    if (opt.self_check) self_check(r);
    return r;
}

std::vector<FdgSpec> expand(const IsoClassDescriptor& d, u64 max_order) {
    std::vector<FdgSpec> out;
    if (d.shape == Desc::Shape::boundary) {
        if (d.min_order <= max_order) out.push_back(*d.instance);
        return out;
    }
    if (d.nonabelian()) {
        bool klein = d.shape == Desc::Shape::dklein || d.shape == Desc::Shape::dicklein;
        u64 mult = klein ? 8 : 2;
        for (u64 n = klein ? 3 : (d.shape == Desc::Shape::dicyclic ? 4 : 3); mult * n <= max_order; ++n) {
            if (klein && n % 2 == 0) continue;
            if (d.shape == Desc::Shape::dicyclic && n % 2) continue;
            for (u64 m = 0; m < n; ++m) {
                if (!family_m_ok(n, m)) continue;
                switch (d.shape) {
                    case Desc::Shape::dihedral: out.push_back(FdgSpec::dihedral(n, m)); break;
                    case Desc::Shape::dicyclic: out.push_back(FdgSpec::dicyclic(n, m)); break;
                    case Desc::Shape::dklein: out.push_back(FdgSpec::dklein(n, m)); break;
                    default: out.push_back(FdgSpec::dicklein(n, m)); break;
                }
            }
        }
        return out;
    }
    if (d.min_order > max_order) return out;

    u64 two_order = d.min_order / odd_order(d.odd);
    // 2-part choices
    std::vector<std::vector<FdgSpec>> two{{}};
    for (unsigned k : d.frobenius) {
        std::vector<std::vector<FdgSpec>> next;
        auto polys = enum_primitive(2, k);
        for (auto& pre : two)
            for (auto& P : polys) {
                auto v = pre;
                v.push_back(FdgSpec::vpoly(P));
                next.push_back(std::move(v));
            }
        two = std::move(next);
    }
    // odd-part choices
    std::vector<FdgSpec> odd;
    switch (d.odd.type) {
        case OddPart::Type::none: odd.push_back(FdgSpec::trivial()); break;
        case OddPart::Type::cyclic: {
            unsigned mmax = d.kind == Desc::Kind::family ? 64 : d.odd.m;
            for (unsigned m = d.odd.m; m <= mmax; ++m) {
                auto q = checked_mul(two_order, ipow(d.odd.p, m - 1));
                if (!q || *q > max_order / d.odd.p) break;
                u64 pm = ipow(d.odd.p, m);
                for (u64 g : primitive_roots(d.odd.p, m)) odd.push_back(FdgSpec::mult(pm, g));
            }
            break;
        }
        case OddPart::Type::elementary:
            for (auto& Q : enum_primitive(d.odd.p, d.odd.m)) odd.push_back(FdgSpec::vpoly(Q));
            break;
        case OddPart::Type::jordan:
            for (u64 g : primitive_roots(d.odd.p, 1)) odd.push_back(FdgSpec::vpoly(pow(FpPoly::linear(d.odd.p, g), 2)));
            break;
    }
    for (auto& o : odd)
        for (auto& t : two) {
            auto fs = t;
            if (!o.is_trivial()) fs.push_back(o);
            out.push_back(fs.empty() ? FdgSpec::trivial() : FdgSpec::product(fs));
        }
    return out;
}

bool mixed_lambda_maximal(const std::vector<unsigned>& frob, const OddPart& o) {
    if (o.type == OddPart::Type::none) throw std::domain_error("mixed_lambda_maximal: no odd part");
    unsigned D = 0;
    BigInt cur = odd_Lambda(o);
    for (unsigned k : frob) {
        D += k;
        cur *= pow2(k) - 1;
    }
    std::vector<BigInt> Ls;
    u64 p = o.p;
    if (o.type == OddPart::Type::cyclic)
        Ls = {BigInt(euler_phi(ipow(p, o.m)))};
    else if (o.type == OddPart::Type::elementary && o.m > 2)
        Ls = {BigInt(ipow(p, o.m) - 1)};
    else
        Ls = {BigInt(p * p - 1), BigInt(p * p - p)};
    // parts of size 1 are allowed too: V(x+1) contributes a factor 1
    bool beaten = false;
    std::vector<unsigned> cur_parts;
    std::function<void(unsigned, unsigned, const BigInt&)> rec = [&](unsigned left, unsigned lo, const BigInt& prod) {
        if (beaten) return;
        for (auto& L : Ls)
            if (prod * L > cur && std::all_of(cur_parts.begin(), cur_parts.end(), [&](unsigned dp) {
                    return bgcd(pow2(dp) - 1, L) == 1;
                })) {
                beaten = true;
                return;
            }
        for (unsigned dp = lo; dp <= left; ++dp) {
            if (!std::all_of(cur_parts.begin(), cur_parts.end(), [&](unsigned c) { return std::gcd(c, dp) == 1; }))
                continue;
            cur_parts.push_back(dp);
            rec(left - dp, dp + 1, prod * (pow2(dp) - 1));
            cur_parts.pop_back();
        }
    };
    rec(D, 2, 1);
    return !beaten;
}

bool is_lambda_maximal(const IsoClassDescriptor& d) {
    switch (d.shape) {
        case Desc::Shape::trivial: return true;
        case Desc::Shape::two_group: return d.frobenius.size() == 1;
        case Desc::Shape::odd_group: return d.odd.type != OddPart::Type::jordan;
        case Desc::Shape::mixed: return mixed_lambda_maximal(d.frobenius, d.odd);
        default: return d.lambda_maximal;
    }
}

std::optional<IsoClassDescriptor> describe(const FdgSpec& spec) {
    using K = FdgSpec::Kind;
    switch (spec.kind) {
        case K::Dihedral:
        case K::Dicyclic:
        case K::DKlein:
        case K::DicKlein: {
            if (!family_m_ok(spec.m, spec.a)) return std::nullopt;
            auto sh = spec.kind == K::Dihedral   ? Desc::Shape::dihedral
                      : spec.kind == K::Dicyclic ? Desc::Shape::dicyclic
                      : spec.kind == K::DKlein   ? Desc::Shape::dklein
                                                 : Desc::Shape::dicklein;
            return make_nonabelian(sh);
        }
        default: break;
    }
    for (auto s : {"M(2,1)", "M(4,3)", "End(Z2 x Z4,[[1,1],[2,1]])", "V(x^2+1@2)", "V(x^3+x^2+x+1@2)"})
        if (parse_spec(s).str() == spec.str()) {
            std::string str = s;
            return make_boundary(s, str != "V(x^2+1@2)" && str != "V(x^3+x^2+x+1@2)");
        }
    std::vector<FdgSpec> fs = spec.kind == K::Product ? spec.factors : std::vector<FdgSpec>{spec};
    std::vector<unsigned> frob;
    std::optional<OddPart> odd;
    for (auto& f : fs) {
        if (f.kind == K::VPoly && f.poly.modulus() == 2) {
            if (!is_irreducible(f.poly) || !is_primitive(f.poly)) return std::nullopt;
            frob.push_back(static_cast<unsigned>(f.poly.degree()));
            continue;
        }
        if (odd) return std::nullopt;
        if (f.kind == K::Mult) {
            auto pp = as_prime_power(f.m);
            if (!pp || pp->prime == 2) return std::nullopt;
            auto roots = primitive_roots(pp->prime, pp->exponent);
            if (!std::binary_search(roots.begin(), roots.end(), f.a)) return std::nullopt;
            odd = OddPart{OddPart::Type::cyclic, pp->prime, pp->exponent};
        } else if (f.kind == K::VPoly) {
            u64 p = f.poly.modulus();
            if (is_irreducible(f.poly)) {
                if (!is_primitive(f.poly)) return std::nullopt;
                unsigned m = static_cast<unsigned>(f.poly.degree());
                odd = m == 1 ? OddPart{OddPart::Type::cyclic, p, 1} : OddPart{OddPart::Type::elementary, p, m};
            } else {
                auto fac = factor_poly(f.poly);
                if (f.poly.degree() != 2 || fac.size() != 1 || fac[0].multiplicity != 2) return std::nullopt;
                u64 g = (p - fac[0].poly.coeff(0)) % p;
                auto roots = primitive_roots(p, 1);
                if (!std::binary_search(roots.begin(), roots.end(), g)) return std::nullopt;
                odd = OddPart{OddPart::Type::jordan, p, 2};
            }
        } else {
            return std::nullopt;
        }
    }
    std::sort(frob.begin(), frob.end());
    for (size_t i = 0; i < frob.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (std::gcd(frob[i], frob[j]) != 1) return std::nullopt;
    OddPart o = odd.value_or(OddPart{});
    Rational lam = odd_lambda(o);
    BigInt L2 = 1;
    for (unsigned k : frob) {
        lam *= lam2(k);
        L2 *= pow2(k) - 1;
    }
    if (bgcd(L2, odd_Lambda(o)) != 1) return std::nullopt;
    bool boundary_mixed = lam == Rational(1, 2) && frob == std::vector<unsigned>{2} && o == OddPart{OddPart::Type::cyclic, 3, 1};
    if (lam <= Rational(1, 2) && !boundary_mixed) return std::nullopt;
    return make_abelian(frob, o, false);
}

bool is_lambda_maximal(const FdgSpec& spec) {
    auto d = describe(spec);
    if (!d) throw std::domain_error("is_lambda_maximal: " + spec.str() + " is outside the classified shapes");
    return d->lambda_maximal;
}

std::vector<GroupDescriptor> classify_group_lambda(const Rho& rho) {
    ClassifyOptions opt;
    opt.self_check = false;
    auto r = classify_rho(rho, opt);
    std::vector<GroupDescriptor> out;
    for (auto& d : r.descriptors) {
        if (!d.lambda_maximal) continue;
        GroupDescriptor g;
        g.group = d.group_str();
        g.family = d.kind == Desc::Kind::family;
        for (auto& c : d.side_conditions)
            if (c.rfind("m ", 0) == 0 || c.rfind("n ", 0) == 0 || c.rfind("o ", 0) == 0) g.side_conditions.push_back(c);
        g.witness = d.spec_template;
        bool dup = std::any_of(out.begin(), out.end(), [&](const GroupDescriptor& x) { return x.group == g.group; });
        if (!dup) out.push_back(g);
    }
    return out;
}

std::optional<AffineFullCycle> affine_full_cycle_classify(const AbelianGroupType& G) {
    AffineFullCycle r;
    r.group = G;
    u64 o = 1;
    bool cyclic = G.cyclic() || G.trivial();
    for (auto& part : G.parts)
        if (part.p != 2) o *= part.order();
    if (!cyclic) {
        if (G.parts.empty() || G.parts[0].p != 2 || G.parts[0].exponents != std::vector<unsigned>{1, 1}) return std::nullopt;
        for (size_t i = 1; i < G.parts.size(); ++i)
            if (!G.parts[i].cyclic()) return std::nullopt;
        r.klein = true;
    }
    u64 n = cyclic ? G.order() : o;
    // a = 1 mod every prime of n, and mod 4 when 4 | n
    u64 step = 1;
    for (u64 p : prime_divisors(n)) step *= p;
    if (n % 4 == 0) step *= 2;
    u64 nmult = n / step;
    if (n <= 100000)
        for (u64 a = 1 % n; a < n || (n == 1 && r.multipliers.empty()); a += step) {
            r.multipliers.push_back(a % n);
            if (n == 1) break;
        }
    r.count = nmult * euler_phi(n) * (r.klein ? 6 : 1);
    std::ostringstream os;
    if (r.klein)
        os << "alpha_2 an involution of Z2^2 with g_2 not fixed (3 x 2 choices); on Z" << o
           << ": multiplication by a = 1 mod p for all p | " << o << ", translation a generator";
    else
        os << "multiplication by a with a = 1 mod p for all p | " << n << (n % 4 == 0 ? " and a = 1 mod 4" : "")
           << ", translation a generator of Z" << n;
    r.description = os.str();
    return r;
}

std::string to_json(const ClassificationResult& r) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["rho"] = r.rho.str();
    j["descriptors"] = nlohmann::ordered_json::array();
    for (auto& d : r.descriptors) {
        nlohmann::ordered_json e;
        e["kind"] = d.kind == Desc::Kind::finite ? "finite" : "family";
        e["spec"] = d.spec_template;
        e["group"] = d.group_str();
        e["side_conditions"] = d.side_conditions;
        e["lambda"] = d.lambda.str();
        e["lambda_maximal"] = d.lambda_maximal;
        e["witness_count"] = d.witness_count ? d.witness_count->str() : std::string("infinite");
        e["min_order"] = d.min_order;
        if (!d.notes.empty()) e["notes"] = d.notes;
        j["descriptors"].push_back(e);
    }
    j["empty_reason"] = r.empty_reason ? nlohmann::ordered_json(*r.empty_reason) : nlohmann::ordered_json(nullptr);
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j.dump(2);
}

}  // namespace fdgl
