// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fdgl/bounds.hpp"
#include "fdgl/classify.hpp"
#include "fdgl/errors.hpp"
#include "fdgl/fdg.hpp"
#include "fdgl/oracle.hpp"
#include "fdgl/prng.hpp"
#include "properties.hpp"
#include "support.hpp"

using namespace fdgl;

namespace {

// collects the first few problems of a criterion
struct Check {
    std::vector<std::string> problems;
    void fail(const std::string& s) { problems.push_back(s); }
    void expect(bool ok, const std::string& s) {
        if (!ok) fail(s);
    }
};

template <class T>
std::string str(const T& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

// lambda of a permutation table by marking orbits
Rational orbit_lambda(const std::vector<u32>& f) {
    std::vector<char> seen(f.size(), 0);
    u64 top = 0;
    for (u32 s = 0; s < f.size(); ++s) {
        if (seen[s]) continue;
        u64 len = 0;
        for (u32 t = s; !seen[t]; t = f[t]) seen[t] = 1, ++len;
        top = std::max(top, len);
    }
    return Rational(BigInt(top), BigInt(f.size()));
}

std::vector<u32> affine_table(const FiniteGroup& G, u32 g0, const std::vector<u32>& alpha) {
    std::vector<u32> t(G.order());
    for (u32 g = 0; g < t.size(); ++g) t[g] = G.mul(g0, alpha[g]);
    return t;
}

Rational brute_lambda(const FiniteGroup& G) {
    Rational best = 0;
    for (auto& a : automorphisms(G)) best = std::max(best, orbit_lambda(a));
    return best;
}

Rational brute_lambda_aff(const FiniteGroup& G) {
    Rational best = 0;
    for (auto& a : automorphisms(G))
        for (u32 g0 = 0; g0 < G.order(); ++g0) best = std::max(best, orbit_lambda(affine_table(G, g0, a)));
    return best;
}

Rational q(long a, long b) { return Rational(a) / b; }

// criterion 1
void constants(Check& c) {
    auto ab = [](std::vector<u64> m) { return AbelianFiniteGroup(std::move(m)); };
    c.expect(brute_lambda(ab({6})) == q(1, 3), "lambda(Z6)");
    c.expect(brute_lambda(DihedralGroup(6, false)) == q(1, 2), "lambda(D12)");
    c.expect(brute_lambda(ab({2, 2, 4})) == q(3, 8), "lambda(Z2^2 x Z4)");
    c.expect(brute_lambda(ab({2, 2, 8})) == q(3, 16), "lambda(Z2^2 x Z8)");
    c.expect(brute_lambda(ab({2, 8})) == q(1, 4), "lambda(Z2 x Z8)");
    c.expect(brute_lambda_aff(ab({2, 2, 2})) == q(7, 8), "lambda_aff(Z2^3)");
    c.expect(brute_lambda_aff(ab({2, 4})) == q(1, 2), "lambda_aff(Z2 x Z4)");
    c.expect(brute_lambda_aff(ab({4, 4})) == q(1, 2), "lambda_aff(Z4^2)");
}

// elementary divisors: a complete similarity invariant over F_p
std::string similarity_key(const ModMatrix& A) {
    std::vector<std::string> parts;
    for (auto& f : frobenius_decompose(A)) parts.push_back(f.poly.str() + "^" + std::to_string(f.multiplicity));
    std::sort(parts.begin(), parts.end());
    std::string k;
    for (auto& s : parts) k += s + " ";
    return k;
}

// criterion 2
void elementary(Check& c) {
    const std::vector<std::pair<u64, unsigned>> cases{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}};
    for (auto [p, n] : cases) {
        u64 size = 1;
        for (unsigned i = 0; i < n; ++i) size *= p;
        std::vector<std::vector<u64>> vec(size, std::vector<u64>(n));
        for (u64 v = 0; v < size; ++v)
            for (unsigned i = 0, x = v; i < n; ++i, x /= p) vec[v][i] = x % p;
        auto code = [&](const std::vector<u64>& v) {
            u64 k = 0;
            for (unsigned i = n; i-- > 0;) k = k * p + v[i];
            return k;
        };

        // exhaustive: every matrix, kept when invertible
        std::map<std::string, u64> observed;
        std::map<std::string, Rational> observed_lambda;
        u64 total = 1;
        for (unsigned i = 0; i < n * n; ++i) total *= p;
        u64 invertible = 0;
        for (u64 t = 0; t < total; ++t) {
            ModMatrix A(p, n);
            for (u64 i = 0, x = t; i < n * n; ++i, x /= p) A.a[i] = x % p;
            std::vector<u32> f(size);
            std::vector<char> hit(size, 0);
            bool bij = true;
            for (u64 v = 0; v < size && bij; ++v) {
                std::vector<u64> w(n, 0);
                for (unsigned r = 0; r < n; ++r)
                    for (unsigned s = 0; s < n; ++s) w[r] = (w[r] + A.at(r, s) * vec[v][s]) % p;
                f[v] = static_cast<u32>(code(w));
                if (hit[f[v]]) bij = false;
                hit[f[v]] = 1;
            }
            if (!bij) continue;
            ++invertible;
            Rational l = orbit_lambda(f);
            if (l < q(1, 2)) continue;
            auto key = similarity_key(A);
            ++observed[key];
            observed_lambda[key] = l;
        }
        std::string tag = "F" + std::to_string(p) + "^" + std::to_string(n) + ": ";
        c.expect(BigInt(invertible) == aut_count(AbelianPGroup(p, std::vector<unsigned>(n, 1))), tag + "GL order");

        // classifier: each instance one class, weighted by its class size
        std::map<std::string, u64> predicted;
        for (auto& d : classify_elementary_abelian(p, n, ElAbMode::ge_half)) {
            for (auto& s : expand(d, size)) {
                if (s.group_order() != size) continue;
                auto endos = sylow_endos(s);
                if (endos.size() != 1 || !endos.count(p)) {
                    c.fail(tag + s.str() + " not on the group");
                    continue;
                }
                ModMatrix A = reduction_mod_p(endos.at(p));
                auto key = similarity_key(A);
                if (predicted.count(key)) c.fail(tag + "duplicate class " + s.str());
                auto cs = gl_class_size(A);
                if (!cs) {
                    c.fail(tag + "no class size for " + s.str());
                    continue;
                }
                predicted[key] = *cs;
                if (observed_lambda.count(key) && observed_lambda[key] != d.lambda.value())
                    c.fail(tag + "lambda of " + s.str());
            }
        }
        c.expect(observed == predicted, tag + std::to_string(observed.size()) + " observed classes vs " +
                                            std::to_string(predicted.size()) + " predicted");
    }
}

bool is_unit_one_mod_primes(u64 m, u64 n, bool four) {
    for (u64 p = 2; p <= n; ++p) {
        if (n % p) continue;
        bool prime = true;
        for (u64 d = 2; d * d <= p; ++d) prime = prime && p % d;
        if (prime && m % p != 1 % p) return false;
    }
    if (four && n % 4 == 0 && m % 4 != 1) return false;
    return true;
}

// criterion 3
void equal_half(Check& c) {
    auto r = classify_rho(Rho(1, 2));
    std::multiset<std::string> abelian, families;
    for (auto& d : r.descriptors) (d.nonabelian() ? families : abelian).insert(d.spec_template);
    c.expect(abelian == std::multiset<std::string>{"M(2,1)", "M(4,3)", "V(x^2+1@2)", "End(Z2 x Z4,[[1,1],[2,1]])",
                                                   "V(x^3+x^2+x+1@2)", "V(P2) * M(3,g)"},
             "abelian descriptors");
    c.expect(families == std::multiset<std::string>{"Dih(n,m)", "Dic(n,m)", "DK(o,m)", "DicK(o,m)"},
             "family descriptors");
    for (auto& d : r.descriptors) {
        if (!d.nonabelian()) {
            for (auto& s : expand(d, 64)) c.expect(evaluate(s).lambda() == q(1, 2), s.str());
            continue;
        }
        using K = FdgSpec::Kind;
        auto build = [&](u64 n, u64 m) {
            if (d.spec_template == "Dih(n,m)") return FdgSpec::dihedral(n, m);
            if (d.spec_template == "Dic(n,m)") return FdgSpec::dicyclic(n, m);
            if (d.spec_template == "DK(o,m)") return FdgSpec::dklein(n, m);
            return FdgSpec::dicklein(n, m);
        };
        bool klein = d.spec_template[0] == 'D' && d.spec_template.find('K') != std::string::npos;
        bool dic = d.spec_template.rfind("Dic(", 0) == 0;
        u64 lo = klein ? 3 : (dic ? 4 : 3), hi = klein ? 15 : 16;
        // members by congruence, from expand, and by brute force over all m
        std::map<u64, std::set<u64>> listed;
        for (auto& s : expand(d, klein ? 8 * hi : 2 * hi)) {
            u64 n = s.m;
            listed[n].insert(s.a);
            c.expect(evaluate(s).lambda() == q(1, 2), s.str() + " lambda");
            c.expect(klein ? (s.kind == K::DKlein || s.kind == K::DicKlein) : (s.kind == K::Dihedral || s.kind == K::Dicyclic),
                     s.str() + " kind");
        }
        for (u64 n = lo; n <= hi; ++n) {
            if (klein && n % 2 == 0) continue;
            if (dic && n % 2) continue;
            std::set<u64> brute, congruence;
            for (u64 m = 0; m < n; ++m) {
                if (std::gcd(m, n) != 1) continue;
                auto f = evaluate(build(n, m));
                if (f.bijective() && f.lambda() == q(1, 2)) brute.insert(m);
                if (is_unit_one_mod_primes(m, n, !klein)) congruence.insert(m);
            }
            std::string tag = d.spec_template + " n=" + std::to_string(n);
            c.expect(brute == congruence, tag + ": brute force vs congruences");
            c.expect(listed[n] == congruence, tag + ": expand vs congruences");
        }
    }
}

std::vector<u64> odd_primes(u64 n) {
    std::vector<u64> out;
    while (n % 2 == 0) n /= 2;
    for (u64 p = 3; p * p <= n; p += 2)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) out.push_back(n);
    return out;
}

// criterion 4
void empty_rhos(Check& c) {
    auto r = classify_rho(Rho(8, 15));
    c.expect(r.descriptors.empty(), "8/15 not empty");
    auto g = test::rng(401);
    std::set<std::pair<u64, u64>> sample;
    while (sample.size() < 20) {
        u64 b = test::uniform(g, 15, 5000);
        if (odd_primes(b).size() < 2) continue;
        u64 a = test::uniform(g, b / 2 + 1, b);
        if (std::gcd(a, b) != 1 || 2 * a <= b) continue;
        sample.insert({a, b});
    }
    for (auto [a, b] : sample) {
        auto res = classify_rho(Rho(a, b));
        c.expect(res.descriptors.empty(), std::to_string(a) + "/" + std::to_string(b) + " not empty");
    }
}

// criterion 5
void three_quarters(Check& c) {
    auto r = classify_rho(Rho(3, 4));
    std::set<std::string> groups;
    for (auto& d : r.descriptors) groups.insert(d.group_str());
    c.expect(r.descriptors.size() == 3, "descriptor count " + std::to_string(r.descriptors.size()));
    c.expect(groups == std::set<std::string>{"Z2^2", "Z2^3 x Z7", "Z2^4 x Z5"}, "descriptor groups");
    std::map<u64, size_t> per_order;
    for (auto& d : r.descriptors)
        for (auto& s : expand(d, 80)) {
            ++per_order[s.group_order()];
            auto f = evaluate(s);
            c.expect(f.bijective() && orbit_lambda(f.image) == q(3, 4), s.str());
        }
    // primitive polynomials times primitive roots: 1*1, 2*2, 2*2
    c.expect(per_order == std::map<u64, size_t>{{4, 1}, {56, 4}, {80, 4}}, "instances per order");
}

// criterion 6
void sweep(Check& c) {
    auto s = completeness_sweep(200);
    for (auto& p : s.problems) c.fail(p);
    for (auto& gr : s.groups)
        if (!gr.ok()) c.fail(gr.group.str() + ": observed " + std::to_string(gr.observed) + " predicted " + std::to_string(gr.predicted));
    c.expect(s.ok(), "sweep not ok");
}

// criterion 7: automorphisms r -> r^u, x -> x k r^v inside each family
void nonabelian(Check& c) {
    Rational worst = 0;
    std::string where;
    auto note = [&](const std::vector<u32>& t, const std::string& name) {
        Rational l = orbit_lambda(t);
        if (l > worst) worst = l, where = name;
    };
    for (bool dic : {false, true})
        for (u64 n = dic ? 4 : 3; 2 * n <= 256; ++n) {
            if (dic && n % 2) continue;
            DihedralGroup G(n, dic);
            for (u64 u = 1; u < n; ++u) {
                if (std::gcd(u, n) != 1) continue;
                for (u64 v = 0; v < n; ++v) {
                    auto t = extend_homomorphism(G, {G.elem(1, 0), G.elem(0, 1)}, {G.elem(u, 0), G.elem(v, 1)});
                    if (!t) {
                        c.fail(G.name() + " family map missing");
                        continue;
                    }
                    note(*t, G.name());
                }
            }
        }
    const std::vector<std::pair<unsigned, unsigned>> klein{{1, 0}, {0, 1}, {1, 1}};
    for (bool dic : {false, true})
        for (u64 o = 3; 8 * o <= 256; o += 2) {
            KleinDihedralGroup G(o, dic);
            std::vector<u32> gens{G.elem(1, 0, 0, 0), G.elem(0, 1, 0, 0), G.elem(0, 0, 1, 0), G.elem(0, 0, 0, 1)};
            for (auto e1 : klein)
                for (auto e2 : klein) {
                    if (e1 == e2) continue;
                    for (u64 u = 1; u < o; ++u) {
                        if (std::gcd(u, o) != 1) continue;
                        for (u64 v = 0; v < o; ++v)
                            for (unsigned k = 0; k < 4; ++k) {
                                std::vector<u32> img{G.elem(e1.first, e1.second, 0, 0), G.elem(e2.first, e2.second, 0, 0),
                                                     G.elem(0, 0, u, 0), G.elem(k & 1, k >> 1, v, 1)};
                                auto t = extend_homomorphism(G, gens, img);
                                if (t && std::set<u32>(t->begin(), t->end()).size() == t->size()) note(*t, G.name());
                            }
                    }
                }
        }
    auto d8 = automorphisms(DihedralGroup(4, false)), q8 = automorphisms(DihedralGroup(4, true));
    c.expect(d8.size() == 8, "|Aut(D8)| = " + std::to_string(d8.size()));
    c.expect(q8.size() == 24, "|Aut(Q8)| = " + std::to_string(q8.size()));
    for (auto& t : d8) note(t, "D8");
    for (auto& t : q8) note(t, "Q8");
    c.expect(worst <= q(1, 2), "lambda " + str(worst) + " on " + where);
}

// criterion 8
void numeric(Check& c) {
    auto r0 = rho0(), r1 = rho1();
    const Rational tiny(1, BigInt(1000000000));
    c.expect(pins_digits(r0, "0.504307524"), "rho0 digits");
    c.expect(pins_digits(r1, "0.750063685"), "rho1 digits");
    c.expect(r0.width() < tiny && r1.width() < tiny, "interval width");
    auto an = anlem_certify();
    c.expect(an.size() == 8, "anlem count " + std::to_string(an.size()));
    for (auto& v : an) c.expect(v.verified, "anlem " + v.id);
    for (auto& g : gap_scan(q(1, 2), r0.hi, 60)) c.fail("gap (1/2, rho0]: " + str(g.lambda) + " " + g.shape);
    for (auto& g : gap_scan(q(3, 4), r1.hi, 60)) c.fail("gap (3/4, rho1]: " + str(g.lambda) + " " + g.shape);
}

// criterion 9
void properties(Check& c) {
    for (auto& p : test::all_properties()) {
        c.expect(p.cases >= test::kCases, p.name + " ran " + std::to_string(p.cases) + " cases");
        c.expect(p.ok(), p.name + ": " + p.first_failure);
    }
}

// criterion 10
void prng(Check& c) {
    for (u64 m : {8, 9, 16, 81})
        for (u64 a = 0; a < m; ++a) {
            if (std::gcd(a, m) != 1) {
                bool threw = false;
                try {
                    lcg(m, a, 1, 0);
                } catch (const NotPeriodicError&) {
                    threw = true;
                }
                c.expect(threw, "lcg accepted a non-unit multiplier");
                continue;
            }
            for (u64 inc = 0; inc < m; ++inc) {
                auto spec = lcg(m, a, inc, 0);
                auto per = measured_period(spec, m);
                bool full = per && *per == m;
                if (certify_full_period(spec) != full)
                    c.fail("lcg m=" + std::to_string(m) + " a=" + std::to_string(a) + " c=" + std::to_string(inc));
            }
        }
    auto g = test::rng(1001);
    for (int k = 0; k < 50; ++k) {
        u64 p = test::uniform(g, 2, 3);
        unsigned d = static_cast<unsigned>(test::uniform(g, 1, 12));
        FpPoly P;
        do {
            std::vector<u64> co(d + 1);
            for (auto& x : co) x = test::uniform(g, 0, p - 1);
            co[d] = 1;
            P = FpPoly(p, co);
        } while (!is_irreducible(P) || !is_primitive(P));
        std::vector<u64> seed(d, 0);
        while (std::all_of(seed.begin(), seed.end(), [](u64 x) { return x == 0; }))
            for (auto& x : seed) x = test::uniform(g, 0, p - 1);
        auto spec = vecgen(p, P, seed);
        u64 want = 1;
        for (unsigned i = 0; i < d; ++i) want *= p;
        --want;
        auto per = measured_period(spec, want + 1);
        c.expect(per && *per == want, "vecgen " + P.str() + " measured");
        c.expect(certified_period(spec) == std::optional<u64>(want), "vecgen " + P.str() + " certificate");
        c.expect(certify_full_period(spec), "vecgen " + P.str() + " not certified");
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"exact constants by brute force", constants},
        {"elementary abelian classes vs exhaustion", elementary},
        {"classification at 1/2", equal_half},
        {"empty classifications", empty_rhos},
        {"classification at 3/4", three_quarters},
        {"completeness sweep to order 200", sweep},
        {"nonabelian families stay at or below 1/2", nonabelian},
        {"certified constants and gap scans", numeric},
        {"structural property suites", properties},
        {"generator periods", prng},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = c.problems.empty();
        failed += !ok;
        std::printf("%s criterion %zu: %s (%.2f s)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs);
        for (size_t k = 0; k < c.problems.size() && k < 10; ++k) std::printf("    %s\n", c.problems[k].c_str());
        if (c.problems.size() > 10) std::printf("    ... %zu more\n", c.problems.size() - 10);
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
