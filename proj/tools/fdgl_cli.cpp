// fdgl command line: classify, lambda, oracle, poly, bounds, prng
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "fdgl/bounds.hpp"
#include "fdgl/classify.hpp"
#include "fdgl/oracle.hpp"
#include "fdgl/prng.hpp"

using namespace fdgl;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, capacity = 3, domain = 4 };

int decimals = -1;

std::string num(const Rational& r) {
    std::string s = to_string(r);
    if (decimals >= 0 && r >= 0) s += " (" + decimal_floor(r, static_cast<unsigned>(decimals)) + ")";
    return s;
}

// endpoints rounded outward, so the printed interval still contains the exact one
std::string interval(const RationalInterval& I) {
    unsigned k = decimals >= 0 ? static_cast<unsigned>(decimals) : 15;
    Rational ulp(BigInt(1), boost::multiprecision::pow(BigInt(10), k));
    std::string hi = decimal_floor(I.hi, k);
    if (parse_decimal(hi) < I.hi) hi = decimal_floor(parse_decimal(hi) + ulp, k);
    return "[" + decimal_floor(I.lo, k) + ", " + hi + "] digits " + certified_decimal(I, k);
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

// malformed user text is a usage error, not a failed computation
template <class F>
auto parsed(F&& f) {
    try {
        return f();
    } catch (const CapacityError&) {
        throw;
    } catch (const std::exception& e) {
        throw CLI::ValidationError(e.what());
    }
}

int run_classify(const std::string& rho_text, u64 expand_max, const std::string& json_path, bool group_level,
                 bool self_check) {
    Rho rho = parsed([&] { return parse_rho(rho_text); });
    if (group_level) {
        auto gs = classify_group_lambda(rho);
        std::cout << "groups with lambda(G) = " << rho.str() << ": " << gs.size() << "\n";
        for (auto& g : gs) {
            std::cout << "  " << g.group << (g.family ? "  [family]" : "") << "  witness " << g.witness << "\n";
            for (auto& c : g.side_conditions) std::cout << "      " << c << "\n";
        }
        return ok;
    }
    ClassifyOptions opt;
    opt.self_check = self_check;
    auto r = classify_rho(rho, opt);
    // JSON on stdout replaces the text report
    if (json_path == "-") {
        std::cout << to_json(r) << "\n";
        return ok;
    }
    std::cout << "rho = " << r.rho.str() << ": " << r.descriptors.size() << " descriptor"
              << (r.descriptors.size() == 1 ? "" : "s") << "\n";
    if (r.empty_reason) std::cout << "reason: " << *r.empty_reason << "\n";
    size_t i = 0;
    for (auto& d : r.descriptors) {
        ++i;
        std::cout << "[" << i << "] " << (d.kind == IsoClassDescriptor::Kind::finite ? "finite" : "family") << "  "
                  << d.spec_template << "\n";
        std::cout << "    group " << d.group_str() << ", min order " << d.min_order << ", lambda-maximal "
                  << (d.lambda_maximal ? "yes" : "no") << ", classes "
                  << (d.witness_count ? d.witness_count->str() : std::string("infinite")) << "\n";
        for (auto& c : d.side_conditions) std::cout << "    where " << c << "\n";
        for (auto& n : d.notes) std::cout << "    note: " << n << "\n";
        if (expand_max > 0) {
            auto inst = expand(d, expand_max);
            for (auto& s : inst) std::cout << "      " << s.str() << "  |G| = " << s.group_order() << "\n";
            if (inst.empty()) std::cout << "      (no member with |G| <= " << expand_max << ")\n";
        }
    }
    for (auto& n : r.notes) std::cout << "note: " << n << "\n";
    if (!json_path.empty()) {
        std::ofstream f(json_path);
        if (!f) throw std::runtime_error("cannot write " + json_path);
        f << to_json(r) << "\n";
    }
    return ok;
}

int run_lambda(const std::string& group, const std::string& spec, bool aff, bool transversal, bool lval) {
    if (!group.empty() == !spec.empty()) throw CLI::ValidationError("lambda", "give exactly one of --group, --spec");
    if (!spec.empty()) {
        auto s = parsed([&] { return parse_spec(spec); });
        auto f = evaluate(s);
        auto cs = f.cycles();
        std::cout << "spec " << s.str() << "\n";
        std::cout << "group " << (f.group ? f.group->name() : std::string("?")) << ", order " << f.size() << "\n";
        std::cout << "lambda = " << num(cs.lambda()) << "\n";
        std::cout << "Lambda = " << cs.Lambda() << "\n";
        std::cout << "cycles " << cs.str() << "\n";
        return ok;
    }
    auto G = parsed([&] { return parse_group(group); });
    std::cout << "group " << G.str() << ", order " << G.order() << "\n";
    Rational l = lambda_group(G);
    std::cout << "lambda = " << num(l) << "\n";
    Rational big = l * G.order();
    std::cout << "Lambda = " << numerator(big) << "\n";
    if (aff) std::cout << "lambda_aff = " << num(lambda_aff_group(G, transversal)) << "\n";
    if (lval) std::cout << "l = " << num(l_group(G)) << "\n";
    return ok;
}

int run_oracle(u64 max_order, bool verbose) {
    auto r = completeness_sweep(max_order);
    size_t bad = 0, with = 0;
    for (auto& g : r.groups) {
        if (g.observed) ++with;
        if (!g.ok()) ++bad;
        if (verbose || !g.ok() || g.observed) {
            std::cout << (g.ok() ? "ok   " : "FAIL ") << g.group.str() << "  " << g.mode << "  maps " << g.observed
                      << "  predicted " << g.predicted << "  classes " << g.instances << "\n";
            for (auto& p : g.problems) std::cout << "      " << p << "\n";
        }
    }
    for (auto& p : r.problems) std::cout << "FAIL " << p << "\n";
    std::cout << "groups " << r.groups.size() << ", with lambda >= 1/2: " << with << ", rho candidates "
              << r.rho_candidates << ", mismatches " << bad + r.problems.size() << "\n";
    std::cout << (r.ok() ? "PASS" : "FAIL") << "\n";
    return r.ok() ? ok : failed;
}

int run_poly(const std::string& text, const std::vector<u64>& enum_pd, const std::vector<u64>& count_pd) {
    if (!enum_pd.empty()) {
        auto v = enum_primitive(enum_pd[0], static_cast<unsigned>(enum_pd[1]));
        for (auto& P : v) std::cout << P.str_full() << "\n";
        std::cout << v.size() << " primitive\n";
        return ok;
    }
    if (!count_pd.empty()) {
        std::cout << primitive_count(count_pd[0], static_cast<unsigned>(count_pd[1])) << "\n";
        return ok;
    }
    if (text.empty()) throw CLI::ValidationError("poly", "give a polynomial, --enum p d or --count p d");
    FpPoly P = parsed([&] { return parse_poly(text); });
    std::cout << "poly " << P.str_full() << "\n";
    std::cout << "degree " << P.degree() << "\n";
    std::vector<std::string> fs;
    for (auto& f : factor_poly(P))
        fs.push_back("(" + f.poly.str() + ")" + (f.multiplicity > 1 ? "^" + std::to_string(f.multiplicity) : ""));
    std::cout << "factors " << (fs.empty() ? std::string("1") : join(fs, " ")) << "\n";
    std::cout << "irreducible " << (is_irreducible(P) ? "yes" : "no") << "\n";
    if (P.coeff(0) != 0) {
        std::cout << "order " << poly_order(P) << "\n";
        std::cout << "primitive " << (is_primitive(P) ? "yes" : "no") << "\n";
    } else {
        std::cout << "order undefined (P(0) = 0)\n";
    }
    return ok;
}

int run_bounds(const std::string& what, const std::string& limit_base, u64 terms, bool order_primes) {
    if (!limit_base.empty()) {
        auto s = limit_sequence(parsed([&] { return parse_spec(limit_base); }), terms, order_primes);
        std::cout << "base lambda = " << num(s.rho) << ", Lambda = " << s.Lambda << ", o = " << s.o << "\n";
        for (auto& t : s.terms)
            std::cout << "  n=" << t.n << "  degree " << t.degree << "  lambda = " << num(t.lambda) << "  P = "
                      << t.witness.str() << "\n";
        return ok;
    }
    bool all = what == "all", pass = true;
    auto line = [&](bool v, const std::string& text) {
        std::cout << (v ? "pass  " : "FAIL  ") << text << "\n";
        pass = pass && v;
    };
    if (all || what == "rho0") {
        auto I = rho0();
        line(pins_digits(I, "0.504307524") && I.width() < Rational(1, 1000000000), "rho0 " + interval(I));
    }
    if (all || what == "rho1") {
        auto I = rho1();
        line(pins_digits(I, "0.750063685") && I.width() < Rational(1, 1000000000), "rho1 " + interval(I));
    }
    if (all || what == "anlem") {
        for (auto& v : anlem_certify()) line(v.verified, v.id + " " + interval(v.value) + "  " + v.claim);
    }
    if (all || what == "gaps") {
        auto g0 = gap_scan(Rational(1, 2), rho0().hi, 60);
        line(g0.empty(), "no shape in (1/2, rho0] up to 2^60: " + std::to_string(g0.size()) + " found");
        for (auto& x : g0) std::cout << "      " << to_string(x.lambda) << "  " << x.shape << "\n";
        auto g1 = gap_scan(Rational(3, 4), rho1().hi, 60);
        line(g1.empty(), "no shape in (3/4, rho1] up to 2^60: " + std::to_string(g1.size()) + " found");
        for (auto& x : g1) std::cout << "      " << to_string(x.lambda) << "  " << x.shape << "\n";
    }
    if (!all && what != "rho0" && what != "rho1" && what != "anlem" && what != "gaps")
        throw CLI::ValidationError("--certify", "one of rho0, rho1, anlem, gaps, all");
    return pass ? ok : failed;
}

std::vector<u64> parse_seed(const std::string& s, u64 p) {
    std::vector<u64> v;
    if (s.find(',') != std::string::npos) {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) v.push_back(std::stoull(tok));
        return v;
    }
    u64 x = std::stoull(s);
    while (x) v.push_back(x % p), x /= p;
    return v;
}

int print_stream(const RngSpec& spec, u64 count, bool certify, u64 cap) {
    std::cout << spec.str() << " on " << spec.group_str() << "\n";
    if (certify) {
        bool full = certify_full_period(spec);
        auto c = certified_period(spec);
        auto m = measured_period(spec, cap);
        std::cout << "certified " << (full ? "full period" : "not full period");
        if (c) std::cout << ", period " << *c;
        std::cout << "\nmeasured " << (m ? std::to_string(*m) : "exceeds cap " + std::to_string(cap)) << "\n";
    }
    for (u64 w : stream(spec, count)) std::cout << w << "\n";
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite dynamical groups: lambda values, classification, certified bounds"};
    app.require_subcommand(1);
    app.add_option("--decimal", decimals, "also print k decimal digits (truncated, exact)")->check(CLI::Range(0, 200));

    auto* c = app.add_subcommand("classify", "all periodic FDG classes with lambda = rho");
    std::string rho_text, json_path;
    u64 expand_max = 0;
    bool group_level = false, no_check = false;
    c->add_option("--rho", rho_text, "a/b in [1/2, 1]")->required();
    c->add_option("--expand-max-order", expand_max, "list concrete members with |G| <= N");
    c->add_option("--json", json_path, "write the result as JSON (- for stdout)");
    c->add_flag("--group", group_level, "classify groups G with lambda(G) = rho instead");
    c->add_flag("--no-self-check", no_check, "skip evaluating small instances");

    auto* l = app.add_subcommand("lambda", "lambda of a group or of a spec");
    std::string group, spec;
    bool aff = false, transversal = false, lval = false;
    l->add_option("--group", group, "abelian group, e.g. \"Z2 x Z4\"");
    l->add_option("--spec", spec, "FDG spec, e.g. \"V(x^3+x+1@2) * M(7,3)\"");
    l->add_flag("--aff", aff, "also lambda_aff over periodic affine maps");
    l->add_flag("--transversal", transversal, "translations modulo im(1 - alpha) only");
    l->add_flag("--l", lval, "also the largest inversion fraction l(G)");

    auto* o = app.add_subcommand("oracle", "completeness sweep over abelian groups");
    u64 max_order = 200;
    bool verbose = false;
    o->add_option("--max-order", max_order, "largest |G|")->check(CLI::Range(1, 255));
    o->add_flag("--verbose", verbose, "a line for every group");

    auto* p = app.add_subcommand("poly", "polynomials over F_p");
    std::string poly_text;
    std::vector<u64> enum_pd, count_pd;
    p->add_option("poly", poly_text, "e.g. \"x^4+x+1 mod 2\"");
    p->add_option("--enum", enum_pd, "p d: list primitive polynomials")->expected(2);
    p->add_option("--count", count_pd, "p d: count primitive polynomials")->expected(2);

    auto* b = app.add_subcommand("bounds", "certified constants and gap scans");
    std::string what = "all", limit_base;
    u64 terms = 5;
    bool order_primes = false;
    b->add_option("--certify", what, "rho0, rho1, anlem, gaps or all");
    b->add_option("--limit", limit_base, "base spec for the approximating sequence");
    b->add_option("--terms", terms, "number of sequence terms");
    b->add_flag("--order-primes", order_primes, "take o from the odd primes of |G| instead of Lambda");

    auto* r = app.add_subcommand("prng", "congruential and vector generators");
    r->require_subcommand(1);
    u64 count = 10, cap = 1u << 24;
    bool certify = false;
    r->add_option("--count", count, "words to print");
    r->add_option("--cap", cap, "step cap for the measured period");
    r->add_flag("--certify", certify, "print certified and measured periods");
    auto* rl = r->add_subcommand("lcg", "y -> a*y + c mod m");
    u64 lm = 0, la = 0, lc = 0, ls = 0;
    rl->add_option("m", lm)->required();
    rl->add_option("a", la)->required();
    rl->add_option("c", lc)->required();
    rl->add_option("seed", ls)->required();
    auto* rv = r->add_subcommand("vec", "state iteration by the companion matrix of P");
    u64 vp = 2;
    std::string vpoly, vseed;
    rv->add_option("p", vp)->required();
    rv->add_option("poly", vpoly)->required();
    rv->add_option("seed", vseed, "comma list of coordinates, or an integer read in base p")->required();
    for (auto* sc : {rl, rv}) {
        sc->add_option("--count", count, "words to print");
        sc->add_option("--cap", cap, "step cap for the measured period");
        sc->add_flag("--certify", certify, "print certified and measured periods");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        if (*c) return run_classify(rho_text, expand_max, json_path, group_level, !no_check);
        if (*l) return run_lambda(group, spec, aff, transversal, lval);
        if (*o) return run_oracle(max_order, verbose);
        if (*p) return run_poly(poly_text, enum_pd, count_pd);
        if (*b) return run_bounds(what, limit_base, terms, order_primes);
        if (*rl) return print_stream(lcg(lm, la, lc, ls), count, certify, cap);
        if (*rv) {
            FpPoly P = parsed([&] { return parse_poly(vpoly, vp); });
            return print_stream(vecgen(vp, P, parse_seed(vseed, vp)), count, certify, cap);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const CapacityError& e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return capacity;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return domain;
    }
    return usage;
}
