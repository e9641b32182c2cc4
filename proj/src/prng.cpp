#include "fdgl/prng.hpp"

#include <sstream>

namespace fdgl {

std::string RngSpec::group_str() const {
    if (kind == Kind::Lcg) return "Z" + std::to_string(mod);
    return "(Z" + std::to_string(mod) + ")^" + std::to_string(dim());
}

std::string RngSpec::str() const {
    std::ostringstream s;
    if (kind == Kind::Lcg)
        s << "lcg(m=" << mod << ", a=" << A.at(0, 0) << ", c=" << c[0] << ", seed=" << seed[0] << ")";
    else {
        s << "vec(" << poly.str_full() << ", seed=[";
        for (size_t i = 0; i < seed.size(); ++i) s << (i ? "," : "") << seed[i];
        s << "])";
    }
    return s.str();
}

RngSpec lcg(u64 m, u64 a, u64 c, u64 seed) {
    if (m == 0) throw std::domain_error("lcg modulus must be >= 1");
    if (gcd(a % m, m) != 1 && m > 1) throw NotPeriodicError("lcg multiplier is not a unit mod m");
    RngSpec s;
    s.kind = RngSpec::Kind::Lcg;
    s.mod = m;
    s.A = ModMatrix(m, 1);
    s.A.at(0, 0) = a % m;
    s.c = {c % m};
    s.seed = {seed % m};
    return s;
}

RngSpec vecgen(u64 p, const FpPoly& P, const std::vector<u64>& seed) {
    if (P.modulus() != p || !is_prime(p)) throw std::domain_error("vecgen needs a polynomial over a prime field");
    if (!P.is_monic() || P.degree() < 1) throw std::domain_error("vecgen needs a monic polynomial of degree >= 1");
    if (P.coeff(0) == 0) throw std::domain_error("vecgen: zero constant term makes the map degenerate");
    size_t d = static_cast<size_t>(P.degree());
    if (seed.size() > d) throw std::domain_error("seed longer than the degree");
    RngSpec s;
    s.kind = RngSpec::Kind::Vector;
    s.mod = p;
    s.A = companion(P);
    s.c.assign(d, 0);
    s.seed.assign(d, 0);
    for (size_t i = 0; i < seed.size(); ++i) s.seed[i] = seed[i] % p;
    s.poly = P;
    return s;
}

bool certify_full_period(const RngSpec& spec) {
    if (spec.kind == RngSpec::Kind::Vector) {
        bool nonzero = false;
        for (u64 x : spec.seed) nonzero |= x != 0;
        return nonzero && is_primitive(spec.poly);
    }
    u64 m = spec.mod, a = spec.A.at(0, 0), c = spec.c[0];
    if (m == 1) return true;
    if (gcd(c, m) != 1) return false;
    for (u64 p : prime_divisors(m))
        if ((a + m - 1) % p != 0) return false;
    if (m % 4 == 0 && (a + m - 1) % 4 != 0) return false;
    return true;
}

std::optional<u64> certified_period(const RngSpec& spec) {
    if (spec.kind == RngSpec::Kind::Lcg) {
        if (certify_full_period(spec)) return spec.mod;
        return std::nullopt;
    }
    bool nonzero = false;
    for (u64 x : spec.seed) nonzero |= x != 0;
    if (!nonzero) return 1;
    if (is_primitive(spec.poly)) return ipow(spec.mod, static_cast<unsigned>(spec.dim())) - 1;
    return std::nullopt;
}

std::vector<u64> step(const RngSpec& spec, const std::vector<u64>& state) {
    std::vector<u64> out = apply(spec.A, state);
    for (size_t i = 0; i < out.size(); ++i) out[i] = (out[i] + spec.c[i]) % spec.mod;
    return out;
}

unsigned word_bits(const RngSpec& spec) {
    unsigned w = 0;
    while (w < 64 && ((spec.mod - 1) >> w) != 0) ++w;
    return w;
}

u64 pack(const RngSpec& spec, const std::vector<u64>& state) {
    unsigned w = word_bits(spec);
    if (w * state.size() > 64) throw CapacityError("state does not fit a 64-bit word");
    u64 out = 0;
    for (size_t i = 0; i < state.size(); ++i) out |= state[i] << (w * i);
    return out;
}

RngStream::RngStream(const RngSpec& spec) : spec_(spec), state_(spec.seed) { pack(spec, state_); }

u64 RngStream::next() {
    u64 w = pack(spec_, state_);
    state_ = step(spec_, state_);
    return w;
}

std::vector<u64> stream(const RngSpec& spec, u64 count) {
    if (count > (u64(1) << 28)) throw CapacityError("stream count above 2^28");
    RngStream s(spec);
    std::vector<u64> out;
    out.reserve(count);
    for (u64 i = 0; i < count; ++i) out.push_back(s.next());
    return out;
}

std::optional<u64> measured_period(const RngSpec& spec, u64 cap) {
    std::vector<u64> x = spec.seed;
    for (u64 k = 1; k <= cap; ++k) {
        x = step(spec, x);
        if (x == spec.seed) return k;
    }
    return std::nullopt;
}

}  // namespace fdgl
