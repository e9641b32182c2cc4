#include "fdgl/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fdgl {

AbelianPGroup::AbelianPGroup(u64 prime, std::vector<unsigned> exps) : p(prime), exponents(std::move(exps)) {
    if (!is_prime(p)) throw std::domain_error("AbelianPGroup: " + std::to_string(p) + " is not prime");
    if (exponents.empty()) throw std::domain_error("AbelianPGroup: empty exponent tuple");
    for (size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] == 0) throw std::domain_error("AbelianPGroup: exponents must be positive");
        if (i && exponents[i] < exponents[i - 1]) throw std::domain_error("AbelianPGroup: exponents must be nondecreasing");
    }
}

u64 AbelianPGroup::order() const {
    unsigned s = 0;
    for (unsigned e : exponents) s += e;
    return ipow(p, s);
}

std::vector<u64> AbelianPGroup::moduli() const {
    std::vector<u64> m;
    for (unsigned e : exponents) m.push_back(ipow(p, e));
    return m;
}

bool AbelianPGroup::elementary() const {
    return std::all_of(exponents.begin(), exponents.end(), [](unsigned e) { return e == 1; });
}

std::string AbelianPGroup::str() const {
    std::ostringstream os;
    size_t i = 0;
    bool first = true;
    while (i < exponents.size()) {
        size_t j = i;
        while (j < exponents.size() && exponents[j] == exponents[i]) ++j;
        if (!first) os << " x ";
        first = false;
        os << "Z" << ipow(p, exponents[i]);
        if (j - i > 1) os << "^" << (j - i);
        i = j;
    }
    return os.str();
}

bool AbelianPGroup::operator<(const AbelianPGroup& o) const {
    if (p != o.p) return p < o.p;
    return exponents < o.exponents;
}

u64 AbelianGroupType::order() const {
    u64 r = 1;
    for (auto& h : parts) {
        auto x = checked_mul(r, h.order());
        if (!x) throw CapacityError("group order exceeds 64 bits");
        r = *x;
    }
    return r;
}

std::vector<u64> AbelianGroupType::moduli() const {
    std::vector<u64> m;
    for (auto& h : parts)
        for (u64 x : h.moduli()) m.push_back(x);
    return m;
}

bool AbelianGroupType::cyclic() const {
    return std::all_of(parts.begin(), parts.end(), [](const AbelianPGroup& h) { return h.cyclic(); });
}

std::string AbelianGroupType::str() const {
    if (parts.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += " x ";
        s += parts[i].str();
    }
    return s;
}

AbelianGroupType parse_group(std::string_view text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::domain_error("empty group description");
    std::map<u64, std::vector<unsigned>> acc;
    if (t != "1") {
        size_t i = 0;
        auto fail = [&](const std::string& why) {
            throw std::domain_error("group syntax: " + why + " in '" + std::string(text) + "'");
        };
        while (i < t.size()) {
            if (t[i] != 'Z' && t[i] != 'z') fail("expected Z");
            ++i;
            if (i < t.size() && (t[i] == '/' || t[i] == '_')) ++i;
            u64 n = 0;
            size_t st = i;
            while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
                n = n * 10 + static_cast<u64>(t[i++] - '0');
                if (n > (1ull << 40)) fail("modulus too large");
            }
            if (i == st || n == 0) fail("expected modulus");
            unsigned k = 1;
            if (i < t.size() && t[i] == '^') {
                ++i;
                st = i;
                k = 0;
                while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
                    k = k * 10 + static_cast<unsigned>(t[i++] - '0');
                    if (k > 64) fail("power too large");
                }
                if (i == st) fail("expected power");
            }
            for (auto& pp : factor(n))
                for (unsigned r = 0; r < k; ++r) acc[pp.prime].push_back(pp.exponent);
            if (i == t.size()) break;
            if (t[i] != 'x' && t[i] != 'X' && t[i] != '*') fail("expected 'x'");
            ++i;
            if (i == t.size()) fail("trailing separator");
        }
    }
    AbelianGroupType G;
    for (auto& [p, e] : acc) {
        std::sort(e.begin(), e.end());
        G.parts.emplace_back(p, e);
    }
    return G;
}

namespace {

void partitions(unsigned k, unsigned maxpart, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
    if (k == 0) {
        std::vector<unsigned> v(cur.rbegin(), cur.rend());
        out.push_back(v);
        return;
    }
    for (unsigned a = std::min(k, maxpart); a >= 1; --a) {
        cur.push_back(a);
        partitions(k - a, a, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<AbelianGroupType> abelian_groups_of_order(u64 n) {
    std::vector<AbelianGroupType> out{AbelianGroupType{}};
    for (auto& pp : factor(n)) {
        std::vector<std::vector<unsigned>> parts;
        std::vector<unsigned> cur;
        partitions(pp.exponent, pp.exponent, cur, parts);
        std::vector<AbelianGroupType> next;
        for (auto& G : out)
            for (auto& e : parts) {
                AbelianGroupType H = G;
                H.parts.emplace_back(pp.prime, e);
                next.push_back(H);
            }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

CyclicProduct::CyclicProduct(std::vector<u64> moduli) : mod_(std::move(moduli)) {
    for (u64 m : mod_) {
        if (m == 0) throw std::domain_error("zero modulus");
        weight_.push_back(order_);
        auto x = checked_mul(order_, m);
        if (!x) throw CapacityError("group order exceeds 64 bits");
        order_ = *x;
    }
}

u64 CyclicProduct::encode(const std::vector<u64>& v) const {
    if (v.size() != mod_.size()) throw std::domain_error("coordinate count mismatch");
    u64 r = 0;
    for (size_t i = 0; i < v.size(); ++i) r += (v[i] % mod_[i]) * weight_[i];
    return r;
}

std::vector<u64> CyclicProduct::decode(u64 idx) const {
    std::vector<u64> v(mod_.size());
    for (size_t i = 0; i < mod_.size(); ++i) {
        v[i] = idx % mod_[i];
        idx /= mod_[i];
    }
    return v;
}

u64 CyclicProduct::add(u64 a, u64 b) const {
    u64 r = 0;
    for (size_t i = 0; i < mod_.size(); ++i) {
        u64 x = a % mod_[i] + b % mod_[i];
        if (x >= mod_[i]) x -= mod_[i];
        r += x * weight_[i];
        a /= mod_[i];
        b /= mod_[i];
    }
    return r;
}

u64 CyclicProduct::neg(u64 a) const {
    u64 r = 0;
    for (size_t i = 0; i < mod_.size(); ++i) {
        u64 x = a % mod_[i];
        r += ((mod_[i] - x) % mod_[i]) * weight_[i];
        a /= mod_[i];
    }
    return r;
}

u64 CyclicProduct::element_order(u64 a) const {
    u64 o = 1;
    for (size_t i = 0; i < mod_.size(); ++i) {
        u64 x = a % mod_[i];
        o = lcm(o, mod_[i] / gcd(x, mod_[i]));
        a /= mod_[i];
    }
    return o;
}

std::vector<u64> EndoMatrix::apply(const std::vector<u64>& v) const {
    size_t k = n();
    if (v.size() != k) throw std::domain_error("EndoMatrix::apply: length mismatch");
    auto m = group.moduli();
    std::vector<u64> w(k, 0);
    for (size_t i = 0; i < k; ++i) {
        u128 s = 0;
        for (size_t j = 0; j < k; ++j) s += static_cast<u128>(at(i, j)) * v[j];
        w[i] = static_cast<u64>(s % m[i]);
    }
    return w;
}

std::string EndoMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < n(); ++i) {
        if (i) os << ",";
        os << "[";
        for (size_t j = 0; j < n(); ++j) {
            if (j) os << ",";
            os << at(i, j);
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

void check_shape(const IntMatrix& m, const AbelianPGroup& G) {
    if (m.size() != G.rank()) throw std::domain_error("matrix size does not match group rank");
    for (auto& r : m)
        if (r.size() != G.rank()) throw std::domain_error("matrix is not square");
}

}  // namespace

bool is_endo(const IntMatrix& m, const AbelianPGroup& G) {
    check_shape(m, G);
    const auto& e = G.exponents;
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j <= i; ++j) {
            if (e[i] <= e[j]) continue;
            std::int64_t d = static_cast<std::int64_t>(ipow(G.p, e[i] - e[j]));
            if (m[i][j] % d != 0) return false;
        }
    return true;
}

BigInt integer_det(std::vector<std::vector<BigInt>> a) {
    // Bareiss fraction-free elimination
    size_t n = a.size();
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

bool is_auto(const IntMatrix& m, const AbelianPGroup& G) {
    if (!is_endo(m, G)) return false;
    std::vector<std::vector<BigInt>> b(m.size(), std::vector<BigInt>(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j) b[i][j] = m[i][j];
    BigInt d = integer_det(b) % G.p;
    return d != 0;
}

EndoMatrix make_endo(const IntMatrix& m, const AbelianPGroup& G) {
    if (!is_endo(m, G)) throw std::domain_error("matrix violates the Hillar-Rhea divisibility condition");
    EndoMatrix A{G, std::vector<u64>(G.rank() * G.rank())};
    auto mod = G.moduli();
    for (size_t i = 0; i < G.rank(); ++i)
        for (size_t j = 0; j < G.rank(); ++j) {
            std::int64_t v = m[i][j] % static_cast<std::int64_t>(mod[i]);
            if (v < 0) v += static_cast<std::int64_t>(mod[i]);
            A.at(i, j) = static_cast<u64>(v);
        }
    return A;
}

bool is_auto(const EndoMatrix& A) {
    IntMatrix m(A.n(), std::vector<std::int64_t>(A.n()));
    for (size_t i = 0; i < A.n(); ++i)
        for (size_t j = 0; j < A.n(); ++j) m[i][j] = static_cast<std::int64_t>(A.at(i, j));
    return is_auto(m, A.group);
}

EndoMatrix identity_endo(const AbelianPGroup& G) {
    EndoMatrix A{G, std::vector<u64>(G.rank() * G.rank(), 0)};
    for (size_t i = 0; i < G.rank(); ++i) A.at(i, i) = 1;
    return A;
}

EndoMatrix compose(const EndoMatrix& A, const EndoMatrix& B) {
    if (!(A.group == B.group)) throw std::domain_error("compose: different groups");
    size_t n = A.n();
    auto m = A.group.moduli();
    EndoMatrix C{A.group, std::vector<u64>(n * n, 0)};
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            u128 s = 0;
            for (size_t k = 0; k < n; ++k) s += static_cast<u128>(A.at(i, k)) * B.at(k, j);
            C.at(i, j) = static_cast<u64>(s % m[i]);
        }
    return C;
}

ModMatrix reduction_mod_p(const EndoMatrix& A) {
    ModMatrix R(A.group.p, A.n());
    for (size_t i = 0; i < A.n(); ++i)
        for (size_t j = 0; j < A.n(); ++j) R.at(i, j) = A.at(i, j) % A.group.p;
    return R;
}

BigInt aut_count(const AbelianPGroup& G) {
    // |Aut| = prod (p^{d_k} - p^{k-1}) prod (p^{e_j})^{n-d_j} prod (p^{e_i-1})^{n-c_i+1}
    const auto& e = G.exponents;
    size_t n = e.size();
    BigInt p = G.p, r = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t d = k, c = k;
        while (d + 1 < n && e[d + 1] == e[k]) ++d;
        while (c > 0 && e[c - 1] == e[k]) --c;
        // 1-based d_k = d+1, c_k = c+1
        r *= boost::multiprecision::pow(p, static_cast<unsigned>(d + 1)) - boost::multiprecision::pow(p, static_cast<unsigned>(k));
        r *= boost::multiprecision::pow(boost::multiprecision::pow(p, e[k]), static_cast<unsigned>(n - (d + 1)));
        r *= boost::multiprecision::pow(boost::multiprecision::pow(p, e[k] - 1), static_cast<unsigned>(n - c));
    }
    return r;
}

namespace {

struct AutEnum {
    const AbelianPGroup& G;
    const AutVisitor& visit;
    const ReductionFilter& filter;
    size_t n;
    u64 p;
    std::vector<size_t> block_start, block_end, block_of;
    ModMatrix R;
    EndoMatrix A;
    std::vector<std::vector<char>> spans;  // per row
    std::vector<size_t> free;
    std::vector<u64> choices, step;

    AutEnum(const AbelianPGroup& g, const AutVisitor& v, const ReductionFilter& f)
        : G(g), visit(v), filter(f), n(g.rank()), p(g.p), R(g.p, g.rank()), A{g, std::vector<u64>(g.rank() * g.rank(), 0)} {
        const auto& e = G.exponents;
        block_of.resize(n);
        for (size_t i = 0; i < n;) {
            size_t j = i;
            while (j < n && e[j] == e[i]) ++j;
            for (size_t k = i; k < j; ++k) block_of[k] = block_start.size();
            block_start.push_back(i);
            block_end.push_back(j);
            i = j;
        }
        spans.resize(n + 1);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                unsigned ei = e[i], ej = e[j];
                u64 c = ei <= ej ? ipow(p, ei - 1) : ipow(p, ej);
                if (c == 1) continue;
                free.push_back(i * n + j);
                choices.push_back(c);
                step.push_back(ei <= ej ? p : ipow(p, ei - ej));
            }
    }

    u64 vec_size(size_t k) const { return ipow(p, static_cast<unsigned>(k)); }

    // row i of R: diagonal block part must avoid the span of earlier rows of its block
    void rows(size_t i) {
        if (i == n) {
            reduced();
            return;
        }
        size_t b = block_of[i];
        size_t s = block_start[b], t = block_end[b];
        size_t k = t - s;
        u64 diag_count = vec_size(k);
        if (i == s) {
            spans[i].assign(diag_count, 0);
            spans[i][0] = 1;
        }
        const std::vector<char>& span = spans[i];
        u64 right_count = vec_size(n - t);
        for (u64 dv = 0; dv < diag_count; ++dv) {
            if (span[dv]) continue;
            u64 x = dv;
            for (size_t j = s; j < t; ++j) {
                R.at(i, j) = x % p;
                x /= p;
            }
            if (i + 1 < t) {
                std::vector<char>& next = spans[i + 1];
                next = span;
                for (u64 w = 0; w < diag_count; ++w) {
                    if (!span[w]) continue;
                    for (u64 c = 1; c < p; ++c) next[add_scaled(w, dv, c, k)] = 1;
                }
            }
            for (u64 rv = 0; rv < right_count; ++rv) {
                u64 y = rv;
                for (size_t j = t; j < n; ++j) {
                    R.at(i, j) = y % p;
                    y /= p;
                }
                rows(i + 1);
            }
        }
        for (size_t j = 0; j < n; ++j) R.at(i, j) = 0;
    }

    u64 add_scaled(u64 w, u64 v, u64 c, size_t k) const {
        u64 r = 0, mult = 1;
        for (size_t d = 0; d < k; ++d) {
            r += ((w % p + c * (v % p)) % p) * mult;
            w /= p;
            v /= p;
            mult *= p;
        }
        return r;
    }

    void reduced() {
        if (filter && !filter(R)) return;
        for (size_t idx = 0; idx < n * n; ++idx) A.entries[idx] = lift_base(idx);
        lift(0);
    }

    u64 lift_base(size_t idx) const {
        size_t i = idx / n, j = idx % n;
        return G.exponents[i] <= G.exponents[j] ? R.at(i, j) : 0;
    }

    // entries with more than one lift, odometer style
    void lift(size_t k) {
        if (k == free.size()) {
            visit(A);
            return;
        }
        size_t idx = free[k];
        u64 base = lift_base(idx);
        for (u64 t = 0; t < choices[k]; ++t) {
            A.entries[idx] = base + step[k] * t;
            lift(k + 1);
        }
    }
};

}  // namespace

void enum_autos(const AbelianPGroup& G, const AutVisitor& visit, const ReductionFilter& filter) {
    BigInt cnt = aut_count(G);
    if (!filter && cnt > BigInt(limits().max_autos))
        throw CapacityError("enum_autos: |Aut(" + G.str() + ")| = " + cnt.str() + " exceeds limit " +
                            std::to_string(limits().max_autos));
    for (size_t k = 0, i = 0; i < G.rank(); ++k) {
        size_t j = i;
        while (j < G.rank() && G.exponents[j] == G.exponents[i]) ++j;
        if (ipow(G.p, static_cast<unsigned>(j - i)) > (1u << 20)) throw CapacityError("enum_autos: block too large");
        i = j;
    }
    AutEnum e(G, visit, filter);
    e.rows(0);
}

std::vector<EndoMatrix> list_autos(const AbelianPGroup& G) {
    std::vector<EndoMatrix> out;
    enum_autos(G, [&](const EndoMatrix& A) { out.push_back(A); });
    return out;
}

std::vector<u64> AffineMap::apply(const std::vector<u64>& v) const {
    auto w = endo.apply(v);
    auto m = endo.group.moduli();
    if (translation.size() != w.size()) throw std::domain_error("translation length mismatch");
    for (size_t i = 0; i < w.size(); ++i) w[i] = (w[i] + translation[i] % m[i]) % m[i];
    return w;
}

u64 CycleStructure::domain_size() const {
    u64 s = 0;
    for (auto& [l, c] : counts) s += l * c;
    return s;
}

u64 CycleStructure::Lambda() const { return counts.empty() ? 0 : counts.rbegin()->first; }

Rational CycleStructure::lambda() const {
    u64 n = domain_size();
    if (n == 0) throw std::domain_error("lambda of empty domain");
    return Rational(BigInt(Lambda()), BigInt(n));
}

u64 CycleStructure::period() const {
    u64 r = 1;
    for (auto& [l, c] : counts) r = lcm(r, l);
    return r;
}

std::vector<u64> CycleStructure::lengths() const {
    std::vector<u64> v;
    for (auto& [l, c] : counts) v.push_back(l);
    return v;
}

std::string CycleStructure::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [l, c] : counts) {
        if (!first) os << " ";
        first = false;
        os << l << ":" << c;
    }
    return os.str();
}

CycleStructure cycle_structure(const std::vector<std::uint32_t>& perm) {
    size_t N = perm.size();
    std::vector<char> seen(N, 0);
    for (auto x : perm) {
        if (x >= N || seen[x]) throw NotPeriodicError("map is not a bijection");
        seen[x] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    CycleStructure cs;
    for (size_t s = 0; s < N; ++s) {
        if (seen[s]) continue;
        u64 len = 0;
        for (size_t x = s; !seen[x]; x = perm[x]) {
            seen[x] = 1;
            ++len;
        }
        ++cs.counts[len];
    }
    return cs;
}

namespace {

void check_capacity(u64 order) {
    if (order > limits().max_order)
        throw CapacityError("group order " + std::to_string(order) + " exceeds orbit limit " +
                            std::to_string(limits().max_order));
}

}  // namespace

std::vector<std::uint32_t> image_table(const EndoMatrix& A) {
    CyclicProduct C(A.group.moduli());
    check_capacity(C.order());
    size_t n = A.n();
    std::vector<u64> col(n), w(n);
    for (size_t j = 0; j < n; ++j) {
        std::vector<u64> v(n, 0);
        for (size_t i = 0; i < n; ++i) v[i] = A.at(i, j);
        col[j] = C.encode(v);
    }
    w[0] = 1;
    for (size_t j = 1; j < n; ++j) w[j] = w[j - 1] * C.moduli()[j - 1];
    std::vector<std::uint32_t> img(C.order());
    img[0] = 0;
    for (u64 g = 1; g < C.order(); ++g) {
        size_t j = 0;
        while ((g / w[j]) % C.moduli()[j] == 0) ++j;
        img[g] = static_cast<std::uint32_t>(C.add(img[g - w[j]], col[j]));
    }
    return img;
}

std::vector<std::uint32_t> image_table(const AffineMap& A) {
    CyclicProduct C(A.endo.group.moduli());
    auto img = image_table(A.endo);
    u64 t = C.encode(A.translation);
    for (auto& x : img) x = static_cast<std::uint32_t>(C.add(x, t));
    return img;
}

CycleStructure cycle_structure(const EndoMatrix& A) { return cycle_structure(image_table(A)); }
CycleStructure cycle_structure(const AffineMap& A) { return cycle_structure(image_table(A)); }
Rational lambda_of(const EndoMatrix& A) { return cycle_structure(A).lambda(); }
Rational lambda_of(const AffineMap& A) { return cycle_structure(A).lambda(); }
u64 Lambda_of(const EndoMatrix& A) { return cycle_structure(A).Lambda(); }
u64 Lambda_of(const AffineMap& A) { return cycle_structure(A).Lambda(); }

std::vector<std::vector<u64>> cycle_length_sets(const AbelianPGroup& H) {
    std::set<std::vector<u64>> sets;
    enum_autos(H, [&](const EndoMatrix& A) { sets.insert(cycle_structure(A).lengths()); });
    return {sets.begin(), sets.end()};
}

namespace {

// largest lcm over one choice of length set per factor
u64 combine_lengths(const std::vector<std::vector<std::vector<u64>>>& per_factor) {
    std::set<std::vector<u64>> cur{{1}};
    for (auto& sets : per_factor) {
        std::set<std::vector<u64>> next;
        for (auto& a : cur)
            for (auto& b : sets) {
                std::set<u64> ls;
                for (u64 x : a)
                    for (u64 y : b) ls.insert(lcm(x, y));
                next.insert(std::vector<u64>(ls.begin(), ls.end()));
            }
        cur = std::move(next);
    }
    u64 best = 0;
    for (auto& v : cur) best = std::max(best, v.back());
    return best;
}

std::vector<std::vector<u64>> affine_length_sets(const AbelianPGroup& H, bool transversal) {
    CyclicProduct C(H.moduli());
    check_capacity(C.order());
    std::set<std::vector<u64>> sets;
    u64 N = C.order();
    enum_autos(H, [&](const EndoMatrix& A) {
        auto img = image_table(A);
        std::vector<u64> reps;
        if (transversal) {
            // translations modulo im(1 - A) give conjugate maps
            std::vector<char> in_im(N, 0);
            for (u64 g = 0; g < N; ++g) in_im[C.add(g, C.neg(img[g]))] = 1;
            std::vector<u64> im;
            for (u64 g = 0; g < N; ++g)
                if (in_im[g]) im.push_back(g);
            std::vector<char> covered(N, 0);
            for (u64 g = 0; g < N; ++g) {
                if (covered[g]) continue;
                reps.push_back(g);
                for (u64 h : im) covered[C.add(g, h)] = 1;
            }
        } else {
            for (u64 g = 0; g < N; ++g) reps.push_back(g);
        }
        std::vector<std::uint32_t> aff(N);
        for (u64 t : reps) {
            for (u64 g = 0; g < N; ++g) aff[g] = static_cast<std::uint32_t>(C.add(img[g], t));
            sets.insert(cycle_structure(aff).lengths());
        }
    });
    return {sets.begin(), sets.end()};
}

}  // namespace

Rational lambda_group(const AbelianGroupType& G) {
    if (G.trivial()) return 1;
    std::vector<std::vector<std::vector<u64>>> per;
    for (auto& H : G.parts) per.push_back(cycle_length_sets(H));
    return Rational(BigInt(combine_lengths(per)), BigInt(G.order()));
}

Rational lambda_aff_pgroup(const AbelianPGroup& H, bool transversal) {
    auto sets = affine_length_sets(H, transversal);
    u64 best = 0;
    for (auto& v : sets) best = std::max(best, v.back());
    return Rational(BigInt(best), BigInt(H.order()));
}

Rational lambda_aff_group(const AbelianGroupType& G, bool transversal) {
    if (G.trivial()) return 1;
    std::vector<std::vector<std::vector<u64>>> per;
    for (auto& H : G.parts) per.push_back(affine_length_sets(H, transversal));
    return Rational(BigInt(combine_lengths(per)), BigInt(G.order()));
}

Compatibility compatibility(const std::vector<unsigned>& e, const std::vector<unsigned>& f) {
    if (e.size() != f.size()) throw std::domain_error("compatibility: tuples of different length");
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] < f[i]) throw std::domain_error("compatibility: need e_i >= f_i");
        if (i && (e[i] < e[i - 1] || f[i] < f[i - 1])) throw std::domain_error("compatibility: tuples must be nondecreasing");
    }
    bool down = true, up = true;
    for (size_t i = 1; i < e.size(); ++i) {
        long d0 = static_cast<long>(e[i - 1]) - f[i - 1], d1 = static_cast<long>(e[i]) - f[i];
        if (d0 > d1) down = false;
        if (d0 < d1) up = false;
    }
    if (down && up) return Compatibility::both;
    if (down) return Compatibility::downward;
    if (up) return Compatibility::upward;
    return Compatibility::neither;
}

std::string to_string(Compatibility c) {
    switch (c) {
        case Compatibility::downward: return "downward";
        case Compatibility::upward: return "upward";
        case Compatibility::both: return "both";
        case Compatibility::neither: return "neither";
    }
    return "?";
}

Rational inversion_fraction(const EndoMatrix& A) {
    CyclicProduct C(A.group.moduli());
    auto img = image_table(A);
    u64 cnt = 0;
    for (u64 g = 0; g < C.order(); ++g)
        if (img[g] == C.neg(g)) ++cnt;
    return Rational(BigInt(cnt), BigInt(C.order()));
}

Rational l_group(const AbelianGroupType& G) {
    Rational r = 1;
    for (auto& H : G.parts) {
        Rational best = 0;
        enum_autos(H, [&](const EndoMatrix& A) { best = std::max(best, inversion_fraction(A)); });
        r *= best;
    }
    return r;
}

}  // namespace fdgl
