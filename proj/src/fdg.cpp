#include "fdgl/fdg.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fdgl {

u64 FiniteGroup::element_order(u32 a) const {
    u64 k = 1;
    u32 x = a;
    while (x != identity()) {
        x = mul(x, a);
        ++k;
        if (k > order()) throw std::logic_error("element order exceeds group order");
    }
    return k;
}

std::string AbelianFiniteGroup::name() const {
    std::string s;
    for (size_t i = 0; i < c_.moduli().size(); ++i) {
        if (i) s += " x ";
        s += "Z" + std::to_string(c_.moduli()[i]);
    }
    return s.empty() ? "1" : s;
}

std::string AbelianFiniteGroup::element_str(u32 a) const {
    auto v = c_.decode(a);
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

DihedralGroup::DihedralGroup(u64 n, bool dicyclic) : n_(n), dic_(dicyclic) {
    if (dic_ ? (n < 4 || n % 2) : n < 1) throw std::domain_error("bad dihedral/dicyclic parameter n");
}

u32 DihedralGroup::mul(u32 a, u32 b) const {
    u64 j1 = a % n_, s1 = a / n_, j2 = b % n_, s2 = b / n_;
    u64 j = s1 ? (j1 + n_ - j2) % n_ : (j1 + j2) % n_;
    if (dic_ && s1 && s2) j = (j + n_ / 2) % n_;
    return static_cast<u32>(j + n_ * ((s1 + s2) % 2));
}

u32 DihedralGroup::inv(u32 a) const {
    u64 j = a % n_, s = a / n_;
    if (!s) return static_cast<u32>((n_ - j) % n_);
    if (!dic_) return a;  // reflections are involutions
    // (r^j x)^{-1} = x^{-1} r^{-j} = r^{j + n/2} x
    return static_cast<u32>((j + n_ / 2) % n_ + n_);
}

std::string DihedralGroup::name() const { return (dic_ ? "Dic" : "D") + std::to_string(2 * n_); }

std::string DihedralGroup::element_str(u32 a) const {
    u64 j = a % n_, s = a / n_;
    return "r^" + std::to_string(j) + (s ? " x" : "");
}

KleinDihedralGroup::KleinDihedralGroup(u64 o, bool dicyclic) : o_(o), dic_(dicyclic) {
    if (o < 3 || o % 2 == 0) throw std::domain_error("Klein family needs odd o >= 3");
}

u32 KleinDihedralGroup::elem(unsigned a, unsigned b, u64 j, unsigned s) const {
    return static_cast<u32>((a & 1) + 2 * (b & 1) + 4 * (j % o_) + 4 * o_ * (s & 1));
}

u32 KleinDihedralGroup::mul(u32 x, u32 y) const {
    u64 z1 = x % 4, j1 = (x / 4) % o_, s1 = x / (4 * o_);
    u64 z2 = y % 4, j2 = (y / 4) % o_, s2 = y / (4 * o_);
    u64 z = z1 ^ z2;
    u64 j = s1 ? (j1 + o_ - j2) % o_ : (j1 + j2) % o_;
    if (dic_ && s1 && s2) z ^= 3;  // x^2 = r1 r2
    return static_cast<u32>(z + 4 * j + 4 * o_ * ((s1 + s2) % 2));
}

u32 KleinDihedralGroup::inv(u32 x) const {
    u64 z = x % 4, j = (x / 4) % o_, s = x / (4 * o_);
    if (!s) return static_cast<u32>(z + 4 * ((o_ - j) % o_));
    // (z r^j x)^{-1} = x^{-1} z r^{-j} = z r^j x^{-1}, and x^{-1} = x or y x
    if (dic_) z ^= 3;
    return static_cast<u32>(z + 4 * j + 4 * o_);
}

std::string KleinDihedralGroup::name() const {
    return std::string(dic_ ? "Dic" : "D") + "(Z2^2 x Z" + std::to_string(o_) + ")";
}

std::string KleinDihedralGroup::element_str(u32 x) const {
    u64 z = x % 4, j = (x / 4) % o_, s = x / (4 * o_);
    std::string out;
    if (z & 1) out += "r1 ";
    if (z & 2) out += "r2 ";
    out += "r^" + std::to_string(j);
    if (s) out += " x";
    return out;
}

ProductGroup::ProductGroup(std::vector<GroupPtr> factors) : f_(std::move(factors)) {
    for (auto& g : f_) {
        auto x = checked_mul(order_, g->order());
        if (!x || *x > (1ull << 32)) throw CapacityError("product group too large");
        order_ = *x;
    }
}

std::vector<u32> ProductGroup::split(u32 a) const {
    std::vector<u32> v(f_.size());
    for (size_t i = 0; i < f_.size(); ++i) {
        v[i] = static_cast<u32>(a % f_[i]->order());
        a = static_cast<u32>(a / f_[i]->order());
    }
    return v;
}

u32 ProductGroup::join(const std::vector<u32>& parts) const {
    u64 r = 0, w = 1;
    for (size_t i = 0; i < f_.size(); ++i) {
        r += parts[i] * w;
        w *= f_[i]->order();
    }
    return static_cast<u32>(r);
}

u32 ProductGroup::mul(u32 a, u32 b) const {
    auto x = split(a), y = split(b);
    for (size_t i = 0; i < f_.size(); ++i) x[i] = f_[i]->mul(x[i], y[i]);
    return join(x);
}

u32 ProductGroup::inv(u32 a) const {
    auto x = split(a);
    for (size_t i = 0; i < f_.size(); ++i) x[i] = f_[i]->inv(x[i]);
    return join(x);
}

std::string ProductGroup::name() const {
    std::string s;
    for (size_t i = 0; i < f_.size(); ++i) s += (i ? " x " : "") + f_[i]->name();
    return s.empty() ? "1" : s;
}

std::string ProductGroup::element_str(u32 a) const {
    auto x = split(a);
    std::string s = "(";
    for (size_t i = 0; i < f_.size(); ++i) s += (i ? ", " : "") + f_[i]->element_str(x[i]);
    return s + ")";
}

bool ProductGroup::abelian() const {
    return std::all_of(f_.begin(), f_.end(), [](const GroupPtr& g) { return g->abelian(); });
}

bool FiniteMap::bijective() const {
    std::vector<char> hit(image.size(), 0);
    for (auto x : image) {
        if (x >= image.size() || hit[x]) return false;
        hit[x] = 1;
    }
    return true;
}

FdgSpec FdgSpec::mult(u64 modulus, u64 multiplier) {
    if (modulus == 0) throw std::domain_error("M(m,a): m must be positive");
    FdgSpec s;
    s.kind = Kind::Mult;
    s.m = modulus;
    s.a = multiplier % modulus;
    return s;
}

FdgSpec FdgSpec::vmatrix(const ModMatrix& A) {
    if (A.n == 0) throw std::domain_error("V(m,A): empty matrix");
    FdgSpec s;
    s.kind = Kind::VMatrix;
    s.m = A.mod;
    s.matrix = A;
    return s;
}

FdgSpec FdgSpec::vpoly(const FpPoly& P) {
    if (P.degree() < 1 || !P.is_monic()) throw std::domain_error("V(P): P must be monic of positive degree");
    FdgSpec s;
    s.kind = Kind::VPoly;
    s.poly = P;
    s.m = P.modulus();
    return s;
}

FdgSpec FdgSpec::product(std::vector<FdgSpec> fs) {
    FdgSpec s;
    for (auto& f : fs) {
        if (f.kind == Kind::Product)
            for (auto& g : f.factors) s.factors.push_back(g);
        else
            s.factors.push_back(std::move(f));
    }
    if (s.factors.size() == 1) return s.factors[0];
    return s;
}

namespace {

FdgSpec family(FdgSpec::Kind k, u64 n, u64 m) {
    FdgSpec s;
    s.kind = k;
    s.m = n;
    s.a = m % n;
    return s;
}

}  // namespace

FdgSpec FdgSpec::dihedral(u64 n, u64 m) {
    if (n < 3) throw std::domain_error("Dih(n,m) needs n >= 3");
    return family(Kind::Dihedral, n, m);
}

FdgSpec FdgSpec::dicyclic(u64 n, u64 m) {
    if (n < 4 || n % 2) throw std::domain_error("Dic(n,m) needs even n >= 4");
    if ((m % n) % 2 == 0) throw std::domain_error("Dic(n,m) needs odd m for x -> xr to be an endomorphism");
    return family(Kind::Dicyclic, n, m);
}

FdgSpec FdgSpec::dklein(u64 o, u64 m) {
    if (o < 3 || o % 2 == 0) throw std::domain_error("DK(o,m) needs odd o >= 3");
    return family(Kind::DKlein, o, m);
}

FdgSpec FdgSpec::dicklein(u64 o, u64 m) {
    if (o < 3 || o % 2 == 0) throw std::domain_error("DicK(o,m) needs odd o >= 3");
    return family(Kind::DicKlein, o, m);
}

FdgSpec FdgSpec::generic(const EndoMatrix& A) {
    FdgSpec s;
    s.kind = Kind::Endo;
    s.endo = A;
    return s;
}

bool FdgSpec::nonabelian() const {
    switch (kind) {
        case Kind::Dihedral:
        case Kind::Dicyclic:
        case Kind::DKlein:
        case Kind::DicKlein: return true;
        case Kind::Product:
            return std::any_of(factors.begin(), factors.end(), [](const FdgSpec& f) { return f.nonabelian(); });
        default: return false;
    }
}

u64 FdgSpec::group_order() const {
    switch (kind) {
        case Kind::Mult: return m;
        case Kind::VMatrix: return ipow(m, static_cast<unsigned>(matrix.n));
        case Kind::VPoly: return ipow(poly.modulus(), static_cast<unsigned>(poly.degree()));
        case Kind::Dihedral:
        case Kind::Dicyclic: return 2 * m;
        case Kind::DKlein:
        case Kind::DicKlein: return 8 * m;
        case Kind::Endo: return endo.group.order();
        case Kind::Product: {
            u64 r = 1;
            for (auto& f : factors) {
                auto x = checked_mul(r, f.group_order());
                if (!x) throw CapacityError("group order exceeds 64 bits");
                r = *x;
            }
            return r;
        }
    }
    return 0;
}

std::string FdgSpec::str() const {
    auto two = [](const char* n, u64 x, u64 y) { return std::string(n) + "(" + std::to_string(x) + "," + std::to_string(y) + ")"; };
    switch (kind) {
        case Kind::Mult: return two("M", m, a);
        case Kind::VMatrix: return "V(" + std::to_string(m) + "," + matrix.str() + ")";
        case Kind::VPoly: return "V(" + poly.str() + "@" + std::to_string(poly.modulus()) + ")";
        case Kind::Dihedral: return two("Dih", m, a);
        case Kind::Dicyclic: return two("Dic", m, a);
        case Kind::DKlein: return two("DK", m, a);
        case Kind::DicKlein: return two("DicK", m, a);
        case Kind::Endo: return "End(" + endo.group.str() + "," + endo.str() + ")";
        case Kind::Product: {
            if (factors.empty()) return "1";
            std::string s;
            for (size_t i = 0; i < factors.size(); ++i) s += (i ? " * " : "") + factors[i].str();
            return s;
        }
    }
    return "?";
}

namespace {

std::string strip(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_top(std::string_view s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    size_t st = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (depth < 0) throw std::domain_error("unbalanced brackets in '" + std::string(s) + "'");
        if (c == sep && depth == 0) {
            out.push_back(strip(s.substr(st, i - st)));
            st = i + 1;
        }
    }
    if (depth != 0) throw std::domain_error("unbalanced brackets in '" + std::string(s) + "'");
    out.push_back(strip(s.substr(st)));
    return out;
}

u64 parse_u64(const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw std::domain_error("expected a nonnegative integer, got '" + s + "'");
    return std::stoull(s);
}

IntMatrix parse_int_matrix(const std::string& s) {
    std::string t = strip(s);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw std::domain_error("matrix must look like [[a,b],[c,d]]");
    IntMatrix m;
    for (auto& row : split_top(std::string_view(t).substr(1, t.size() - 2), ',')) {
        if (row.size() < 2 || row.front() != '[' || row.back() != ']') throw std::domain_error("bad matrix row '" + row + "'");
        std::vector<std::int64_t> r;
        for (auto& x : split_top(std::string_view(row).substr(1, row.size() - 2), ',')) r.push_back(std::stoll(x));
        m.push_back(r);
    }
    return m;
}

FdgSpec parse_factor(const std::string& f) {
    if (f == "1") return FdgSpec::trivial();
    auto lp = f.find('(');
    if (lp == std::string::npos || f.back() != ')') throw std::domain_error("bad FDG factor '" + f + "'");
    std::string name = strip(std::string_view(f).substr(0, lp));
    std::string inner = f.substr(lp + 1, f.size() - lp - 2);
    auto args = split_top(inner, ',');
    auto need = [&](size_t k) {
        if (args.size() != k) throw std::domain_error(name + " takes " + std::to_string(k) + " arguments");
    };
    if (name == "M") {
        need(2);
        return FdgSpec::mult(parse_u64(args[0]), parse_u64(args[1]));
    }
    if (name == "V") {
        if (args.size() == 1) return FdgSpec::vpoly(parse_poly(args[0]));
        need(2);
        u64 m = parse_u64(args[0]);
        if (m < 2) throw std::domain_error("V(m,A) needs m >= 2");
        return FdgSpec::vmatrix(ModMatrix::from_rows(m, parse_int_matrix(args[1])));
    }
    if (name == "End") {
        need(2);
        auto G = parse_group(args[0]);
        if (G.parts.size() != 1) throw std::domain_error("End(G,A) needs G to be a p-group");
        return FdgSpec::generic(make_endo(parse_int_matrix(args[1]), G.parts[0]));
    }
    need(2);
    u64 x = parse_u64(args[0]), y = parse_u64(args[1]);
    if (name == "Dih") return FdgSpec::dihedral(x, y);
    if (name == "Dic") return FdgSpec::dicyclic(x, y);
    if (name == "DK") return FdgSpec::dklein(x, y);
    if (name == "DicK") return FdgSpec::dicklein(x, y);
    throw std::domain_error("unknown FDG constructor '" + name + "'");
}

}  // namespace

FdgSpec parse_spec(std::string_view text) {
    std::vector<FdgSpec> fs;
    for (auto& f : split_top(text, '*')) {
        if (f.empty()) throw std::domain_error("empty factor in '" + std::string(text) + "'");
        fs.push_back(parse_factor(f));
    }
    return FdgSpec::product(std::move(fs));
}

GroupPtr spec_group(const FdgSpec& s) {
    using K = FdgSpec::Kind;
    switch (s.kind) {
        case K::Mult: return std::make_shared<AbelianFiniteGroup>(std::vector<u64>{s.m});
        case K::VMatrix: return std::make_shared<AbelianFiniteGroup>(std::vector<u64>(s.matrix.n, s.m));
        case K::VPoly:
            return std::make_shared<AbelianFiniteGroup>(std::vector<u64>(static_cast<size_t>(s.poly.degree()), s.poly.modulus()));
        case K::Endo: return std::make_shared<AbelianFiniteGroup>(s.endo.group.moduli());
        case K::Dihedral: return std::make_shared<DihedralGroup>(s.m, false);
        case K::Dicyclic: return std::make_shared<DihedralGroup>(s.m, true);
        case K::DKlein: return std::make_shared<KleinDihedralGroup>(s.m, false);
        case K::DicKlein: return std::make_shared<KleinDihedralGroup>(s.m, true);
        case K::Product: {
            std::vector<GroupPtr> g;
            for (auto& f : s.factors) g.push_back(spec_group(f));
            return std::make_shared<ProductGroup>(g);
        }
    }
    return nullptr;
}

namespace {

std::vector<u32> matrix_table(const ModMatrix& A) {
    CyclicProduct C(std::vector<u64>(A.n, A.mod));
    if (C.order() > limits().max_order) throw CapacityError("V: group order exceeds orbit limit");
    std::vector<u32> img(C.order());
    for (u64 g = 0; g < C.order(); ++g) img[g] = static_cast<u32>(C.encode(fdgl::apply(A, C.decode(g))));
    return img;
}

}  // namespace

FiniteMap evaluate(const FdgSpec& s) {
    using K = FdgSpec::Kind;
    if (s.group_order() > limits().max_order)
        throw CapacityError("evaluate: group order " + std::to_string(s.group_order()) + " exceeds orbit limit");
    FiniteMap fm;
    fm.group = spec_group(s);
    u64 N = fm.group->order();
    fm.image.resize(N);
    switch (s.kind) {
        case K::Mult:
            for (u64 y = 0; y < N; ++y) fm.image[y] = static_cast<u32>(mulmod(s.a, y, s.m));
            break;
        case K::VMatrix: fm.image = matrix_table(s.matrix); break;
        case K::VPoly: fm.image = matrix_table(companion(s.poly)); break;
        case K::Endo: {
            auto t = image_table(s.endo);
            fm.image.assign(t.begin(), t.end());
            break;
        }
        case K::Dihedral:
        case K::Dicyclic: {
            const auto& G = static_cast<const DihedralGroup&>(*fm.group);
            u64 n = G.n();
            for (u64 j = 0; j < n; ++j) {
                fm.image[G.elem(j, 0)] = G.elem(mulmod(s.a, j, n), 0);
                // r^j x -> r^{mj - 1} x
                fm.image[G.elem(j, 1)] = G.elem((mulmod(s.a, j, n) + n - 1) % n, 1);
            }
            break;
        }
        case K::DKlein:
        case K::DicKlein: {
            const auto& G = static_cast<const KleinDihedralGroup&>(*fm.group);
            u64 o = G.o();
            for (unsigned a = 0; a < 2; ++a)
                for (unsigned b = 0; b < 2; ++b)
                    for (u64 j = 0; j < o; ++j) {
                        u64 mj = mulmod(s.a, j, o);
                        // r1 <-> r2, r -> r^m, x -> x r1 r = r1 r^{-1} x
                        fm.image[G.elem(a, b, j, 0)] = G.elem(b, a, mj, 0);
                        fm.image[G.elem(a, b, j, 1)] = G.elem(b ^ 1u, a, (mj + o - 1) % o, 1);
                    }
            break;
        }
        case K::Product: {
            std::vector<FiniteMap> parts;
            for (auto& f : s.factors) parts.push_back(evaluate(f));
            return product_map(parts);
        }
    }
    return fm;
}

FiniteMap product_map(const std::vector<FiniteMap>& maps) {
    std::vector<GroupPtr> gs;
    u64 N = 1;
    for (auto& m : maps) {
        gs.push_back(m.group ? m.group : std::make_shared<AbelianFiniteGroup>(std::vector<u64>{m.size()}));
        N *= m.size();
    }
    if (N > limits().max_order) throw CapacityError("product map exceeds orbit limit");
    FiniteMap fm;
    auto P = std::make_shared<ProductGroup>(gs);
    fm.group = P;
    fm.image.resize(N);
    for (u64 g = 0; g < N; ++g) {
        auto parts = P->split(static_cast<u32>(g));
        for (size_t i = 0; i < parts.size(); ++i) parts[i] = maps[i].image[parts[i]];
        fm.image[g] = P->join(parts);
    }
    return fm;
}

std::optional<std::vector<u32>> extend_homomorphism(const FiniteGroup& G, const std::vector<u32>& gens,
                                                    const std::vector<u32>& images) {
    if (gens.size() != images.size()) throw std::domain_error("extend_homomorphism: size mismatch");
    u64 N = G.order();
    const u32 unset = static_cast<u32>(-1);
    std::vector<u32> phi(N, unset);
    phi[G.identity()] = G.identity();
    std::deque<u32> q{G.identity()};
    while (!q.empty()) {
        u32 g = q.front();
        q.pop_front();
        for (size_t i = 0; i < gens.size(); ++i) {
            u32 h = G.mul(g, gens[i]);
            u32 v = G.mul(phi[g], images[i]);
            if (phi[h] == unset) {
                phi[h] = v;
                q.push_back(h);
            } else if (phi[h] != v) {
                return std::nullopt;
            }
        }
    }
    if (std::find(phi.begin(), phi.end(), unset) != phi.end())
        throw std::domain_error("extend_homomorphism: generators do not generate the group");
    return phi;
}

std::vector<u32> generators(const FdgSpec& s) {
    auto G = spec_group(s);
    using K = FdgSpec::Kind;
    switch (s.kind) {
        case K::Dihedral:
        case K::Dicyclic: {
            const auto& D = static_cast<const DihedralGroup&>(*G);
            return {D.elem(1, 0), D.elem(0, 1)};
        }
        case K::DKlein:
        case K::DicKlein: {
            const auto& D = static_cast<const KleinDihedralGroup&>(*G);
            return {D.elem(1, 0, 0, 0), D.elem(0, 1, 0, 0), D.elem(0, 0, 1, 0), D.elem(0, 0, 0, 1)};
        }
        case K::Product: {
            const auto& P = static_cast<const ProductGroup&>(*G);
            std::vector<u32> out;
            for (size_t i = 0; i < s.factors.size(); ++i)
                for (u32 g : generators(s.factors[i])) {
                    std::vector<u32> parts(s.factors.size(), 0);
                    for (size_t k = 0; k < parts.size(); ++k) parts[k] = P.factors()[k]->identity();
                    parts[i] = g;
                    out.push_back(P.join(parts));
                }
            return out;
        }
        default: {
            const auto& A = static_cast<const AbelianFiniteGroup&>(*G);
            std::vector<u32> out;
            for (size_t i = 0; i < A.coords().moduli().size(); ++i) {
                std::vector<u64> v(A.coords().moduli().size(), 0);
                v[i] = 1;
                out.push_back(static_cast<u32>(A.coords().encode(v)));
            }
            return out;
        }
    }
}

CycleStructure join_cycle_structures(const CycleStructure& a, const CycleStructure& b) {
    CycleStructure r;
    for (auto& [l1, c1] : a.counts)
        for (auto& [l2, c2] : b.counts) r.counts[lcm(l1, l2)] += gcd(l1, l2) * c1 * c2;
    return r;
}

ProductLambda lambda_product(const std::vector<CycleStructure>& parts) {
    ProductLambda out;
    CycleStructure acc;
    acc.counts[1] = 1;
    for (size_t i = 0; i < parts.size(); ++i) {
        acc = join_cycle_structures(acc, parts[i]);
        for (size_t j = 0; j < i; ++j)
            if (gcd(parts[i].Lambda(), parts[j].Lambda()) != 1) out.coprime = false;
    }
    out.value = acc.lambda();
    return out;
}

ProductLambda lambda_product(const std::vector<std::pair<Rational, u64>>& s) {
    ProductLambda out;
    Rational prod = 1;
    for (size_t i = 0; i < s.size(); ++i) {
        prod *= s[i].first;
        for (size_t j = 0; j < i; ++j)
            if (gcd(s[i].second, s[j].second) != 1) out.coprime = false;
    }
    if (out.coprime) {
        out.value = prod;
    } else {
        out.value = prod / 2;  // only an upper bound
        out.exact = false;
    }
    return out;
}

std::vector<PolyFactor> frobenius_decompose(const ModMatrix& A) {
    if (!is_prime(A.mod)) throw std::domain_error("frobenius_decompose: modulus must be prime");
    if (det(A) == 0) throw std::domain_error("frobenius_decompose: singular matrix");
    std::vector<PolyFactor> out;
    for (auto& [P, mult] : factor_poly(charpoly(A))) {
        size_t d = static_cast<size_t>(P.degree());
        ModMatrix PA = eval_poly(P, A), Q = ModMatrix::identity(A.mod, A.n);
        // kernel dimensions of P(A)^j
        std::vector<size_t> ker{0};
        for (unsigned j = 1; j <= mult; ++j) {
            Q = Q * PA;
            ker.push_back(A.n - rank(Q));
        }
        std::vector<size_t> atleast(mult + 2, 0);
        for (unsigned j = 1; j <= mult; ++j) atleast[j] = (ker[j] - ker[j - 1]) / d;
        for (unsigned j = 1; j <= mult; ++j)
            for (size_t c = atleast[j] - atleast[j + 1]; c > 0; --c) out.push_back({P, j});
    }
    std::sort(out.begin(), out.end(), [](const PolyFactor& x, const PolyFactor& y) {
        if (!(x.poly == y.poly)) return x.poly < y.poly;
        return x.multiplicity < y.multiplicity;
    });
    return out;
}

u64 matrix_order(const ModMatrix& A) {
    u64 o = 1;
    for (auto& [P, k] : frobenius_decompose(A)) o = lcm(o, poly_order(pow(P, k)));
    return o;
}

std::vector<unsigned> frobenius_type(const FdgSpec& s) {
    std::vector<unsigned> t;
    std::vector<const FdgSpec*> fs;
    if (s.kind == FdgSpec::Kind::Product)
        for (auto& f : s.factors) fs.push_back(&f);
    else
        fs.push_back(&s);
    for (auto* f : fs) {
        if (f->kind != FdgSpec::Kind::VPoly || !is_irreducible(f->poly) || !is_primitive(f->poly))
            throw std::domain_error("frobenius_type: spec is not a product of primitive V(P)");
        t.push_back(static_cast<unsigned>(f->poly.degree()));
    }
    std::sort(t.begin(), t.end());
    return t;
}

std::vector<u32> subgroup_closure(const FiniteGroup& G, const std::vector<u32>& gens) {
    std::vector<char> in(G.order(), 0);
    std::vector<u32> elems{G.identity()};
    in[G.identity()] = 1;
    for (size_t i = 0; i < elems.size(); ++i)
        for (u32 s : gens) {
            u32 h = G.mul(elems[i], s);
            if (!in[h]) {
                in[h] = 1;
                elems.push_back(h);
            }
        }
    std::sort(elems.begin(), elems.end());
    return elems;
}

namespace {

std::vector<u32> greedy_generators(const FiniteGroup& G) {
    std::vector<u32> gens;
    std::vector<char> in(G.order(), 0);
    in[G.identity()] = 1;
    for (u32 g = 0; g < G.order(); ++g) {
        if (in[g]) continue;
        gens.push_back(g);
        for (u32 h : subgroup_closure(G, gens)) in[h] = 1;
    }
    return gens;
}

void check_automorphism(const FiniteGroup& G, const std::vector<u32>& alpha) {
    if (alpha.size() != G.order()) throw std::domain_error("map size does not match group order");
    FiniteMap m{nullptr, alpha};
    if (!m.bijective()) throw NotPeriodicError("map is not a bijection");
    for (u32 s : greedy_generators(G))
        for (u32 g = 0; g < G.order(); ++g)
            if (alpha[G.mul(g, s)] != G.mul(alpha[g], alpha[s])) throw std::domain_error("map is not a homomorphism");
}

}  // namespace

bool is_normal(const FiniteGroup& G, const std::vector<u32>& H) {
    std::vector<char> in(G.order(), 0);
    for (u32 h : H) in[h] = 1;
    for (u32 g : greedy_generators(G))
        for (u32 h : H)
            if (!in[G.mul(G.mul(g, h), G.inv(g))]) return false;
    return true;
}

std::vector<std::vector<u32>> automorphisms(const FiniteGroup& G) {
    auto gens = greedy_generators(G);
    std::vector<std::vector<u32>> cand(gens.size());
    BigInt tuples = 1;
    for (size_t i = 0; i < gens.size(); ++i) {
        u64 o = G.element_order(gens[i]);
        for (u32 h = 0; h < G.order(); ++h)
            if (G.element_order(h) == o) cand[i].push_back(h);
        tuples *= cand[i].size();
    }
    if (tuples > limits().max_autos) throw CapacityError("automorphisms: " + tuples.str() + " generator images exceed FDGL_MAX_AUTOS");
    std::vector<std::vector<u32>> out;
    std::vector<size_t> idx(gens.size(), 0);
    std::vector<u32> img(gens.size());
    while (true) {
        for (size_t i = 0; i < gens.size(); ++i) img[i] = cand[i][idx[i]];
        if (auto phi = extend_homomorphism(G, gens, img); phi && FiniteMap{nullptr, *phi}.bijective())
            out.push_back(std::move(*phi));
        size_t k = 0;
        while (k < idx.size() && ++idx[k] == cand[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Rational lambda_group(const FiniteGroup& G) {
    u64 best = 0;
    for (auto& a : automorphisms(G)) best = std::max(best, cycle_structure(a).Lambda());
    return Rational(BigInt(best), BigInt(G.order()));
}

Rational l_group(const FiniteGroup& G) {
    Rational best = 0;
    for (auto& a : automorphisms(G)) best = std::max(best, inversion_fraction(G, a));
    return best;
}

std::vector<u32> compose_tables(const std::vector<u32>& a, const std::vector<u32>& b) {
    std::vector<u32> c(b.size());
    for (size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
    return c;
}

TransferResult transfer_check(const FiniteGroup& G, u32 g0, const std::vector<u32>& alpha,
                              const std::vector<u32>& n_gens) {
    check_automorphism(G, alpha);
    u64 N = G.order();
    auto Nsub = subgroup_closure(G, n_gens);
    std::vector<char> inN(N, 0);
    for (u32 h : Nsub) inN[h] = 1;
    if (!is_normal(G, Nsub)) throw std::domain_error("transfer_check: N is not normal");
    for (u32 h : Nsub)
        if (!inN[alpha[h]]) throw std::domain_error("transfer_check: N is not admissible");

    std::vector<u32> A(N);
    for (u32 g = 0; g < N; ++g) A[g] = G.mul(g0, alpha[g]);
    TransferResult r;
    auto cs = cycle_structure(A);
    r.Lambda = cs.Lambda();
    r.lambda = cs.lambda();
    r.normal_order = Nsub.size();
    r.quotient_order = N / Nsub.size();

    // left cosets gN
    const u32 unset = static_cast<u32>(-1);
    std::vector<u32> coset(N, unset), rep;
    for (u32 g = 0; g < N; ++g) {
        if (coset[g] != unset) continue;
        for (u32 h : Nsub) coset[G.mul(g, h)] = static_cast<u32>(rep.size());
        rep.push_back(g);
    }
    std::vector<u32> At(rep.size());
    for (size_t c = 0; c < rep.size(); ++c) At[c] = coset[A[rep[c]]];
    for (u32 g = 0; g < N; ++g)
        if (coset[A[g]] != At[coset[g]]) throw std::logic_error("transfer_check: induced map not well defined");
    auto qcs = cycle_structure(At);
    r.quotient_lambda = qcs.lambda();

    // x on a largest cycle
    u32 x = 0;
    for (u32 g = 0; g < N; ++g) {
        u64 len = 1;
        for (u32 y = A[g]; y != g; y = A[y]) ++len;
        if (len == r.Lambda) {
            x = g;
            break;
        }
    }
    u32 y = A[x];
    r.L = 1;
    while (coset[y] != coset[x]) {
        y = A[y];
        ++r.L;
    }
    u32 n0 = G.mul(G.inv(x), y);
    // cycle of 1_N under n -> n0 alpha^L(n)
    std::vector<u32> alphaL(N);
    for (u32 g = 0; g < N; ++g) {
        u32 z = g;
        for (u64 k = 0; k < r.L; ++k) z = alpha[z];
        alphaL[g] = z;
    }
    std::vector<u32> B;
    std::vector<u32> local(N, unset);
    for (size_t i = 0; i < Nsub.size(); ++i) local[Nsub[i]] = static_cast<u32>(i);
    for (u32 h : Nsub) B.push_back(local[G.mul(n0, alphaL[h])]);
    auto bcs = cycle_structure(B);
    r.fiber_lambda = bcs.lambda();
    u64 lone = 1;
    for (u32 z = B[local[G.identity()]]; z != local[G.identity()]; z = B[z]) ++lone;
    r.l = r.Lambda / r.L;

    u64 induced_len = 1;
    for (u32 c = At[coset[x]]; c != coset[x]; c = At[c]) ++induced_len;

    Rational lhs = Rational(BigInt(r.L), BigInt(r.quotient_order)) * Rational(BigInt(r.l), BigInt(r.normal_order));
    r.verified = r.Lambda % r.L == 0 && lone == r.l && induced_len == r.L && lhs == r.lambda &&
                 r.lambda <= r.quotient_lambda * r.fiber_lambda;
    return r;
}

TransferResult transfer_check(const AffineMap& A, const std::vector<std::vector<u64>>& n_gens) {
    AbelianFiniteGroup G(A.endo.group.moduli());
    auto t = image_table(A.endo);
    std::vector<u32> alpha(t.begin(), t.end());
    std::vector<u32> gens;
    for (auto& v : n_gens) gens.push_back(static_cast<u32>(G.coords().encode(v)));
    return transfer_check(G, static_cast<u32>(G.coords().encode(A.translation)), alpha, gens);
}

AffineOrderCheck affine_order_check(const FiniteGroup& G, u32 g0, const std::vector<u32>& alpha) {
    check_automorphism(G, alpha);
    AffineOrderCheck r;
    r.order_alpha = cycle_structure(alpha).period();
    u32 f = G.identity(), cur = g0;
    for (u64 k = 0; k < r.order_alpha; ++k) {
        f = G.mul(f, cur);
        cur = alpha[cur];
    }
    r.order_f = G.element_order(f);
    r.predicted = r.order_f * r.order_alpha;
    std::vector<u32> A(G.order());
    for (u32 g = 0; g < G.order(); ++g) A[g] = G.mul(g0, alpha[g]);
    r.actual = cycle_structure(A).period();
    r.equal = r.predicted == r.actual;
    return r;
}

Rational inversion_fraction(const FiniteGroup& G, const std::vector<u32>& alpha) {
    u64 cnt = 0;
    for (u32 g = 0; g < G.order(); ++g)
        if (alpha[g] == G.inv(g)) ++cnt;
    return Rational(BigInt(cnt), BigInt(G.order()));
}

}  // namespace fdgl
