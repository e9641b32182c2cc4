#include "fdgl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace fdgl {

namespace {

EndoMatrix block_merge(u64 p, const std::vector<EndoMatrix>& blocks) {
    struct Coord {
        unsigned e;
        size_t block, local, flat;
    };
    std::vector<Coord> cs;
    for (size_t b = 0; b < blocks.size(); ++b)
        for (size_t i = 0; i < blocks[b].n(); ++i) cs.push_back({blocks[b].group.exponents[i], b, i, 0});
    std::stable_sort(cs.begin(), cs.end(), [](const Coord& x, const Coord& y) { return x.e < y.e; });
    std::vector<unsigned> exps;
    for (auto& c : cs) exps.push_back(c.e);
    EndoMatrix A{AbelianPGroup(p, exps), std::vector<u64>(cs.size() * cs.size(), 0)};
    for (size_t i = 0; i < cs.size(); ++i)
        for (size_t j = 0; j < cs.size(); ++j)
            if (cs[i].block == cs[j].block) A.at(i, j) = blocks[cs[i].block].at(cs[i].local, cs[j].local);
    return A;
}

void collect(const FdgSpec& s, std::map<u64, std::vector<EndoMatrix>>& out) {
    using K = FdgSpec::Kind;
    switch (s.kind) {
        case K::Product:
            for (auto& f : s.factors) collect(f, out);
            return;
        case K::Mult:
            for (auto& [p, e] : factor(s.m)) {
                u64 q = ipow(p, e);
                out[p].push_back(EndoMatrix{AbelianPGroup(p, {e}), {s.a % q}});
            }
            return;
        case K::VPoly: {
            u64 p = s.poly.modulus();
            size_t d = static_cast<size_t>(s.poly.degree());
            ModMatrix C = companion(s.poly);
            EndoMatrix A{AbelianPGroup(p, std::vector<unsigned>(d, 1)), C.a};
            out[p].push_back(A);
            return;
        }
        case K::VMatrix: {
            const ModMatrix& M = s.matrix;
            for (auto& [p, e] : factor(M.mod)) {
                u64 q = ipow(p, e);
                EndoMatrix A{AbelianPGroup(p, std::vector<unsigned>(M.n, e)), M.a};
                for (auto& x : A.entries) x %= q;
                out[p].push_back(A);
            }
            return;
        }
        case K::Endo:
            out[s.endo.group.p].push_back(s.endo);
            return;
        default:
            throw std::domain_error("sylow_endos: " + s.str() + " is not abelian");
    }
}

// add table and mixed-radix bookkeeping for one small p-group
struct PTables {
    u64 N = 1;
    size_t n = 0;
    std::vector<u64> mod, weight;
    std::vector<std::uint16_t> add;
    std::vector<std::uint16_t> prev;
    std::vector<std::uint8_t> low;

    explicit PTables(const AbelianPGroup& H) : n(H.rank()), mod(H.moduli()) {
        CyclicProduct C(mod);
        N = C.order();
        if (N > 1024) throw CapacityError("sweep tables need |H| <= 1024");
        weight.assign(n, 1);
        for (size_t j = 1; j < n; ++j) weight[j] = weight[j - 1] * mod[j - 1];
        add.resize(N * N);
        for (u64 a = 0; a < N; ++a)
            for (u64 b = 0; b < N; ++b) add[a * N + b] = static_cast<std::uint16_t>(C.add(a, b));
        prev.assign(N, 0);
        low.assign(N, 0);
        for (u64 g = 1; g < N; ++g) {
            size_t j = 0;
            while ((g / weight[j]) % mod[j] == 0) ++j;
            low[g] = static_cast<std::uint8_t>(j);
            prev[g] = static_cast<std::uint16_t>(g - weight[j]);
        }
    }

    template <class Entry>
    void image(Entry entry, std::vector<std::uint32_t>& img) const {
        std::uint16_t col[64];
        for (size_t j = 0; j < n; ++j) {
            u64 c = 0;
            for (size_t i = 0; i < n; ++i) c += entry(i, j) * weight[i];
            col[j] = static_cast<std::uint16_t>(c);
        }
        img.resize(N);
        img[0] = 0;
        for (u64 g = 1; g < N; ++g) img[g] = add[img[prev[g]] * N + col[low[g]]];
    }
};

u64 largest_cycle(const std::vector<std::uint32_t>& img, std::vector<std::uint32_t>& mark, std::uint32_t& stamp) {
    size_t N = img.size();
    if (mark.size() != N) mark.assign(N, 0), stamp = 0;
    ++stamp;
    u64 best = 0, left = N;
    for (size_t s = 0; s < N && left > best; ++s) {
        if (mark[s] == stamp) continue;
        u64 len = 0;
        for (size_t x = s; mark[x] != stamp; x = img[x]) mark[x] = stamp, ++len;
        best = std::max(best, len);
        left -= len;
    }
    return best;
}

struct PrimeObs {
    std::string mode;
    std::map<CycleStructure, u64> buckets;
    std::vector<std::string> problems;
};

EndoMatrix companion_endo(const FpPoly& Q) {
    ModMatrix C = companion(Q);
    return EndoMatrix{AbelianPGroup(Q.modulus(), std::vector<unsigned>(C.n, 1)), C.a};
}

std::vector<FpPoly> unit_monics(u64 p, unsigned d) {
    std::vector<FpPoly> out;
    u64 total = ipow(p, d);
    for (u64 code = 0; code < total; ++code) {
        std::vector<u64> c(d + 1);
        u64 x = code;
        for (unsigned i = 0; i < d; ++i) c[i] = x % p, x /= p;
        c[d] = 1;
        if (c[0] == 0) continue;
        out.emplace_back(p, c);
    }
    return out;
}

PrimeObs observe(const AbelianPGroup& H) {
    PrimeObs obs;
    const u64 N = H.order();
    std::vector<std::uint32_t> img, mark;
    std::uint32_t stamp = 0;
    if (aut_count(H) <= BigInt(limits().max_autos)) {
        obs.mode = "exhaustive";
        PTables T(H);
        ReductionFilter filter;
        std::unique_ptr<PTables> Tr;
        if (!H.elementary()) {
            // lambda(alpha) <= lambda of the induced map on H/pH
            Tr = std::make_unique<PTables>(AbelianPGroup(H.p, std::vector<unsigned>(H.rank(), 1)));
            filter = [&](const ModMatrix& R) {
                std::vector<std::uint32_t> rimg;
                Tr->image([&](size_t i, size_t j) { return R.at(i, j); }, rimg);
                std::vector<std::uint32_t> rmark;
                std::uint32_t rs = 0;
                return 2 * largest_cycle(rimg, rmark, rs) >= Tr->N;
            };
        }
        enum_autos(
            H,
            [&](const EndoMatrix& A) {
                T.image([&](size_t i, size_t j) { return A.at(i, j); }, img);
                if (2 * largest_cycle(img, mark, stamp) >= N) ++obs.buckets[cycle_structure(img)];
            },
            filter);
        return obs;
    }
    if (H.elementary()) {
        // lambda >= 1/2 forces a generating orbit, so alpha is cyclic and
        // conjugate to exactly one companion matrix
        obs.mode = "companion";
        for (auto& Q : unit_monics(H.p, static_cast<unsigned>(H.rank()))) {
            auto cs = cycle_structure(companion_endo(Q));
            if (2 * cs.Lambda() >= N) ++obs.buckets[cs];
        }
        return obs;
    }
    bool omega_shape = H.p == 2 && H.exponents.back() == 2 && H.rank() >= 2;
    for (size_t i = 0; i + 1 < H.rank(); ++i) omega_shape = omega_shape && H.exponents[i] == 1;
    if (omega_shape) {
        // a large orbit is exactly the order-4 coset of Omega_1; it becomes a full
        // affine cycle on Omega_1, i.e. an orbit of e1 of length |H|/2 under a companion
        // matrix of degree rank+1
        obs.mode = "omega";
        unsigned d = static_cast<unsigned>(H.rank() + 1);
        for (auto& Q : unit_monics(2, d)) {
            ModMatrix C = companion(Q);
            std::vector<u64> e1(d, 0), v;
            e1[0] = 1;
            v = e1;
            u64 len = 0;
            do {
                v = fdgl::apply(C, v);
                ++len;
            } while (v != e1 && len <= N);
            if (len == N / 2) obs.problems.push_back("omega reduction inconclusive at " + Q.str());
        }
        return obs;
    }
    throw CapacityError("no exhaustive route for Aut(" + H.str() + ")");
}

// elementary generators of Aut(H) as in-place conjugations
struct ConjGen {
    bool trans;
    size_t i, j;
    u64 c, uinv;
};

std::vector<ConjGen> aut_generators(const AbelianPGroup& H) {
    std::vector<ConjGen> gens;
    size_t n = H.rank();
    const auto& e = H.exponents;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j) gens.push_back({true, i, j, e[i] > e[j] ? ipow(H.p, e[i] - e[j]) : 1, 0});
    for (size_t i = 0; i < n; ++i) {
        u64 q = ipow(H.p, e[i]);
        std::vector<u64> us;
        if (H.p == 2) {
            if (e[i] == 2) us = {3};
            if (e[i] >= 3) us = {q - 1, 5};
        } else {
            us = {primitive_roots(H.p, e[i]).front()};
        }
        for (u64 u : us) gens.push_back({false, i, i, u, inverse_mod(u, q)});
    }
    return gens;
}

struct Packer {
    std::vector<u64> m;
    std::vector<unsigned> bits;
    size_t n;
    explicit Packer(const AbelianPGroup& H) : m(H.moduli()), n(H.rank()) {
        unsigned total = 0;
        for (u64 q : m) {
            unsigned b = 0;
            while (((q - 1) >> b) != 0) ++b;
            bits.push_back(b);
            total += b * static_cast<unsigned>(n);
        }
        if (total > 64) throw CapacityError("class search key above 64 bits");
    }
    u64 pack(const std::vector<u64>& a) const {
        u64 k = 0;
        unsigned sh = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) k |= a[i * n + j] << sh, sh += bits[i];
        return k;
    }
    void unpack(u64 k, std::vector<u64>& a) const {
        a.resize(n * n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                a[i * n + j] = k & ((u64(1) << bits[i]) - 1);
                k >>= bits[i];
            }
    }
    void conj(std::vector<u64>& a, const ConjGen& g) const {
        if (g.trans) {
            for (size_t l = 0; l < n; ++l) a[g.i * n + l] = (a[g.i * n + l] + g.c * a[g.j * n + l]) % m[g.i];
            for (size_t k = 0; k < n; ++k) a[k * n + g.j] = (a[k * n + g.j] + (m[k] - (g.c * a[k * n + g.i]) % m[k])) % m[k];
        } else {
            for (size_t l = 0; l < n; ++l) a[g.i * n + l] = (a[g.i * n + l] * g.c) % m[g.i];
            for (size_t k = 0; k < n; ++k) a[k * n + g.i] = (a[k * n + g.i] * g.uinv) % m[k];
        }
    }
};

std::unordered_set<u64> conj_class(const EndoMatrix& A) {
    Packer P(A.group);
    auto gens = aut_generators(A.group);
    std::unordered_set<u64> seen;
    std::vector<u64> queue{P.pack(A.entries)};
    seen.insert(queue[0]);
    std::vector<u64> a, b;
    for (size_t head = 0; head < queue.size(); ++head) {
        P.unpack(queue[head], a);
        for (auto& g : gens) {
            b = a;
            P.conj(b, g);
            u64 k = P.pack(b);
            if (seen.insert(k).second) queue.push_back(k);
        }
    }
    return seen;
}

// basis of {X : XA = AX} over F_p
std::vector<ModMatrix> centralizer_basis(const ModMatrix& A) {
    const size_t n = A.n, v = n * n;
    const u64 p = A.mod;
    // row (i,j) of the system: sum_k X_ik A_kj - A_ik X_kj = 0
    std::vector<std::vector<u64>> M(v, std::vector<u64>(v, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            auto& row = M[i * n + j];
            for (size_t k = 0; k < n; ++k) {
                row[i * n + k] = (row[i * n + k] + A.at(k, j)) % p;
                row[k * n + j] = (row[k * n + j] + p - A.at(i, k)) % p;
            }
        }
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < v && r < v; ++c) {
        size_t piv = r;
        while (piv < v && M[piv][c] == 0) ++piv;
        if (piv == v) continue;
        std::swap(M[piv], M[r]);
        u64 inv = inverse_mod(M[r][c], p);
        for (auto& x : M[r]) x = x * inv % p;
        for (size_t o = 0; o < v; ++o) {
            if (o == r || M[o][c] == 0) continue;
            u64 f = M[o][c];
            for (size_t k = 0; k < v; ++k) M[o][k] = (M[o][k] + (p - f) * M[r][k]) % p;
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<char> is_pivot(v, 0);
    for (size_t c : pivot_col) is_pivot[c] = 1;
    std::vector<ModMatrix> basis;
    for (size_t f = 0; f < v; ++f) {
        if (is_pivot[f]) continue;
        ModMatrix X(p, n);
        X.a[f] = 1;
        for (size_t k = 0; k < pivot_col.size(); ++k) X.a[pivot_col[k]] = (p - M[k][f]) % p;
        basis.push_back(X);
    }
    return basis;
}

// |GL_n(p)| / |centralizer|, counting invertible combinations of the centralizer basis
std::optional<u64> elementary_class_size(const ModMatrix& A, bool& cyclic) {
    auto basis = centralizer_basis(A);
    cyclic = basis.size() == A.n;
    u64 p = A.mod;
    if (basis.size() * std::log2(double(p)) > 22) return std::nullopt;
    u64 combos = ipow(p, static_cast<unsigned>(basis.size())), units = 0;
    for (u64 code = 0; code < combos; ++code) {
        ModMatrix X(p, A.n);
        u64 c = code;
        for (auto& B : basis) {
            u64 t = c % p;
            c /= p;
            if (t)
                for (size_t k = 0; k < X.a.size(); ++k) X.a[k] = (X.a[k] + t * B.a[k]) % p;
        }
        if (det(X) != 0) ++units;
    }
    BigInt gl = aut_count(AbelianPGroup(p, std::vector<unsigned>(A.n, 1)));
    if (gl % units != 0) throw std::logic_error("centralizer order does not divide |GL|");
    return static_cast<u64>(gl / units);
}

CycleStructure trivial_structure() {
    CycleStructure cs;
    cs.counts[1] = 1;
    return cs;
}

}  // namespace

std::map<u64, EndoMatrix> sylow_endos(const FdgSpec& spec) {
    std::map<u64, std::vector<EndoMatrix>> parts;
    collect(spec, parts);
    std::map<u64, EndoMatrix> out;
    for (auto& [p, blocks] : parts) {
        if (blocks.size() == 1)
            out.emplace(p, blocks[0]);
        else
            out.emplace(p, block_merge(p, blocks));
    }
    return out;
}

AbelianGroupType spec_group_type(const FdgSpec& spec) {
    AbelianGroupType T;
    for (auto& [p, A] : sylow_endos(spec)) T.parts.push_back(A.group);
    return T;
}

u64 class_size(const EndoMatrix& A) { return conj_class(A).size(); }

std::optional<u64> gl_class_size(const ModMatrix& A) {
    bool cyclic = false;
    return elementary_class_size(A, cyclic);
}

bool SweepResult::ok() const {
    if (!problems.empty()) return false;
    for (auto& g : groups)
        if (!g.ok()) return false;
    return true;
}

SweepResult completeness_sweep(u64 max_order, const std::function<void(const SweepGroupResult&)>& progress) {
    SweepResult res;
    res.max_order = max_order;

    struct Instance {
        FdgSpec spec;
        Rational rho;
    };
    std::map<AbelianGroupType, std::vector<Instance>> predicted;
    ClassifyOptions opt;
    opt.self_check = false;
    for (u64 b = 1; b <= max_order; ++b)
        for (u64 a = (b + 1) / 2; a <= b; ++a) {
            if (gcd(a, b) != 1) continue;
            ++res.rho_candidates;
            Rho rho(a, b);
            auto cr = classify_rho(rho, opt);
            for (auto& d : cr.descriptors) {
                if (d.nonabelian()) continue;
                for (auto& inst : expand(d, max_order)) {
                    auto T = spec_group_type(inst);
                    if (T.order() > max_order) continue;
                    predicted[T].push_back({inst, rho.value()});
                }
            }
        }

    std::map<AbelianPGroup, PrimeObs> obs_cache;
    struct ClassStore {
        std::vector<std::unordered_set<u64>> classes;
    };
    std::map<AbelianPGroup, ClassStore> class_cache;

    for (u64 n = 1; n <= max_order; ++n) {
        for (const auto& G : abelian_groups_of_order(n)) {
            SweepGroupResult gr;
            gr.group = G;
            std::vector<const PrimeObs*> parts;
            std::string mode;
            for (auto& H : G.parts) {
                auto it = obs_cache.find(H);
                if (it == obs_cache.end()) it = obs_cache.emplace(H, observe(H)).first;
                parts.push_back(&it->second);
                mode += (mode.empty() ? "" : "+") + it->second.mode;
                for (auto& pr : it->second.problems) gr.problems.push_back(pr);
            }
            gr.mode = mode.empty() ? "trivial" : mode;

            std::map<CycleStructure, u64> seen{{trivial_structure(), 1}};
            for (auto* po : parts) {
                std::map<CycleStructure, u64> next;
                for (auto& [cs, w] : seen)
                    for (auto& [cs2, w2] : po->buckets) {
                        auto j = join_cycle_structures(cs, cs2);
                        if (2 * j.Lambda() >= j.domain_size()) next[j] += w * w2;
                    }
                seen = std::move(next);
            }
            for (auto& [cs, w] : seen) {
                gr.observed += w;
                gr.lambdas.insert(cs.lambda());
            }

            std::map<CycleStructure, u64> pred;
            std::set<std::vector<std::string>> ids;
            auto pit = predicted.find(G);
            if (pit != predicted.end()) {
                for (auto& inst : pit->second) {
                    ++gr.instances;
                    auto endos = sylow_endos(inst.spec);
                    CycleStructure joint = trivial_structure();
                    u64 weight = 1;
                    std::vector<std::string> key;
                    for (size_t k = 0; k < G.parts.size(); ++k) {
                        const auto& H = G.parts[k];
                        const EndoMatrix& A = endos.at(H.p);
                        joint = join_cycle_structures(joint, cycle_structure(A));
                        const std::string& m = parts[k]->mode;
                        bool cyclic = false;
                        std::optional<u64> esize;
                        if (m == "exhaustive" && H.elementary()) esize = elementary_class_size(reduction_mod_p(A), cyclic);
                        if (esize && cyclic) {
                            // a cyclic matrix is determined up to conjugacy by its characteristic polynomial
                            weight *= *esize;
                            key.push_back(charpoly(reduction_mod_p(A)).str());
                        } else if (m == "exhaustive") {
                            Packer P(H);
                            u64 akey = P.pack(A.entries);
                            auto& store = class_cache[H];
                            size_t id = store.classes.size();
                            for (size_t c = 0; c < store.classes.size(); ++c)
                                if (store.classes[c].count(akey)) id = c;
                            if (id == store.classes.size()) store.classes.push_back(conj_class(A));
                            weight *= store.classes[id].size();
                            key.push_back(std::to_string(id));
                        } else if (m == "companion") {
                            key.push_back(charpoly(reduction_mod_p(A)).str());
                        } else {
                            gr.problems.push_back("instance " + inst.spec.str() + " on a group the reduction excludes");
                        }
                    }
                    if (joint.lambda() != inst.rho)
                        gr.problems.push_back(inst.spec.str() + " has lambda " + to_string(joint.lambda()) +
                                              ", expected " + to_string(inst.rho));
                    if (!ids.insert(key).second) gr.problems.push_back("duplicate class " + inst.spec.str());
                    pred[joint] += weight;
                    gr.predicted += weight;
                }
            }
            std::set<CycleStructure> keys;
            for (auto& [cs, w] : seen) keys.insert(cs);
            for (auto& [cs, w] : pred) keys.insert(cs);
            for (auto& cs : keys) {
                u64 a = seen.count(cs) ? seen[cs] : 0, b = pred.count(cs) ? pred[cs] : 0;
                if (a != b) {
                    std::ostringstream s;
                    s << "cycle type " << cs.str() << ": observed " << a << ", predicted " << b;
                    gr.problems.push_back(s.str());
                }
            }
            if (pit != predicted.end()) predicted.erase(pit);
            if (progress) progress(gr);
            res.groups.push_back(std::move(gr));
        }
    }
    for (auto& [T, insts] : predicted)
        for (auto& inst : insts) res.problems.push_back("instance " + inst.spec.str() + " matched no group");
    return res;
}

}  // namespace fdgl
