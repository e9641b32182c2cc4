#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fdgl/abelian.hpp"
#include "fdgl/ffpoly.hpp"
#include "fdgl/matrix.hpp"

namespace fdgl {

using u32 = std::uint32_t;

// elements are 0..order()-1
class FiniteGroup {
public:
    virtual ~FiniteGroup() = default;
    virtual u64 order() const = 0;
    virtual u32 mul(u32 a, u32 b) const = 0;
    virtual u32 inv(u32 a) const = 0;
    virtual u32 identity() const { return 0; }
    virtual std::string name() const = 0;
    virtual std::string element_str(u32 a) const { return std::to_string(a); }
    virtual bool abelian() const { return false; }
    u64 element_order(u32 a) const;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

class AbelianFiniteGroup : public FiniteGroup {
public:
    explicit AbelianFiniteGroup(std::vector<u64> moduli) : c_(std::move(moduli)) {}
    u64 order() const override { return c_.order(); }
    u32 mul(u32 a, u32 b) const override { return static_cast<u32>(c_.add(a, b)); }
    u32 inv(u32 a) const override { return static_cast<u32>(c_.neg(a)); }
    std::string name() const override;
    std::string element_str(u32 a) const override;
    bool abelian() const override { return true; }
    const CyclicProduct& coords() const { return c_; }

private:
    CyclicProduct c_;
};

// r^j x^s stored as j + n*s
class DihedralGroup : public FiniteGroup {
public:
    DihedralGroup(u64 n, bool dicyclic);
    u64 order() const override { return 2 * n_; }
    u32 mul(u32 a, u32 b) const override;
    u32 inv(u32 a) const override;
    std::string name() const override;
    std::string element_str(u32 a) const override;
    u64 n() const { return n_; }
    u32 elem(u64 j, unsigned s) const { return static_cast<u32>(j % n_ + n_ * s); }

private:
    u64 n_;
    bool dic_;
};

// r1^a r2^b r^j x^s stored as a + 2b + 4j + 4o*s; x^2 = 1 or r1 r2
class KleinDihedralGroup : public FiniteGroup {
public:
    KleinDihedralGroup(u64 o, bool dicyclic);
    u64 order() const override { return 8 * o_; }
    u32 mul(u32 a, u32 b) const override;
    u32 inv(u32 a) const override;
    std::string name() const override;
    std::string element_str(u32 a) const override;
    u64 o() const { return o_; }
    u32 elem(unsigned a, unsigned b, u64 j, unsigned s) const;

private:
    u64 o_;
    bool dic_;
};

class ProductGroup : public FiniteGroup {
public:
    explicit ProductGroup(std::vector<GroupPtr> factors);
    u64 order() const override { return order_; }
    u32 mul(u32 a, u32 b) const override;
    u32 inv(u32 a) const override;
    std::string name() const override;
    std::string element_str(u32 a) const override;
    bool abelian() const override;
    const std::vector<GroupPtr>& factors() const { return f_; }
    std::vector<u32> split(u32 a) const;
    u32 join(const std::vector<u32>& parts) const;

private:
    std::vector<GroupPtr> f_;
    u64 order_ = 1;
};

struct FiniteMap {
    GroupPtr group;          // may be null for a bare FDS
    std::vector<u32> image;  // total on 0..size-1

    u64 size() const { return image.size(); }
    bool bijective() const;
    CycleStructure cycles() const { return cycle_structure(image); }
    Rational lambda() const { return cycles().lambda(); }
    u64 Lambda() const { return cycles().Lambda(); }
};

struct FdgSpec {
    enum class Kind { Mult, VMatrix, VPoly, Product, Dihedral, Dicyclic, DKlein, DicKlein, Endo };
    Kind kind = Kind::Product;
    u64 m = 0;  // Mult: modulus; Dih/Dic: n; DK/DicK: o; VMatrix: modulus
    u64 a = 0;  // Mult: multiplier; families: the exponent m
    ModMatrix matrix;
    FpPoly poly;
    EndoMatrix endo;
    std::vector<FdgSpec> factors;

    static FdgSpec trivial() { return FdgSpec{}; }
    static FdgSpec mult(u64 modulus, u64 multiplier);
    static FdgSpec vmatrix(const ModMatrix& A);
    static FdgSpec vpoly(const FpPoly& P);
    static FdgSpec product(std::vector<FdgSpec> fs);
    static FdgSpec dihedral(u64 n, u64 m);
    static FdgSpec dicyclic(u64 n, u64 m);
    static FdgSpec dklein(u64 o, u64 m);
    static FdgSpec dicklein(u64 o, u64 m);
    static FdgSpec generic(const EndoMatrix& A);

    bool is_trivial() const { return kind == Kind::Product && factors.empty(); }
    bool nonabelian() const;
    u64 group_order() const;
    std::string str() const;
};

// "V(x^3+x+1@2) * M(7,3)", "Dih(12,5)", "End(Z2 x Z4,[[1,1],[2,1]])", "1"
FdgSpec parse_spec(std::string_view text);
FiniteMap evaluate(const FdgSpec& spec);
GroupPtr spec_group(const FdgSpec& spec);

// image table of the homomorphism sending gens[i] -> images[i], or nullopt
// if no such homomorphism exists; gens must generate G
std::optional<std::vector<u32>> extend_homomorphism(const FiniteGroup& G, const std::vector<u32>& gens,
                                                    const std::vector<u32>& images);
std::vector<u32> generators(const FdgSpec& spec);

CycleStructure join_cycle_structures(const CycleStructure& a, const CycleStructure& b);
FiniteMap product_map(const std::vector<FiniteMap>& maps);

struct ProductLambda {
    Rational value;     // exact lambda, or the upper bound when !exact
    bool coprime = true;
    bool exact = true;
};
ProductLambda lambda_product(const std::vector<CycleStructure>& parts);
ProductLambda lambda_product(const std::vector<std::pair<Rational, u64>>& summaries);

std::vector<PolyFactor> frobenius_decompose(const ModMatrix& A);
u64 matrix_order(const ModMatrix& A);
std::vector<unsigned> frobenius_type(const FdgSpec& spec);

struct TransferResult {
    u64 L = 0, l = 0, Lambda = 0;
    u64 quotient_order = 0, normal_order = 0;
    Rational lambda, quotient_lambda, fiber_lambda;
    bool verified = false;
};
// affine map g -> g0 * alpha(g); N generated by n_gens, must be normal and alpha-admissible
TransferResult transfer_check(const FiniteGroup& G, u32 g0, const std::vector<u32>& alpha,
                              const std::vector<u32>& n_gens);
TransferResult transfer_check(const AffineMap& A, const std::vector<std::vector<u64>>& n_gens);

struct AffineOrderCheck {
    u64 order_alpha = 0, order_f = 0, predicted = 0, actual = 0;
    bool equal = false;
};
AffineOrderCheck affine_order_check(const FiniteGroup& G, u32 g0, const std::vector<u32>& alpha);

std::vector<u32> subgroup_closure(const FiniteGroup& G, const std::vector<u32>& gens);
bool is_normal(const FiniteGroup& G, const std::vector<u32>& subgroup);
Rational inversion_fraction(const FiniteGroup& G, const std::vector<u32>& alpha);
// every automorphism of G as an image table, sorted; CapacityError past FDGL_MAX_AUTOS candidates
std::vector<std::vector<u32>> automorphisms(const FiniteGroup& G);
Rational lambda_group(const FiniteGroup& G);
Rational l_group(const FiniteGroup& G);
std::vector<u32> compose_tables(const std::vector<u32>& a, const std::vector<u32>& b);  // a after b

}  // namespace fdgl
