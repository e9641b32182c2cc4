#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fdgl/matrix.hpp"
#include "fdgl/numtheory.hpp"

namespace fdgl {

struct AbelianPGroup {
    u64 p = 2;
    std::vector<unsigned> exponents;  // nondecreasing

    AbelianPGroup() = default;
    AbelianPGroup(u64 prime, std::vector<unsigned> exps);

    size_t rank() const { return exponents.size(); }
    u64 order() const;
    std::vector<u64> moduli() const;
    bool elementary() const;
    bool cyclic() const { return exponents.size() == 1; }
    std::string str() const;  // Z2^2 x Z4
    bool operator==(const AbelianPGroup&) const = default;
    bool operator<(const AbelianPGroup& o) const;
};

struct AbelianGroupType {
    std::vector<AbelianPGroup> parts;  // distinct primes, ascending

    u64 order() const;
    std::vector<u64> moduli() const;  // concatenated over parts
    bool trivial() const { return parts.empty(); }
    bool cyclic() const;
    std::string str() const;
    bool operator==(const AbelianGroupType&) const = default;
    bool operator<(const AbelianGroupType& o) const { return parts < o.parts; }
};

// "Z2^2 x Z4 x Z9", "Z6" (split by CRT), "1" for the trivial group
AbelianGroupType parse_group(std::string_view text);
// all abelian group types of order n
std::vector<AbelianGroupType> abelian_groups_of_order(u64 n);

// elements of prod Z/m_i as mixed-radix indices, first coordinate fastest
class CyclicProduct {
public:
    explicit CyclicProduct(std::vector<u64> moduli);
    u64 order() const { return order_; }
    const std::vector<u64>& moduli() const { return mod_; }
    u64 encode(const std::vector<u64>& v) const;
    std::vector<u64> decode(u64 idx) const;
    u64 add(u64 a, u64 b) const;
    u64 neg(u64 a) const;
    u64 element_order(u64 a) const;

private:
    std::vector<u64> mod_;
    std::vector<u64> weight_;
    u64 order_ = 1;
};

struct EndoMatrix {
    AbelianPGroup group;
    std::vector<u64> entries;  // row-major, (i,j) reduced mod p^{e_i}

    size_t n() const { return group.rank(); }
    u64 at(size_t i, size_t j) const { return entries[i * n() + j]; }
    u64& at(size_t i, size_t j) { return entries[i * n() + j]; }
    std::vector<u64> apply(const std::vector<u64>& v) const;
    std::string str() const;
    bool operator==(const EndoMatrix&) const = default;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;

bool is_endo(const IntMatrix& m, const AbelianPGroup& G);
bool is_auto(const IntMatrix& m, const AbelianPGroup& G);
bool is_auto(const EndoMatrix& A);
EndoMatrix make_endo(const IntMatrix& m, const AbelianPGroup& G);
EndoMatrix identity_endo(const AbelianPGroup& G);
EndoMatrix compose(const EndoMatrix& A, const EndoMatrix& B);  // A after B
BigInt integer_det(std::vector<std::vector<BigInt>> m);
ModMatrix reduction_mod_p(const EndoMatrix& A);

// |Aut(G)| by the Hillar-Rhea count
BigInt aut_count(const AbelianPGroup& G);

// Streams every automorphism once. If reduction_filter is set it is called
// on each automorphism of G/pG first; returning false skips its lifts.
using AutVisitor = std::function<void(const EndoMatrix&)>;
using ReductionFilter = std::function<bool(const ModMatrix&)>;
void enum_autos(const AbelianPGroup& G, const AutVisitor& visit, const ReductionFilter& filter = {});
std::vector<EndoMatrix> list_autos(const AbelianPGroup& G);

struct AffineMap {
    std::vector<u64> translation;  // coordinates
    EndoMatrix endo;
    std::vector<u64> apply(const std::vector<u64>& v) const;
};

struct CycleStructure {
    std::map<u64, u64> counts;  // length -> number of cycles

    u64 domain_size() const;
    u64 Lambda() const;
    Rational lambda() const;
    u64 period() const;  // lcm of lengths
    std::vector<u64> lengths() const;
    std::string str() const;  // "1:2 2:1"
    bool operator==(const CycleStructure&) const = default;
    bool operator<(const CycleStructure& o) const { return counts < o.counts; }
};

// marked-orbit traversal; NotPeriodicError unless perm is a bijection
CycleStructure cycle_structure(const std::vector<std::uint32_t>& perm);
std::vector<std::uint32_t> image_table(const EndoMatrix& A);
std::vector<std::uint32_t> image_table(const AffineMap& A);
CycleStructure cycle_structure(const EndoMatrix& A);
CycleStructure cycle_structure(const AffineMap& A);
Rational lambda_of(const EndoMatrix& A);
Rational lambda_of(const AffineMap& A);
u64 Lambda_of(const EndoMatrix& A);
u64 Lambda_of(const AffineMap& A);

// distinct sorted cycle-length sets over Aut(H)
std::vector<std::vector<u64>> cycle_length_sets(const AbelianPGroup& H);
Rational lambda_group(const AbelianGroupType& G);
Rational lambda_aff_group(const AbelianGroupType& G, bool transversal = false);
Rational lambda_aff_pgroup(const AbelianPGroup& H, bool transversal = false);

enum class Compatibility { downward, upward, both, neither };
Compatibility compatibility(const std::vector<unsigned>& e, const std::vector<unsigned>& f);
std::string to_string(Compatibility c);

Rational inversion_fraction(const EndoMatrix& A);
Rational l_group(const AbelianGroupType& G);

}  // namespace fdgl
