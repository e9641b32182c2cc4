#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdgl/fdg.hpp"

namespace fdgl {

struct Rho {
    u64 num = 1, den = 1;

    Rho() = default;
    Rho(u64 a, u64 b);  // reduces; domain_error outside [1/2, 1]
    explicit Rho(const Rational& r);
    Rational value() const { return Rational(BigInt(num), BigInt(den)); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
    bool operator==(const Rho&) const = default;
};
Rho parse_rho(const std::string& s);

// odd Sylow part of an abelian FDG with lambda > 1/2
struct OddPart {
    enum class Type { none, cyclic, elementary, jordan };
    Type type = Type::none;
    u64 p = 0;
    unsigned m = 0;  // for a cyclic family: the least exponent
    bool operator==(const OddPart&) const = default;
};

struct IsoClassDescriptor {
    enum class Kind { finite, family };
    enum class Shape { trivial, two_group, odd_group, mixed, boundary, dihedral, dicyclic, dklein, dicklein };

    Kind kind = Kind::finite;
    Shape shape = Shape::trivial;
    std::vector<unsigned> frobenius;  // Frobenius type of the Sylow 2-part
    OddPart odd;
    std::optional<FdgSpec> instance;  // boundary classes only
    Rho lambda;
    bool lambda_maximal = false;
    std::optional<BigInt> witness_count;  // nullopt: infinitely many
    u64 min_order = 1;
    std::string spec_template;
    std::vector<std::string> side_conditions;
    std::vector<std::string> notes;

    bool nonabelian() const;
    std::string group_str() const;
};

struct ClassificationResult {
    Rho rho;
    std::vector<IsoClassDescriptor> descriptors;
    std::optional<std::string> empty_reason;
    std::vector<std::string> notes;
};

struct ClassifyOptions {
    bool self_check = true;  // evaluate small instances before returning
};

enum class ElAbMode { gt_half, eq_half, ge_half };
std::vector<IsoClassDescriptor> classify_elementary_abelian(u64 p, unsigned n, ElAbMode mode);

ClassificationResult classify_rho(const Rho& rho, const ClassifyOptions& opt = {});

// concrete members of a descriptor with |G| <= max_order, canonical order
std::vector<FdgSpec> expand(const IsoClassDescriptor& d, u64 max_order);

// the rule for a mixed 2 x p shape; exhaustive over pairwise coprime decompositions
bool mixed_lambda_maximal(const std::vector<unsigned>& frobenius, const OddPart& odd);
bool is_lambda_maximal(const IsoClassDescriptor& d);
bool is_lambda_maximal(const FdgSpec& spec);
// shape of a classified spec, or nullopt when it is outside the classified list
std::optional<IsoClassDescriptor> describe(const FdgSpec& spec);

struct GroupDescriptor {
    std::string group;
    bool family = false;
    std::vector<std::string> side_conditions;
    std::string witness;  // spec template realizing lambda(G)
};
std::vector<GroupDescriptor> classify_group_lambda(const Rho& rho);

struct AffineFullCycle {
    AbelianGroupType group;
    std::vector<u64> multipliers;  // odd cyclic part: allowed multipliers mod o
    bool klein = false;            // (Z/2)^2 x Z/o case
    u64 count = 0;                 // number of periodic affine maps with lambda = 1
    std::string description;
};
std::optional<AffineFullCycle> affine_full_cycle_classify(const AbelianGroupType& G);

std::string to_json(const ClassificationResult& r);

}  // namespace fdgl
