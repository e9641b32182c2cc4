#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fdgl/classify.hpp"

namespace fdgl {

// Sylow decomposition of an abelian spec: prime -> automorphism of the Sylow subgroup
std::map<u64, EndoMatrix> sylow_endos(const FdgSpec& spec);
AbelianGroupType spec_group_type(const FdgSpec& spec);

struct SweepGroupResult {
    AbelianGroupType group;
    std::string mode;        // per Sylow: exhaustive / companion / omega
    u64 observed = 0;        // weighted count of maps with lambda >= 1/2
    u64 predicted = 0;       // weighted count from classifier instances
    size_t instances = 0;
    std::set<Rational> lambdas;
    std::vector<std::string> problems;
    bool ok() const { return problems.empty() && observed == predicted; }
};

struct SweepResult {
    u64 max_order = 0;
    size_t rho_candidates = 0;
    std::vector<SweepGroupResult> groups;
    std::vector<std::string> problems;  // instances that matched no group, bad lambdas
    bool ok() const;
};

// Every abelian group of order <= max_order: the automorphisms with lambda >= 1/2
// must be exactly the conjugacy classes of the classifier's instances.
SweepResult completeness_sweep(u64 max_order, const std::function<void(const SweepGroupResult&)>& progress = {});

// conjugacy class of A in Aut(H), by breadth-first search under elementary generators
u64 class_size(const EndoMatrix& A);
// same for A in GL_n(p), as |GL_n(p)| / |C(A)|; nullopt when C(A) is too large to count
std::optional<u64> gl_class_size(const ModMatrix& A);

}  // namespace fdgl
