#pragma once

#include <string>
#include <vector>

namespace fdgl::test {

struct PropertyResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string first_failure;
    bool ok() const { return cases > 0 && failures == 0; }
};

// each runs kCases cases drawn from rng(salt) with a fixed salt per suite
PropertyResult product_lemma_property();
PropertyResult product_lemma_automorphism_property();
PropertyResult transfer_identity_property();
PropertyResult affine_order_property();
PropertyResult inversion_property();  // every instance of the pool, random invariant central A
PropertyResult l_value_property();
PropertyResult evaluate_bijection_property();

std::vector<PropertyResult> all_properties();

}  // namespace fdgl::test
