#include <doctest.h>

#include "properties.hpp"

using namespace fdgl::test;

TEST_SUITE("properties") {

TEST_CASE("structural properties") {
    for (auto& r : all_properties()) {
        INFO(r.name << ": " << r.first_failure);
        CHECK(r.cases >= 200);
        CHECK(r.failures == 0);
    }
}

}
