#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fdgl {

// thrown when an input is fine but exceeds what we agreed to enumerate
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotPeriodicError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct Limits {
    std::uint64_t max_order = 1u << 16;      // |G| for orbit work
    std::uint64_t max_autos = 100000000;     // enum_autos iterations
    std::uint64_t max_poly_scan = 1u << 24;  // monic candidates in enum_primitive
};

// Read once from FDGL_MAX_ORDER / FDGL_MAX_AUTOS / FDGL_MAX_POLY_SCAN.
const Limits& limits();
void set_limits(const Limits& l);

}  // namespace fdgl
