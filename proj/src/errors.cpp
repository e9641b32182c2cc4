#include "fdgl/errors.hpp"

#include <cstdlib>
#include <mutex>

namespace fdgl {

namespace {

std::uint64_t env_or(const char* name, std::uint64_t dflt) {
    const char* v = std::getenv(name);
    if (!v || !*v) return dflt;
    char* end = nullptr;
    unsigned long long x = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0' || x == 0) return dflt;
    return x;
}

Limits& storage() {
    static Limits l = [] {
        Limits d;
        d.max_order = env_or("FDGL_MAX_ORDER", d.max_order);
        d.max_autos = env_or("FDGL_MAX_AUTOS", d.max_autos);
        d.max_poly_scan = env_or("FDGL_MAX_POLY_SCAN", d.max_poly_scan);
        return d;
    }();
    return l;
}

}  // namespace

const Limits& limits() { return storage(); }

void set_limits(const Limits& l) { storage() = l; }

}  // namespace fdgl
