#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdgl/ffpoly.hpp"
#include "fdgl/matrix.hpp"

namespace fdgl {

// State group (Z/mod)^dim, transition s -> A s + c, seed point mass.
// Output word: coordinate i occupies bits [i*w, (i+1)*w) with w = bit width of mod-1
// (coordinate 0 lowest); CapacityError if dim*w > 64.
struct RngSpec {
    enum class Kind { Lcg, Vector };
    Kind kind = Kind::Lcg;
    u64 mod = 1;
    ModMatrix A;
    std::vector<u64> c;
    std::vector<u64> seed;
    FpPoly poly;  // Vector only

    size_t dim() const { return seed.size(); }
    std::string group_str() const;
    std::string str() const;
};

RngSpec lcg(u64 m, u64 a, u64 c, u64 seed);
// seed given low coordinate first, padded with zeros to deg P
RngSpec vecgen(u64 p, const FpPoly& P, const std::vector<u64>& seed);

// Hull-Dobell congruences for Lcg; for Vector, true iff P primitive and seed nonzero
bool certify_full_period(const RngSpec& spec);
// period of the seed orbit without iteration, when the spec determines it
std::optional<u64> certified_period(const RngSpec& spec);

std::vector<u64> step(const RngSpec& spec, const std::vector<u64>& state);
u64 pack(const RngSpec& spec, const std::vector<u64>& state);
unsigned word_bits(const RngSpec& spec);

class RngStream {
public:
    explicit RngStream(const RngSpec& spec);
    u64 next();  // current state packed, then advance
    const std::vector<u64>& state() const { return state_; }

private:
    RngSpec spec_;
    std::vector<u64> state_;
};
std::vector<u64> stream(const RngSpec& spec, u64 count);

// first return to the seed (maps are bijections); nullopt when cap steps are not enough
std::optional<u64> measured_period(const RngSpec& spec, u64 cap);

}  // namespace fdgl
