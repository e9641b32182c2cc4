#pragma once

#include <string>
#include <vector>

#include "fdgl/ffpoly.hpp"

namespace fdgl {

// square matrix over Z/mod, row-major
struct ModMatrix {
    u64 mod = 2;
    size_t n = 0;
    std::vector<u64> a;

    ModMatrix() = default;
    ModMatrix(u64 m, size_t size) : mod(m), n(size), a(size * size, 0) {}
    static ModMatrix identity(u64 m, size_t size);
    static ModMatrix from_rows(u64 m, const std::vector<std::vector<std::int64_t>>& rows);

    u64& at(size_t i, size_t j) { return a[i * n + j]; }
    u64 at(size_t i, size_t j) const { return a[i * n + j]; }
    bool operator==(const ModMatrix&) const = default;
    bool operator<(const ModMatrix& o) const { return a < o.a; }
    bool is_identity() const;
    std::string str() const;  // [[0,1],[1,1]]
};

using CompanionMatrix = ModMatrix;

ModMatrix operator*(const ModMatrix& A, const ModMatrix& B);
ModMatrix operator+(const ModMatrix& A, const ModMatrix& B);
ModMatrix scale(const ModMatrix& A, u64 c);
ModMatrix pow(const ModMatrix& A, u64 e);
std::vector<u64> apply(const ModMatrix& A, const std::vector<u64>& v);
ModMatrix block_diag(const std::vector<ModMatrix>& blocks);

// below: mod must be prime
size_t rank(const ModMatrix& A);
u64 det(const ModMatrix& A);
std::optional<ModMatrix> inverse(const ModMatrix& A);
FpPoly charpoly(const ModMatrix& A);
ModMatrix eval_poly(const FpPoly& P, const ModMatrix& A);

// exactly: ones on the subdiagonal, last column -c_0..-c_{d-1}
CompanionMatrix companion(const FpPoly& P);

}  // namespace fdgl
