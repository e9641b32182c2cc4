#include "fdgl/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace fdgl {

namespace {

void check_same(const ModMatrix& A, const ModMatrix& B) {
    if (A.mod != B.mod || A.n != B.n) throw std::domain_error("matrix shape or modulus mismatch");
}

u64 addm(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}

u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

}  // namespace

ModMatrix ModMatrix::identity(u64 m, size_t size) {
    ModMatrix I(m, size);
    for (size_t i = 0; i < size; ++i) I.at(i, i) = 1 % m;
    return I;
}

ModMatrix ModMatrix::from_rows(u64 m, const std::vector<std::vector<std::int64_t>>& rows) {
    ModMatrix A(m, rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw std::domain_error("matrix is not square");
        for (size_t j = 0; j < rows.size(); ++j) {
            std::int64_t v = rows[i][j] % static_cast<std::int64_t>(m);
            if (v < 0) v += static_cast<std::int64_t>(m);
            A.at(i, j) = static_cast<u64>(v);
        }
    }
    return A;
}

bool ModMatrix::is_identity() const { return *this == identity(mod, n); }

std::string ModMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < n; ++i) {
        if (i) os << ",";
        os << "[";
        for (size_t j = 0; j < n; ++j) {
            if (j) os << ",";
            os << at(i, j);
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

ModMatrix operator*(const ModMatrix& A, const ModMatrix& B) {
    check_same(A, B);
    ModMatrix C(A.mod, A.n);
    for (size_t i = 0; i < A.n; ++i)
        for (size_t k = 0; k < A.n; ++k) {
            u64 a = A.at(i, k);
            if (!a) continue;
            for (size_t j = 0; j < A.n; ++j) C.at(i, j) = addm(C.at(i, j), mulmod(a, B.at(k, j), A.mod), A.mod);
        }
    return C;
}

ModMatrix operator+(const ModMatrix& A, const ModMatrix& B) {
    check_same(A, B);
    ModMatrix C(A.mod, A.n);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = addm(A.a[i], B.a[i], A.mod);
    return C;
}

ModMatrix scale(const ModMatrix& A, u64 c) {
    ModMatrix C = A;
    for (auto& x : C.a) x = mulmod(x, c % A.mod, A.mod);
    return C;
}

ModMatrix pow(const ModMatrix& A, u64 e) {
    ModMatrix R = ModMatrix::identity(A.mod, A.n), B = A;
    while (e) {
        if (e & 1) R = R * B;
        B = B * B;
        e >>= 1;
    }
    return R;
}

std::vector<u64> apply(const ModMatrix& A, const std::vector<u64>& v) {
    if (v.size() != A.n) throw std::domain_error("vector length mismatch");
    std::vector<u64> w(A.n, 0);
    for (size_t i = 0; i < A.n; ++i)
        for (size_t j = 0; j < A.n; ++j) w[i] = addm(w[i], mulmod(A.at(i, j), v[j], A.mod), A.mod);
    return w;
}

ModMatrix block_diag(const std::vector<ModMatrix>& blocks) {
    if (blocks.empty()) throw std::domain_error("block_diag: no blocks");
    size_t n = 0;
    for (auto& b : blocks) {
        if (b.mod != blocks[0].mod) throw std::domain_error("block_diag: modulus mismatch");
        n += b.n;
    }
    ModMatrix M(blocks[0].mod, n);
    size_t off = 0;
    for (auto& b : blocks) {
        for (size_t i = 0; i < b.n; ++i)
            for (size_t j = 0; j < b.n; ++j) M.at(off + i, off + j) = b.at(i, j);
        off += b.n;
    }
    return M;
}

namespace {

// row echelon in place, returns rank and determinant
std::pair<size_t, u64> eliminate(ModMatrix& A) {
    u64 p = A.mod;
    size_t r = 0;
    u64 d = 1;
    for (size_t c = 0; c < A.n && r < A.n; ++c) {
        size_t piv = r;
        while (piv < A.n && A.at(piv, c) == 0) ++piv;
        if (piv == A.n) {
            d = 0;
            continue;
        }
        if (piv != r) {
            for (size_t j = 0; j < A.n; ++j) std::swap(A.at(piv, j), A.at(r, j));
            d = (p - d) % p;
        }
        d = mulmod(d, A.at(r, c), p);
        u64 inv = inverse_mod(A.at(r, c), p);
        for (size_t i = r + 1; i < A.n; ++i) {
            u64 f = mulmod(A.at(i, c), inv, p);
            if (!f) continue;
            for (size_t j = c; j < A.n; ++j) A.at(i, j) = subm(A.at(i, j), mulmod(f, A.at(r, j), p), p);
        }
        ++r;
    }
    if (r < A.n) d = 0;
    return {r, d};
}

}  // namespace

size_t rank(const ModMatrix& A) {
    ModMatrix B = A;
    return eliminate(B).first;
}

u64 det(const ModMatrix& A) {
    ModMatrix B = A;
    return eliminate(B).second;
}

std::optional<ModMatrix> inverse(const ModMatrix& A) {
    u64 p = A.mod;
    size_t n = A.n;
    ModMatrix L = A, R = ModMatrix::identity(p, n);
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && L.at(piv, c) == 0) ++piv;
        if (piv == n) return std::nullopt;
        for (size_t j = 0; j < n; ++j) {
            std::swap(L.at(piv, j), L.at(c, j));
            std::swap(R.at(piv, j), R.at(c, j));
        }
        u64 inv = inverse_mod(L.at(c, c), p);
        for (size_t j = 0; j < n; ++j) {
            L.at(c, j) = mulmod(L.at(c, j), inv, p);
            R.at(c, j) = mulmod(R.at(c, j), inv, p);
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == c || L.at(i, c) == 0) continue;
            u64 f = L.at(i, c);
            for (size_t j = 0; j < n; ++j) {
                L.at(i, j) = subm(L.at(i, j), mulmod(f, L.at(c, j), p), p);
                R.at(i, j) = subm(R.at(i, j), mulmod(f, R.at(c, j), p), p);
            }
        }
    }
    return R;
}

FpPoly charpoly(const ModMatrix& A_in) {
    // similarity to upper Hessenberg form, then the usual recurrence
    u64 p = A_in.mod;
    size_t n = A_in.n;
    ModMatrix H = A_in;
    for (size_t c = 0; c + 2 <= n; ++c) {
        size_t piv = c + 1;
        while (piv < n && H.at(piv, c) == 0) ++piv;
        if (piv == n) continue;
        if (piv != c + 1) {
            for (size_t j = 0; j < n; ++j) std::swap(H.at(piv, j), H.at(c + 1, j));
            for (size_t i = 0; i < n; ++i) std::swap(H.at(i, piv), H.at(i, c + 1));
        }
        u64 inv = inverse_mod(H.at(c + 1, c), p);
        for (size_t i = c + 2; i < n; ++i) {
            u64 f = mulmod(H.at(i, c), inv, p);
            if (!f) continue;
            for (size_t j = 0; j < n; ++j) H.at(i, j) = subm(H.at(i, j), mulmod(f, H.at(c + 1, j), p), p);
            for (size_t k = 0; k < n; ++k) H.at(k, c + 1) = addm(H.at(k, c + 1), mulmod(f, H.at(k, i), p), p);
        }
    }
    std::vector<FpPoly> P(n + 1, FpPoly(p));
    P[0] = FpPoly::constant(p, 1);
    FpPoly X = FpPoly::x(p);
    for (size_t k = 1; k <= n; ++k) {
        P[k] = (X - FpPoly::constant(p, H.at(k - 1, k - 1))) * P[k - 1];
        u64 t = 1;
        for (size_t i = k - 1; i-- > 0;) {
            t = mulmod(t, H.at(i + 1, i), p);
            P[k] = P[k] - scale(P[i], mulmod(t, H.at(i, k - 1), p));
        }
    }
    return P[n];
}

ModMatrix eval_poly(const FpPoly& P, const ModMatrix& A) {
    if (P.modulus() != A.mod) throw std::domain_error("eval_poly: modulus mismatch");
    ModMatrix R(A.mod, A.n);
    for (size_t i = P.coeffs().size(); i-- > 0;) {
        R = R * A;
        for (size_t k = 0; k < A.n; ++k) R.at(k, k) = addm(R.at(k, k), P.coeffs()[i], A.mod);
    }
    return R;
}

CompanionMatrix companion(const FpPoly& P) {
    if (P.degree() < 1) throw std::domain_error("companion: degree must be positive");
    if (!P.is_monic()) throw std::domain_error("companion: polynomial must be monic");
    u64 p = P.modulus();
    size_t d = static_cast<size_t>(P.degree());
    ModMatrix C(p, d);
    for (size_t i = 0; i + 1 < d; ++i) C.at(i + 1, i) = 1;
    for (size_t i = 0; i < d; ++i) C.at(i, d - 1) = (p - P.coeff(i)) % p;
    return C;
}

}  // namespace fdgl
