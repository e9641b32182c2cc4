#include <doctest.h>

#include "fdgl/fdg.hpp"
#include "support.hpp"

using namespace fdgl;

namespace {

Rational R(long a, long b) { return Rational(a) / b; }

}  // namespace

TEST_SUITE("fdg") {

TEST_CASE("evaluate abelian specs") {
    auto m = evaluate(parse_spec("M(4,3)"));
    CHECK(m.image == std::vector<u32>{0, 3, 2, 1});
    CHECK(m.cycles().str() == "1:2 2:1");
    CHECK(m.lambda() == R(1, 2));
    auto v = evaluate(parse_spec("V(x^2+x+1@2)"));
    CHECK(v.cycles().str() == "1:1 3:1");
    CHECK(v.lambda() == R(3, 4));
    CHECK(evaluate(FdgSpec::trivial()).size() == 1);
    auto np = evaluate(parse_spec("M(4,2)"));
    CHECK_FALSE(np.bijective());
    CHECK_THROWS_AS(np.cycles(), NotPeriodicError);
}

TEST_CASE("evaluate nonabelian families") {
    auto d = evaluate(parse_spec("Dih(3,1)"));
    CHECK(d.lambda() == R(1, 2));
    CHECK(d.cycles().str() == "1:3 3:1");
    CHECK_THROWS_AS(parse_spec("Dic(5,1)"), std::domain_error);
    CHECK_THROWS_AS(parse_spec("Dic(2,1)"), std::domain_error);
    CHECK(evaluate(parse_spec("Dic(6,1)")).lambda() == R(1, 2));
    CHECK_THROWS_AS(parse_spec("DK(4,1)"), std::domain_error);
    CHECK(parse_spec("Dih(12,5)").str() == "Dih(12,5)");
    CHECK(parse_spec("DicK(9,4)").group_order() == 72);
    // presentations hold in the normal forms
    DihedralGroup D(5, false), Q(4, true);
    u32 r = D.elem(1, 0), x = D.elem(0, 1);
    CHECK(D.mul(D.mul(x, r), D.inv(x)) == D.inv(r));
    CHECK(D.element_order(x) == 2);
    CHECK(Q.element_order(Q.elem(0, 1)) == 4);
    CHECK(Q.mul(Q.elem(0, 1), Q.elem(0, 1)) == Q.elem(2, 0));
    KleinDihedralGroup K(3, true);
    u32 x2 = K.mul(K.elem(0, 0, 0, 1), K.elem(0, 0, 0, 1));
    CHECK(x2 == K.elem(1, 1, 0, 0));  // x^2 = r1 r2
}

TEST_CASE("evaluated maps are automorphisms") {
    for (const char* s : {"Dih(6,1)", "Dih(12,5)", "Dic(8,1)", "Dic(12,7)", "DK(9,4)", "DicK(9,4)", "DK(15,1)",
                          "V(x^3+x+1@2) * M(7,3)", "End(Z2 x Z4,[[1,1],[2,1]])", "V(x^2+1@3) * M(4,3)"}) {
        auto spec = parse_spec(s);
        auto G = spec_group(spec);
        auto f = evaluate(spec);
        REQUIRE(f.bijective());
        for (u32 a = 0; a < G->order(); ++a)
            for (u32 b = 0; b < G->order(); ++b) REQUIRE(f.image[G->mul(a, b)] == G->mul(f.image[a], f.image[b]));
    }
}

TEST_CASE("products") {
    auto a = evaluate(parse_spec("V(x^2+x+1@2)")), b = evaluate(parse_spec("M(3,2)"));
    auto pl = lambda_product({a.cycles(), b.cycles()});
    CHECK(pl.coprime);
    CHECK(pl.value == R(1, 2));
    CHECK(evaluate(parse_spec("V(x^2+x+1@2) * M(3,2)")).lambda() == R(1, 2));
    auto t = evaluate(parse_spec("M(9,2) * 1"));
    CHECK(t.lambda() == evaluate(parse_spec("M(9,2)")).lambda());
    auto sq = lambda_product({a.cycles(), a.cycles()});
    CHECK_FALSE(sq.coprime);
    CHECK(sq.value == R(3, 16));
    CHECK(evaluate(parse_spec("V(x^2+x+1@2) * V(x^2+x+1@2)")).lambda() == R(3, 16));
    auto bound = lambda_product({{R(3, 4), 3}, {R(3, 4), 3}});
    CHECK_FALSE(bound.exact);
    CHECK(bound.value == R(9, 32));
}

TEST_CASE("half bound needs cycle lengths dividing Lambda") {
    // Lambdas 4 and 2 share a factor, yet the 3-cycle and the 2-cycle combine to a 6-cycle
    FiniteMap a{nullptr, {1, 2, 0, 4, 5, 6, 3}}, b{nullptr, {0, 2, 1}};
    Rational lp = product_map({a, b}).lambda();
    CHECK(lp == R(2, 7));
    CHECK(lp != a.lambda() * b.lambda());
    CHECK(lp > a.lambda() * b.lambda() / 2);
}

TEST_CASE("central subgroups need not be admissible") {
    // an order 3 automorphism of Z2^2 (lambda 3/4) moves every subgroup of order 2
    AbelianFiniteGroup G({2, 2});
    auto t = image_table(make_endo({{0, 1}, {1, 1}}, AbelianPGroup(2, {1, 1})));
    std::vector<u32> alpha(t.begin(), t.end());
    CHECK(cycle_structure(alpha).lambda() == R(3, 4));
    for (u32 z = 1; z < 4; ++z) CHECK_THROWS_AS(transfer_check(G, 0, alpha, {z}), std::domain_error);
}

TEST_CASE("frobenius decomposition") {
    auto F2 = [](const char* s) { return parse_poly(s, 2); };
    CHECK(frobenius_decompose(companion(pow(F2("x+1"), 2))) == std::vector<PolyFactor>{{F2("x+1"), 2}});
    auto blocks = frobenius_decompose(block_diag({companion(F2("x^2+x+1")), companion(F2("x^3+x+1"))}));
    CHECK(blocks == std::vector<PolyFactor>{{F2("x^2+x+1"), 1}, {F2("x^3+x+1"), 1}});
    CHECK_THROWS_AS(frobenius_decompose(ModMatrix(2, 2)), std::domain_error);
    auto g = test::rng(1);
    ModMatrix C = companion(F2("x^3+x+1"));
    for (int k = 0; k < 20; ++k) {
        ModMatrix S = test::random_invertible(g, 2, 3);
        CHECK(frobenius_decompose(*inverse(S) * C * S) == std::vector<PolyFactor>{{F2("x^3+x+1"), 1}});
    }
    // (x+1) twice as separate blocks: identity on F_2^2
    CHECK(frobenius_decompose(ModMatrix::identity(2, 2)) == std::vector<PolyFactor>{{F2("x+1"), 1}, {F2("x+1"), 1}});
}

TEST_CASE("frobenius decomposition is conjugation invariant") {
    auto g = test::rng(2);
    for (int k = 0; k < test::kCases; ++k) {
        u64 p = std::vector<u64>{2, 3, 5}[k % 3];
        size_t n = 1 + test::uniform(g, 0, 4);
        ModMatrix A = test::random_invertible(g, p, n), S = test::random_invertible(g, p, n);
        auto f = frobenius_decompose(A);
        REQUIRE(f == frobenius_decompose(*inverse(S) * A * S));
        size_t total = 0;
        for (auto& b : f) total += static_cast<size_t>(b.poly.degree()) * b.multiplicity;
        REQUIRE(total == n);
    }
}

TEST_CASE("matrix_order") {
    CHECK(matrix_order(ModMatrix::identity(3, 4)) == 1);
    CHECK(matrix_order(companion(pow(parse_poly("x+1", 2), 3))) == 4);
    for (unsigned d = 2; d <= 10; ++d) CHECK(matrix_order(companion(*first_primitive(2, d))) == (u64(1) << d) - 1);
    auto g = test::rng(3);
    for (int k = 0; k < test::kCases; ++k) {
        u64 p = std::vector<u64>{2, 3, 5}[k % 3];
        size_t n = 1 + test::uniform(g, 0, p == 5 ? 3 : 5);
        ModMatrix A = test::random_invertible(g, p, n);
        REQUIRE(matrix_order(A) == test::naive_order(A));
    }
}

TEST_CASE("transfer check") {
    AbelianPGroup Z9(3, {2});
    auto t = transfer_check(AffineMap{{0}, make_endo({{2}}, Z9)}, {{3}});
    CHECK(t.verified);
    CHECK(t.L == 2);
    CHECK(t.l == 3);
    CHECK(t.Lambda == 6);
    auto triv = transfer_check(AffineMap{{0}, make_endo({{2}}, Z9)}, {});
    CHECK(triv.L == 6);
    CHECK(triv.l == 1);
    CHECK(triv.verified);
    // (Z/2)^2 x Z/4 with an automorphism whose orbit structure has a 4-cycle, N = Omega_1
    AbelianPGroup H(2, {1, 1, 2});
    auto A = make_endo({{0, 1, 0}, {1, 1, 0}, {0, 2, 1}}, H);
    REQUIRE(is_auto(A));
    auto tr = transfer_check(AffineMap{{0, 0, 0}, A}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 2}});
    CHECK(tr.verified);
    CHECK(tr.normal_order == 8);
    CHECK_NOTHROW(transfer_check(AffineMap{{0, 0}, make_endo({{0, 1}, {1, 0}}, AbelianPGroup(2, {1, 1}))}, {{1, 1}}));
    CHECK_THROWS_AS(transfer_check(AffineMap{{0, 0}, make_endo({{0, 1}, {1, 0}}, AbelianPGroup(2, {1, 1}))}, {{1, 0}}),
                    std::domain_error);
}

TEST_CASE("affine order formula") {
    AbelianFiniteGroup Z12({12});
    std::vector<u32> id(12);
    for (u32 i = 0; i < 12; ++i) id[i] = i;
    auto r = affine_order_check(Z12, 0, id);
    CHECK(r.actual == 1);
    CHECK(r.equal);
    auto s = affine_order_check(Z12, 1, id);
    CHECK(s.actual == 12);
    CHECK(s.predicted == 12);
    AbelianFiniteGroup G({2, 4});
    size_t pairs = 0;
    for (auto& A : list_autos(AbelianPGroup(2, {1, 2}))) {
        auto t = image_table(A);
        std::vector<u32> alpha(t.begin(), t.end());
        for (u32 g0 = 0; g0 < 8; ++g0) {
            REQUIRE(affine_order_check(G, g0, alpha).equal);
            ++pairs;
        }
    }
    CHECK(pairs == 64);
}

TEST_CASE("automorphism groups of small nonabelian groups") {
    CHECK(automorphisms(DihedralGroup(4, false)).size() == 8);
    CHECK(automorphisms(DihedralGroup(4, true)).size() == 24);
    CHECK(automorphisms(DihedralGroup(3, false)).size() == 6);
    CHECK(automorphisms(DihedralGroup(6, false)).size() == 12);
    CHECK(lambda_group(DihedralGroup(6, false)) == R(1, 2));
    CHECK(lambda_group(DihedralGroup(4, false)) == R(1, 2));
    CHECK(lambda_group(DihedralGroup(4, true)) == R(1, 2));
    CHECK(l_group(DihedralGroup(4, false)) == R(3, 4));
    CHECK(l_group(AbelianFiniteGroup({2, 4})) == 1);
}

TEST_CASE("family members have lambda one half") {
    for (u64 n = 3; n <= 16; ++n)
        for (u64 m = 0; m < n; ++m) {
            bool ok = true;
            for (u64 p : prime_divisors(n)) ok = ok && m % p == 1 % p;
            if (n % 4 == 0) ok = ok && m % 4 == 1;
            if (!ok) continue;
            REQUIRE(evaluate(FdgSpec::dihedral(n, m)).lambda() == R(1, 2));
            if (n % 2 == 0 && n >= 4) REQUIRE(evaluate(FdgSpec::dicyclic(n, m)).lambda() == R(1, 2));
        }
}

}
