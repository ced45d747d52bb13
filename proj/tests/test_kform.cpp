// Exterior algebra unit tests: wedge, contraction, Hodge star, restriction,
// pullback, and the algebraic identities they must satisfy exactly.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "holonov/kform.hpp"
#include "holonov/models.hpp"
#include "holonov/prng.hpp"

using namespace holonov;

namespace {

KForm random_form(Prng& rng, int dim, int degree, long box = 3) {
    KForm f(dim, degree);
    for (IndexMask m : monomial_masks(dim, degree))
        if (rng.below(3) != 0) f.add_term(m, rng.rational(box, 2));
    return f;
}

std::vector<Rational> random_vector(Prng& rng, int dim, long box = 3) {
    std::vector<Rational> v(dim);
    for (auto& x : v) x = rng.rational(box, 2);
    return v;
}

RatMat random_matrix(Prng& rng, int n, long box = 2) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = Rational(rng.integer(-box, box));
    return m;
}

}  // namespace

TEST_CASE("wedge basis cases") {
    KForm e1 = KForm::monomial(4, {1});
    KForm e2 = KForm::monomial(4, {2});
    CHECK(wedge(e1, e2) == KForm::monomial(4, {1, 2}));
    CHECK(wedge(e2, e1) == -KForm::monomial(4, {1, 2}));

    // v ∧ v = 0 for any 1-form
    Prng rng(21);
    for (int t = 0; t < 20; ++t) {
        KForm v = random_form(rng, 5, 1);
        CHECK(wedge(v, v).is_zero());
    }
}

TEST_CASE("wedge dimension mismatch is an error, degree overflow is zero") {
    KForm a = KForm::monomial(4, {1, 2});
    KForm b = KForm::monomial(5, {1, 2});
    CHECK_THROWS_AS((void)wedge(a, b), std::invalid_argument);
    KForm c = KForm::monomial(4, {1, 2, 3});
    CHECK(wedge(a, c).is_zero());  // degree 5 > dim 4
}

TEST_CASE("Omega0 wedge Omega0 = 14 vol8") {
    const auto& m = standard_models().spin7;
    KForm sq = wedge(m.omega, m.omega);
    CHECK(sq.term_count() == 1);
    CHECK(sq.coeff(IndexMask(0xFF)) == Rational(14));
}

TEST_CASE("graded commutativity and associativity, 500 random cases") {
    Prng rng(22);
    for (int t = 0; t < 500; ++t) {
        int dim = int(4 + rng.below(5));  // 4..8
        int da = int(rng.below(3)), db = int(rng.below(3)), dc = int(1 + rng.below(2));
        KForm a = random_form(rng, dim, da);
        KForm b = random_form(rng, dim, db);
        KForm c = random_form(rng, dim, dc);
        int sign = (da * db) % 2 == 0 ? 1 : -1;
        CHECK(wedge(a, b) == wedge(b, a).scaled(Rational(sign)));
        if (da + db + dc <= dim) CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    }
}

TEST_CASE("contraction basis cases and signs") {
    std::vector<Rational> e1(4), e2(4);
    e1[0] = Rational(1);
    e2[1] = Rational(1);
    KForm e12 = KForm::monomial(4, {1, 2});
    CHECK(contract(e1, e12) == KForm::monomial(4, {2}));
    CHECK(contract(e2, e12) == -KForm::monomial(4, {1}));
}

TEST_CASE("contraction of phi0 along y1 is the split 2-form") {
    const auto& g2 = standard_models().g2;
    std::vector<Rational> e1(7);
    e1[0] = Rational(1);
    KForm got = contract(e1, g2.phi);
    // omega = w1 + dy2 dy3 in the frozen conventions
    KForm want = -(KForm::monomial(7, {4, 5}) + KForm::monomial(7, {6, 7})) +
                 KForm::monomial(7, {2, 3});
    CHECK(got == want);
}

TEST_CASE("i_v i_v = 0 and Leibniz rule, 500 random cases") {
    Prng rng(23);
    for (int t = 0; t < 500; ++t) {
        int dim = int(4 + rng.below(5));
        int da = int(1 + rng.below(2)), db = int(1 + rng.below(2));
        KForm a = random_form(rng, dim, da);
        KForm b = random_form(rng, dim, db);
        auto v = random_vector(rng, dim);
        if (a.degree() >= 2) CHECK(contract(v, contract(v, a)).is_zero());
        int sign = da % 2 == 0 ? 1 : -1;
        CHECK(contract(v, wedge(a, b)) ==
              wedge(contract(v, a), b) + wedge(a, contract(v, b)).scaled(Rational(sign)));
    }
}

TEST_CASE("hodge star basics") {
    KForm one = KForm::scalar(7, Rational(1));
    KForm vol = KForm::monomial(7, {1, 2, 3, 4, 5, 6, 7});
    CHECK(hodge_star(one) == vol);

    // ** = (-1)^{k(n-k)} on degree k; identity on Λ²(R^7)
    Prng rng(24);
    for (int t = 0; t < 50; ++t) {
        KForm b = random_form(rng, 7, 2);
        CHECK(hodge_star(hodge_star(b)) == b);
        KForm c = random_form(rng, 8, 3);  // k(n-k) = 15, odd
        CHECK(hodge_star(hodge_star(c)) == -c);
    }
}

TEST_CASE("star of phi0 is sigma0") {
    const auto& g2 = standard_models().g2;
    CHECK(hodge_star(g2.phi) == g2.sigma);
    // spot check the pure-y monomial: *(dy123) = dx1234
    KForm y123 = KForm::monomial(7, {1, 2, 3});
    CHECK(hodge_star(y123) == KForm::monomial(7, {4, 5, 6, 7}));
}

TEST_CASE("pairing a ∧ *b is symmetric and * is an isometry") {
    Prng rng(25);
    IndexMask full7 = IndexMask((1 << 7) - 1);
    for (int t = 0; t < 200; ++t) {
        int k = int(1 + rng.below(3));
        KForm a = random_form(rng, 7, k);
        KForm b = random_form(rng, 7, k);
        Rational ab = wedge(a, hodge_star(b)).coeff(full7);
        Rational ba = wedge(b, hodge_star(a)).coeff(full7);
        CHECK(ab == ba);
        CHECK(ab == inner(a, b));
        CHECK(inner(hodge_star(a), hodge_star(b)) == inner(a, b));
    }
}

TEST_CASE("hodge star under a non-Euclidean metric with rational volume") {
    // g = diag(4,4,4,4,4,4,4): *1 = 8^... sqrt(det) = 2^7 = 128
    Metric g{7, RatMat::identity(7).scaled(Rational(4))};
    KForm one = KForm::scalar(7, Rational(1));
    KForm vol = hodge_star(one, g, +1);
    CHECK(vol.coeff(IndexMask((1 << 7) - 1)) == Rational(128));
    // a metric with irrational volume is rejected
    Metric bad{7, RatMat::identity(7).scaled(Rational(2))};
    CHECK_THROWS_AS((void)hodge_star(one, bad, +1), std::invalid_argument);
    // non positive definite metric is rejected
    Metric neg{7, RatMat::identity(7).scaled(Rational(-1))};
    CHECK_THROWS_AS((void)hodge_star(one, neg, +1), std::invalid_argument);
}

TEST_CASE("restriction examples") {
    const auto& sm = standard_models();
    OrientedPlane r41;
    r41.ambient_dim = 8;
    r41.span = RatMat(8, 4);
    for (int i = 0; i < 4; ++i) r41.span.at(i, i) = Rational(1);
    KForm r = restrict_to(sm.spin7.omega, r41);
    CHECK(r == KForm::monomial(4, {1, 2, 3, 4}));

    // phi0 restricted to a pure-x 3-plane vanishes (no dx-only monomial)
    OrientedPlane px;
    px.ambient_dim = 7;
    px.span = RatMat(7, 3);
    px.span.at(3, 0) = Rational(1);
    px.span.at(4, 1) = Rational(1);
    px.span.at(5, 2) = Rational(1);
    CHECK(restrict_to(sm.g2.phi, px).is_zero());

    // any 4-form restricted to a 3-plane is zero by degree
    Prng rng(26);
    KForm f4 = random_form(rng, 7, 4);
    OrientedPlane p3;
    p3.ambient_dim = 7;
    p3.span = RatMat(7, 3);
    p3.span.at(0, 0) = Rational(1);
    p3.span.at(2, 1) = Rational(1);
    p3.span.at(6, 2) = Rational(1);
    CHECK(restrict_to(f4, p3).is_zero());

    // degenerate plane is an error
    OrientedPlane degen;
    degen.ambient_dim = 7;
    degen.span = RatMat(7, 2);
    degen.span.at(0, 0) = Rational(1);
    degen.span.at(0, 1) = Rational(2);
    CHECK_THROWS_AS((void)restrict_to(f4, degen), std::invalid_argument);
}

TEST_CASE("pullback functoriality and determinant scaling") {
    const auto& sm = standard_models();
    CHECK(pullback(sm.spin7.omega, RatMat::identity(8)) == sm.spin7.omega);

    std::vector<Rational> d = {Rational(2), Rational(3), Rational(1), Rational(1)};
    KForm e12 = KForm::monomial(4, {1, 2});
    CHECK(pullback(e12, RatMat::diagonal(d)) == e12.scaled(Rational(6)));

    Prng rng(27);
    for (int t = 0; t < 100; ++t) {
        int dim = int(3 + rng.below(4));
        KForm a = random_form(rng, dim, int(1 + rng.below(2)));
        RatMat A = random_matrix(rng, dim);
        RatMat B = random_matrix(rng, dim);
        CHECK(pullback(a, A * B) == pullback(pullback(a, A), B));
    }
}

TEST_CASE("restrict after pullback equals restrict to the image plane") {
    Prng rng(28);
    for (int t = 0; t < 100; ++t) {
        int dim = int(4 + rng.below(3));
        int k = int(2 + rng.below(2));
        KForm a = random_form(rng, dim, k);
        RatMat A = random_matrix(rng, dim);
        OrientedPlane p = random_rational_plane(rng, dim, k);
        RatMat image = A * p.span;
        if (rank(image) != k) continue;
        OrientedPlane ip;
        ip.ambient_dim = dim;
        ip.span = image;
        CHECK(restrict_to(pullback(a, A), p) == restrict_to(a, ip));
    }
}

TEST_CASE("rational parse and exact roots") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-6/8") == Rational(-3, 4));
    CHECK(Rational::parse("1.25") == Rational(5, 4));
    CHECK_THROWS_AS((void)Rational::parse("1/0"), std::invalid_argument);
    CHECK(*exact_sqrt(Rational(9, 4)) == Rational(3, 2));
    CHECK(!exact_sqrt(Rational(2)).has_value());
    CHECK(*exact_nth_root(Rational(1, 512), 9) == Rational(1, 2));
}
