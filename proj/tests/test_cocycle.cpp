// Cocycle-bundle tests: transition evaluation and composition, gauge
// conjugation, cocycle verification, the coker-presentation assembly,
// section pairing and the weighted partition count.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "holonov/cocycle.hpp"
#include "holonov/prng.hpp"

using namespace holonov;

namespace {

ClassVector cls(std::initializer_list<long> v) {
    ClassVector out;
    for (long x : v) out.push_back(Rational(x));
    return out;
}

// three charts with two solutions each, glued by unipotent families from a
// single wall crossing; all six ordered pairs included
Atlas wall_atlas() {
    Atlas a;
    a.rank = 2;
    a.direction = {0.0, 0.0};
    a.horizon = 1e9;
    for (const char* label : {"T1", "T2", "T3"}) {
        ChartPoint c;
        c.label = label;
        c.solutions = {{"A", cls({1, 0})}, {"B", cls({0, 1})}};
        a.charts.push_back(c);
    }
    auto unipotent = [&](const std::string& from, const std::string& to, ClassVector g, long n) {
        TransitionFamily f;
        f.source = from;
        f.target = to;
        f.records = {{"A", "A", cls({0, 0}), 1}, {"B", "B", cls({0, 0}), 1}};
        if (n != 0) f.records.push_back({"A", "B", g, n});
        return f;
    };
    a.transitions.push_back(unipotent("T1", "T2", cls({1, 0}), 2));
    a.transitions.push_back(unipotent("T2", "T1", cls({1, 0}), -2));
    a.transitions.push_back(unipotent("T2", "T3", cls({0, 1}), 1));
    a.transitions.push_back(unipotent("T3", "T2", cls({0, 1}), -1));
    // direct families T1<->T3 = the composites
    TransitionFamily f13 = compose_transitions(*a.family("T1", "T2"), *a.family("T2", "T3"), a);
    TransitionFamily f31 = compose_transitions(*a.family("T3", "T2"), *a.family("T2", "T1"), a);
    a.transitions.push_back(f13);
    a.transitions.push_back(f31);
    a.validate();
    return a;
}

TransitionFamily random_family(Prng& rng, const std::string& from, const std::string& to,
                               int nsol, int rank) {
    TransitionFamily f;
    f.source = from;
    f.target = to;
    int n = int(1 + rng.below(5));
    for (int i = 0; i < n; ++i) {
        TransitionRecord r;
        r.s = std::string(1, char('A' + rng.below(uint64_t(nsol))));
        r.s_prime = std::string(1, char('A' + rng.below(uint64_t(nsol))));
        r.count = rng.integer(-3, 3);
        for (int k = 0; k < rank; ++k) r.cls.push_back(rng.rational(2, 2));
        f.records.push_back(r);
    }
    canonicalize_family(f);
    return f;
}

Atlas chain_atlas(int nsol, int rank) {
    Atlas a;
    a.rank = rank;
    a.direction.assign(size_t(rank), 0.0);
    for (const char* label : {"U", "V", "W"}) {
        ChartPoint c;
        c.label = label;
        for (int i = 0; i < nsol; ++i)
            c.solutions.push_back({std::string(1, char('A' + i)), ClassVector(size_t(rank), Rational(0))});
        a.charts.push_back(c);
    }
    return a;
}

std::vector<Cplx> random_psi(Prng& rng, int rank) {
    std::vector<Cplx> psi(size_t(rank), Cplx{});
    for (auto& x : psi) x = Cplx(rng.real(-1.5, 1.5), rng.real(-2.0, 2.0));
    return psi;
}

double matdiff(const std::vector<std::vector<Cplx>>& a, const std::vector<std::vector<Cplx>>& b) {
    double d = 0;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
    return d;
}

std::vector<std::vector<Cplx>> matmul(const std::vector<std::vector<Cplx>>& a,
                                      const std::vector<std::vector<Cplx>>& b) {
    std::vector<std::vector<Cplx>> out(a.size(), std::vector<Cplx>(b[0].size(), Cplx{}));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k)
            for (size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

}  // namespace

TEST_CASE("evaluate_transition basics") {
    Atlas a = chain_atlas(2, 1);
    TransitionFamily empty{"U", "V", {}};
    auto z = evaluate_transition(empty, a, {Cplx(0.3, 0.1)});
    CHECK(matdiff(z, {{Cplx{}, Cplx{}}, {Cplx{}, Cplx{}}}) == 0.0);

    TransitionFamily elem{"U", "V", {{"A", "B", cls({0}), 1}}};
    auto m = evaluate_transition(elem, a, {Cplx(0.7, -0.2)});
    CHECK(std::abs(m[1][0] - Cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(m[0][0]) == 0.0);

    // two records on the same slot sum their counts at psi = 0
    TransitionFamily two{"U", "V", {{"A", "A", cls({1}), 2}, {"A", "A", cls({2}), 3}}};
    auto s = evaluate_transition(two, a, {Cplx(0.0, 0.0)});
    CHECK(std::abs(s[0][0] - Cplx(5.0, 0.0)) < 1e-15);
}

TEST_CASE("composition: identity, associativity, evaluation homomorphism") {
    Prng rng(201);
    Atlas a = chain_atlas(3, 2);
    TransitionFamily ident{"U", "U", {}};
    for (int i = 0; i < 3; ++i)
        ident.records.push_back({std::string(1, char('A' + i)), std::string(1, char('A' + i)),
                                 cls({0, 0}), 1});
    for (int t = 0; t < 30; ++t) {
        TransitionFamily f = random_family(rng, "U", "V", 3, 2);
        TransitionFamily withid = compose_transitions(ident, f, a);
        canonicalize_family(f);
        CHECK(family_matrix(withid, a) == family_matrix(f, a));
    }

    for (int t = 0; t < 40; ++t) {
        TransitionFamily f = random_family(rng, "U", "V", 3, 2);
        TransitionFamily g = random_family(rng, "V", "W", 3, 2);
        TransitionFamily h = random_family(rng, "W", "W", 3, 2);
        auto left = compose_transitions(compose_transitions(f, g, a), h, a);
        auto right = compose_transitions(f, compose_transitions(g, h, a), a);
        CHECK(family_matrix(left, a) == family_matrix(right, a));

        // evaluation turns composition into matrix products
        auto comp = compose_transitions(f, g, a);
        for (int s = 0; s < 20; ++s) {
            auto psi = random_psi(rng, 2);
            auto prod = matmul(evaluate_transition(g, a, psi), evaluate_transition(f, a, psi));
            CHECK(matdiff(prod, evaluate_transition(comp, a, psi)) < 1e-9);
        }
    }

    TransitionFamily f = random_family(rng, "U", "V", 3, 2);
    TransitionFamily wrong = random_family(rng, "U", "V", 3, 2);
    CHECK_THROWS_AS((void)compose_transitions(f, wrong, a), std::invalid_argument);
}

TEST_CASE("cocycle verification and mutation detection") {
    // single chart: trivially verified
    Atlas single = chain_atlas(2, 1);
    single.charts.resize(1);
    auto r0 = check_cocycle(single);
    CHECK(r0.verified);

    Atlas a = wall_atlas();
    auto rep = check_cocycle(a);
    CHECK(rep.verified);
    CHECK(rep.triples_checked > 0);
    CHECK(rep.inverse_pairs_checked == 6);

    // one perturbed count is pinpointed
    Atlas bad = a;
    for (auto& f : bad.transitions)
        if (f.source == "T1" && f.target == "T3") f.records[0].count = 2;
    auto brep = check_cocycle(bad);
    CHECK_FALSE(brep.verified);
    CHECK(!brep.failure.empty());
}

TEST_CASE("gauge transform preserves the cocycle verdict and cancels in pairings") {
    Atlas a = wall_atlas();
    std::map<std::string, Rational> lambda = {{"T1", Rational(1, 2)}, {"T2", Rational(-2, 3)},
                                              {"T3", Rational(3)}};
    Atlas b = gauge_transform(a, lambda);
    CHECK(check_cocycle(b).verified);

    // seeded random gauge choices, exact verdict invariance each time
    Prng grng(207);
    for (int t = 0; t < 25; ++t) {
        std::map<std::string, Rational> gl = {{"T1", grng.rational(4, 3)},
                                              {"T2", grng.rational(4, 3)},
                                              {"T3", grng.rational(4, 3)}};
        CHECK(check_cocycle(gauge_transform(a, gl)).verified);
    }

    // lambda = 0 is the identity
    Atlas c = gauge_transform(a, {});
    for (size_t i = 0; i < a.transitions.size(); ++i)
        CHECK(family_matrix(c.transitions[i], c) == family_matrix(a.transitions[i], a));

    // sections transported with Lambda and Lambda^{-1} pair identically:
    // realised here through the record-class shifts cancelling by charge
    SectionData g1{"T1", {}}, g2{"T1", {}};
    ExpSum proto = a.proto();
    ExpSum e1 = proto, e2 = proto, e3 = proto, e4 = proto;
    e1.add_term(cls({1, 0}), RationalComplex(Rational(1)));
    e2.add_term(cls({0, 1}), RationalComplex(Rational(2)));
    e3.add_term(cls({2, 0}), RationalComplex(Rational(3)));
    e4.add_term(cls({0, 2}), RationalComplex(Rational(5)));
    g1.entries = {e1, e2};
    g2.entries = {e3, e4};
    auto before = pair_sections(g1, g2, a);
    auto after = pair_sections(g1, g2, b);  // same sections, gauged atlas
    CHECK(before.terms == after.terms);
}

TEST_CASE("bundle assembly: rank equals the solution count") {
    Prng rng(202);

    // identity-only two-chart atlas
    Atlas id = chain_atlas(3, 2);
    id.charts.resize(2);
    TransitionFamily f{"U", "V", {}}, g{"V", "U", {}};
    for (int i = 0; i < 3; ++i) {
        std::string n(1, char('A' + i));
        f.records.push_back({n, n, cls({0, 0}), 1});
        g.records.push_back({n, n, cls({0, 0}), 1});
    }
    id.transitions = {f, g};
    std::vector<std::vector<Cplx>> psis;
    for (int i = 0; i < 20; ++i) psis.push_back(random_psi(rng, 2));
    auto rep = assemble_bundle(id, psis);
    CHECK(rep.solution_count == 3);
    CHECK(rep.all_match(3));

    // the wall atlas: three charts, rank 2 fibres
    Atlas a = wall_atlas();
    auto wrep = assemble_bundle(a, psis);
    CHECK(wrep.solution_count == 2);
    CHECK(wrep.all_match(2));
    for (const auto& s : wrep.samples) {
        CHECK_FALSE(s.skipped);
        CHECK(s.coker_rank == 2);
        CHECK(s.frames_match);
    }
}

TEST_CASE("dense-wall variant: four sampled points with pairwise families") {
    Prng rng(203);
    Atlas a;
    a.rank = 1;
    a.direction = {0.0};
    for (int i = 0; i < 4; ++i) {
        ChartPoint c;
        c.label = "Z" + std::to_string(i);
        c.solutions = {{"A", cls({1})}, {"B", cls({0})}};
        a.charts.push_back(c);
    }
    // unipotent generators along the chain, then all pairwise composites
    std::vector<ExpSumMatrix> chain;
    auto unip = [&](const std::string& from, const std::string& to, long n, long g) {
        TransitionFamily f;
        f.source = from;
        f.target = to;
        f.records = {{"A", "A", cls({0}), 1}, {"B", "B", cls({0}), 1}};
        if (n != 0) f.records.push_back({"A", "B", cls({g}), n});
        return f;
    };
    std::map<std::pair<int, int>, TransitionFamily> fam;
    fam[{0, 1}] = unip("Z0", "Z1", 1, 1);
    fam[{1, 2}] = unip("Z1", "Z2", -2, 2);
    fam[{2, 3}] = unip("Z2", "Z3", 3, 1);
    auto push = [&](TransitionFamily f) { a.transitions.push_back(std::move(f)); };
    push(fam[{0, 1}]);
    push(fam[{1, 2}]);
    push(fam[{2, 3}]);
    fam[{0, 2}] = compose_transitions(fam[{0, 1}], fam[{1, 2}], a);
    fam[{1, 3}] = compose_transitions(fam[{1, 2}], fam[{2, 3}], a);
    fam[{0, 3}] = compose_transitions(fam[{0, 1}], fam[{1, 3}], a);
    push(fam[{0, 2}]);
    push(fam[{1, 3}]);
    push(fam[{0, 3}]);
    // reverses: unipotent inverses flip the off-diagonal count
    for (auto& [key, f] : fam) {
        ExpSumMatrix inv = expsum_inverse(family_matrix(f, a));
        TransitionFamily r;
        r.source = f.target;
        r.target = f.source;
        const auto& chartp = a.chart(f.source);
        for (int i = 0; i < inv.rows(); ++i)
            for (int j = 0; j < inv.cols(); ++j)
                for (const auto& [cv, cc] : inv.a[i][j].terms())
                    r.records.push_back({chartp.solutions[size_t(j)].name,
                                         chartp.solutions[size_t(i)].name, cv,
                                         long(cc.re.to_double())});
        push(r);
    }
    a.validate();
    CHECK(check_cocycle(a).verified);
    std::vector<std::vector<Cplx>> psis;
    for (int i = 0; i < 8; ++i) psis.push_back(random_psi(rng, 1));
    auto rep = assemble_bundle(a, psis);
    CHECK(rep.solution_count == 2);
    CHECK(rep.all_match(2));
}

TEST_CASE("pair_sections: elementary case and the two-solution fixture") {
    Atlas a = wall_atlas();
    ExpSum proto = a.proto();

    // rank-1 sections with single unit terms pair to a single unit term
    SectionData u{"T1", {}}, v{"T1", {}};
    ExpSum one = ExpSum::constant(proto, RationalComplex(Rational(1)));
    u.entries = {one, proto};
    v.entries = {one, proto};
    auto f0 = pair_sections(u, v, a);
    REQUIRE(f0.terms.size() == 1);
    CHECK(f0.terms.begin()->second == Rational(1));

    // n(E1) in {1,2}, n(E2) in {3,5} over two solutions: n_b = 1*3 + 2*5 = 13
    SectionData g1{"T1", {}}, g2{"T1", {}};
    ExpSum a1 = proto, a2 = proto, b1 = proto, b2 = proto;
    a1.add_term(cls({1, 0}), RationalComplex(Rational(1)));
    a2.add_term(cls({0, 1}), RationalComplex(Rational(2)));
    b1.add_term(cls({0, 1}), RationalComplex(Rational(3)));
    b2.add_term(cls({1, 0}), RationalComplex(Rational(5)));
    g1.entries = {a1, a2};
    g2.entries = {b1, b2};
    auto f = pair_sections(g1, g2, a);
    REQUIRE(f.terms.size() == 1);
    CHECK(f.terms.count(cls({1, 1})) == 1);
    CHECK(f.terms.at(cls({1, 1})) == Rational(13));

    // bilinear under integer rescaling
    SectionData g1s = g1;
    for (auto& e : g1s.entries) e = e.scaled(RationalComplex(Rational(7)));
    auto fs = pair_sections(g1s, g2, a);
    CHECK(fs.terms.at(cls({1, 1})) == Rational(91));
}

TEST_CASE("pairing is invariant under chart transport") {
    Atlas a = wall_atlas();
    ExpSum proto = a.proto();
    Prng rng(204);
    SectionData g1{"T1", {}}, g2{"T1", {}};
    for (int i = 0; i < 2; ++i) {
        ExpSum e1 = proto, e2 = proto;
        for (int t = 0; t < 3; ++t) {
            e1.add_term({Rational(rng.integer(0, 2)), Rational(rng.integer(0, 2))},
                        RationalComplex(rng.rational(3, 1)));
            e2.add_term({Rational(rng.integer(0, 2)), Rational(rng.integer(0, 2))},
                        RationalComplex(rng.rational(3, 1)));
        }
        g1.entries.push_back(e1);
        g2.entries.push_back(e2);
    }
    auto base = pair_sections(g1, g2, a);
    const TransitionFamily* f12 = a.family("T1", "T2");
    REQUIRE(f12 != nullptr);
    SectionData t1 = transport_section(g1, *f12, a);
    SectionData t2 = transport_section_dual(g2, *f12, a);
    auto moved = pair_sections(t1, t2, a);
    CHECK(base.terms == moved.terms);  // exact record-level equality
    for (int s = 0; s < 20; ++s) {
        auto psi = random_psi(rng, 2);
        CHECK(std::abs(base.evaluate(psi) - moved.evaluate(psi)) < 1e-9);
    }
}

TEST_CASE("generating functions: cone support and shell decay") {
    std::vector<Rational> phi = {Rational(1), Rational(2)};
    GeneratingFunction f = make_generating_function(
        2, phi, {{cls({1, 0}), Rational(1)}, {cls({0, 1}), Rational(-3)}, {cls({2, 1}), Rational(7)}});
    CHECK(f.terms.size() == 3);

    // a term with <phi, b> < 0 is rejected with a diagnostic
    CHECK_THROWS_WITH_AS(
        (void)make_generating_function(2, phi, {{cls({-1, 0}), Rational(1)}}),
        doctest::Contains("violates cone support"), std::invalid_argument);

    // empty counts give the zero function
    auto z = make_generating_function(2, phi, {});
    CHECK(z.terms.empty());
    CHECK(std::abs(z.evaluate({Cplx(1, 0), Cplx(1, 0)})) == 0.0);

    // at psi = r phi the per-shell magnitudes decrease
    for (double r : {5.0, 10.0}) {
        std::vector<Cplx> psi = {Cplx(r * 1.0, 0), Cplx(r * 2.0, 0)};
        auto shells = f.shell_terms(psi);
        for (size_t i = 0; i + 1 < shells.size(); ++i)
            CHECK(std::abs(shells[i + 1]) < std::abs(shells[i]));
    }
}

TEST_CASE("slag_count: worked instances") {
    SlagWeights w;
    w.classes = {cls({1})};
    w.positivity = {Rational(1)};
    w.w[{1, 0}] = Rational(1);
    CHECK(slag_count(w, cls({1})) == Rational(1));
    CHECK(slag_count(w, cls({-2})) == Rational(0));  // negative pairing: empty sum

    SlagWeights two;
    two.classes = {cls({1, 0}), cls({0, 1})};
    two.positivity = {Rational(1), Rational(1)};
    for (int k = 1; k <= 2; ++k)
        for (int c = 0; c < 2; ++c) two.w[{k, c}] = Rational(1);
    CHECK(slag_count(two, cls({2, 1})) == Rational(2));

    SlagWeights nopos = two;
    nopos.positivity.clear();
    CHECK_THROWS_AS((void)slag_count(nopos, cls({2, 1})), std::invalid_argument);
    SlagWeights zeropair = two;
    zeropair.classes.push_back(cls({1, -1}));
    zeropair.w[{1, 2}] = Rational(1);
    CHECK_THROWS_AS((void)slag_count(zeropair, cls({2, 1})), std::invalid_argument);
}

namespace {

// independent oracle: odometer over multiplicity vectors of the weighted parts
Rational slag_oracle(const SlagWeights& w, const ClassVector& kappa) {
    std::vector<std::tuple<long, int, Rational>> parts;
    for (const auto& [kc, wt] : w.w)
        if (!wt.is_zero()) parts.push_back({kc.first, kc.second, wt});
    Rational budget(0);
    for (size_t i = 0; i < kappa.size(); ++i) budget += kappa[i] * w.positivity[i];
    if (budget.sign() < 0) return Rational(0);
    std::vector<long> maxmult(parts.size(), 0);
    for (size_t p = 0; p < parts.size(); ++p) {
        auto [k, ci, wt] = parts[p];
        (void)wt;
        Rational cost(0);
        for (size_t i = 0; i < kappa.size(); ++i)
            cost += w.classes[size_t(ci)][i] * w.positivity[i] * Rational(k);
        long m = 0;
        while (Rational(m + 1) * cost <= budget) ++m;
        maxmult[p] = m;
    }
    std::vector<long> mult(parts.size(), 0);
    Rational total(0);
    for (;;) {
        ClassVector sum(kappa.size(), Rational(0));
        Rational prod(1);
        for (size_t p = 0; p < parts.size(); ++p) {
            auto [k, ci, wt] = parts[p];
            for (long m = 0; m < mult[p]; ++m) {
                for (size_t i = 0; i < sum.size(); ++i)
                    sum[i] += w.classes[size_t(ci)][i] * Rational(k);
                prod *= wt;
            }
        }
        if (sum == kappa) total += prod;
        size_t p = 0;
        while (p < parts.size()) {
            if (mult[p] < maxmult[p]) {
                ++mult[p];
                break;
            }
            mult[p] = 0;
            ++p;
        }
        if (p == parts.size()) break;
    }
    return total;
}

}  // namespace

TEST_CASE("slag_count agrees with exhaustive enumeration") {
    Prng rng(205);
    int instances = 0;
    while (instances < 60) {
        int rank = int(1 + rng.below(3));
        int nclasses = int(1 + rng.below(3));
        SlagWeights w;
        w.positivity.assign(size_t(rank), Rational(0));
        for (auto& x : w.positivity) x = Rational(rng.integer(1, 3));
        bool ok = true;
        for (int c = 0; c < nclasses; ++c) {
            ClassVector cv(size_t(rank), Rational(0));
            for (auto& x : cv) x = Rational(rng.integer(-1, 3));
            Rational pairing(0);
            for (int i = 0; i < rank; ++i) pairing += cv[size_t(i)] * w.positivity[size_t(i)];
            if (pairing.sign() <= 0) {
                ok = false;
                break;
            }
            w.classes.push_back(cv);
        }
        if (!ok) continue;
        for (int c = 0; c < nclasses; ++c)
            for (long k = 1; k <= 3; ++k)
                if (rng.below(3) != 0) w.w[{k, c}] = rng.rational(3, 1);
        ClassVector kappa(size_t(rank), Rational(0));
        for (int tries = 0; tries < 30; ++tries) {
            for (auto& x : kappa) x = Rational(rng.integer(0, 4));
            Rational pairing(0);
            for (int i = 0; i < rank; ++i) pairing += kappa[size_t(i)] * w.positivity[size_t(i)];
            if (pairing <= Rational(8)) break;
        }
        Rational pairing(0);
        for (int i = 0; i < rank; ++i) pairing += kappa[size_t(i)] * w.positivity[size_t(i)];
        if (pairing > Rational(8)) continue;
        CHECK(slag_count(w, kappa) == slag_oracle(w, kappa));
        ++instances;
    }
}
