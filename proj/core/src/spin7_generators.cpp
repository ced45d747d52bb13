// Exact rational elements of the stabiliser of the standard 4-form, and the
// Cayley-plane sampler built from them. Rotation generators come from mixed
// complex structures J in the stabiliser algebra: for those, exp(theta J) is
// rational whenever tan(theta/2) is, via ((1-s^2)Id + 2sJ)/(1+s^2).

#include "holonov/models.hpp"

#include <algorithm>
#include <stdexcept>

namespace holonov {

namespace {

// right multiplication x -> x q on quaternions in the (1,i,j,k) basis
RatMat right_mult_matrix(long a, long b, long c, long d) {
    RatMat m(4, 4);
    long t[4][4] = {{a, -b, -c, -d}, {b, a, d, -c}, {c, -d, a, b}, {d, c, -b, a}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.at(i, j) = Rational(t[i][j]);
    return m;
}

std::vector<RatMat> find_mixed_complex_structures() {
    const auto& m = standard_models().spin7;
    std::vector<RatMat> out;
    int perm[4] = {0, 1, 2, 3};
    std::sort(perm, perm + 4);
    do {
        for (int smask = 0; smask < 16; ++smask) {
            // signed-pairing skew map e_{x_a} -> s_a e_{y_sigma(a)}
            RatMat j(8, 8);
            for (int a = 0; a < 4; ++a) {
                int s = (smask >> a) & 1 ? -1 : 1;
                int ya = 4 + perm[a];
                j.at(ya, a) = Rational(s);
                j.at(a, ya) = Rational(-s);
            }
            if (j * j != RatMat::identity(8).scaled(Rational(-1))) continue;
            if (!derivation_action(m.omega, j).is_zero()) continue;
            out.push_back(j);
        }
    } while (std::next_permutation(perm, perm + 4));
    if (out.empty()) throw std::logic_error("spin7 generator search found nothing");
    return out;
}

}  // namespace

const std::vector<RatMat>& spin7_mixed_complex_structures() {
    static const std::vector<RatMat> gens = find_mixed_complex_structures();
    return gens;
}

RatMat random_spin7_rotation(Prng& rng) {
    const auto& gens = spin7_mixed_complex_structures();
    RatMat r = RatMat::identity(8);
    int factors = int(2 + rng.below(3));
    for (int f = 0; f < factors; ++f) {
        const RatMat& j = gens[rng.below(gens.size())];
        Rational s = rng.rational(4, 3);
        Rational den = Rational(1) + s * s;
        RatMat rot = (RatMat::identity(8).scaled(Rational(1) - s * s) + j.scaled(Rational(2) * s))
                         .scaled(Rational(1) / den);
        r = r * rot;
    }
    return r;
}

OrientedPlane random_cayley_plane(Prng& rng) {
    // base plane: a quaternionic graph {(x, x q)}, or one of the two factors
    OrientedPlane p;
    p.ambient_dim = 8;
    p.orientation = 1;
    p.span = RatMat(8, 4);
    uint64_t kind = rng.below(8);
    if (kind == 0) {
        for (int c = 0; c < 4; ++c) p.span.at(c, c) = Rational(1);  // R^4_1
    } else if (kind == 1) {
        for (int c = 0; c < 4; ++c) p.span.at(4 + c, c) = Rational(1);  // R^4_2
    } else {
        RatMat g = right_mult_matrix(rng.integer(-3, 3), rng.integer(-3, 3), rng.integer(-3, 3),
                                     rng.integer(-3, 3));
        for (int c = 0; c < 4; ++c) {
            p.span.at(c, c) = Rational(1);
            for (int r = 0; r < 4; ++r) p.span.at(4 + r, c) = g.at(r, c);
        }
    }
    RatMat rot = random_spin7_rotation(rng);
    p.span = rot * p.span;
    return p;
}

}  // namespace holonov
