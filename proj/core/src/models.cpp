#include "holonov/models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace holonov {

namespace {

// reference self-dual basis; see the header comment for the sign freeze
std::vector<KForm> reference_sd_basis(int dim, int xoff) {
    auto e = [&](int a, int b) { return KForm::monomial(dim, {xoff + a, xoff + b}); };
    return {-(e(1, 2) + e(3, 4)), -(e(1, 3) - e(2, 4)), -(e(1, 4) + e(2, 3))};
}

KForm standard_phi0() {
    auto w = reference_sd_basis(7, 3);
    KForm phi = KForm::monomial(7, {1, 2, 3});
    for (int i = 0; i < 3; ++i) phi = phi + wedge(KForm::monomial(7, {i + 1}), w[i]);
    return phi;
}

// projection R^8 -> R^7 realizing the inclusion (y1,y2,y3,x1..x4) at
// coordinates (5,6,7,1,2,3,4); forms on R^7 are lifted through it
RatMat projection_8to7() {
    RatMat p(7, 8);
    for (int i = 0; i < 3; ++i) p.at(i, 4 + i) = Rational(1);
    for (int a = 0; a < 4; ++a) p.at(3 + a, a) = Rational(1);
    return p;
}

// projection R^7 -> R^6 dropping the cylinder coordinate s = y1
RatMat projection_7to6() {
    RatMat p(6, 7);
    for (int i = 0; i < 6; ++i) p.at(i, i + 1) = Rational(1);
    return p;
}

KForm embed_7to8(const KForm& a) { return pullback_linear(a, projection_8to7()); }
KForm embed_6to7(const KForm& a) { return pullback_linear(a, projection_7to6()); }

Rational omega_matrix_entry(const KForm& om, int a, int b) {
    if (a == b) return Rational(0);
    IndexMask m = IndexMask((1 << a) | (1 << b));
    Rational c = om.coeff(m);
    return a < b ? c : -c;
}

// omega(., M.) as a matrix, for a 2-form omega and endomorphism M
RatMat omega_compose(const KForm& om, const RatMat& M) {
    int n = M.rows();
    RatMat out(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Rational acc(0);
            for (int c = 0; c < n; ++c) {
                if (M.at(c, b).is_zero()) continue;
                acc += omega_matrix_entry(om, a, c) * M.at(c, b);
            }
            out.at(a, b) = acc;
        }
    return out;
}

struct StandardCache {
    StandardModels models;
    KForm phi0{7, 3}, sigma0{7, 4}, omega0{8, 4};
    KForm omega6{6, 2}, rho1_6{6, 3}, rho2_6{6, 3};
    RatMat cx6;
    Rational c_omega2;
};

const StandardCache& standard_cache() {
    static const StandardCache cache = [] {
        StandardCache c;
        c.phi0 = standard_phi0();
        c.sigma0 = hodge_star(c.phi0, +1);
        c.omega0 = wedge(embed_7to8(c.phi0), KForm::monomial(8, {8})) + embed_7to8(c.sigma0);

        // SU(3) data from the s = y1 split of (phi0, sigma0)
        std::vector<Rational> e1(7);
        e1[0] = Rational(1);
        KForm om7 = contract(e1, c.phi0);
        KForm rho2_7 = -contract(e1, c.sigma0);
        RatMat incl(7, 6);
        for (int i = 0; i < 6; ++i) incl.at(i + 1, i) = Rational(1);
        c.omega6 = pullback_linear(om7, incl);
        c.rho1_6 = pullback_linear(c.phi0, incl);
        c.rho2_6 = pullback_linear(rho2_7, incl);

        // normalization constant of sigma = rho2 ds + c omega^2
        KForm lhs = c.sigma0 - wedge(rho2_7, KForm::monomial(7, {1}));
        KForm w2 = wedge(om7, om7);
        Rational ratio(0);
        for (const auto& [mk, cc] : lhs.coeffs()) {
            Rational denom = w2.coeff(mk);
            if (denom.is_zero()) throw std::logic_error("omega^2 constant: shape mismatch");
            ratio = cc / denom;
            break;
        }
        if (lhs != w2.scaled(ratio)) throw std::logic_error("omega^2 constant: not a scalar multiple");
        c.c_omega2 = ratio;

        Su3Verdict v = su3_check(c.omega6, c.rho1_6);
        if (!v.pass || !v.cx_exact) throw std::logic_error("standard SU(3) data failed its own check");
        c.cx6 = v.cx;

        c.models.spin7 = Spin7Model{c.omega0, RatMat::identity(8), Metric::euclidean(8), Rational(1)};
        c.models.g2 = G2Model{c.phi0, c.sigma0, RatMat::identity(7), Metric::euclidean(7), Rational(1)};
        c.models.su3 = SU3Model{c.rho1_6, c.rho2_6, c.omega6, c.cx6, RatMat::identity(6)};
        return c;
    }();
    return cache;
}

void require_positive_det(const RatMat& p, const char* who) {
    if (det(p).sign() <= 0)
        throw std::invalid_argument(std::string(who) + ": provenance must have positive determinant");
}

}  // namespace

const StandardModels& standard_models() { return standard_cache().models; }

const Rational& omega_squared_constant() { return standard_cache().c_omega2; }

void Spin7Model::validate() const {
    require_positive_det(provenance, "Spin7Model");
    if (omega != pullback(standard_cache().omega0, provenance))
        throw std::invalid_argument("Spin7Model: omega does not match its provenance");
    if (metric.g != provenance.transpose() * provenance)
        throw std::invalid_argument("Spin7Model: metric does not match its provenance");
    if (volume_scale != det(provenance))
        throw std::invalid_argument("Spin7Model: volume scale mismatch");
}

void G2Model::validate() const {
    require_positive_det(provenance, "G2Model");
    if (phi != pullback(standard_cache().phi0, provenance))
        throw std::invalid_argument("G2Model: phi does not match its provenance");
    if (sigma != pullback(standard_cache().sigma0, provenance))
        throw std::invalid_argument("G2Model: sigma does not match its provenance");
    if (sigma != hodge_star(phi, metric, +1))
        throw std::invalid_argument("G2Model: sigma != *phi under the model metric");
}

void SU3Model::validate() const {
    require_positive_det(provenance, "SU3Model");
    if (cx * cx != RatMat::identity(6).scaled(Rational(-1)))
        throw std::invalid_argument("SU3Model: cx^2 != -Id");
    if (rho2 != pullback(rho1, cx))
        throw std::invalid_argument("SU3Model: rho2 != pullback(rho1, I)");
    if (!wedge(omega, rho1).is_zero())
        throw std::invalid_argument("SU3Model: omega ∧ rho1 != 0");
    RatMat w = omega_compose(omega, cx);
    if (!w.is_symmetric() || !is_positive_definite(w))
        throw std::invalid_argument("SU3Model: omega(., I.) not positive definite");
}

Spin7Model spin7_from_provenance(const RatMat& p) {
    if (p.rows() != 8 || p.cols() != 8) throw std::invalid_argument("spin7_from_provenance: need 8x8");
    require_positive_det(p, "spin7_from_provenance");
    return Spin7Model{pullback(standard_cache().omega0, p), p, Metric{8, p.transpose() * p}, det(p)};
}

G2Model g2_from_provenance(const RatMat& p) {
    if (p.rows() != 7 || p.cols() != 7) throw std::invalid_argument("g2_from_provenance: need 7x7");
    require_positive_det(p, "g2_from_provenance");
    return G2Model{pullback(standard_cache().phi0, p), pullback(standard_cache().sigma0, p), p,
                   Metric{7, p.transpose() * p}, det(p)};
}

SU3Model su3_from_provenance(const RatMat& p) {
    if (p.rows() != 6 || p.cols() != 6) throw std::invalid_argument("su3_from_provenance: need 6x6");
    require_positive_det(p, "su3_from_provenance");
    const auto& sc = standard_cache();
    RatMat pinv = inverse(p);
    return SU3Model{pullback(sc.rho1_6, p), pullback(sc.rho2_6, p), pullback(sc.omega6, p),
                    pinv * sc.cx6 * p, p};
}

Spin7Model cylinder_lift_7to8(const G2Model& m) {
    m.validate();
    KForm omega = wedge(embed_7to8(m.phi), KForm::monomial(8, {8})) + embed_7to8(m.sigma);
    // extend the GL(7) provenance by the fixed t coordinate
    auto to8 = [](int i7) { return i7 < 3 ? 4 + i7 : i7 - 3; };
    RatMat p(8, 8);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) p.at(to8(i), to8(j)) = m.provenance.at(i, j);
    p.at(7, 7) = Rational(1);
    Spin7Model out{omega, p, Metric{8, p.transpose() * p}, det(p)};
    out.validate();
    return out;
}

G2Model cylinder_lift_6to7(const SU3Model& m) {
    m.validate();
    KForm phi = wedge(embed_6to7(m.omega), KForm::monomial(7, {1})) + embed_6to7(m.rho1);
    KForm sigma = wedge(embed_6to7(m.rho2), KForm::monomial(7, {1})) +
                  wedge(embed_6to7(m.omega), embed_6to7(m.omega)).scaled(omega_squared_constant());
    RatMat p(7, 7);
    p.at(0, 0) = Rational(1);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) p.at(i + 1, j + 1) = m.provenance.at(i, j);
    G2Model out{phi, sigma, p, Metric{7, p.transpose() * p}, det(p)};
    out.validate();
    return out;
}

// ---- decompositions ----

namespace {

// matrix of beta -> *(beta ∧ form) on the degree-2 monomial basis
RatMat wedge_star_operator(const KForm& form, const Metric& g, const std::vector<IndexMask>& basis) {
    int n = int(basis.size());
    RatMat L(n, n);
    for (int c = 0; c < n; ++c) {
        KForm e(form.dim(), 2);
        e.add_term(basis[c], Rational(1));
        KForm img = hodge_star(wedge(e, form), g, +1);
        for (int r = 0; r < n; ++r) L.at(r, c) = img.coeff(basis[r]);
    }
    return L;
}

RatMat pullback_operator(const RatMat& A, const std::vector<IndexMask>& basis, int dim) {
    int n = int(basis.size());
    RatMat P(n, n);
    for (int c = 0; c < n; ++c) {
        KForm e(dim, 2);
        e.add_term(basis[c], Rational(1));
        KForm img = pullback(e, A);
        for (int r = 0; r < n; ++r) P.at(r, c) = img.coeff(basis[r]);
    }
    return P;
}

}  // namespace

TwoFormDecomposition project2_operators(const Spin7Model& m) {
    TwoFormDecomposition dec;
    dec.basis = monomial_masks(8, 2);
    RatMat L = wedge_star_operator(m.omega, m.metric, dec.basis);
    RatMat id = RatMat::identity(int(dec.basis.size()));
    dec.projector = {(L + id).scaled(Rational(1, 4)),
                     (id.scaled(Rational(3)) - L).scaled(Rational(1, 4))};
    dec.ranks = {rank(dec.projector[0]), rank(dec.projector[1])};
    return dec;
}

TwoFormDecomposition project2_operators(const G2Model& m) {
    TwoFormDecomposition dec;
    dec.basis = monomial_masks(7, 2);
    RatMat L = wedge_star_operator(m.phi, m.metric, dec.basis);
    RatMat id = RatMat::identity(int(dec.basis.size()));
    dec.projector = {(L + id).scaled(Rational(1, 3)),
                     (id.scaled(Rational(2)) - L).scaled(Rational(1, 3))};
    dec.ranks = {rank(dec.projector[0]), rank(dec.projector[1])};
    return dec;
}

TwoFormDecomposition project2_operators(const SU3Model& m) {
    TwoFormDecomposition dec;
    dec.basis = monomial_masks(6, 2);
    int n = int(dec.basis.size());
    RatMat pi = pullback_operator(m.cx, dec.basis, 6);
    RatMat id = RatMat::identity(n);
    RatMat one_one = (id + pi).scaled(Rational(1, 2));  // (1,1) part, rank 9
    RatMat p6 = (id - pi).scaled(Rational(1, 2));       // (2,0)+(0,2) part
    std::vector<Rational> wv = m.omega.dense(dec.basis);
    Rational wnorm = inner(m.omega, m.omega);
    RatMat pw(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) pw.at(r, c) = wv[r] * wv[c] / wnorm;
    RatMat p8 = one_one - pw;
    dec.projector = {pw, p6, p8};
    dec.ranks = {rank(dec.projector[0]), rank(dec.projector[1]), rank(dec.projector[2])};
    return dec;
}

KForm apply_two_form_operator(const RatMat& op, const KForm& beta,
                              const std::vector<IndexMask>& basis) {
    auto v = op.apply(beta.dense(basis));
    KForm out(beta.dim(), 2);
    for (size_t i = 0; i < basis.size(); ++i) out.add_term(basis[i], v[i]);
    return out;
}

std::vector<KForm> project2(const KForm& beta, const TwoFormDecomposition& dec) {
    if (beta.degree() != 2) throw std::invalid_argument("project2: need a 2-form");
    std::vector<KForm> out;
    out.reserve(dec.projector.size());
    for (const auto& p : dec.projector) out.push_back(apply_two_form_operator(p, beta, dec.basis));
    return out;
}

// ---- plane classification ----

const char* plane_class_name(PlaneClass c) {
    switch (c) {
        case PlaneClass::cayley: return "cayley";
        case PlaneClass::associative: return "associative";
        case PlaneClass::coassociative: return "coassociative";
        case PlaneClass::none: return "none";
    }
    return "?";
}

PlaneVerdict classify_plane(const OrientedPlane& p, const Spin7Model& m) {
    if (p.ambient_dim != 8 || p.k() != 4)
        throw std::invalid_argument("classify_plane(Spin7): need a 4-plane in R^8");
    p.validate();
    KForm r = restrict_to(m.omega, p);
    Rational c = r.coeff(IndexMask(0x0F));
    RatMat gram = p.span.transpose() * (m.metric.g * p.span);
    Rational d = det(gram);
    PlaneVerdict v;
    v.defect = {d - c * c.abs()};  // zero iff the restriction equals +vol_P
    v.cls = v.defect[0].is_zero() ? PlaneClass::cayley : PlaneClass::none;
    return v;
}

PlaneVerdict classify_plane(const OrientedPlane& p, const G2Model& m) {
    if (p.ambient_dim != 7) throw std::invalid_argument("classify_plane(G2): need a plane in R^7");
    p.validate();
    PlaneVerdict v;
    if (p.k() == 3) {
        // associative: restriction of i_v(sigma) vanishes for every v
        for (int i = 0; i < 7; ++i) {
            std::vector<Rational> e(7);
            e[i] = Rational(1);
            KForm r = restrict_to(contract(e, m.sigma), p);
            v.defect.push_back(r.coeff(IndexMask(0x07)));
        }
        bool zero = true;
        for (const auto& x : v.defect) zero = zero && x.is_zero();
        v.cls = zero ? PlaneClass::associative : PlaneClass::none;
        return v;
    }
    if (p.k() == 4) {
        KForm r = restrict_to(m.phi, p);
        for (IndexMask mk : monomial_masks(4, 3)) v.defect.push_back(r.coeff(mk));
        bool zero = true;
        for (const auto& x : v.defect) zero = zero && x.is_zero();
        v.cls = zero ? PlaneClass::coassociative : PlaneClass::none;
        return v;
    }
    throw std::invalid_argument("classify_plane(G2): k must be 3 or 4");
}

bool cayley_contraction_test(const OrientedPlane& p, const Spin7Model& m) {
    if (p.ambient_dim != 8 || p.k() != 4)
        throw std::invalid_argument("cayley_contraction_test: need a 4-plane in R^8");
    p.validate();
    if (!m.metric.is_euclidean())
        throw std::invalid_argument("cayley_contraction_test: supported on the standard model");
    // i_v(Omega)|_P ∧ beta = <v#|_P, beta>_P vol_P for every covector beta of
    // the plane; vol_P = sqrt(d) e^{1234} brings in one square root, so both
    // sides are compared as signed squares.
    RatMat gram = p.span.transpose() * p.span;
    Rational d = det(gram);
    for (int vi = 0; vi < 8; ++vi) {
        std::vector<Rational> v(8);
        v[vi] = Rational(1);
        KForm lhs3 = restrict_to(contract(v, m.omega), p);
        for (int wi = 0; wi < 4; ++wi) {
            // beta = (e_wi)# in induced coordinates = gram row wi; pair beta
            // on the left so that beta ∧ *(alpha) = <beta, alpha> vol
            KForm beta(4, 1);
            for (int a = 0; a < 4; ++a) beta.add_term(IndexMask(1) << a, gram.at(wi, a));
            Rational lhs = wedge(beta, lhs3).coeff(IndexMask(0x0F));
            // <beta, v#|_P>_P = (v#|_P)(e_wi) = (S^T v)_wi
            Rational pair = p.span.at(vi, wi);
            if (lhs * lhs.abs() != pair * pair.abs() * d) return false;
        }
    }
    return true;
}

// ---- identities and ranks ----

KForm energy_identity_residual(const KForm& alpha, const Spin7Model& m) {
    return energy_identity_residual(alpha, m, project2_operators(m));
}

KForm energy_identity_residual(const KForm& alpha, const Spin7Model& m,
                               const TwoFormDecomposition& dec) {
    if (alpha.dim() != 8 || alpha.degree() != 2)
        throw std::invalid_argument("energy_identity_residual: need a 2-form on R^8");
    KForm a21 = apply_two_form_operator(dec.projector[1], alpha, dec.basis);
    Rational norm2(0);
    if (m.metric.is_euclidean()) {
        norm2 = inner(a21, a21);
    } else {
        RatMat ginv = inverse(m.metric.g);
        for (const auto& [mi, ci] : a21.coeffs()) {
            auto ri = mask_indices(mi);
            for (auto& r : ri) --r;
            for (const auto& [mj, cj] : a21.coeffs()) {
                auto rj = mask_indices(mj);
                for (auto& r : rj) --r;
                norm2 += ci * cj * minor_det(ginv, ri, rj);
            }
        }
    }
    KForm res = wedge(wedge(a21, a21), m.omega);
    KForm volform(8, 8);
    volform.add_term(IndexMask(0xFF), m.volume_scale);
    return res + volform.scaled(norm2);
}

OrbitRankReport orbit_rank(const KForm& form) {
    int n = form.dim();
    auto basis = monomial_masks(n, form.degree());
    RatMat jac(n * n, int(basis.size()));
    int row = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RatMat e(n, n);
            e.at(i, j) = Rational(1);
            KForm d = derivation_action(form, e);
            for (size_t c = 0; c < basis.size(); ++c) jac.at(row, int(c)) = d.coeff(basis[c]);
            ++row;
        }
    OrbitRankReport rep;
    rep.gl_dim = n * n;
    rep.form_space_dim = int(basis.size());
    rep.linearized_rank = rank(std::move(jac));
    return rep;
}

namespace {

// d/dt at 0 of restrict(a, span0 + t spand): the coefficients are multilinear
// in the span columns, so the derivative is a sum of single-column
// replacements minus the overcounted base terms.
KForm restriction_derivative(const KForm& a, const RatMat& span0, const RatMat& spand) {
    int k = span0.cols();
    KForm base = pullback_linear(a, span0);
    KForm acc = KForm::zero(base.dim(), base.degree());
    for (int c = 0; c < k; ++c) {
        RatMat m = span0;
        for (int r = 0; r < span0.rows(); ++r) m.at(r, c) = spand.at(r, c);
        acc = acc + pullback_linear(a, m);
    }
    return acc - base.scaled(Rational(k - a.degree()));
}

}  // namespace

int cayley_linearization_rank(const Spin7Model& m) {
    if (!m.metric.is_euclidean())
        throw std::invalid_argument("cayley_linearization_rank: supported on the standard model");
    // graph chart around R^4_1: span(t) = [I4; t M]; first-order residuals of
    // i_v(Omega)|_P - *_P(v#|_P) over all 8 basis vectors v. The induced
    // metric is Id + O(t^2), so the star side only sees the linear variation
    // of the restricted covector.
    RatMat span0(8, 4);
    for (int a = 0; a < 4; ++a) span0.at(a, a) = Rational(1);
    auto masks3 = monomial_masks(4, 3);
    RatMat jac(8 * 4, 16);
    for (int dir = 0; dir < 16; ++dir) {
        int a = dir / 4, b = dir % 4;
        RatMat spand(8, 4);
        spand.at(4 + a, b) = Rational(1);
        int row = 0;
        for (int vi = 0; vi < 8; ++vi) {
            std::vector<Rational> v(8);
            v[vi] = Rational(1);
            KForm dres = restriction_derivative(contract(v, m.omega), span0, spand);
            KForm cov(4, 1);
            for (int c = 0; c < 4; ++c) cov.add_term(IndexMask(1) << c, spand.at(vi, c));
            KForm resid = dres - hodge_star(cov, +1);
            for (IndexMask mk : masks3) jac.at(row++, dir) = resid.coeff(mk);
        }
    }
    return rank(std::move(jac));
}

KForm reconstruct_from_seven_part(const Spin7Model& m) {
    auto dec = project2_operators(m);
    const RatMat& p7 = dec.projector[0];
    // orthonormality is taken in the metric-free pairing the identity itself
    // fixes, <a,b> = (a ∧ b ∧ Omega) / (Omega ∧ Omega); it is positive
    // definite on the 7-part, and the unit normalisation 1/<theta,theta> is
    // folded into each wedge square to stay rational
    Rational om2 = wedge(m.omega, m.omega).coeff(IndexMask(0xFF));
    auto pair = [&](const KForm& a, const KForm& b) {
        return wedge(wedge(a, b), m.omega).coeff(IndexMask(0xFF)) / om2;
    };
    auto pivots = pivot_columns(p7);
    std::vector<KForm> basis;
    for (int c : pivots) {
        KForm v(8, 2);
        for (size_t r = 0; r < dec.basis.size(); ++r) v.add_term(dec.basis[r], p7.at(int(r), c));
        for (const auto& b : basis) v = v - b.scaled(pair(v, b) / pair(b, b));
        if (!v.is_zero()) basis.push_back(v);
    }
    KForm acc(8, 4);
    for (const auto& th : basis) acc = acc + wedge(th, th).scaled(Rational(1) / pair(th, th));
    return acc;
}

// ---- positive 3-forms ----

MetricFrom3Form metric_from_3form(const KForm& phi) {
    if (phi.dim() != 7 || phi.degree() != 3)
        throw std::invalid_argument("metric_from_3form: need a 3-form on R^7");
    MetricFrom3Form out;
    IndexMask full = IndexMask((1 << 7) - 1);
    out.b = RatMat(7, 7);
    std::vector<KForm> contractions;
    for (int i = 0; i < 7; ++i) {
        std::vector<Rational> e(7);
        e[i] = Rational(1);
        contractions.push_back(contract(e, phi));
    }
    for (int i = 0; i < 7; ++i)
        for (int j = i; j < 7; ++j) {
            Rational c = wedge(wedge(contractions[i], contractions[j]), phi).coeff(full);
            out.b.at(i, j) = c;
            out.b.at(j, i) = c;
        }
    out.positive = is_positive_definite(out.b);
    if (!out.positive) return out;

    // b = 6 g sqrt(det g) forces sqrt(det g) = (det b / 6^7)^{1/9}
    Rational d = det(out.b) / Rational::pow(Rational(6), 7);
    auto w = exact_nth_root(d, 9);
    double wd = std::pow(d.to_double(), 1.0 / 9.0);
    out.g_approx.assign(7, std::vector<double>(7));
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) out.g_approx[i][j] = out.b.at(i, j).to_double() / (6.0 * wd);
    if (w) {
        out.exact = true;
        out.volume_scale = *w;
        out.g = Metric{7, out.b.scaled(Rational(1) / (Rational(6) * *w))};
        out.g.validate();
    }
    return out;
}

// ---- taming ----

namespace {

std::vector<KForm> basis_of_21_part(const TwoFormDecomposition& dec) {
    const RatMat& p21 = dec.projector[1];
    auto pivots = pivot_columns(p21);
    std::vector<KForm> basis;
    for (int c : pivots) {
        KForm v(8, 2);
        for (size_t r = 0; r < dec.basis.size(); ++r) v.add_term(dec.basis[r], p21.at(int(r), c));
        basis.push_back(v);
    }
    return basis;
}

}  // namespace

TamingCertificate taming_check(const KForm& omega_prime, const Spin7Model& m,
                               int cayley_samples, uint64_t seed) {
    if (omega_prime.dim() != 8 || omega_prime.degree() != 4)
        throw std::invalid_argument("taming_check: need a 4-form on R^8");
    TamingCertificate cert;
    cert.seed = seed;
    cert.cayley_samples = cayley_samples;
    auto dec = project2_operators(m);
    auto basis = basis_of_21_part(dec);
    int n = int(basis.size());
    cert.gram_q = RatMat(n, n);
    cert.gram_norm = RatMat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Rational q = wedge(wedge(basis[i], basis[j]), omega_prime).coeff(IndexMask(0xFF)) /
                         m.volume_scale;
            cert.gram_q.at(i, j) = q;
            cert.gram_q.at(j, i) = q;
            Rational g = inner(basis[i], basis[j]);
            cert.gram_norm.at(i, j) = g;
            cert.gram_norm.at(j, i) = g;
        }
    cert.negative_definite = is_negative_definite(cert.gram_q);
    cert.self_taming_exact = (cert.gram_q == cert.gram_norm.scaled(Rational(-1)));

    Prng rng(seed);
    cert.cayley_positive = cayley_samples > 0;
    bool first = true;
    for (int s = 0; s < cayley_samples; ++s) {
        OrientedPlane p = random_cayley_plane(rng);
        Rational c = restrict_to(omega_prime, p).coeff(IndexMask(0x0F));
        if (c.sign() <= 0) cert.cayley_positive = false;
        double val = c.to_double() / std::sqrt(p.gram_det().to_double());
        if (first || val < cert.min_cayley_value) cert.min_cayley_value = val;
        first = false;
    }
    cert.tamed = cert.negative_definite && cert.cayley_positive;
    return cert;
}

TamingCertificate taming_check(const KForm& phi_prime, const KForm& sigma_prime,
                               const G2Model& m, int cayley_samples, uint64_t seed) {
    if (phi_prime.dim() != 7 || phi_prime.degree() != 3 || sigma_prime.dim() != 7 ||
        sigma_prime.degree() != 4)
        throw std::invalid_argument("taming_check: need a (3-form, 4-form) pair on R^7");
    KForm lifted = embed_7to8(sigma_prime) + wedge(embed_7to8(phi_prime), KForm::monomial(8, {8}));
    return taming_check(lifted, cylinder_lift_7to8(m), cayley_samples, seed);
}

// ---- SU(3) ----

Su3Verdict su3_check(const KForm& omega, const KForm& rho) {
    if (omega.dim() != 6 || omega.degree() != 2 || rho.dim() != 6 || rho.degree() != 3)
        throw std::invalid_argument("su3_check: need a 2-form and a 3-form on R^6");
    Su3Verdict v;
    IndexMask full = IndexMask((1 << 6) - 1);
    v.k_endo = RatMat(6, 6);
    for (int j = 0; j < 6; ++j) {
        std::vector<Rational> ej(6);
        ej[j] = Rational(1);
        KForm xi = wedge(contract(ej, rho), rho);
        for (int i = 0; i < 6; ++i) {
            Rational c = xi.coeff(IndexMask(full & ~(1 << i)));
            // Λ^5 -> V via i_u vol = xi; the overall orientation is frozen so
            // that the standard pair passes the positivity test below
            v.k_endo.at(i, j) = Rational((i % 2 == 0) ? -1 : 1) * c;
        }
    }
    RatMat k2 = v.k_endo * v.k_endo;
    Rational tr(0);
    for (int i = 0; i < 6; ++i) tr += k2.at(i, i);
    v.lambda = tr / Rational(6);
    if (k2 != RatMat::identity(6).scaled(v.lambda)) return v;  // degenerate shape
    v.rho_positive = v.lambda.sign() < 0;
    v.omega_rho_zero = wedge(omega, rho).is_zero();
    if (v.rho_positive) {
        auto s = exact_sqrt(-v.lambda);
        if (s) {
            v.cx_exact = true;
            v.cx = v.k_endo.scaled(Rational(1) / *s);
        }
        // omega(., K.) = sqrt(-lambda) omega(., I.): same definiteness
        RatMat w = omega_compose(omega, v.k_endo);
        v.omega_positive = w.is_symmetric() && is_positive_definite(w);
    }
    v.pass = v.rho_positive && v.omega_rho_zero && v.omega_positive;
    return v;
}

// ---- random planes and 21-part forms ----

OrientedPlane random_rational_plane(Prng& rng, int ambient_dim, int k) {
    OrientedPlane p;
    p.ambient_dim = ambient_dim;
    p.orientation = 1;
    for (int attempt = 0; attempt < 64; ++attempt) {
        p.span = RatMat(ambient_dim, k);
        for (int i = 0; i < ambient_dim; ++i)
            for (int j = 0; j < k; ++j) p.span.at(i, j) = Rational(rng.integer(-3, 3));
        if (rank(p.span) == k) return p;
    }
    throw std::runtime_error("random_rational_plane: could not build a full-rank plane");
}

KForm random_21_part_form(Prng& rng, const Spin7Model& m, const TwoFormDecomposition& dec) {
    (void)m;
    KForm a(8, 2);
    for (IndexMask mk : dec.basis) a.add_term(mk, rng.rational(4, 2));
    return apply_two_form_operator(dec.projector[1], a, dec.basis);
}

}  // namespace holonov
