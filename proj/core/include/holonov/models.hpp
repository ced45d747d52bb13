// models.hpp -- flat exceptional-holonomy models and their algebra: the
// standard 4-form on R^8, the (phi, sigma) pair on R^7, the SU(3) triple on
// R^6, 2-form decomposition projectors, calibrated-plane classifiers,
// taming certificates, positive-form tests and metric reconstruction.
//
// Coordinate conventions (frozen; every identity is checked exactly by the
// test suite):
//   R^8: (x1,x2,x3,x4,y1,y2,y3,y4), oriented by dx1234 ∧ dy1234.
//   R^7: (y1,y2,y3,x1,x2,x3,x4), oriented by dy123 ∧ dx1234.
//   R^6: (y2,y3,x1,x2,x3,x4); s = y1 is the 6->7 cylinder coordinate and
//   t = y4 the 7->8 one, so both lifts are symbol-exact.
// The self-dual reference basis is w1 = -(dx1dx2 + dx3dx4),
// w2 = -(dx1dx3 - dx2dx4), w3 = -(dx1dx4 + dx2dx3); with these,
// phi0 = sum dyi ∧ wi + dy123 is positive with identity metric,
// sigma0 = *phi0 = sum_cyclic wi ∧ dyj ∧ dyk + dx1234, and
// omega0 = dx1234 + dy1234 + sum wi ∧ w'i with w'i = dyi dy4 + dyj dyk.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "holonov/kform.hpp"
#include "holonov/prng.hpp"

namespace holonov {

struct Spin7Model {
    KForm omega;            // 4-form on R^8
    RatMat provenance;      // GL+(8) matrix P with omega = pullback(omega0, P)
    Metric metric;          // P^T P
    Rational volume_scale;  // det P; volume form = scale * e^{1..8}

    void validate() const;
};

struct G2Model {
    KForm phi;    // 3-form on R^7
    KForm sigma;  // 4-form on R^7, = *phi under the derived metric
    RatMat provenance;  // GL+(7) matrix with phi = pullback(phi0, P)
    Metric metric;
    Rational volume_scale;

    void validate() const;
};

struct SU3Model {
    KForm rho1, rho2;   // 3-forms on R^6
    KForm omega;        // 2-form on R^6
    RatMat cx;          // almost-complex structure I, cx * cx = -Id
    RatMat provenance;  // GL+(6) matrix with rho1 = pullback(rho1_0, P)

    // The complex-structure relation between the pair of 3-forms: with the
    // positivity-normalised I this is rho2 == pullback(rho1, I), i.e.
    // rho2 = -(I acting on one slot of rho1).
    void validate() const;
};

struct StandardModels {
    Spin7Model spin7;
    G2Model g2;
    SU3Model su3;
};

// the flat models of the frozen conventions above; all cross-relations exact
const StandardModels& standard_models();

// normalization constant in sigma = rho2 ∧ ds + c * omega ∧ omega
const Rational& omega_squared_constant();  // = 1/2

// constructed-by-orbit models
Spin7Model spin7_from_provenance(const RatMat& p);
G2Model g2_from_provenance(const RatMat& p);
SU3Model su3_from_provenance(const RatMat& p);

Spin7Model cylinder_lift_7to8(const G2Model& m);
G2Model cylinder_lift_6to7(const SU3Model& m);

// ---- 2-form decompositions ----

// projector matrices on the monomial basis of Λ², with component ranks
// dim 8 -> {7, 21}; dim 7 -> {7, 14}; dim 6 -> {1, 6, 8}
struct TwoFormDecomposition {
    std::vector<IndexMask> basis;   // monomial masks of Λ²
    std::vector<RatMat> projector;  // idempotent, mutually annihilating
    std::vector<int> ranks;
};

TwoFormDecomposition project2_operators(const Spin7Model& m);
TwoFormDecomposition project2_operators(const G2Model& m);
TwoFormDecomposition project2_operators(const SU3Model& m);

std::vector<KForm> project2(const KForm& beta, const TwoFormDecomposition& dec);

KForm apply_two_form_operator(const RatMat& op, const KForm& beta,
                              const std::vector<IndexMask>& basis);

// ---- calibrated plane classification ----

enum class PlaneClass { cayley, associative, coassociative, none };

struct PlaneVerdict {
    PlaneClass cls = PlaneClass::none;
    std::vector<Rational> defect;  // residual coefficients; all zero iff classified
};

const char* plane_class_name(PlaneClass c);

PlaneVerdict classify_plane(const OrientedPlane& p, const Spin7Model& m);
PlaneVerdict classify_plane(const OrientedPlane& p, const G2Model& m);

// contraction characterisation of Cayley planes, i_v(Omega)|_P = *_P(v#|_P)
// for all basis vectors v, checked exactly via signed squares
bool cayley_contraction_test(const OrientedPlane& p, const Spin7Model& m);

// ---- identities and rank checks ----

// alpha ∧ alpha ∧ Omega + |alpha|^2 vol after projecting alpha to the
// 21-dimensional component; exactly zero for every input
KForm energy_identity_residual(const KForm& alpha, const Spin7Model& m);
KForm energy_identity_residual(const KForm& alpha, const Spin7Model& m,
                               const TwoFormDecomposition& dec);

struct OrbitRankReport {
    int linearized_rank = 0;  // rank of A -> d/dt pullback(form, e^{tA}) at 0
    int gl_dim = 0;           // n^2
    int form_space_dim = 0;
};

OrbitRankReport orbit_rank(const KForm& form);

// rank of the linearised Cayley condition at R^4_1 (codimension of the
// Cayley locus inside the 16-dimensional graph chart)
int cayley_linearization_rank(const Spin7Model& m);

// Omega reconstructed as (sum theta_i^2)/7 from an exact orthogonal basis
// of the 7-part, then normalised; compares equal to the model form
KForm reconstruct_from_seven_part(const Spin7Model& m);

// ---- positive forms and metrics ----

struct MetricFrom3Form {
    bool positive = false;
    // b(u,v) = coefficient of (i_u phi) ∧ (i_v phi) ∧ phi on e^{1..7}
    RatMat b;
    bool exact = false;     // normaliser (det b / 6^7)^{1/9} is rational
    Metric g;               // valid when exact
    Rational volume_scale;  // vol_g = volume_scale * e^{1..7}, when exact
    std::vector<std::vector<double>> g_approx;  // populated whenever positive
};

MetricFrom3Form metric_from_3form(const KForm& phi);

// ---- taming ----

struct TamingCertificate {
    RatMat gram_q;     // Gram of q(a) = coefficient of a∧a∧Omega' on the volume
    RatMat gram_norm;  // Gram of the module norm on the same 21-part basis
    bool negative_definite = false;
    bool self_taming_exact = false;  // gram_q == -gram_norm
    bool cayley_positive = false;
    int cayley_samples = 0;
    uint64_t seed = 0;
    double min_cayley_value = 0.0;
    bool tamed = false;
};

TamingCertificate taming_check(const KForm& omega_prime, const Spin7Model& m,
                               int cayley_samples, uint64_t seed);

// dim-7 candidate pair (phi', sigma'), lifted to sigma' + phi' ∧ dt on the
// cylinder and tested against the lifted model
TamingCertificate taming_check(const KForm& phi_prime, const KForm& sigma_prime,
                               const G2Model& m, int cayley_samples, uint64_t seed);

// ---- SU(3) structure test ----

struct Su3Verdict {
    bool rho_positive = false;  // lambda(rho) < 0
    bool omega_rho_zero = false;
    bool omega_positive = false;  // omega(., I.) positive definite
    bool pass = false;
    Rational lambda;  // tr(K^2)/6
    RatMat k_endo;    // K(v) = A((i_v rho) ∧ rho)
    bool cx_exact = false;  // sqrt(-lambda) rational
    RatMat cx;              // I = K / sqrt(-lambda), when exact
};

Su3Verdict su3_check(const KForm& omega, const KForm& rho);

// ---- exact Cayley-plane generator ----

// mixed complex structures J in spin(7) (J^2 = -Id, *(J_form ∧ Omega0) = -J_form)
const std::vector<RatMat>& spin7_mixed_complex_structures();

// exact rational element of Spin(7): product of rational rotations
// ((1-s^2)Id + 2sJ)/(1+s^2) for frozen J's and random rational s
RatMat random_spin7_rotation(Prng& rng);

// exact Cayley 4-plane: rotated image of a quaternionic graph {(x, x q)}
OrientedPlane random_cayley_plane(Prng& rng);

// seeded random rational plane (small integer entries, full rank)
OrientedPlane random_rational_plane(Prng& rng, int ambient_dim, int k);

// random rational 2-form supported on the 21-part of the model
KForm random_21_part_form(Prng& rng, const Spin7Model& m, const TwoFormDecomposition& dec);

}  // namespace holonov
