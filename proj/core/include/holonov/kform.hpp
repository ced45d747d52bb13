// kform.hpp -- exact alternating k-forms on R^n (n <= 9) with constant
// rational coefficients: wedge, contraction, Hodge star, restriction,
// pullback. Monomials are keyed by index bitmasks, kept sorted and
// zero-free so equality is plain map equality.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "holonov/linalg.hpp"
#include "holonov/rational.hpp"

namespace holonov {

using IndexMask = uint16_t;

int mask_degree(IndexMask m);

// sign of e^a ∧ e^b when a, b are disjoint masks; 0 if they intersect
int wedge_sign(IndexMask a, IndexMask b);

std::vector<int> mask_indices(IndexMask m);  // 1-based, ascending
IndexMask indices_to_mask(const std::vector<int>& idx, int dim, int* sign_out = nullptr);

class KForm {
public:
    KForm() : dim_(1), degree_(0) {}
    KForm(int dim, int degree);

    static KForm zero(int dim, int degree) { return KForm(dim, degree); }
    static KForm scalar(int dim, const Rational& c);
    // e.g. monomial(8, {1,2,5}, 1) = e^{125}; indices may be unsorted, the
    // antisymmetric sign is folded into the coefficient
    static KForm monomial(int dim, std::initializer_list<int> idx, Rational c = Rational(1));
    static KForm monomial(int dim, const std::vector<int>& idx, Rational c = Rational(1));

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    const std::map<IndexMask, Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    size_t term_count() const { return coeffs_.size(); }
    Rational coeff(IndexMask m) const;

    void add_term(IndexMask m, const Rational& c);

    KForm operator-() const;
    friend KForm operator+(const KForm& a, const KForm& b);
    friend KForm operator-(const KForm& a, const KForm& b);
    KForm scaled(const Rational& s) const;
    friend bool operator==(const KForm& a, const KForm& b);
    friend bool operator!=(const KForm& a, const KForm& b) { return !(a == b); }

    // coefficient vector in the monomial basis, masks ascending
    std::vector<Rational> dense(const std::vector<IndexMask>& basis) const;

    std::string str() const;  // e.g. "e{1,2} - 2 e{3,4}"

private:
    int dim_, degree_;
    std::map<IndexMask, Rational> coeffs_;
};

// all degree-k masks on dim coordinates, ascending
std::vector<IndexMask> monomial_masks(int dim, int k);

KForm wedge(const KForm& a, const KForm& b);
KForm contract(const std::vector<Rational>& v, const KForm& a);

// module norm on forms: <a,b> = sum over monomials of a_I * b_I
Rational inner(const KForm& a, const KForm& b);

struct Metric {
    int dim;
    RatMat g;  // symmetric positive definite

    static Metric euclidean(int dim);
    bool is_euclidean() const;
    void validate() const;  // throws if not symmetric positive definite
};

// Hodge star for the metric g (orientation = sign of e^{1..n} as volume).
// Needs sqrt(det g) to be rational; Euclidean and pulled-back-by-rational-
// isometry metrics qualify. Throws otherwise.
KForm hodge_star(const KForm& a, const Metric& g, int orientation = +1);
KForm hodge_star(const KForm& a, int orientation = +1);  // Euclidean

// pullback by a square matrix: (A*a)(v1..vk) = a(Av1,..,Avk)
KForm pullback(const KForm& a, const RatMat& A);

// pullback along an arbitrary linear map R^m -> R^n given by an n x m matrix
KForm pullback_linear(const KForm& a, const RatMat& A);

// derivative of t -> pullback(a, I + tA) at t = 0 (linearised GL action)
KForm derivation_action(const KForm& a, const RatMat& A);

struct OrientedPlane {
    int ambient_dim = 0;
    RatMat span;          // ambient_dim x k, columns span the plane
    int orientation = 1;  // sign attached to the given column order

    int k() const { return span.cols(); }
    void validate() const;  // throws if columns are dependent
    // Gram determinant det(span^T span); vol_P = sqrt of this
    Rational gram_det() const;
};

// restriction of a to the plane, in the plane's induced coordinates
KForm restrict_to(const KForm& a, const OrientedPlane& P);

}  // namespace holonov
