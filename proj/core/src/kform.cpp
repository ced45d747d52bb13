#include "holonov/kform.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace holonov {

int mask_degree(IndexMask m) { return std::popcount(m); }

int wedge_sign(IndexMask a, IndexMask b) {
    if (a & b) return 0;
    // count inversions: pairs (i in a, j in b) with i > j
    int inversions = 0;
    for (IndexMask bb = b; bb; bb &= (bb - 1)) {
        IndexMask low = IndexMask((bb & -bb) - 1);  // bits below the lowest bit of bb
        inversions += std::popcount(IndexMask(a & ~low)) ;
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

std::vector<int> mask_indices(IndexMask m) {
    std::vector<int> out;
    for (int i = 0; i < 16; ++i)
        if (m & (IndexMask(1) << i)) out.push_back(i + 1);
    return out;
}

IndexMask indices_to_mask(const std::vector<int>& idx, int dim, int* sign_out) {
    IndexMask m = 0;
    int sign = 1;
    for (int i : idx) {
        if (i < 1 || i > dim) throw std::invalid_argument("index out of range");
        IndexMask bit = IndexMask(1) << (i - 1);
        if (m & bit) {
            if (sign_out) *sign_out = 0;
            return 0;
        }
        int s = wedge_sign(m, bit);
        // wedge_sign treats m as the left factor; appending index i
        sign *= s;
        m |= bit;
    }
    if (sign_out) *sign_out = sign;
    return m;
}

KForm::KForm(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 1 || dim > 9) throw std::invalid_argument("KForm: dim must be in 1..9");
    if (degree < 0 || degree > dim) throw std::invalid_argument("KForm: degree out of range");
}

KForm KForm::scalar(int dim, const Rational& c) {
    KForm f(dim, 0);
    f.add_term(0, c);
    return f;
}

KForm KForm::monomial(int dim, std::initializer_list<int> idx, Rational c) {
    return monomial(dim, std::vector<int>(idx), std::move(c));
}

KForm KForm::monomial(int dim, const std::vector<int>& idx, Rational c) {
    KForm f(dim, int(idx.size()));
    int sign = 1;
    IndexMask m = indices_to_mask(idx, dim, &sign);
    if (sign == 0) return f;  // repeated index
    f.add_term(m, sign > 0 ? c : -c);
    return f;
}

Rational KForm::coeff(IndexMask m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void KForm::add_term(IndexMask m, const Rational& c) {
    if (mask_degree(m) != degree_) throw std::invalid_argument("KForm::add_term: degree mismatch");
    if (c.is_zero()) return;
    auto it = coeffs_.find(m);
    if (it == coeffs_.end()) {
        coeffs_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

KForm KForm::operator-() const { return scaled(Rational(-1)); }

KForm operator+(const KForm& a, const KForm& b) {
    if (a.dim_ != b.dim_ || a.degree_ != b.degree_)
        throw std::invalid_argument("KForm: sum of mismatched forms");
    KForm out = a;
    for (const auto& [m, c] : b.coeffs_) out.add_term(m, c);
    return out;
}

KForm operator-(const KForm& a, const KForm& b) { return a + (-b); }

KForm KForm::scaled(const Rational& s) const {
    KForm out(dim_, degree_);
    if (s.is_zero()) return out;
    for (const auto& [m, c] : coeffs_) out.coeffs_.emplace(m, c * s);
    return out;
}

bool operator==(const KForm& a, const KForm& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
}

std::vector<Rational> KForm::dense(const std::vector<IndexMask>& basis) const {
    std::vector<Rational> out(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) out[i] = coeff(basis[i]);
    return out;
}

std::string KForm::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : coeffs_) {
        if (!first) os << (c.sign() < 0 ? " - " : " + ");
        else if (c.sign() < 0) os << "-";
        first = false;
        Rational a = c.abs();
        if (a != Rational(1) || m == 0) os << a.str() << (m == 0 ? "" : " ");
        if (m != 0) {
            os << "e{";
            auto idx = mask_indices(m);
            for (size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
            os << "}";
        }
    }
    return os.str();
}

std::vector<IndexMask> monomial_masks(int dim, int k) {
    std::vector<IndexMask> out;
    for (IndexMask m = 0; m < (IndexMask(1) << dim); ++m)
        if (mask_degree(m) == k) out.push_back(m);
    return out;
}

KForm wedge(const KForm& a, const KForm& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
    int deg = a.degree() + b.degree();
    if (deg > a.dim()) return KForm::zero(a.dim(), a.dim());  // degree overflow -> zero form
    KForm out(a.dim(), deg);
    for (const auto& [ma, ca] : a.coeffs())
        for (const auto& [mb, cb] : b.coeffs()) {
            int s = wedge_sign(ma, mb);
            if (s == 0) continue;
            out.add_term(IndexMask(ma | mb), s > 0 ? ca * cb : -(ca * cb));
        }
    return out;
}

KForm contract(const std::vector<Rational>& v, const KForm& a) {
    if (int(v.size()) != a.dim()) throw std::invalid_argument("contract: dimension mismatch");
    if (a.degree() == 0) return KForm::zero(a.dim(), 0);
    KForm out(a.dim(), a.degree() - 1);
    for (const auto& [m, c] : a.coeffs()) {
        int pos = 0;
        for (int i = 0; i < a.dim(); ++i) {
            IndexMask bit = IndexMask(1) << i;
            if (!(m & bit)) continue;
            if (!v[i].is_zero()) {
                Rational term = v[i] * c;
                out.add_term(IndexMask(m & ~bit), (pos % 2 == 0) ? term : -term);
            }
            ++pos;
        }
    }
    return out;
}

Rational inner(const KForm& a, const KForm& b) {
    if (a.dim() != b.dim() || a.degree() != b.degree())
        throw std::invalid_argument("inner: mismatched forms");
    Rational s(0);
    for (const auto& [m, c] : a.coeffs()) {
        Rational cb = b.coeff(m);
        if (!cb.is_zero()) s += c * cb;
    }
    return s;
}

Metric Metric::euclidean(int dim) { return Metric{dim, RatMat::identity(dim)}; }

bool Metric::is_euclidean() const { return g == RatMat::identity(dim); }

void Metric::validate() const {
    if (g.rows() != dim || g.cols() != dim) throw std::invalid_argument("Metric: shape mismatch");
    if (!g.is_symmetric()) throw std::invalid_argument("Metric: not symmetric");
    if (!is_positive_definite(g)) throw std::invalid_argument("Metric: not positive definite");
}

KForm hodge_star(const KForm& a, int orientation) {
    int n = a.dim();
    IndexMask full = IndexMask((1u << n) - 1);
    KForm out(n, n - a.degree());
    for (const auto& [m, c] : a.coeffs()) {
        IndexMask comp = IndexMask(full & ~m);
        int s = wedge_sign(m, comp) * orientation;
        out.add_term(comp, s > 0 ? c : -c);
    }
    return out;
}

KForm hodge_star(const KForm& a, const Metric& g, int orientation) {
    if (g.dim != a.dim()) throw std::invalid_argument("hodge_star: dimension mismatch");
    g.validate();
    if (g.is_euclidean()) return hodge_star(a, orientation);
    // beta ∧ *a = <beta, a>_g vol_g. The degree-k inner product uses minors of
    // g^{-1}; vol_g = sqrt(det g) e^{1..n} must be rational.
    auto v = exact_sqrt(det(g.g));
    if (!v) throw std::invalid_argument("hodge_star: sqrt(det g) not rational");
    RatMat ginv = inverse(g.g);
    int n = a.dim();
    int k = a.degree();
    IndexMask full = IndexMask((1u << n) - 1);
    KForm out(n, n - k);
    for (IndexMask I : monomial_masks(n, k)) {
        Rational pairing(0);  // <e^I, a>_g
        auto rows = mask_indices(I);
        for (auto& r : rows) --r;
        for (const auto& [J, cJ] : a.coeffs()) {
            auto cols = mask_indices(J);
            for (auto& c2 : cols) --c2;
            Rational d = minor_det(ginv, rows, cols);
            if (!d.is_zero()) pairing += d * cJ;
        }
        if (pairing.is_zero()) continue;
        IndexMask comp = IndexMask(full & ~I);
        int s = wedge_sign(I, comp) * orientation;
        Rational coeff = *v * pairing;
        out.add_term(comp, s > 0 ? coeff : -coeff);
    }
    return out;
}

KForm pullback_linear(const KForm& a, const RatMat& A) {
    if (A.rows() != a.dim()) throw std::invalid_argument("pullback: matrix rows != form dim");
    int m_dim = A.cols();
    int k = a.degree();
    if (k > m_dim) return KForm::zero(std::max(m_dim, 1), std::max(m_dim, 1));
    KForm out(m_dim, k);
    if (k == 0) {
        for (const auto& [m, c] : a.coeffs()) out.add_term(m, c);
        return out;
    }
    auto targets = monomial_masks(m_dim, k);
    for (IndexMask J : targets) {
        auto cols = mask_indices(J);
        for (auto& c : cols) --c;
        Rational acc(0);
        for (const auto& [I, cI] : a.coeffs()) {
            auto rows = mask_indices(I);
            for (auto& r : rows) --r;
            Rational d = minor_det(A, rows, cols);
            if (!d.is_zero()) acc += cI * d;
        }
        out.add_term(J, acc);
    }
    return out;
}

KForm pullback(const KForm& a, const RatMat& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("pullback: matrix not square");
    return pullback_linear(a, A);
}

KForm derivation_action(const KForm& a, const RatMat& A) {
    if (A.rows() != a.dim() || A.cols() != a.dim())
        throw std::invalid_argument("derivation_action: shape mismatch");
    int n = a.dim();
    KForm out(n, a.degree());
    // replace one covector at a time: e^i -> sum_j A_{ij} e^j
    for (const auto& [m, c] : a.coeffs()) {
        auto idx = mask_indices(m);
        for (size_t slot = 0; slot < idx.size(); ++slot) {
            int i = idx[slot];
            IndexMask rest = IndexMask(m & ~(IndexMask(1) << (i - 1)));
            int slot_sign = (slot % 2 == 0) ? 1 : -1;  // move e^i to the front
            for (int j = 1; j <= n; ++j) {
                const Rational& aij = A.at(i - 1, j - 1);
                if (aij.is_zero()) continue;
                IndexMask bit = IndexMask(1) << (j - 1);
                if (rest & bit) continue;
                int s = wedge_sign(bit, rest) * slot_sign;
                out.add_term(IndexMask(rest | bit), s > 0 ? c * aij : -(c * aij));
            }
        }
    }
    return out;
}

void OrientedPlane::validate() const {
    if (span.rows() != ambient_dim) throw std::invalid_argument("OrientedPlane: span shape mismatch");
    if (orientation != 1 && orientation != -1) throw std::invalid_argument("OrientedPlane: bad orientation");
    if (rank(span) != span.cols()) throw std::invalid_argument("OrientedPlane: degenerate span");
}

Rational OrientedPlane::gram_det() const {
    RatMat gt = span.transpose() * span;
    return det(gt);
}

KForm restrict_to(const KForm& a, const OrientedPlane& P) {
    if (P.ambient_dim != a.dim()) throw std::invalid_argument("restrict_to: ambient dim mismatch");
    P.validate();
    if (a.degree() > P.k()) {
        int kd = std::max(P.k(), 1);
        return KForm::zero(kd, std::min(a.degree(), kd));
    }
    KForm r = pullback_linear(a, P.span);
    return P.orientation > 0 ? r : -r;
}

}  // namespace holonov
