#include "holonov/linalg.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace holonov {

RatMat RatMat::identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
}

RatMat RatMat::diagonal(const std::vector<Rational>& d) {
    RatMat m(int(d.size()), int(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(int(i), int(i)) = d[i];
    return m;
}

RatMat RatMat::transpose() const {
    RatMat t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

RatMat operator*(const RatMat& a, const RatMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("RatMat: dimension mismatch in product");
    RatMat out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j) {
                if (b.at(k, j).is_zero()) continue;
                out.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        }
    return out;
}

RatMat operator+(const RatMat& a, const RatMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("RatMat: dimension mismatch in sum");
    RatMat out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j) + b.at(i, j);
    return out;
}

RatMat operator-(const RatMat& a, const RatMat& b) {
    return a + b.scaled(Rational(-1));
}

RatMat RatMat::scaled(const Rational& s) const {
    RatMat out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j) * s;
    return out;
}

bool operator==(const RatMat& a, const RatMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a.at(i, j) != b.at(i, j)) return false;
    return true;
}

std::vector<Rational> RatMat::apply(const std::vector<Rational>& v) const {
    if (int(v.size()) != cols_) throw std::invalid_argument("RatMat::apply: size mismatch");
    std::vector<Rational> out(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero()) out[i] += at(i, j) * v[j];
    return out;
}

bool RatMat::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool RatMat::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

int rank(RatMat m) {
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m.at(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = c; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
        Rational inv = Rational(1) / m.at(r, c);
        for (int i = r + 1; i < m.rows(); ++i) {
            if (m.at(i, c).is_zero()) continue;
            Rational f = m.at(i, c) * inv;
            for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        ++r;
    }
    return r;
}

Rational det(RatMat m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: not square");
    int n = m.rows();
    Rational d(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (!m.at(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) return Rational(0);
        if (piv != c) {
            for (int j = c; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
            d = -d;
        }
        d *= m.at(c, c);
        Rational inv = Rational(1) / m.at(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (m.at(i, c).is_zero()) continue;
            Rational f = m.at(i, c) * inv;
            for (int j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
        }
    }
    return d;
}

RatMat inverse(const RatMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
    int n = m.rows();
    RatMat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = Rational(1);
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (!aug.at(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) throw std::invalid_argument("inverse: singular matrix");
        if (piv != c)
            for (int j = 0; j < 2 * n; ++j) std::swap(aug.at(piv, j), aug.at(c, j));
        Rational inv = Rational(1) / aug.at(c, c);
        for (int j = 0; j < 2 * n; ++j) aug.at(c, j) *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == c || aug.at(i, c).is_zero()) continue;
            Rational f = aug.at(i, c);
            for (int j = 0; j < 2 * n; ++j) aug.at(i, j) -= f * aug.at(c, j);
        }
    }
    RatMat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
    return out;
}

std::vector<int> pivot_columns(RatMat m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m.at(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = c; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
        Rational inv = Rational(1) / m.at(r, c);
        for (int i = r + 1; i < m.rows(); ++i) {
            if (m.at(i, c).is_zero()) continue;
            Rational f = m.at(i, c) * inv;
            for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

bool is_positive_definite(const RatMat& sym) {
    if (!sym.is_symmetric()) throw std::invalid_argument("is_positive_definite: matrix not symmetric");
    // Gaussian elimination without pivoting: positive definite iff every pivot
    // stays positive (equivalent to Sylvester's criterion).
    RatMat m = sym;
    int n = m.rows();
    for (int c = 0; c < n; ++c) {
        if (m.at(c, c).sign() <= 0) return false;
        Rational inv = Rational(1) / m.at(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (m.at(i, c).is_zero()) continue;
            Rational f = m.at(i, c) * inv;
            for (int j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
        }
    }
    return true;
}

Rational minor_det(const RatMat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    if (rows.size() != cols.size()) throw std::invalid_argument("minor_det: shape mismatch");
    RatMat sub(int(rows.size()), int(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) sub.at(int(i), int(j)) = m.at(rows[i], cols[j]);
    return det(std::move(sub));
}

int rank_complex(const std::vector<std::vector<Cplx>>& m, double rel_tol) {
    if (m.empty() || m[0].empty()) return 0;
    Eigen::MatrixXcd a(m.size(), m[0].size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[0].size(); ++j) a(long(i), long(j)) = m[i][j];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto& s = svd.singularValues();
    if (s.size() == 0) return 0;
    // absolute floor of 1: a numerically-zero matrix (entries ~ machine eps)
    // must rank 0, not inherit rank from its own rounding noise
    double thresh = std::max(s(0), 1.0) * rel_tol;
    int r = 0;
    for (long i = 0; i < s.size(); ++i)
        if (s(i) > thresh) ++r;
    return r;
}

std::vector<double> symmetric_eigenvalues(const std::vector<std::vector<double>>& m) {
    const long n = long(m.size());
    Eigen::MatrixXd a(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) a(i, j) = m[i][j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    std::vector<double> ev(n);
    for (long i = 0; i < n; ++i) ev[i] = es.eigenvalues()(i);
    return ev;
}

std::vector<Cplx> solve_least_squares(const std::vector<std::vector<Cplx>>& a, const std::vector<Cplx>& b) {
    Eigen::MatrixXcd m(a.size(), a.empty() ? 0 : a[0].size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) m(long(i), long(j)) = a[i][j];
    Eigen::VectorXcd v(b.size());
    for (size_t i = 0; i < b.size(); ++i) v(long(i)) = b[i];
    Eigen::VectorXcd x = m.colPivHouseholderQr().solve(v);
    std::vector<Cplx> out(x.size());
    for (long i = 0; i < x.size(); ++i) out[i] = x(i);
    return out;
}

}  // namespace holonov
