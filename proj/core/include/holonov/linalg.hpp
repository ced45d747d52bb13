// linalg.hpp -- dense exact-rational matrices and the float-layer helpers.

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "holonov/rational.hpp"

namespace holonov {

class RatMat {
public:
    RatMat() : rows_(0), cols_(0) {}
    RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static RatMat identity(int n);
    static RatMat diagonal(const std::vector<Rational>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
    const Rational& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

    RatMat transpose() const;
    friend RatMat operator*(const RatMat& a, const RatMat& b);
    friend RatMat operator+(const RatMat& a, const RatMat& b);
    friend RatMat operator-(const RatMat& a, const RatMat& b);
    RatMat scaled(const Rational& s) const;
    friend bool operator==(const RatMat& a, const RatMat& b);

    std::vector<Rational> apply(const std::vector<Rational>& v) const;

    bool is_symmetric() const;
    bool is_zero() const;

private:
    int rows_, cols_;
    std::vector<Rational> a_;
};

// rank over Q, exact Gaussian elimination
int rank(RatMat m);

Rational det(RatMat m);

// inverse; throws std::invalid_argument if singular
RatMat inverse(const RatMat& m);

// column indices of a pivot basis of the column space
std::vector<int> pivot_columns(RatMat m);

// Sylvester: all leading principal minors positive. Exact.
bool is_positive_definite(const RatMat& sym);
inline bool is_negative_definite(const RatMat& sym) { return is_positive_definite(sym.scaled(Rational(-1))); }

// submatrix determinant, rows/cols are index lists
Rational minor_det(const RatMat& m, const std::vector<int>& rows, const std::vector<int>& cols);

// ---- float layer ----

using Cplx = std::complex<double>;

// rank of a complex matrix with a relative singular threshold
int rank_complex(const std::vector<std::vector<Cplx>>& m, double rel_tol = 1e-9);

// eigenvalues of a real symmetric matrix, ascending
std::vector<double> symmetric_eigenvalues(const std::vector<std::vector<double>>& m);

// least-squares solve A x = b for complex dense A (used for coker frame maps)
std::vector<Cplx> solve_least_squares(const std::vector<std::vector<Cplx>>& a, const std::vector<Cplx>& b);

}  // namespace holonov
