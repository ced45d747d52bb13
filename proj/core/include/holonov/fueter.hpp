// fueter.hpp -- floating-point toy analysis: the flat quaternionic Dirac
// operator i d1 + j d2 + k d3 on a periodic N^3 lattice (central
// differences, left multiplication), its square identity, kernel dimension,
// eigenpair residuals, and spectral flow of self-adjoint matrix families.

#pragma once

#include <array>
#include <vector>

#include "holonov/linalg.hpp"
#include "holonov/prng.hpp"

namespace holonov {

struct Quaternion {
    double w = 0, x = 0, y = 0, z = 0;  // 1, i, j, k

    friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }
    Quaternion scaled(double s) const { return {w * s, x * s, y * s, z * s}; }
    double norm2() const { return w * w + x * x + y * y + z * z; }
    double abs_max() const;

    static Quaternion unit(int idx);  // 0 -> 1, 1 -> i, 2 -> j, 3 -> k
};

class QuaternionField {
public:
    explicit QuaternionField(int n);

    int n() const { return n_; }
    double spacing() const { return 1.0 / n_; }
    size_t sites() const { return data_.size(); }

    // periodic indexing, any integers accepted
    Quaternion& at(int i, int j, int k);
    const Quaternion& at(int i, int j, int k) const;
    Quaternion& site(size_t s) { return data_[s]; }
    const Quaternion& site(size_t s) const { return data_[s]; }

    double max_norm() const;  // sup over sites of the max component
    double l2_norm() const;

    static QuaternionField random(int n, Prng& rng);

private:
    int n_;
    std::vector<Quaternion> data_;
};

// D f = e_{u1} d_1 f + e_{u2} d_2 f + e_{u3} d_3 f with central differences,
// periodic boundary, and left multiplication by the chosen imaginary units
QuaternionField fueter_apply(const QuaternionField& f,
                             const std::array<int, 3>& units = {1, 2, 3});

// || D(D f) + Delta_2 f ||_inf, where Delta_2 is the double-spacing Laplacian
double fueter_square_residual(const QuaternionField& f,
                              const std::array<int, 3>& units = {1, 2, 3});

// dim ker(D) on the N^3 torus, from the exact discrete symbol; N must be odd
// (even N has spurious Nyquist zeros and is refused)
int kernel_dimension(int n);

// dense oracle: assemble the realified operator and count near-zero
// eigenvalues; small n only
int kernel_dimension_dense(int n, double tol = 1e-8);

// ||D f - lambda f||_2 / ||f||_2; throws on the zero field
double nonlinear_eigen_residual(const QuaternionField& f, double lambda,
                                const std::array<int, 3>& units = {1, 2, 3});

struct EigenPair {
    double lambda = 0;
    QuaternionField field;
    double residual = 0;
    int iterations = 0;
};

// shifted power iteration on the assembled operator; deterministic per seed
EigenPair dominant_eigenpair(int n, uint64_t seed, double target_residual = 1e-9,
                             int max_iterations = 50000);

// ---- spectral flow ----

struct SelfAdjointFamily {
    std::vector<double> grid;  // parameter values, strictly increasing
    // one matrix per grid point; real symmetric or complex Hermitian
    std::vector<std::vector<std::vector<Cplx>>> matrices;
    // eigenvalues cross zero in groups of this size; 1 for generic families,
    // 2 for realified complex-linear ones (every eigenvalue is doubled)
    int crossing_multiplicity = 1;

    int dim() const { return matrices.empty() ? 0 : int(matrices[0].size()); }
    void validate(double hermiticity_tol = 1e-12) const;
};

struct SpectralFlowResult {
    int flow = 0;            // signed count of eigenvalue sign changes
    int crossings = 0;       // unsigned count after refinement
    int refinements = 0;
};

// counts signed eigenvalue crossings along the family, refining (by linear
// interpolation between grid matrices) until every step moves at most one
// eigenvalue across zero; refuses endpoints with near-zero eigenvalues
SpectralFlowResult spectral_flow(const SelfAdjointFamily& fam, double zero_tol = 1e-10);

// realification of a complex Hermitian family: every eigenvalue doubled
SelfAdjointFamily realify(const SelfAdjointFamily& hermitian);

std::vector<double> hermitian_eigenvalues(const std::vector<std::vector<Cplx>>& m);

}  // namespace holonov
