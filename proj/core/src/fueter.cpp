#include "holonov/fueter.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace holonov {

double Quaternion::abs_max() const {
    return std::max({std::abs(w), std::abs(x), std::abs(y), std::abs(z)});
}

Quaternion Quaternion::unit(int idx) {
    switch (idx) {
        case 0: return {1, 0, 0, 0};
        case 1: return {0, 1, 0, 0};
        case 2: return {0, 0, 1, 0};
        case 3: return {0, 0, 0, 1};
    }
    throw std::invalid_argument("Quaternion::unit: index 0..3");
}

QuaternionField::QuaternionField(int n) : n_(n) {
    if (n < 3 || n > 64) throw std::invalid_argument("QuaternionField: lattice size out of range");
    data_.assign(size_t(n) * size_t(n) * size_t(n), Quaternion{});
}

namespace {
inline int wrap(int i, int n) {
    int r = i % n;
    return r < 0 ? r + n : r;
}
}  // namespace

Quaternion& QuaternionField::at(int i, int j, int k) {
    return data_[size_t(wrap(i, n_)) + size_t(n_) * (size_t(wrap(j, n_)) + size_t(n_) * size_t(wrap(k, n_)))];
}

const Quaternion& QuaternionField::at(int i, int j, int k) const {
    return const_cast<QuaternionField*>(this)->at(i, j, k);
}

double QuaternionField::max_norm() const {
    double m = 0;
    for (const auto& q : data_) m = std::max(m, q.abs_max());
    return m;
}

double QuaternionField::l2_norm() const {
    double s = 0;
    for (const auto& q : data_) s += q.norm2();
    return std::sqrt(s);
}

QuaternionField QuaternionField::random(int n, Prng& rng) {
    QuaternionField f(n);
    for (size_t s = 0; s < f.sites(); ++s)
        f.site(s) = {rng.real(-1, 1), rng.real(-1, 1), rng.real(-1, 1), rng.real(-1, 1)};
    return f;
}

namespace {

void check_units(const std::array<int, 3>& units) {
    for (int u : units)
        if (u < 1 || u > 3) throw std::invalid_argument("fueter: units must be imaginary (1..3)");
    if (units[0] == units[1] || units[0] == units[2] || units[1] == units[2])
        throw std::invalid_argument("fueter: units must be distinct");
}

}  // namespace

QuaternionField fueter_apply(const QuaternionField& f, const std::array<int, 3>& units) {
    check_units(units);
    int n = f.n();
    double inv2h = double(n) / 2.0;  // 1/(2h), h = 1/n
    QuaternionField out(n);
    Quaternion e1 = Quaternion::unit(units[0]);
    Quaternion e2 = Quaternion::unit(units[1]);
    Quaternion e3 = Quaternion::unit(units[2]);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                Quaternion d1 = (f.at(i + 1, j, k) - f.at(i - 1, j, k)).scaled(inv2h);
                Quaternion d2 = (f.at(i, j + 1, k) - f.at(i, j - 1, k)).scaled(inv2h);
                Quaternion d3 = (f.at(i, j, k + 1) - f.at(i, j, k - 1)).scaled(inv2h);
                out.at(i, j, k) = e1 * d1 + e2 * d2 + e3 * d3;
            }
    return out;
}

double fueter_square_residual(const QuaternionField& f, const std::array<int, 3>& units) {
    QuaternionField ddf = fueter_apply(fueter_apply(f, units), units);
    int n = f.n();
    double inv4h2 = double(n) * double(n) / 4.0;  // 1/(2h)^2
    double worst = 0;
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                Quaternion lap =
                    (f.at(i + 2, j, k) + f.at(i - 2, j, k) + f.at(i, j + 2, k) + f.at(i, j - 2, k) +
                     f.at(i, j, k + 2) + f.at(i, j, k - 2) - f.at(i, j, k).scaled(6.0))
                        .scaled(inv4h2);
                worst = std::max(worst, (ddf.at(i, j, k) + lap).abs_max());
            }
    return worst;
}

int kernel_dimension(int n) {
    if (n < 3) throw std::invalid_argument("kernel_dimension: n too small");
    if (n % 2 == 0)
        throw std::invalid_argument(
            "kernel_dimension: even lattice sizes have spurious Nyquist symbol zeros; use odd n");
    // the symbol sum_a unit_a sin(2 pi k_a / n) / h vanishes iff every sine
    // does; sin(2 pi k / n) = 0 iff n divides 2k, i.e. k = 0 for odd n
    int zero_modes = 0;
    for (int k1 = 0; k1 < n; ++k1)
        for (int k2 = 0; k2 < n; ++k2)
            for (int k3 = 0; k3 < n; ++k3)
                if ((2 * k1) % n == 0 && (2 * k2) % n == 0 && (2 * k3) % n == 0) ++zero_modes;
    return 4 * zero_modes;
}

namespace {

// realified Fueter operator as a dense matrix (4 n^3 square)
Eigen::MatrixXd dense_operator(int n) {
    int sites = n * n * n;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4 * sites, 4 * sites);
    QuaternionField basis(n);
    for (int s = 0; s < sites; ++s)
        for (int c = 0; c < 4; ++c) {
            QuaternionField e(n);
            double* comps = &e.site(size_t(s)).w;
            comps[c] = 1.0;
            QuaternionField img = fueter_apply(e);
            for (int s2 = 0; s2 < sites; ++s2) {
                const double* out = &img.site(size_t(s2)).w;
                for (int c2 = 0; c2 < 4; ++c2) m(4 * s2 + c2, 4 * s + c) = out[c2];
            }
        }
    return m;
}

}  // namespace

int kernel_dimension_dense(int n, double tol) {
    if (n > 7) throw std::invalid_argument("kernel_dimension_dense: dense route is for small n");
    Eigen::MatrixXd m = dense_operator(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    double scale = std::max(1.0, std::abs(es.eigenvalues()(0)));
    scale = std::max(scale, std::abs(es.eigenvalues()(es.eigenvalues().size() - 1)));
    int nullity = 0;
    for (long i = 0; i < es.eigenvalues().size(); ++i)
        if (std::abs(es.eigenvalues()(i)) < tol * scale) ++nullity;
    return nullity;
}

double nonlinear_eigen_residual(const QuaternionField& f, double lambda,
                                const std::array<int, 3>& units) {
    double fn = f.l2_norm();
    if (fn == 0.0) throw std::invalid_argument("nonlinear_eigen_residual: zero field");
    QuaternionField df = fueter_apply(f, units);
    double s = 0;
    for (size_t i = 0; i < f.sites(); ++i) {
        Quaternion r = df.site(i) - f.site(i).scaled(lambda);
        s += r.norm2();
    }
    return std::sqrt(s) / fn;
}

EigenPair dominant_eigenpair(int n, uint64_t seed, double target_residual, int max_iterations) {
    Prng rng(seed);
    QuaternionField v = QuaternionField::random(n, rng);
    double shift = 2.0 * std::sqrt(3.0) * double(n);  // clears the spectral radius
    EigenPair best{0.0, v, 1e300, 0};
    for (int it = 1; it <= max_iterations; ++it) {
        QuaternionField dv = fueter_apply(v);
        // w = (D + shift) v, then normalise
        double norm = 0;
        for (size_t s = 0; s < v.sites(); ++s) {
            dv.site(s) = dv.site(s) + v.site(s).scaled(shift);
            norm += dv.site(s).norm2();
        }
        norm = std::sqrt(norm);
        for (size_t s = 0; s < v.sites(); ++s) v.site(s) = dv.site(s).scaled(1.0 / norm);
        if (it % 10 == 0 || it == max_iterations) {
            QuaternionField av = fueter_apply(v);
            double rayleigh = 0;
            for (size_t s = 0; s < v.sites(); ++s) {
                const Quaternion &a = av.site(s), &b = v.site(s);
                rayleigh += a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
            }
            double resid = nonlinear_eigen_residual(v, rayleigh);
            if (resid < best.residual) best = {rayleigh, v, resid, it};
            if (resid <= target_residual) break;
        }
    }
    return best;
}

// ---- spectral flow ----

void SelfAdjointFamily::validate(double tol) const {
    if (grid.size() != matrices.size() || grid.size() < 2)
        throw std::invalid_argument("SelfAdjointFamily: need matching grid and matrices");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("SelfAdjointFamily: grid must increase strictly");
    int d = dim();
    for (const auto& m : matrices) {
        if (int(m.size()) != d) throw std::invalid_argument("SelfAdjointFamily: ragged matrices");
        for (int i = 0; i < d; ++i) {
            if (int(m[size_t(i)].size()) != d)
                throw std::invalid_argument("SelfAdjointFamily: ragged matrices");
            for (int j = 0; j < d; ++j)
                if (std::abs(m[size_t(i)][size_t(j)] - std::conj(m[size_t(j)][size_t(i)])) > tol)
                    throw std::invalid_argument("SelfAdjointFamily: matrix not Hermitian");
        }
    }
}

std::vector<double> hermitian_eigenvalues(const std::vector<std::vector<Cplx>>& m) {
    long d = long(m.size());
    Eigen::MatrixXcd a(d, d);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) a(i, j) = m[size_t(i)][size_t(j)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
    std::vector<double> ev(size_t(d), 0.0);
    for (long i = 0; i < d; ++i) ev[size_t(i)] = es.eigenvalues()(i);
    return ev;
}

namespace {

int negatives(const std::vector<double>& ev) {
    int n = 0;
    for (double x : ev)
        if (x < 0) ++n;
    return n;
}

std::vector<std::vector<Cplx>> lerp_matrix(const std::vector<std::vector<Cplx>>& a,
                                           const std::vector<std::vector<Cplx>>& b, double t) {
    std::vector<std::vector<Cplx>> out = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j)
            out[i][j] = a[i][j] * (1.0 - t) + b[i][j] * t;
    return out;
}

}  // namespace

SpectralFlowResult spectral_flow(const SelfAdjointFamily& fam, double zero_tol) {
    fam.validate();
    auto ev_first = hermitian_eigenvalues(fam.matrices.front());
    auto ev_last = hermitian_eigenvalues(fam.matrices.back());
    for (double x : ev_first)
        if (std::abs(x) < zero_tol)
            throw std::invalid_argument("spectral_flow: eigenvalue at zero on the start matrix");
    for (double x : ev_last)
        if (std::abs(x) < zero_tol)
            throw std::invalid_argument("spectral_flow: eigenvalue at zero on the end matrix");

    SpectralFlowResult res;
    res.flow = negatives(ev_first) - negatives(ev_last);

    // unsigned crossing count: refine every segment (linear interpolation
    // between its endpoint matrices) until each step changes the negative
    // count by at most one
    int crossings = 0;
    for (size_t seg = 0; seg + 1 < fam.matrices.size(); ++seg) {
        struct Node {
            double t;
            int neg;
        };
        std::vector<Node> nodes = {
            {0.0, negatives(hermitian_eigenvalues(fam.matrices[seg]))},
            {1.0, negatives(hermitian_eigenvalues(fam.matrices[seg + 1]))}};
        bool stable = false;
        while (!stable) {
            stable = true;
            for (size_t i = 0; i + 1 < nodes.size(); ++i) {
                if (std::abs(nodes[i + 1].neg - nodes[i].neg) <= fam.crossing_multiplicity)
                    continue;
                double mid = 0.5 * (nodes[i].t + nodes[i + 1].t);
                if (nodes[i + 1].t - nodes[i].t < 1e-12)
                    throw std::invalid_argument("spectral_flow: non-simple crossing detected");
                auto m = lerp_matrix(fam.matrices[seg], fam.matrices[seg + 1], mid);
                nodes.insert(nodes.begin() + long(i) + 1,
                             Node{mid, negatives(hermitian_eigenvalues(m))});
                ++res.refinements;
                stable = false;
                break;
            }
        }
        for (size_t i = 0; i + 1 < nodes.size(); ++i)
            crossings += std::abs(nodes[i + 1].neg - nodes[i].neg) / fam.crossing_multiplicity;
    }
    res.crossings = crossings;
    return res;
}

SelfAdjointFamily realify(const SelfAdjointFamily& hermitian) {
    hermitian.validate();
    SelfAdjointFamily out;
    out.grid = hermitian.grid;
    out.crossing_multiplicity = 2 * hermitian.crossing_multiplicity;
    int d = hermitian.dim();
    for (const auto& m : hermitian.matrices) {
        std::vector<std::vector<Cplx>> r(size_t(2 * d), std::vector<Cplx>(size_t(2 * d), Cplx{}));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double re = m[size_t(i)][size_t(j)].real();
                double im = m[size_t(i)][size_t(j)].imag();
                r[size_t(i)][size_t(j)] = Cplx(re, 0);
                r[size_t(i)][size_t(j + d)] = Cplx(-im, 0);
                r[size_t(i + d)][size_t(j)] = Cplx(im, 0);
                r[size_t(i + d)][size_t(j + d)] = Cplx(re, 0);
            }
        out.matrices.push_back(std::move(r));
    }
    return out;
}

}  // namespace holonov
