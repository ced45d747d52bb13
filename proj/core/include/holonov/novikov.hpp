// novikov.hpp -- the finite Morse-Novikov layer: lattice-graded exponential
// sums with a truncation horizon, flow models with twisted differentials,
// hat-transforms of equivariant count tables, continuation (chain map)
// checks, convergence profiling, a cellular local-system oracle, and the
// critical-value-diagram crossing calculus.

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "holonov/linalg.hpp"
#include "holonov/rational.hpp"

namespace holonov {

using ClassVector = std::vector<Rational>;

struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double pair_with(const ClassVector& cls, const std::vector<double>& covector);

// finite, cone-truncated formal sum  sum_g c_g exp(<g, .>)  over Q^rank.
// Stored classes satisfy <class, direction> <= horizon; arithmetic
// re-truncates, and results are certified exact below the tracked horizon.
class ExpSum {
public:
    ExpSum() = default;
    ExpSum(int rank, std::vector<double> direction, double horizon);

    static ExpSum zero_like(const ExpSum& proto);
    static ExpSum constant(const ExpSum& proto, RationalComplex c);

    int rank() const { return rank_; }
    const std::vector<double>& direction() const { return direction_; }
    double horizon() const { return horizon_; }
    const std::map<ClassVector, RationalComplex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const ClassVector& cls, const RationalComplex& c);

    friend ExpSum operator+(const ExpSum& a, const ExpSum& b);
    friend ExpSum operator-(const ExpSum& a, const ExpSum& b);
    friend ExpSum operator*(const ExpSum& a, const ExpSum& b);
    ExpSum scaled(const RationalComplex& c) const;

    // value equality: identical term maps (horizon is metadata)
    friend bool operator==(const ExpSum& a, const ExpSum& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ExpSum& a, const ExpSum& b) { return !(a == b); }

    // sum of c_g exp(<g, alpha>); throws DivergenceError past overflow_bound
    Cplx evaluate(const std::vector<Cplx>& alpha, double overflow_bound = 700.0) const;

    std::string str() const;

private:
    int rank_ = 0;
    std::vector<double> direction_;
    double horizon_ = 0.0;
    std::map<ClassVector, RationalComplex> terms_;
};

struct ExpSumMatrix {
    std::vector<std::vector<ExpSum>> a;

    int rows() const { return int(a.size()); }
    int cols() const { return a.empty() ? 0 : int(a[0].size()); }
    bool is_zero() const;
    friend ExpSumMatrix operator*(const ExpSumMatrix& x, const ExpSumMatrix& y);
    friend ExpSumMatrix operator+(const ExpSumMatrix& x, const ExpSumMatrix& y);
    friend ExpSumMatrix operator-(const ExpSumMatrix& x, const ExpSumMatrix& y);
    friend bool operator==(const ExpSumMatrix& x, const ExpSumMatrix& y);

    std::vector<std::vector<Cplx>> evaluate(const std::vector<Cplx>& alpha,
                                            double overflow_bound = 700.0) const;
    // determinant by cofactor expansion (small matrices only)
    ExpSum determinant() const;
    // a single-term sum with nonzero coefficient is a unit of the coefficient ring
    bool determinant_is_unit() const;
};

ExpSumMatrix expsum_zero_matrix(int rows, int cols, const ExpSum& proto);
ExpSumMatrix expsum_identity(int n, const ExpSum& proto);

// rho(gamma) = exp(<gamma, alpha>)
Cplx monodromy(const std::vector<Cplx>& alpha, const ClassVector& gamma);

// ---- flow models ----

struct CriticalPoint {
    std::string name;
    int index = 0;
};

struct FlowRecord {
    int from = 0, to = 0;  // indices into crit
    ClassVector cls;
    long count = 0;
};

struct FlowModel {
    int rank = 0;                // free part of H_1
    std::vector<double> theta;   // periods of the reference 1-form
    std::vector<CriticalPoint> crit;
    std::vector<FlowRecord> flows;
    double horizon = 1e9;        // declared truncation horizon in the -theta direction

    std::vector<double> direction() const;  // -theta (descent depth covector)
    void validate() const;  // index drop, distinct classes per pair, d∘d = 0
    int points_of_index(int idx) const;
    std::vector<int> index_range() const;  // sorted distinct indices
};

// graded differential: block d[i] maps index-i points to index-(i-1) points
struct GradedDifferential {
    std::map<int, ExpSumMatrix> blocks;
    std::map<int, std::vector<int>> points;  // crit indices per grading, row/col order
};

GradedDifferential novikov_differential(const FlowModel& f);
bool differential_squares_to_zero(const GradedDifferential& d);

// Betti numbers per index (ascending over the model's index range) at alpha
std::vector<int> flow_betti_numbers(const FlowModel& f, const std::vector<Cplx>& alpha,
                                    double rank_tol = 1e-9, double overflow_bound = 700.0);

// cellular chain complex with group-ring coefficients: the independent
// oracle for twisted cohomology
struct LocalSystemComplex {
    int rank = 0;
    std::vector<int> cells;              // cells per dimension 0..D
    std::vector<ExpSumMatrix> boundary;  // boundary[k]: C_{k+1} -> C_k

    void validate() const;  // shapes match and the composite vanishes exactly
    std::vector<int> betti(const std::vector<Cplx>& alpha, double rank_tol = 1e-9,
                           double overflow_bound = 700.0) const;
};

// ---- equivariant tables and hat transforms ----

struct EquivariantTable {
    int source_size = 0, target_size = 0, rank = 0;
    std::vector<FlowRecord> records;  // from: source slot, to: target slot

    void canonicalize();  // merge equal (from,to,class), drop zero counts
};

// T ∘ U (U applied first): class-graded convolution of tables
EquivariantTable compose_tables(const EquivariantTable& t, const EquivariantTable& u);

ExpSumMatrix hat_transform(const EquivariantTable& t, const std::vector<double>& direction,
                           double horizon);

// ---- continuation maps ----

struct ContinuationData {
    FlowModel source, target;
    EquivariantTable table;  // index-preserving, size = all critical points
};

struct ContinuationReport {
    bool chain_map_exact = false;    // d1 ∘ Psi == Psi ∘ d0 in ExpSum arithmetic
    bool chain_map_numeric = false;  // same at the evaluated alpha
    bool differentials_zero = false;
    bool psi_invertible = false;  // checked when both differentials vanish
    double max_residual = 0.0;
    std::string failure;  // offending entry if the chain map fails
};

ContinuationReport continuation_check(const ContinuationData& c, const std::vector<Cplx>& alpha,
                                      double tol = 1e-9);

// ---- convergence profiling ----

struct GrowthModel {
    std::vector<double> shell_counts;  // |aggregate count| at period 1, 2, ...
};

struct ConvergenceProfile {
    double rho_hat = 0.0;
    bool finite_table = false;
    // true if partial sums at the probed decay rate grow over the tail
    bool diverges_at(double re_s) const;
    std::vector<double> shell_counts;
};

ConvergenceProfile convergence_profile(const FlowModel& f);
ConvergenceProfile convergence_profile(const GrowthModel& g);

// ---- critical value diagrams (Picard-Lefschetz crossings) ----

struct CriticalValueDiagram {
    std::vector<std::pair<Rational, Rational>> points;  // z_i in C
    std::vector<std::string> labels;                    // basis symbols <A_i>
    RatMat intersections;  // antisymmetric integer table n_ij
    RatMat basis_change;   // accumulated, always determinant 1

    void validate() const;
};

CriticalValueDiagram make_diagram(std::vector<std::pair<Rational, Rational>> pts,
                                  std::vector<std::string> labels, RatMat n);

struct CrossingMove {
    enum class Kind { segment, ray } kind = Kind::segment;
    int moving = 0;  // point being moved
    int i = 0, j = 0;  // segment endpoints, or i = ray owner for ray moves
    std::pair<Rational, Rational> target;
};

struct CrossingResult {
    CriticalValueDiagram diagram;
    RatMat basis_change;  // the elementary factor emitted by this move
};

// Applies one generic move. Segment moves update n_ij by +- n_ik n_kj with
// the sign fixed by the crossing direction (left-to-right across the
// oriented segment i->j adds +); ray moves emit the unipotent basis change
// <A_i> -> <A_i> +- n_ij <A_j> (downward crossing adds +) and transport the
// table by the induced congruence. Non-generic moves throw.
CrossingResult crossing_update(const CriticalValueDiagram& d, const CrossingMove& move);

}  // namespace holonov
