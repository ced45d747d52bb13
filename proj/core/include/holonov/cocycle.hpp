// cocycle.hpp -- exponential-sum transition families over an abstract chart
// set: evaluation, composition, gauge conjugation, the cocycle check, the
// coker-presentation bundle assembly, section pairing into cone-supported
// generating functions, and the weighted partition count.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holonov/novikov.hpp"

namespace holonov {

struct Solution {
    std::string name;
    ClassVector charge;
};

struct ChartPoint {
    std::string label;
    std::vector<Solution> solutions;

    int solution_index(const std::string& name) const;  // -1 if absent
};

struct TransitionRecord {
    std::string s, s_prime;  // source-chart and target-chart solution names
    ClassVector cls;
    long count = 0;
};

struct TransitionFamily {
    std::string source, target;  // chart labels
    std::vector<TransitionRecord> records;
};

struct Atlas {
    int rank = 0;
    std::vector<double> direction;  // truncation direction (may be zero)
    double horizon = 1e9;
    std::vector<ChartPoint> charts;
    std::vector<TransitionFamily> transitions;

    void validate() const;
    const ChartPoint& chart(const std::string& label) const;
    const TransitionFamily* family(const std::string& from, const std::string& to) const;
    ExpSum proto() const { return ExpSum(rank, direction, horizon); }
};

// family as an ExpSum matrix, rows = target solutions, cols = source
ExpSumMatrix family_matrix(const TransitionFamily& f, const Atlas& a);

// complex matrix with entries sum_E n(E) exp(-<g_E, psi>)
std::vector<std::vector<Cplx>> evaluate_transition(const TransitionFamily& f, const Atlas& a,
                                                   const std::vector<Cplx>& psi,
                                                   double overflow_bound = 700.0);

// class-graded convolution: g1: theta->theta', g2: theta'->theta'' gives
// theta->theta''; evaluation is the matrix product M(g2) M(g1)
TransitionFamily compose_transitions(const TransitionFamily& g1, const TransitionFamily& g2,
                                     const Atlas& a);

void canonicalize_family(TransitionFamily& f);

// per-chart rational gauge scalars acting through the solution charges;
// record classes shift by l(target) charge(S') - l(source) charge(S)
Atlas gauge_transform(const Atlas& a, const std::map<std::string, Rational>& lambda);

struct CocycleReport {
    bool verified = false;
    std::string failure;  // first failing triple/pair and the differing entry
    int triples_checked = 0;
    int inverse_pairs_checked = 0;
};

CocycleReport check_cocycle(const Atlas& a);

struct BundleSample {
    bool skipped = false;      // singular transition at this psi
    int coker_rank = -1;
    bool frames_match = true;  // induced identifications equal stored transitions
};

struct BundleReport {
    int solution_count = -1;  // common chart solution count
    std::vector<BundleSample> samples;
    bool all_match(int expected_rank) const;
};

BundleReport assemble_bundle(const Atlas& a, const std::vector<std::vector<Cplx>>& psi_samples,
                             double tol = 1e-9);

// ---- sections and pairing ----

struct SectionData {
    std::string chart;
    std::vector<ExpSum> entries;  // indexed by the chart's solutions
};

struct GeneratingFunction {
    int rank = 0;
    std::vector<Rational> cone_covector;  // the phi-covector of the support cone
    std::map<ClassVector, Rational> terms;

    // throws with a diagnostic if <phi, b> < 0 for a nonzero term
    void add_term(const ClassVector& b, const Rational& n);
    Cplx evaluate(const std::vector<Cplx>& psi, double overflow_bound = 700.0) const;
    // per-shell term sums, ordered by increasing <phi, b>
    std::vector<Cplx> shell_terms(const std::vector<Cplx>& psi) const;
};

GeneratingFunction make_generating_function(int rank, std::vector<Rational> phi,
                                            const std::vector<std::pair<ClassVector, Rational>>& counts);

// <g1, g2> = sum over solutions S of g1[S] g2[S], class-graded; the duality
// identification matches solutions by name on the shared chart
GeneratingFunction pair_sections(const SectionData& g1, const SectionData& g2, const Atlas& a);

// transport a section across a family: v' = G v in ExpSum arithmetic
SectionData transport_section(const SectionData& s, const TransitionFamily& f, const Atlas& a);

// transport of the dual-side section: w' = (G^{-1})^T w; needs the family's
// ExpSum matrix to be invertible with unit determinant
SectionData transport_section_dual(const SectionData& s, const TransitionFamily& f, const Atlas& a);

// inverse of an ExpSum matrix whose determinant is a single-term unit
ExpSumMatrix expsum_inverse(const ExpSumMatrix& m);

// ---- weighted partition count ----

struct SlagWeights {
    std::vector<ClassVector> classes;
    std::vector<Rational> positivity;  // rational covector, strictly positive on classes
    // w(k, class index); absent entries are zero
    std::map<std::pair<long, int>, Rational> w;
};

// sum over multisets {(k_i, P_i)} with sum k_i P_i = kappa of prod w(k_i, P_i)
Rational slag_count(const SlagWeights& weights, const ClassVector& kappa);

}  // namespace holonov
