#include "holonov/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace holonov {

int ChartPoint::solution_index(const std::string& name) const {
    for (size_t i = 0; i < solutions.size(); ++i)
        if (solutions[i].name == name) return int(i);
    return -1;
}

void Atlas::validate() const {
    if (int(direction.size()) != rank) throw std::invalid_argument("Atlas: direction length != rank");
    std::set<std::string> labels;
    for (const auto& c : charts) {
        if (!labels.insert(c.label).second)
            throw std::invalid_argument("Atlas: duplicate chart label '" + c.label + "'");
        std::set<std::string> names;
        for (const auto& s : c.solutions) {
            if (!names.insert(s.name).second)
                throw std::invalid_argument("Atlas: duplicate solution '" + s.name + "' in chart " +
                                            c.label);
            if (int(s.charge.size()) != rank)
                throw std::invalid_argument("Atlas: charge length != rank");
        }
    }
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& f : transitions) {
        const ChartPoint& src = chart(f.source);
        const ChartPoint& dst = chart(f.target);
        if (!pairs.insert({f.source, f.target}).second)
            throw std::invalid_argument("Atlas: duplicate family " + f.source + " -> " + f.target);
        for (const auto& r : f.records) {
            if (src.solution_index(r.s) < 0)
                throw std::invalid_argument("Atlas: unknown source solution '" + r.s + "'");
            if (dst.solution_index(r.s_prime) < 0)
                throw std::invalid_argument("Atlas: unknown target solution '" + r.s_prime + "'");
            if (int(r.cls.size()) != rank)
                throw std::invalid_argument("Atlas: record class length != rank");
        }
    }
}

const ChartPoint& Atlas::chart(const std::string& label) const {
    for (const auto& c : charts)
        if (c.label == label) return c;
    throw std::invalid_argument("Atlas: no chart labelled '" + label + "'");
}

const TransitionFamily* Atlas::family(const std::string& from, const std::string& to) const {
    for (const auto& f : transitions)
        if (f.source == from && f.target == to) return &f;
    return nullptr;
}

ExpSumMatrix family_matrix(const TransitionFamily& f, const Atlas& a) {
    const ChartPoint& src = a.chart(f.source);
    const ChartPoint& dst = a.chart(f.target);
    ExpSumMatrix m =
        expsum_zero_matrix(int(dst.solutions.size()), int(src.solutions.size()), a.proto());
    for (const auto& r : f.records) {
        if (r.count == 0) continue;
        ExpSum e = a.proto();
        e.add_term(r.cls, RationalComplex(Rational(r.count)));
        int row = dst.solution_index(r.s_prime);
        int col = src.solution_index(r.s);
        m.a[row][col] = m.a[row][col] + e;
    }
    return m;
}

std::vector<std::vector<Cplx>> evaluate_transition(const TransitionFamily& f, const Atlas& a,
                                                   const std::vector<Cplx>& psi,
                                                   double overflow_bound) {
    std::vector<Cplx> neg(psi.size());
    for (size_t i = 0; i < psi.size(); ++i) neg[i] = -psi[i];  // weights are exp(-<g, psi>)
    return family_matrix(f, a).evaluate(neg, overflow_bound);
}

void canonicalize_family(TransitionFamily& f) {
    std::map<std::tuple<std::string, std::string, std::string>, std::pair<TransitionRecord, long>>
        acc;
    for (const auto& r : f.records) {
        std::string key;
        for (const auto& x : r.cls) key += x.str() + ",";
        auto k = std::make_tuple(r.s, r.s_prime, key);
        auto it = acc.find(k);
        if (it == acc.end())
            acc.emplace(k, std::make_pair(r, r.count));
        else
            it->second.second += r.count;
    }
    f.records.clear();
    for (auto& [k, v] : acc) {
        (void)k;
        if (v.second == 0) continue;
        v.first.count = v.second;
        f.records.push_back(v.first);
    }
}

TransitionFamily compose_transitions(const TransitionFamily& g1, const TransitionFamily& g2,
                                     const Atlas& a) {
    if (g1.target != g2.source)
        throw std::invalid_argument("compose_transitions: charts do not chain (" + g1.target +
                                    " vs " + g2.source + ")");
    a.chart(g1.source);
    a.chart(g2.target);
    TransitionFamily out;
    out.source = g1.source;
    out.target = g2.target;
    for (const auto& r1 : g1.records)
        for (const auto& r2 : g2.records) {
            if (r2.s != r1.s_prime) continue;
            TransitionRecord r;
            r.s = r1.s;
            r.s_prime = r2.s_prime;
            r.count = r1.count * r2.count;
            r.cls.resize(r1.cls.size());
            for (size_t i = 0; i < r1.cls.size(); ++i) r.cls[i] = r1.cls[i] + r2.cls[i];
            out.records.push_back(r);
        }
    canonicalize_family(out);
    return out;
}

Atlas gauge_transform(const Atlas& a, const std::map<std::string, Rational>& lambda) {
    a.validate();
    auto scalar = [&](const std::string& label) {
        auto it = lambda.find(label);
        return it == lambda.end() ? Rational(0) : it->second;
    };
    Atlas out = a;
    for (auto& f : out.transitions) {
        const ChartPoint& src = out.chart(f.source);
        const ChartPoint& dst = out.chart(f.target);
        Rational ls = scalar(f.source), lt = scalar(f.target);
        for (auto& r : f.records) {
            const ClassVector& cs = src.solutions[size_t(src.solution_index(r.s))].charge;
            const ClassVector& ct = dst.solutions[size_t(dst.solution_index(r.s_prime))].charge;
            for (size_t i = 0; i < r.cls.size(); ++i)
                r.cls[i] += lt * ct[i] - ls * cs[i];
        }
        canonicalize_family(f);
    }
    return out;
}

namespace {

std::string first_matrix_difference(const ExpSumMatrix& x, const ExpSumMatrix& y,
                                    const ChartPoint& dst, const ChartPoint& src) {
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            if (x.a[i][j] != y.a[i][j])
                return "entry (" + dst.solutions[size_t(i)].name + ", " +
                       src.solutions[size_t(j)].name + "): " + x.a[i][j].str() + " vs " +
                       y.a[i][j].str();
    return "";
}

}  // namespace

CocycleReport check_cocycle(const Atlas& a) {
    a.validate();
    CocycleReport rep;
    rep.verified = true;
    // inverse pairs: G_{ab} then G_{ba} composes to the identity family
    for (const auto& f : a.transitions) {
        const TransitionFamily* back = a.family(f.target, f.source);
        if (!back) continue;
        ++rep.inverse_pairs_checked;
        TransitionFamily round = compose_transitions(f, *back, a);
        ExpSumMatrix m = family_matrix(round, a);
        ExpSumMatrix id = expsum_identity(m.rows(), a.proto());
        if (!(m == id)) {
            rep.verified = false;
            rep.failure = "pair (" + f.source + ", " + f.target + ") does not invert: " +
                          first_matrix_difference(m, id, a.chart(f.source), a.chart(f.source));
            return rep;
        }
    }
    // triples: composition equals the direct family at the record level
    for (const auto& f1 : a.transitions)
        for (const auto& f2 : a.transitions) {
            if (f1.target != f2.source) continue;
            const TransitionFamily* direct = a.family(f1.source, f2.target);
            if (!direct) continue;
            if (f1.source == f2.target) continue;  // covered by the inverse check
            ++rep.triples_checked;
            TransitionFamily comp = compose_transitions(f1, f2, a);
            ExpSumMatrix mc = family_matrix(comp, a);
            ExpSumMatrix md = family_matrix(*direct, a);
            if (!(mc == md)) {
                rep.verified = false;
                rep.failure = "triple (" + f1.source + ", " + f1.target + ", " + f2.target +
                              "): " + first_matrix_difference(mc, md, a.chart(f2.target),
                                                              a.chart(f1.source));
                return rep;
            }
        }
    return rep;
}

// ---- bundle assembly ----

bool BundleReport::all_match(int expected_rank) const {
    bool any = false;
    for (const auto& s : samples) {
        if (s.skipped) continue;
        any = true;
        if (s.coker_rank != expected_rank || !s.frames_match) return false;
    }
    return any;
}

BundleReport assemble_bundle(const Atlas& a, const std::vector<std::vector<Cplx>>& psi_samples,
                             double tol) {
    a.validate();
    BundleReport rep;
    if (a.charts.empty()) throw std::invalid_argument("assemble_bundle: empty atlas");
    rep.solution_count = int(a.charts[0].solutions.size());
    for (const auto& c : a.charts)
        if (int(c.solutions.size()) != rep.solution_count)
            throw std::invalid_argument("assemble_bundle: charts have differing solution counts");

    int nch = int(a.charts.size());
    int n = rep.solution_count;
    std::map<std::string, int> chart_slot;
    for (int i = 0; i < nch; ++i) chart_slot[a.charts[i].label] = i;

    for (const auto& psi : psi_samples) {
        BundleSample sample;
        // evaluated transitions; skip the sample if one is singular
        std::vector<std::pair<std::pair<int, int>, std::vector<std::vector<Cplx>>>> evals;
        for (const auto& f : a.transitions) {
            auto m = evaluate_transition(f, a, psi);
            if (rank_complex(m, tol) < n) {
                sample.skipped = true;
                break;
            }
            evals.push_back({{chart_slot[f.source], chart_slot[f.target]}, m});
        }
        if (sample.skipped) {
            rep.samples.push_back(sample);
            continue;
        }
        // Phi: one block column per ordered pair (x,y) with a family; the
        // component into V_x is +Id and into V_y is -G_{xy}(psi), so the
        // induced identification V_x -> V_y is exactly the stored transition
        int cols = int(evals.size()) * n;
        int rows = nch * n;
        std::vector<std::vector<Cplx>> phi(size_t(rows), std::vector<Cplx>(size_t(cols), Cplx{}));
        int col0 = 0;
        for (const auto& [xy, m] : evals) {
            auto [x, y] = xy;
            for (int c = 0; c < n; ++c) {
                phi[size_t(x * n + c)][size_t(col0 + c)] += Cplx(1.0, 0.0);
                for (int r = 0; r < n; ++r) phi[size_t(y * n + r)][size_t(col0 + c)] -= m[r][c];
            }
            col0 += n;
        }
        sample.coker_rank = rows - rank_complex(phi, tol);
        // frame consistency: e_x(v) - e_y(G v) must lie in the image of Phi
        sample.frames_match = true;
        for (const auto& [xy, m] : evals) {
            auto [x, y] = xy;
            for (int c = 0; c < n && sample.frames_match; ++c) {
                std::vector<Cplx> target(size_t(rows), Cplx{});
                target[size_t(x * n + c)] += Cplx(1.0, 0.0);
                for (int r = 0; r < n; ++r) target[size_t(y * n + r)] -= m[r][c];
                auto sol = solve_least_squares(phi, target);
                // residual
                double resid = 0.0, scale = 1.0;
                for (int r2 = 0; r2 < rows; ++r2) {
                    Cplx acc(0, 0);
                    for (int c2 = 0; c2 < cols; ++c2) acc += phi[size_t(r2)][size_t(c2)] * sol[size_t(c2)];
                    resid = std::max(resid, std::abs(acc - target[size_t(r2)]));
                    scale = std::max(scale, std::abs(target[size_t(r2)]));
                }
                if (resid > tol * scale) sample.frames_match = false;
            }
        }
        rep.samples.push_back(sample);
    }
    return rep;
}

// ---- sections, pairing, generating functions ----

void GeneratingFunction::add_term(const ClassVector& b, const Rational& n) {
    if (int(b.size()) != rank) throw std::invalid_argument("GeneratingFunction: class length");
    if (n.is_zero()) return;
    Rational pairing(0);
    for (size_t i = 0; i < b.size(); ++i) pairing += cone_covector[i] * b[i];
    if (pairing.sign() < 0) {
        std::ostringstream os;
        os << "GeneratingFunction: term at class (";
        for (size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i].str();
        os << ") violates cone support: <phi, b> = " << pairing.str() << " < 0";
        throw std::invalid_argument(os.str());
    }
    auto it = terms.find(b);
    if (it == terms.end()) {
        terms.emplace(b, n);
    } else {
        it->second += n;
        if (it->second.is_zero()) terms.erase(it);
    }
}

Cplx GeneratingFunction::evaluate(const std::vector<Cplx>& psi, double overflow_bound) const {
    Cplx acc(0, 0);
    for (const auto& [b, n] : terms) {
        Cplx e(0, 0);
        for (size_t i = 0; i < b.size(); ++i) e -= b[i].to_double() * psi[i];
        if (std::abs(e.real()) > overflow_bound)
            throw DivergenceError("GeneratingFunction::evaluate: exponent beyond bound");
        acc += n.to_double() * std::exp(e);
    }
    return acc;
}

std::vector<Cplx> GeneratingFunction::shell_terms(const std::vector<Cplx>& psi) const {
    std::map<Rational, Cplx> shells;
    for (const auto& [b, n] : terms) {
        Rational level(0);
        for (size_t i = 0; i < b.size(); ++i) level += cone_covector[i] * b[i];
        Cplx e(0, 0);
        for (size_t i = 0; i < b.size(); ++i) e -= b[i].to_double() * psi[i];
        shells[level] += n.to_double() * std::exp(e);
    }
    std::vector<Cplx> out;
    for (const auto& [lvl, v] : shells) {
        (void)lvl;
        out.push_back(v);
    }
    return out;
}

GeneratingFunction make_generating_function(
    int rank, std::vector<Rational> phi,
    const std::vector<std::pair<ClassVector, Rational>>& counts) {
    GeneratingFunction f;
    f.rank = rank;
    if (int(phi.size()) != rank)
        throw std::invalid_argument("make_generating_function: phi covector length");
    f.cone_covector = std::move(phi);
    for (const auto& [b, n] : counts) f.add_term(b, n);
    return f;
}

GeneratingFunction pair_sections(const SectionData& g1, const SectionData& g2, const Atlas& a) {
    const ChartPoint& c1 = a.chart(g1.chart);
    const ChartPoint& c2 = a.chart(g2.chart);
    if (g1.entries.size() != c1.solutions.size() || g2.entries.size() != c2.solutions.size())
        throw std::invalid_argument("pair_sections: entry count does not match the chart");
    ExpSum acc = a.proto();
    for (size_t i = 0; i < c1.solutions.size(); ++i) {
        // duality identification by solution name
        int j = c2.solution_index(c1.solutions[i].name);
        if (j < 0)
            throw std::invalid_argument("pair_sections: no matching solution '" +
                                        c1.solutions[i].name + "' on chart " + g2.chart);
        acc = acc + g1.entries[i] * g2.entries[size_t(j)];
    }
    GeneratingFunction f;
    f.rank = a.rank;
    f.cone_covector.assign(size_t(a.rank), Rational(0));
    for (const auto& [cls, c] : acc.terms()) {
        if (!c.im.is_zero())
            throw std::invalid_argument("pair_sections: non-real coefficient in the pairing");
        f.add_term(cls, c.re);
    }
    return f;
}

SectionData transport_section(const SectionData& s, const TransitionFamily& f, const Atlas& a) {
    if (s.chart != f.source)
        throw std::invalid_argument("transport_section: section lives on " + s.chart +
                                    ", family starts at " + f.source);
    ExpSumMatrix m = family_matrix(f, a);
    SectionData out;
    out.chart = f.target;
    out.entries.assign(size_t(m.rows()), a.proto());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (!m.a[r][c].is_zero()) out.entries[size_t(r)] = out.entries[size_t(r)] + m.a[r][c] * s.entries[size_t(c)];
    return out;
}

ExpSumMatrix expsum_inverse(const ExpSumMatrix& m) {
    ExpSum d = m.determinant();
    if (d.terms().size() != 1)
        throw std::invalid_argument("expsum_inverse: determinant is not a unit");
    const auto& [dcls, dcoeff] = *d.terms().begin();
    // unit inverse: negate the class, invert the coefficient
    Rational norm = dcoeff.re * dcoeff.re + dcoeff.im * dcoeff.im;
    RationalComplex inv_coeff{dcoeff.re / norm, -(dcoeff.im / norm)};
    ClassVector neg = dcls;
    for (auto& x : neg) x = -x;
    ExpSum dinv = ExpSum::zero_like(m.a[0][0]);
    dinv.add_term(neg, inv_coeff);
    int n = m.rows();
    ExpSumMatrix out = expsum_zero_matrix(n, n, m.a[0][0]);
    const ExpSum proto = ExpSum::zero_like(m.a[0][0]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // cofactor C_{ji}
            ExpSumMatrix sub;
            sub.a.assign(size_t(n - 1), std::vector<ExpSum>(size_t(n - 1), proto));
            int ri = 0;
            for (int r = 0; r < n; ++r) {
                if (r == j) continue;
                int ci = 0;
                for (int c = 0; c < n; ++c) {
                    if (c == i) continue;
                    sub.a[size_t(ri)][size_t(ci)] = m.a[r][c];
                    ++ci;
                }
                ++ri;
            }
            ExpSum cof = n == 1 ? ExpSum::constant(proto, RationalComplex(Rational(1)))
                                : sub.determinant();
            if ((i + j) % 2 == 1) cof = cof.scaled(RationalComplex(Rational(-1)));
            out.a[i][j] = cof * dinv;
        }
    return out;
}

SectionData transport_section_dual(const SectionData& s, const TransitionFamily& f, const Atlas& a) {
    if (s.chart != f.source)
        throw std::invalid_argument("transport_section_dual: section lives on " + s.chart +
                                    ", family starts at " + f.source);
    ExpSumMatrix inv = expsum_inverse(family_matrix(f, a));
    SectionData out;
    out.chart = f.target;
    out.entries.assign(size_t(inv.rows()), a.proto());
    // w' = (G^{-1})^T w
    for (int r = 0; r < inv.rows(); ++r)
        for (int c = 0; c < inv.cols(); ++c)
            if (!inv.a[c][r].is_zero())
                out.entries[size_t(r)] = out.entries[size_t(r)] + inv.a[c][r] * s.entries[size_t(c)];
    return out;
}

// ---- the weighted partition count ----

namespace {

Rational pairing_rational(const ClassVector& a, const std::vector<Rational>& b) {
    Rational s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct SlagEnumerator {
    const std::vector<ClassVector>& classes;
    const std::vector<Rational>& positivity;
    std::vector<std::tuple<long, int, Rational>> parts;  // (k, class, weight), ordered
    Rational total;

    void recurse(size_t min_part, ClassVector remaining, Rational budget, Rational product) {
        bool zero = true;
        for (const auto& x : remaining)
            if (!x.is_zero()) zero = false;
        if (zero) {
            total += product;
            return;
        }
        if (budget.sign() <= 0) return;
        for (size_t p = min_part; p < parts.size(); ++p) {
            const auto& [k, ci, w] = parts[p];
            Rational cost = pairing_rational(classes[size_t(ci)], positivity) * Rational(k);
            if (cost > budget) continue;
            ClassVector next = remaining;
            for (size_t i = 0; i < next.size(); ++i)
                next[i] -= classes[size_t(ci)][i] * Rational(k);
            recurse(p, std::move(next), budget - cost, product * w);
        }
    }
};

}  // namespace

Rational slag_count(const SlagWeights& weights, const ClassVector& kappa) {
    if (weights.positivity.empty())
        throw std::invalid_argument("slag_count: a positivity covector is required");
    for (const auto& c : weights.classes) {
        if (c.size() != kappa.size() || weights.positivity.size() != kappa.size())
            throw std::invalid_argument("slag_count: class length mismatch");
        if (pairing_rational(c, weights.positivity).sign() <= 0)
            throw std::invalid_argument(
                "slag_count: every class needs strictly positive pairing with the covector");
    }
    SlagEnumerator e{weights.classes, weights.positivity, {}, Rational(0)};
    for (const auto& [kc, w] : weights.w) {
        if (w.is_zero()) continue;
        auto [k, ci] = kc;
        if (k < 1) throw std::invalid_argument("slag_count: weights need k >= 1");
        if (ci < 0 || ci >= int(weights.classes.size()))
            throw std::invalid_argument("slag_count: weight refers to an unknown class");
        e.parts.push_back({k, ci, w});
    }
    Rational budget = pairing_rational(kappa, weights.positivity);
    if (budget.sign() < 0) return Rational(0);
    e.recurse(0, kappa, budget, Rational(1));
    return e.total;
}

}  // namespace holonov
