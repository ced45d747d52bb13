#include "holonov/novikov.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace holonov {

double pair_with(const ClassVector& cls, const std::vector<double>& covector) {
    if (cls.size() != covector.size())
        throw std::invalid_argument("pair_with: length mismatch");
    double s = 0.0;
    for (size_t i = 0; i < cls.size(); ++i) s += cls[i].to_double() * covector[i];
    return s;
}

// ---- ExpSum ----

ExpSum::ExpSum(int rank, std::vector<double> direction, double horizon)
    : rank_(rank), direction_(std::move(direction)), horizon_(horizon) {
    if (int(direction_.size()) != rank_) throw std::invalid_argument("ExpSum: direction length");
}

ExpSum ExpSum::zero_like(const ExpSum& proto) {
    return ExpSum(proto.rank_, proto.direction_, proto.horizon_);
}

ExpSum ExpSum::constant(const ExpSum& proto, RationalComplex c) {
    ExpSum s = zero_like(proto);
    s.add_term(ClassVector(size_t(proto.rank_), Rational(0)), c);
    return s;
}

void ExpSum::add_term(const ClassVector& cls, const RationalComplex& c) {
    if (int(cls.size()) != rank_) throw std::invalid_argument("ExpSum::add_term: class length");
    if (c.is_zero()) return;
    if (pair_with(cls, direction_) > horizon_) return;  // re-truncate
    auto it = terms_.find(cls);
    if (it == terms_.end()) {
        terms_.emplace(cls, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

namespace {

double min_depth(const ExpSum& s) {
    double m = 0.0;
    bool first = true;
    for (const auto& [cls, c] : s.terms()) {
        (void)c;
        double d = pair_with(cls, s.direction());
        if (first || d < m) m = d;
        first = false;
    }
    return first ? 0.0 : m;
}

void require_compatible(const ExpSum& a, const ExpSum& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("ExpSum: rank mismatch");
    if (a.direction() != b.direction())
        throw std::invalid_argument("ExpSum: direction covector mismatch");
}

}  // namespace

ExpSum operator+(const ExpSum& a, const ExpSum& b) {
    require_compatible(a, b);
    ExpSum out(a.rank(), a.direction(), std::min(a.horizon(), b.horizon()));
    for (const auto& [cls, c] : a.terms()) out.add_term(cls, c);
    for (const auto& [cls, c] : b.terms()) out.add_term(cls, c);
    return out;
}

ExpSum operator-(const ExpSum& a, const ExpSum& b) {
    return a + b.scaled(RationalComplex(Rational(-1)));
}

ExpSum operator*(const ExpSum& a, const ExpSum& b) {
    require_compatible(a, b);
    // sound horizon for truncated series: unknown tails only pollute beyond it
    double t = std::min(a.horizon() + min_depth(b), b.horizon() + min_depth(a));
    ExpSum out(a.rank(), a.direction(), t);
    for (const auto& [ca, va] : a.terms())
        for (const auto& [cb, vb] : b.terms()) {
            ClassVector sum(ca.size());
            for (size_t i = 0; i < ca.size(); ++i) sum[i] = ca[i] + cb[i];
            out.add_term(sum, va * vb);
        }
    return out;
}

ExpSum ExpSum::scaled(const RationalComplex& c) const {
    ExpSum out(rank_, direction_, horizon_);
    if (c.is_zero()) return out;
    for (const auto& [cls, v] : terms_) out.terms_.emplace(cls, v * c);
    return out;
}

Cplx ExpSum::evaluate(const std::vector<Cplx>& alpha, double overflow_bound) const {
    if (int(alpha.size()) != rank_) throw std::invalid_argument("ExpSum::evaluate: alpha length");
    Cplx acc(0.0, 0.0);
    for (const auto& [cls, c] : terms_) {
        Cplx e(0.0, 0.0);
        for (size_t i = 0; i < cls.size(); ++i) e += cls[i].to_double() * alpha[i];
        if (std::abs(e.real()) > overflow_bound)
            throw DivergenceError("ExpSum::evaluate: exponent " + std::to_string(e.real()) +
                                  " beyond the configured bound");
        acc += Cplx(c.re.to_double(), c.im.to_double()) * std::exp(e);
    }
    return acc;
}

std::string ExpSum::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [cls, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")X^(";
        for (size_t i = 0; i < cls.size(); ++i) os << (i ? "," : "") << cls[i].str();
        os << ")";
    }
    return os.str();
}

// ---- ExpSumMatrix ----

bool ExpSumMatrix::is_zero() const {
    for (const auto& row : a)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

ExpSumMatrix operator*(const ExpSumMatrix& x, const ExpSumMatrix& y) {
    if (x.cols() != y.rows()) throw std::invalid_argument("ExpSumMatrix: shape mismatch");
    ExpSumMatrix out;
    if (x.rows() == 0 || y.cols() == 0 || x.cols() == 0) {
        out.a.assign(size_t(x.rows()), std::vector<ExpSum>(size_t(y.cols())));
        return out;
    }
    const ExpSum proto = ExpSum::zero_like(x.a[0][0]);
    out.a.assign(size_t(x.rows()), std::vector<ExpSum>(size_t(y.cols()), proto));
    for (int i = 0; i < x.rows(); ++i)
        for (int k = 0; k < x.cols(); ++k) {
            if (x.a[i][k].is_zero()) continue;
            for (int j = 0; j < y.cols(); ++j) {
                if (y.a[k][j].is_zero()) continue;
                out.a[i][j] = out.a[i][j] + x.a[i][k] * y.a[k][j];
            }
        }
    return out;
}

ExpSumMatrix operator+(const ExpSumMatrix& x, const ExpSumMatrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument("ExpSumMatrix: shape mismatch");
    ExpSumMatrix out = x;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) out.a[i][j] = x.a[i][j] + y.a[i][j];
    return out;
}

ExpSumMatrix operator-(const ExpSumMatrix& x, const ExpSumMatrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument("ExpSumMatrix: shape mismatch");
    ExpSumMatrix out = x;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) out.a[i][j] = x.a[i][j] - y.a[i][j];
    return out;
}

bool operator==(const ExpSumMatrix& x, const ExpSumMatrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            if (x.a[i][j] != y.a[i][j]) return false;
    return true;
}

std::vector<std::vector<Cplx>> ExpSumMatrix::evaluate(const std::vector<Cplx>& alpha,
                                                      double overflow_bound) const {
    std::vector<std::vector<Cplx>> out(size_t(rows()), std::vector<Cplx>(size_t(cols()), Cplx{}));
    for (int i = 0; i < rows(); ++i)
        for (int j = 0; j < cols(); ++j) out[i][j] = a[i][j].evaluate(alpha, overflow_bound);
    return out;
}

ExpSum ExpSumMatrix::determinant() const {
    if (rows() != cols()) throw std::invalid_argument("ExpSumMatrix::determinant: not square");
    int n = rows();
    if (n == 0) throw std::invalid_argument("ExpSumMatrix::determinant: empty");
    if (n == 1) return a[0][0];
    const ExpSum proto = ExpSum::zero_like(a[0][0]);
    ExpSum acc = proto;
    for (int c = 0; c < n; ++c) {
        if (a[0][c].is_zero()) continue;
        ExpSumMatrix sub;
        sub.a.assign(size_t(n - 1), std::vector<ExpSum>(size_t(n - 1), proto));
        for (int i = 1; i < n; ++i) {
            int jj = 0;
            for (int j = 0; j < n; ++j) {
                if (j == c) continue;
                sub.a[i - 1][jj++] = a[i][j];
            }
        }
        ExpSum term = a[0][c] * sub.determinant();
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

bool ExpSumMatrix::determinant_is_unit() const {
    return determinant().terms().size() == 1;
}

ExpSumMatrix expsum_zero_matrix(int rows, int cols, const ExpSum& proto) {
    ExpSumMatrix m;
    m.a.assign(size_t(rows), std::vector<ExpSum>(size_t(cols), ExpSum::zero_like(proto)));
    return m;
}

ExpSumMatrix expsum_identity(int n, const ExpSum& proto) {
    ExpSumMatrix m = expsum_zero_matrix(n, n, proto);
    for (int i = 0; i < n; ++i)
        m.a[i][i] = ExpSum::constant(proto, RationalComplex(Rational(1)));
    return m;
}

Cplx monodromy(const std::vector<Cplx>& alpha, const ClassVector& gamma) {
    if (alpha.size() != gamma.size()) throw std::invalid_argument("monodromy: length mismatch");
    Cplx e(0.0, 0.0);
    for (size_t i = 0; i < gamma.size(); ++i) e += gamma[i].to_double() * alpha[i];
    return std::exp(e);
}

// ---- flow models ----

std::vector<double> FlowModel::direction() const {
    std::vector<double> d(theta.size());
    for (size_t i = 0; i < theta.size(); ++i) d[i] = -theta[i];
    return d;
}

int FlowModel::points_of_index(int idx) const {
    int n = 0;
    for (const auto& c : crit)
        if (c.index == idx) ++n;
    return n;
}

std::vector<int> FlowModel::index_range() const {
    std::set<int> s;
    for (const auto& c : crit) s.insert(c.index);
    return std::vector<int>(s.begin(), s.end());
}

void FlowModel::validate() const {
    if (int(theta.size()) != rank) throw std::invalid_argument("FlowModel: theta length != rank");
    std::set<std::string> names;
    for (const auto& c : crit)
        if (!names.insert(c.name).second)
            throw std::invalid_argument("FlowModel: duplicate critical point '" + c.name + "'");
    std::set<std::tuple<int, int, std::string>> seen;
    for (const auto& f : flows) {
        if (f.from < 0 || f.from >= int(crit.size()) || f.to < 0 || f.to >= int(crit.size()))
            throw std::invalid_argument("FlowModel: flow endpoint out of range");
        if (int(f.cls.size()) != rank) throw std::invalid_argument("FlowModel: class length != rank");
        if (f.count == 0) continue;
        if (crit[f.to].index != crit[f.from].index - 1)
            throw std::invalid_argument("FlowModel: nonzero count between non-adjacent indices");
        std::string key;
        for (const auto& r : f.cls) key += r.str() + ",";
        if (!seen.insert({f.from, f.to, key}).second)
            throw std::invalid_argument("FlowModel: duplicate class for a (from,to) pair");
    }
    if (!differential_squares_to_zero(novikov_differential(*this)))
        throw std::invalid_argument("FlowModel: differential does not square to zero");
}

GradedDifferential novikov_differential(const FlowModel& f) {
    GradedDifferential d;
    ExpSum proto(f.rank, f.direction(), f.horizon);
    std::map<int, std::vector<int>> pts;
    for (int i = 0; i < int(f.crit.size()); ++i) pts[f.crit[i].index].push_back(i);
    d.points = pts;
    std::map<int, std::map<int, int>> slot;  // index -> crit id -> row/col
    for (auto& [idx, v] : pts)
        for (size_t s = 0; s < v.size(); ++s) slot[idx][v[s]] = int(s);
    for (const auto& [idx, cols] : pts) {
        auto it = pts.find(idx - 1);
        int nrows = it == pts.end() ? 0 : int(it->second.size());
        d.blocks[idx] = expsum_zero_matrix(nrows, int(cols.size()), proto);
    }
    for (const auto& fl : f.flows) {
        if (fl.count == 0) continue;
        int idx = f.crit[fl.from].index;
        auto& block = d.blocks[idx];
        if (block.rows() == 0) continue;
        int row = slot[idx - 1][fl.to];
        int col = slot[idx][fl.from];
        ExpSum t = ExpSum::zero_like(proto);
        t.add_term(fl.cls, RationalComplex(Rational(fl.count)));
        block.a[row][col] = block.a[row][col] + t;
    }
    return d;
}

bool differential_squares_to_zero(const GradedDifferential& d) {
    for (const auto& [idx, block] : d.blocks) {
        auto it = d.blocks.find(idx - 1);
        if (it == d.blocks.end()) continue;
        if (it->second.rows() == 0 || block.rows() == 0 || block.cols() == 0) continue;
        if (!(it->second * block).is_zero()) return false;
    }
    return true;
}

std::vector<int> flow_betti_numbers(const FlowModel& f, const std::vector<Cplx>& alpha,
                                    double rank_tol, double overflow_bound) {
    auto d = novikov_differential(f);
    std::vector<int> betti;
    for (int idx : f.index_range()) {
        int dim = f.points_of_index(idx);
        int r_out = 0, r_in = 0;
        auto it = d.blocks.find(idx);
        if (it != d.blocks.end() && it->second.rows() > 0 && it->second.cols() > 0)
            r_out = rank_complex(it->second.evaluate(alpha, overflow_bound), rank_tol);
        auto up = d.blocks.find(idx + 1);
        if (up != d.blocks.end() && up->second.rows() > 0 && up->second.cols() > 0)
            r_in = rank_complex(up->second.evaluate(alpha, overflow_bound), rank_tol);
        betti.push_back(dim - r_out - r_in);
    }
    return betti;
}

// ---- cellular oracle ----

void LocalSystemComplex::validate() const {
    if (cells.empty()) throw std::invalid_argument("LocalSystemComplex: no cells");
    if (boundary.size() + 1 != cells.size())
        throw std::invalid_argument("LocalSystemComplex: need one boundary per adjacent degree");
    for (size_t k = 0; k < boundary.size(); ++k) {
        if (boundary[k].rows() != cells[k] || boundary[k].cols() != cells[k + 1])
            throw std::invalid_argument("LocalSystemComplex: boundary shape mismatch at degree " +
                                        std::to_string(k + 1));
    }
    for (size_t k = 0; k + 1 < boundary.size(); ++k)
        if (boundary[k].rows() > 0 && !(boundary[k] * boundary[k + 1]).is_zero())
            throw std::invalid_argument("LocalSystemComplex: boundary does not square to zero");
}

std::vector<int> LocalSystemComplex::betti(const std::vector<Cplx>& alpha, double rank_tol,
                                           double overflow_bound) const {
    std::vector<int> out;
    for (size_t k = 0; k < cells.size(); ++k) {
        int r_out = 0, r_in = 0;
        if (k > 0 && boundary[k - 1].rows() > 0 && boundary[k - 1].cols() > 0)
            r_out = rank_complex(boundary[k - 1].evaluate(alpha, overflow_bound), rank_tol);
        if (k < boundary.size() && boundary[k].rows() > 0 && boundary[k].cols() > 0)
            r_in = rank_complex(boundary[k].evaluate(alpha, overflow_bound), rank_tol);
        out.push_back(cells[k] - r_out - r_in);
    }
    return out;
}

// ---- tables ----

void EquivariantTable::canonicalize() {
    std::map<std::tuple<int, int, std::string>, std::pair<FlowRecord, long>> acc;
    for (const auto& r : records) {
        std::string key;
        for (const auto& x : r.cls) key += x.str() + ",";
        auto k = std::make_tuple(r.from, r.to, key);
        auto it = acc.find(k);
        if (it == acc.end())
            acc.emplace(k, std::make_pair(r, r.count));
        else
            it->second.second += r.count;
    }
    records.clear();
    for (auto& [k, v] : acc) {
        (void)k;
        if (v.second == 0) continue;
        v.first.count = v.second;
        records.push_back(v.first);
    }
}

EquivariantTable compose_tables(const EquivariantTable& t, const EquivariantTable& u) {
    if (u.target_size != t.source_size)
        throw std::invalid_argument("compose_tables: middle sizes do not match");
    if (u.rank != t.rank) throw std::invalid_argument("compose_tables: lattice ranks differ");
    EquivariantTable out;
    out.source_size = u.source_size;
    out.target_size = t.target_size;
    out.rank = t.rank;
    for (const auto& ru : u.records)
        for (const auto& rt : t.records) {
            if (rt.from != ru.to) continue;
            FlowRecord r;
            r.from = ru.from;
            r.to = rt.to;
            r.count = ru.count * rt.count;
            r.cls.resize(ru.cls.size());
            for (size_t i = 0; i < ru.cls.size(); ++i) r.cls[i] = ru.cls[i] + rt.cls[i];
            out.records.push_back(r);
        }
    out.canonicalize();
    return out;
}

ExpSumMatrix hat_transform(const EquivariantTable& t, const std::vector<double>& direction,
                           double horizon) {
    ExpSum proto(t.rank, direction, horizon);
    ExpSumMatrix m = expsum_zero_matrix(t.target_size, t.source_size, proto);
    for (const auto& r : t.records) {
        if (r.count == 0) continue;
        ExpSum e = ExpSum::zero_like(proto);
        e.add_term(r.cls, RationalComplex(Rational(r.count)));
        m.a[r.to][r.from] = m.a[r.to][r.from] + e;
    }
    return m;
}

// ---- continuation ----

namespace {

// differential as one matrix over all critical points
ExpSumMatrix full_differential(const FlowModel& f) {
    ExpSum proto(f.rank, f.direction(), f.horizon);
    int n = int(f.crit.size());
    ExpSumMatrix m = expsum_zero_matrix(n, n, proto);
    for (const auto& fl : f.flows) {
        if (fl.count == 0) continue;
        ExpSum e = ExpSum::zero_like(proto);
        e.add_term(fl.cls, RationalComplex(Rational(fl.count)));
        m.a[fl.to][fl.from] = m.a[fl.to][fl.from] + e;
    }
    return m;
}

double matrix_abs_max(const std::vector<std::vector<Cplx>>& m) {
    double v = 0.0;
    for (const auto& row : m)
        for (const auto& x : row) v = std::max(v, std::abs(x));
    return v;
}

}  // namespace

ContinuationReport continuation_check(const ContinuationData& c, const std::vector<Cplx>& alpha,
                                      double tol) {
    ContinuationReport rep;
    c.source.validate();
    c.target.validate();
    if (c.table.source_size != int(c.source.crit.size()) ||
        c.table.target_size != int(c.target.crit.size()))
        throw std::invalid_argument("continuation_check: table does not link the two models");
    for (const auto& r : c.table.records)
        if (r.count != 0 && c.target.crit[r.to].index != c.source.crit[r.from].index)
            throw std::invalid_argument("continuation_check: table is not index-preserving");

    ExpSumMatrix d0 = full_differential(c.source);
    ExpSumMatrix d1 = full_differential(c.target);
    ExpSumMatrix psi = hat_transform(c.table, c.source.direction(), c.source.horizon);
    ExpSumMatrix lhs = d1 * psi;
    ExpSumMatrix rhs = psi * d0;
    rep.chain_map_exact = (lhs == rhs);
    if (!rep.chain_map_exact) {
        for (int i = 0; i < lhs.rows() && rep.failure.empty(); ++i)
            for (int j = 0; j < lhs.cols(); ++j)
                if (lhs.a[i][j] != rhs.a[i][j]) {
                    rep.failure = "entry (" + c.target.crit[i].name + ", " + c.source.crit[j].name +
                                  "): d1 Psi = " + lhs.a[i][j].str() +
                                  " vs Psi d0 = " + rhs.a[i][j].str();
                    break;
                }
    }
    auto le = lhs.evaluate(alpha);
    auto re = rhs.evaluate(alpha);
    double resid = 0.0;
    for (int i = 0; i < lhs.rows(); ++i)
        for (int j = 0; j < lhs.cols(); ++j) resid = std::max(resid, std::abs(le[i][j] - re[i][j]));
    double scale = std::max({1.0, matrix_abs_max(le), matrix_abs_max(re)});
    rep.max_residual = resid;
    rep.chain_map_numeric = resid <= tol * scale;

    rep.differentials_zero = d0.is_zero() && d1.is_zero();
    if (rep.differentials_zero)
        rep.psi_invertible = psi.rows() == psi.cols() && psi.rows() > 0 && psi.determinant_is_unit();
    return rep;
}

// ---- convergence ----

bool ConvergenceProfile::diverges_at(double re_s) const {
    if (shell_counts.size() < 4) return false;
    // growing tail terms count_l e^{-s l} mean the partial sums cannot settle
    size_t tail = shell_counts.size() / 2;
    int grows = 0, checked = 0;
    for (size_t l = tail; l + 1 < shell_counts.size(); ++l) {
        double a = shell_counts[l] * std::exp(-re_s * double(l + 1));
        double b = shell_counts[l + 1] * std::exp(-re_s * double(l + 2));
        if (a <= 0 && b <= 0) continue;
        ++checked;
        if (b >= a) ++grows;
    }
    return checked > 0 && grows == checked;
}

ConvergenceProfile convergence_profile(const FlowModel& f) {
    f.validate();
    ConvergenceProfile p;
    p.finite_table = true;
    p.rho_hat = 0.0;  // finitely many stored terms
    auto dir = f.direction();
    std::map<long, double> shells;
    for (const auto& fl : f.flows) {
        long shell = std::lround(std::max(1.0, pair_with(fl.cls, dir)));
        shells[shell] += std::abs(double(fl.count));
    }
    if (!shells.empty()) {
        long top = shells.rbegin()->first;
        p.shell_counts.assign(size_t(top), 0.0);
        for (const auto& [l, v] : shells) p.shell_counts[size_t(l - 1)] = v;
    }
    return p;
}

ConvergenceProfile convergence_profile(const GrowthModel& g) {
    ConvergenceProfile p;
    p.shell_counts = g.shell_counts;
    p.finite_table = false;
    double best = 0.0;
    size_t n = g.shell_counts.size();
    for (size_t l = n / 2; l < n; ++l) {
        if (g.shell_counts[l] <= 0) continue;
        best = std::max(best, std::log(g.shell_counts[l]) / double(l + 1));
    }
    p.rho_hat = best;
    return p;
}

// ---- diagrams ----

void CriticalValueDiagram::validate() const {
    int n = int(points.size());
    if (int(labels.size()) != n) throw std::invalid_argument("diagram: labels/points mismatch");
    if (intersections.rows() != n || intersections.cols() != n)
        throw std::invalid_argument("diagram: table shape mismatch");
    for (int i = 0; i < n; ++i) {
        if (!intersections.at(i, i).is_zero())
            throw std::invalid_argument("diagram: n_ii must vanish");
        for (int j = 0; j < n; ++j) {
            if (intersections.at(i, j) != -intersections.at(j, i))
                throw std::invalid_argument("diagram: table must be antisymmetric");
            if (intersections.at(i, j).raw().get_den() != 1)
                throw std::invalid_argument("diagram: table must be integer");
        }
    }
    if (basis_change.rows() != n || basis_change.cols() != n || det(basis_change) != Rational(1))
        throw std::invalid_argument("diagram: accumulated basis change must have determinant 1");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("diagram: coincident critical values");
}

CriticalValueDiagram make_diagram(std::vector<std::pair<Rational, Rational>> pts,
                                  std::vector<std::string> labels, RatMat n) {
    CriticalValueDiagram d;
    d.points = std::move(pts);
    d.labels = std::move(labels);
    d.intersections = std::move(n);
    d.basis_change = RatMat::identity(int(d.points.size()));
    d.validate();
    return d;
}

namespace {

using Pt = std::pair<Rational, Rational>;

Rational cross3(const Pt& o, const Pt& a, const Pt& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
}

}  // namespace

CrossingResult crossing_update(const CriticalValueDiagram& d, const CrossingMove& move) {
    d.validate();
    int n = int(d.points.size());
    auto in_range = [&](int k) { return k >= 0 && k < n; };
    CriticalValueDiagram out = d;
    RatMat elem = RatMat::identity(n);

    if (move.kind == CrossingMove::Kind::segment) {
        int k = move.moving, i = move.i, j = move.j;
        if (!in_range(k) || !in_range(i) || !in_range(j) || k == i || k == j || i == j)
            throw std::invalid_argument("crossing_update: bad segment move indices");
        const Pt& zi = d.points[i];
        const Pt& zj = d.points[j];
        const Pt& from = d.points[k];
        const Pt& to = move.target;
        Rational side_before = cross3(zi, zj, from);
        Rational side_after = cross3(zi, zj, to);
        if (side_before.is_zero() || side_after.is_zero() ||
            side_before.sign() == side_after.sign())
            throw std::invalid_argument(
                "crossing_update: path does not cross the segment line transversally");
        // intersection parameter along the segment zi -> zj, exactly
        Rational denom = cross3(from, to, zj) - cross3(from, to, zi);
        if (denom.is_zero()) throw std::invalid_argument("crossing_update: degenerate crossing");
        Rational s = -cross3(from, to, zi) / denom;
        if (s <= Rational(0) || s >= Rational(1))
            throw std::invalid_argument("crossing_update: path misses the open segment");
        // left-to-right across the oriented segment i->j adds + n_ik n_kj
        Rational delta = d.intersections.at(i, k) * d.intersections.at(k, j);
        Rational nij = d.intersections.at(i, j);
        nij = side_before.sign() > 0 ? nij + delta : nij - delta;
        out.intersections.at(i, j) = nij;
        out.intersections.at(j, i) = -nij;
        out.points[k] = to;
        out.validate();
        return CrossingResult{out, elem};
    }

    // ray move: point j crosses {Im = Im z_i, Re > Re z_i}
    int j = move.moving, i = move.i;
    if (!in_range(j) || !in_range(i) || i == j)
        throw std::invalid_argument("crossing_update: bad ray move indices");
    const Pt& zi = d.points[i];
    const Pt& from = d.points[j];
    const Pt& to = move.target;
    Rational before = from.second - zi.second;
    Rational after = to.second - zi.second;
    if (before.is_zero() || after.is_zero() || before.sign() == after.sign())
        throw std::invalid_argument("crossing_update: path does not cross the ray level");
    Rational t = (zi.second - from.second) / (to.second - from.second);
    Rational re_cross = from.first + t * (to.first - from.first);
    if (re_cross <= zi.first)
        throw std::invalid_argument("crossing_update: path crosses left of the ray endpoint");
    // downward crossing adds + n_ij <A_j>
    Rational c = d.intersections.at(i, j);
    if (before.sign() < 0) c = -c;
    elem.at(i, j) += c;
    out.points[j] = to;
    out.intersections = elem * d.intersections * elem.transpose();
    out.basis_change = elem * d.basis_change;
    out.validate();
    return CrossingResult{out, elem};
}

}  // namespace holonov
