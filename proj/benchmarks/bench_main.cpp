// Microbenchmarks for the hot paths: exact form algebra, projector
// application, Novikov convolution, partition counting, and the lattice
// Dirac operator.

#include <benchmark/benchmark.h>

#include "holonov/cocycle.hpp"
#include "holonov/fueter.hpp"
#include "holonov/models.hpp"
#include "holonov/novikov.hpp"
#include "holonov/prng.hpp"

using namespace holonov;

namespace {

static void BM_WedgeOmegaSquared(benchmark::State& state) {
    const auto& m = standard_models().spin7;
    for (auto _ : state) {
        auto sq = wedge(m.omega, m.omega);
        benchmark::DoNotOptimize(sq);
    }
}
BENCHMARK(BM_WedgeOmegaSquared);

static void BM_Project21(benchmark::State& state) {
    const auto& m = standard_models().spin7;
    auto dec = project2_operators(m);
    Prng rng(1);
    KForm b(8, 2);
    for (IndexMask mk : dec.basis) b.add_term(mk, rng.rational(4, 2));
    for (auto _ : state) {
        auto out = apply_two_form_operator(dec.projector[1], b, dec.basis);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_Project21);

static void BM_EnergyIdentity(benchmark::State& state) {
    const auto& m = standard_models().spin7;
    auto dec = project2_operators(m);
    Prng rng(2);
    KForm alpha = random_21_part_form(rng, m, dec);
    for (auto _ : state) {
        auto res = energy_identity_residual(alpha, m, dec);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_EnergyIdentity);

static void BM_CayleyRestriction(benchmark::State& state) {
    const auto& m = standard_models().spin7;
    Prng rng(3);
    OrientedPlane p = random_cayley_plane(rng);
    for (auto _ : state) {
        auto r = restrict_to(m.omega, p);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_CayleyRestriction);

static void BM_OrbitRank(benchmark::State& state) {
    const auto& m = standard_models().spin7;
    for (auto _ : state) {
        auto rep = orbit_rank(m.omega);
        benchmark::DoNotOptimize(rep.linearized_rank);
    }
}
BENCHMARK(BM_OrbitRank);

static void BM_TorusBetti(benchmark::State& state) {
    FlowModel f;
    f.rank = 2;
    f.theta = {-1.0, -1.0};
    f.crit = {{"P2", 2}, {"P1a", 1}, {"P1b", 1}, {"P0", 0}};
    auto c = [](long a, long b) { return ClassVector{Rational(a), Rational(b)}; };
    f.flows = {{0, 1, c(0, 0), 1},  {0, 1, c(1, 0), -1}, {0, 2, c(0, 0), -1}, {0, 2, c(0, 1), 1},
               {1, 3, c(0, 0), 1},  {1, 3, c(0, 1), -1}, {2, 3, c(0, 0), 1},  {2, 3, c(1, 0), -1}};
    std::vector<Cplx> alpha = {Cplx(0.3, 1.2), Cplx(-0.7, 0.4)};
    for (auto _ : state) {
        auto betti = flow_betti_numbers(f, alpha);
        benchmark::DoNotOptimize(betti);
    }
}
BENCHMARK(BM_TorusBetti);

static void BM_TableConvolution(benchmark::State& state) {
    Prng rng(4);
    EquivariantTable t, u;
    t.source_size = t.target_size = u.source_size = u.target_size = 4;
    t.rank = u.rank = 2;
    for (int i = 0; i < 12; ++i) {
        FlowRecord r;
        r.from = int(rng.below(4));
        r.to = int(rng.below(4));
        r.count = rng.integer(-3, 3);
        r.cls = {rng.rational(2, 2), rng.rational(2, 2)};
        t.records.push_back(r);
        r.from = int(rng.below(4));
        r.to = int(rng.below(4));
        u.records.push_back(r);
    }
    for (auto _ : state) {
        auto comp = compose_tables(t, u);
        benchmark::DoNotOptimize(comp);
    }
}
BENCHMARK(BM_TableConvolution);

static void BM_SlagCount(benchmark::State& state) {
    SlagWeights w;
    w.classes = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}, {Rational(1), Rational(1)}};
    w.positivity = {Rational(1), Rational(1)};
    for (int c = 0; c < 3; ++c)
        for (long k = 1; k <= 3; ++k) w.w[{k, c}] = Rational(1);
    ClassVector kappa = {Rational(4), Rational(4)};
    for (auto _ : state) {
        auto n = slag_count(w, kappa);
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_SlagCount);

static void BM_FueterApply(benchmark::State& state) {
    Prng rng(5);
    QuaternionField f = QuaternionField::random(int(state.range(0)), rng);
    for (auto _ : state) {
        auto df = fueter_apply(f);
        benchmark::DoNotOptimize(df);
    }
}
BENCHMARK(BM_FueterApply)->Arg(9)->Arg(15);

static void BM_SpectralFlow8(benchmark::State& state) {
    Prng rng(6);
    SelfAdjointFamily fam;
    int dim = 8;
    std::vector<std::vector<double>> a(size_t(dim), std::vector<double>(size_t(dim), 0.0));
    auto b = a;
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            a[size_t(i)][size_t(j)] = a[size_t(j)][size_t(i)] = rng.real(-1, 1);
            b[size_t(i)][size_t(j)] = b[size_t(j)][size_t(i)] = rng.real(-1, 1);
        }
    for (int g = 0; g < 17; ++g) {
        double t = -1.0 + 2.0 * double(g) / 16.0;
        fam.grid.push_back(t);
        std::vector<std::vector<Cplx>> m(size_t(dim), std::vector<Cplx>(size_t(dim), Cplx{}));
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                m[size_t(i)][size_t(j)] = Cplx(a[size_t(i)][size_t(j)] + t * b[size_t(i)][size_t(j)], 0);
        fam.matrices.push_back(m);
    }
    for (auto _ : state) {
        auto res = spectral_flow(fam);
        benchmark::DoNotOptimize(res.flow);
    }
}
BENCHMARK(BM_SpectralFlow8);

}  // namespace

BENCHMARK_MAIN();
