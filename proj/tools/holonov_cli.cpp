// holonov -- command-line driver: identity suites, flow-model runs, atlas
// checks, section gluing, weighted partition counts, the lattice Dirac
// toy, and diagram crossing moves.
//
// Exit codes: 0 pass, 2 verification failure, 3 schema error, 4 divergence.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "holonov/cocycle.hpp"
#include "holonov/fueter.hpp"
#include "holonov/io.hpp"
#include "holonov/models.hpp"
#include "holonov/novikov.hpp"
#include "holonov/verify.hpp"

using namespace holonov;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerification = 2;
constexpr int kExitSchema = 3;
constexpr int kExitDivergence = 4;

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw SchemaError(output_path + ": cannot open for writing");
    out << text;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct CommonFlags {
    std::string input, output;
    uint64_t seed = 2024;
    int samples = 0;
    double tolerance = 1e-9;
    double horizon = 0.0;
    bool json_out = false;
};

int run_forms_verify(const CommonFlags& flags, int propb, bool mutate) {
    VerifyOptions opt;
    opt.seed = flags.seed;
    opt.tolerance = flags.tolerance;
    opt.mutate = mutate;
    if (propb > 0) opt.property_b_samples = propb;
    if (flags.samples > 0) {
        opt.calibration_samples = flags.samples;
        opt.taming_samples = flags.samples;
    }
    VerifyReport rep = forms_verify(opt);
    if (flags.json_out) {
        json j;
        j["command"] = "forms-verify";
        j["seed"] = opt.seed;
        j["tolerance"] = opt.tolerance;
        j["samples"] = {{"property_b", opt.property_b_samples},
                        {"calibration", opt.calibration_samples},
                        {"taming", opt.taming_samples}};
        j["mutate"] = opt.mutate;
        j["checks"] = json::array();
        for (const auto& c : rep.checks)
            j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        j["pass"] = rep.pass;
        emit(j.dump(2) + "\n", flags.output);
    } else {
        emit(rep.text(), flags.output);
    }
    return rep.pass ? kExitPass : kExitVerification;
}

int run_model(const CommonFlags& flags, int alphas, double s_real, bool probe_s) {
    FlowModelFile file = load_flow_model(flags.input);
    if (flags.horizon > 0) file.flow.horizon = flags.horizon;
    ConvergenceProfile profile = file.growth ? convergence_profile(*file.growth)
                                             : convergence_profile(file.flow);
    std::ostringstream os;
    json j;
    os << "holonov model-run\n";
    os << "input: " << flags.input << "\nseed: " << flags.seed
       << "\ntolerance: " << fmt(flags.tolerance) << "\n";
    os << "critical points: " << file.flow.crit.size() << ", flows: " << file.flow.flows.size()
       << "\n";
    os << "rho_hat: " << fmt(profile.rho_hat) << (profile.finite_table ? " (finite table)" : "")
       << "\n";
    j["command"] = "model-run";
    j["seed"] = flags.seed;
    j["tolerance"] = flags.tolerance;
    j["rho_hat"] = profile.rho_hat;

    if (probe_s) {
        if (profile.diverges_at(s_real)) {
            os << "divergence: partial sums grow at Re(s) = " << fmt(s_real) << " < rho_hat\n";
            emit(os.str(), flags.output);
            std::cerr << "model-run: evaluation diverges at Re(s) = " << fmt(s_real) << "\n";
            return kExitDivergence;
        }
        os << "convergent at Re(s) = " << fmt(s_real) << "\n";
    }

    bool oracle_ok = true;
    Prng rng(flags.seed);
    int n_alpha = alphas > 0 ? alphas : 20;
    auto run_alpha = [&](const std::vector<Cplx>& alpha, const std::string& tag) {
        auto betti = flow_betti_numbers(file.flow, alpha, flags.tolerance);
        os << "alpha " << tag << ": betti (";
        json ja;
        for (size_t i = 0; i < betti.size(); ++i) os << (i ? "," : "") << betti[i];
        os << ")";
        for (int b : betti) ja["betti"].push_back(b);
        ja["alpha"] = tag;
        if (file.cellular) {
            auto oracle = file.cellular->betti(alpha, flags.tolerance);
            bool match = oracle == betti;
            oracle_ok = oracle_ok && match;
            os << " oracle (";
            for (size_t i = 0; i < oracle.size(); ++i) os << (i ? "," : "") << oracle[i];
            os << ") " << (match ? "match" : "MISMATCH");
            ja["oracle_match"] = match;
        }
        os << "\n";
        j["alphas"].push_back(ja);
    };

    std::vector<Cplx> zero(size_t(file.flow.rank), Cplx{});
    run_alpha(zero, "0");
    for (int t = 0; t < n_alpha; ++t) {
        std::vector<Cplx> alpha(size_t(file.flow.rank), Cplx{});
        std::ostringstream tag;
        tag << "#" << t + 1;
        for (auto& x : alpha) x = Cplx(rng.real(-2, 2), rng.real(-3, 3));
        run_alpha(alpha, tag.str());
    }
    j["oracle_ok"] = oracle_ok;
    os << (oracle_ok ? "PASS" : "FAIL") << "\n";
    emit(flags.json_out ? j.dump(2) + "\n" : os.str(), flags.output);
    return oracle_ok ? kExitPass : kExitVerification;
}

int run_atlas(const CommonFlags& flags) {
    Atlas atlas = load_atlas(flags.input);
    if (flags.horizon > 0) atlas.horizon = flags.horizon;
    auto rep = check_cocycle(atlas);
    std::ostringstream os;
    os << "holonov atlas-check\ninput: " << flags.input << "\nseed: " << flags.seed
       << "\ntolerance: " << fmt(flags.tolerance) << "\n";
    os << "charts: " << atlas.charts.size() << ", families: " << atlas.transitions.size() << "\n";
    os << "cocycle: " << (rep.verified ? "verified" : "VIOLATION") << " (" << rep.triples_checked
       << " triples, " << rep.inverse_pairs_checked << " inverse pairs)\n";
    if (!rep.verified) {
        os << "failure: " << rep.failure << "\n";
        emit(os.str(), flags.output);
        return kExitVerification;
    }
    int samples = flags.samples > 0 ? flags.samples : 20;
    Prng rng(flags.seed);
    std::vector<std::vector<Cplx>> psis;
    for (int i = 0; i < samples; ++i) {
        std::vector<Cplx> psi(size_t(atlas.rank), Cplx{});
        for (auto& x : psi) x = Cplx(rng.real(-1.5, 1.5), rng.real(-2, 2));
        psis.push_back(psi);
    }
    auto bundle = assemble_bundle(atlas, psis, flags.tolerance);
    bool ok = bundle.all_match(bundle.solution_count);
    int used = 0;
    for (const auto& s : bundle.samples)
        if (!s.skipped) ++used;
    os << "bundle: rank " << bundle.solution_count << " at " << used << "/" << samples
       << " sampled psi, frames " << (ok ? "consistent" : "INCONSISTENT") << "\n";
    os << (ok ? "PASS" : "FAIL") << "\n";
    if (flags.json_out) {
        json j;
        j["command"] = "atlas-check";
        j["seed"] = flags.seed;
        j["tolerance"] = flags.tolerance;
        j["verified"] = rep.verified;
        j["rank"] = bundle.solution_count;
        j["samples_used"] = used;
        j["pass"] = ok;
        emit(j.dump(2) + "\n", flags.output);
    } else {
        emit(os.str(), flags.output);
    }
    return ok ? kExitPass : kExitVerification;
}

int run_glue(const CommonFlags& flags, const std::string& atlas_path) {
    Atlas atlas = load_atlas(atlas_path);
    SectionsFile sections = load_sections(flags.input, atlas);
    GeneratingFunction f = pair_sections(sections.g1, sections.g2, atlas);
    emit(generating_function_to_json(f) + "\n", flags.output);
    return kExitPass;
}

int run_slag(const CommonFlags& flags, const std::string& kappa_arg) {
    WeightsFile w = load_weights(flags.input);
    ClassVector kappa = w.kappa;
    if (!kappa_arg.empty()) {
        kappa.clear();
        std::stringstream ss(kappa_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) kappa.push_back(Rational::parse(tok));
        if (kappa.size() != w.weights.positivity.size())
            throw SchemaError("--kappa: expected " + std::to_string(w.weights.positivity.size()) +
                              " components");
    }
    Rational n = slag_count(w.weights, kappa);
    std::ostringstream os;
    os << "n_kappa = " << n.str() << "\n";
    emit(os.str(), flags.output);
    return kExitPass;
}

int run_fueter(const CommonFlags& flags, int n, const std::string& family_path) {
    std::ostringstream os;
    json j;
    os << "holonov fueter\nseed: " << flags.seed << "\ntolerance: " << fmt(flags.tolerance) << "\n";
    j["command"] = "fueter";
    j["seed"] = flags.seed;
    j["tolerance"] = flags.tolerance;
    bool pass = true;
    if (n > 0) {
        int dim = kernel_dimension(n);
        os << "N = " << n << ": kernel dimension " << dim << "\n";
        j["kernel_dimension"] = dim;
        Prng rng(flags.seed);
        int samples = flags.samples > 0 ? flags.samples : 10;
        double worst = 0;
        for (int t = 0; t < samples; ++t) {
            QuaternionField f = QuaternionField::random(n, rng);
            worst = std::max(worst, fueter_square_residual(f) / f.max_norm());
        }
        os << "square identity: max residual " << fmt(worst) << " over " << samples
           << " random fields\n";
        j["square_residual"] = worst;
        pass = pass && worst <= 1e-12 && dim == 4;
        EigenPair p = dominant_eigenpair(std::min(n, 5), flags.seed);
        os << "eigenpair: lambda " << fmt(p.lambda) << ", residual " << fmt(p.residual) << "\n";
        j["eigen_residual"] = p.residual;
        pass = pass && p.residual <= 1e-8;
    }
    if (!family_path.empty()) {
        SelfAdjointFamily fam = load_family(family_path);
        auto res = spectral_flow(fam, 1e-10);
        os << "spectral flow: " << res.flow << " (" << res.crossings << " crossings, "
           << res.refinements << " refinements)\n";
        j["spectral_flow"] = res.flow;
    }
    os << (pass ? "PASS" : "FAIL") << "\n";
    j["pass"] = pass;
    emit(flags.json_out ? j.dump(2) + "\n" : os.str(), flags.output);
    return pass ? kExitPass : kExitVerification;
}

int run_crossing(const CommonFlags& flags, const std::string& moves_path) {
    CriticalValueDiagram d = load_diagram(flags.input);
    auto moves = load_moves(moves_path);
    RatMat total = RatMat::identity(int(d.points.size()));
    for (size_t i = 0; i < moves.size(); ++i) {
        try {
            auto res = crossing_update(d, moves[i]);
            d = res.diagram;
            total = res.basis_change * total;
        } catch (const std::invalid_argument& e) {
            std::cerr << "crossing: move " << i << " refused: " << e.what() << "\n";
            return kExitVerification;
        }
    }
    emit(diagram_to_json(d) + "\n", flags.output);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact exceptional-holonomy forms, Morse-Novikov complexes, cocycle bundles"};
    app.require_subcommand(1);

    CommonFlags flags;
    int propb = 0, alphas = 0, lattice_n = 0;
    double s_real = 0.0;
    bool mutate = false, json_out = false;
    std::string atlas_path, kappa_arg, family_path, moves_path;

    auto add_common = [&](CLI::App* cmd, bool with_input) {
        if (with_input) cmd->add_option("--input", flags.input, "input file")->required();
        cmd->add_option("--output", flags.output, "write the report here instead of stdout");
        cmd->add_option("--seed", flags.seed, "deterministic sampling seed");
        cmd->add_option("--samples", flags.samples, "sample count override");
        cmd->add_option("--tolerance", flags.tolerance, "float-layer tolerance");
        cmd->add_flag("--json", json_out, "machine-readable report");
    };

    CLI::App* fv = app.add_subcommand("forms-verify", "run the flat-model identity suite");
    add_common(fv, false);
    fv->add_option("--propb", propb, "Property-B sample count");
    fv->add_flag("--mutate", mutate, "test hook: flip one model coefficient");

    CLI::App* mr = app.add_subcommand("model-run", "twisted Betti tables for a flow model");
    add_common(mr, true);
    mr->add_option("--alphas", alphas, "number of sampled twists");
    mr->add_option("--horizon", flags.horizon, "truncation horizon override");
    CLI::Option* sopt = mr->add_option("--s-real", s_real, "probe convergence at this decay rate");

    CLI::App* ac = app.add_subcommand("atlas-check", "cocycle and bundle checks for an atlas");
    add_common(ac, true);
    ac->add_option("--horizon", flags.horizon, "truncation horizon override");

    CLI::App* gl = app.add_subcommand("glue", "pair two sections into a generating function");
    add_common(gl, true);
    gl->add_option("--atlas", atlas_path, "atlas file")->required();

    CLI::App* sl = app.add_subcommand("slag", "weighted partition count");
    add_common(sl, true);
    sl->add_option("--kappa", kappa_arg, "target class, comma-separated rationals");

    CLI::App* fu = app.add_subcommand("fueter", "lattice Dirac diagnostics and spectral flow");
    add_common(fu, false);
    fu->add_option("--N", lattice_n, "odd lattice size");
    fu->add_option("--family", family_path, "self-adjoint family file");

    CLI::App* cr = app.add_subcommand("crossing", "apply diagram crossing moves");
    add_common(cr, true);
    cr->add_option("--moves", moves_path, "moves file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        flags.json_out = json_out;
        if (fv->parsed()) return run_forms_verify(flags, propb, mutate);
        if (mr->parsed()) return run_model(flags, alphas, s_real, sopt->count() > 0);
        if (ac->parsed()) return run_atlas(flags);
        if (gl->parsed()) return run_glue(flags, atlas_path);
        if (sl->parsed()) return run_slag(flags, kappa_arg);
        if (fu->parsed()) {
            if (lattice_n == 0 && family_path.empty()) lattice_n = 5;
            return run_fueter(flags, lattice_n, family_path);
        }
        if (cr->parsed()) return run_crossing(flags, moves_path);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return kExitDivergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitSchema;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    }
    return kExitPass;
}
