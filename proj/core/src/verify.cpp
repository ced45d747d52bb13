#include "holonov/verify.hpp"

#include <cstdio>
#include <sstream>

#include "holonov/models.hpp"

namespace holonov {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string ranks_str(const std::vector<int>& v) {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

}  // namespace

VerifyReport forms_verify(const VerifyOptions& opt) {
    VerifyReport rep;
    rep.options = opt;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        rep.checks.push_back({name, pass, detail});
    };
    std::vector<int> rank_report;

    const auto& sm = standard_models();
    KForm omega = sm.spin7.omega;
    if (opt.mutate) {
        // flip the coefficient of dy1234 (test hook for the failure path)
        omega = omega + KForm::monomial(8, {5, 6, 7, 8}, Rational(-2));
    }
    Spin7Model model = sm.spin7;
    model.omega = omega;

    auto dec8 = project2_operators(model);
    auto dec7 = project2_operators(sm.g2);
    auto dec6 = project2_operators(sm.su3);

    // decomposition ranks and projector algebra
    {
        bool ok = dec8.ranks == std::vector<int>{7, 21} && dec7.ranks == std::vector<int>{7, 14} &&
                  dec6.ranks == std::vector<int>{1, 6, 8};
        for (const auto* dec : {&dec8, &dec7, &dec6}) {
            int n = int(dec->basis.size());
            RatMat sum(n, n);
            for (size_t i = 0; i < dec->projector.size() && ok; ++i) {
                ok = ok && dec->projector[i] * dec->projector[i] == dec->projector[i];
                for (size_t j = 0; j < dec->projector.size(); ++j)
                    if (i != j) ok = ok && (dec->projector[i] * dec->projector[j]).is_zero();
                sum = sum + dec->projector[i];
            }
            ok = ok && sum == RatMat::identity(n);
        }
        add("projector-ranks", ok,
            "dim8=" + ranks_str(dec8.ranks) + " dim7=" + ranks_str(dec7.ranks) +
                " dim6=" + ranks_str(dec6.ranks));
        rank_report = {dec8.ranks[0], dec8.ranks[1], dec7.ranks[1], dec7.ranks[0],
                       dec6.ranks[2], dec6.ranks[1], dec6.ranks[0]};
    }

    // eigenvalue characterisation on the projector images
    {
        bool ok = true;
        Prng rng(opt.seed);
        for (int t = 0; t < 20 && ok; ++t) {
            KForm b(8, 2);
            for (IndexMask m : dec8.basis) b.add_term(m, rng.rational(3, 2));
            auto parts = project2(b, dec8);
            ok = ok && hodge_star(wedge(parts[0], omega)) == parts[0].scaled(Rational(3));
            ok = ok && hodge_star(wedge(parts[1], omega)) == -parts[1];
            KForm c(7, 2);
            for (IndexMask m : dec7.basis) c.add_term(m, rng.rational(3, 2));
            auto pc = project2(c, dec7);
            ok = ok && hodge_star(wedge(pc[0], sm.g2.phi)) == pc[0].scaled(Rational(2));
            ok = ok && hodge_star(wedge(pc[1], sm.g2.phi)) == -pc[1];
        }
        add("wedge-eigenvalues", ok, "dim8: 3/-1, dim7: 2/-1 on projector images");
    }

    // orbit ranks and the Cayley codimension
    {
        auto r8 = orbit_rank(omega);
        auto r7 = orbit_rank(sm.g2.phi);
        auto r6 = orbit_rank(sm.su3.rho1);
        int cr = cayley_linearization_rank(sm.spin7);
        bool ok = r8.linearized_rank == 43 && r7.linearized_rank == 35 &&
                  r6.linearized_rank == 20 && cr == 4;
        add("orbit-ranks", ok,
            "gl-action " + std::to_string(r8.linearized_rank) + "/" +
                std::to_string(r7.linearized_rank) + "/" + std::to_string(r6.linearized_rank) +
                ", cayley codim " + std::to_string(cr) + " (locus dim " + std::to_string(16 - cr) +
                ")");
        rank_report.push_back(r8.linearized_rank);
        rank_report.push_back(r7.linearized_rank);
        rank_report.push_back(16 - cr);
    }

    // structural coherence of the model chain
    {
        bool ok = hodge_star(sm.g2.phi) == sm.g2.sigma;
        ok = ok && cylinder_lift_6to7(sm.su3).phi == sm.g2.phi;
        ok = ok && cylinder_lift_7to8(sm.g2).omega == sm.spin7.omega;
        ok = ok && omega_squared_constant() == Rational(1, 2);
        ok = ok && omega.term_count() == 14u && sm.g2.phi.term_count() == 7u;
        ok = ok && sm.su3.rho2 == pullback(sm.su3.rho1, sm.su3.cx);
        KForm sq = wedge(omega, omega);
        ok = ok && sq.term_count() == 1 && sq.coeff(IndexMask(0xFF)) == Rational(14);
        add("structure", ok, "sigma = *phi, lifts exact, omega^2 constant 1/2, Omega^2 = 14 vol");
    }

    // theta-square reconstruction
    {
        KForm sum = reconstruct_from_seven_part(sm.spin7);
        bool ok = sum.scaled(Rational(1, 7)) == sm.spin7.omega;
        add("seven-part-reconstruction", ok, "(sum theta_i^2)/7 == Omega");
    }

    // Property B on the 21-part
    {
        Prng rng(opt.seed + 1);
        bool ok = true;
        std::string counterexample;
        for (int t = 0; t < opt.property_b_samples && ok; ++t) {
            KForm alpha = random_21_part_form(rng, model, dec8);
            KForm res = energy_identity_residual(alpha, model, dec8);
            if (!res.is_zero()) {
                ok = false;
                counterexample = "alpha = " + alpha.str() + ", residual = " + res.str();
            }
        }
        add("property-b", ok,
            ok ? std::to_string(opt.property_b_samples) + " samples, exact" : counterexample);
    }

    // plane classification fixtures
    {
        auto coord_plane = [&](int ambient, std::vector<int> idx) {
            OrientedPlane p;
            p.ambient_dim = ambient;
            p.span = RatMat(ambient, int(idx.size()));
            for (size_t c = 0; c < idx.size(); ++c) p.span.at(idx[c] - 1, int(c)) = Rational(1);
            return p;
        };
        auto r41 = coord_plane(8, {1, 2, 3, 4});
        auto r42 = coord_plane(8, {5, 6, 7, 8});
        auto yp = coord_plane(7, {1, 2, 3});
        auto xp = coord_plane(7, {4, 5, 6, 7});
        bool ok = classify_plane(r41, sm.spin7).cls == PlaneClass::cayley &&
                  classify_plane(r42, sm.spin7).cls == PlaneClass::cayley &&
                  cayley_contraction_test(r41, sm.spin7) && cayley_contraction_test(r42, sm.spin7) &&
                  classify_plane(yp, sm.g2).cls == PlaneClass::associative &&
                  classify_plane(xp, sm.g2).cls == PlaneClass::coassociative;
        add("plane-classification", ok, "R41/R42 cayley (with the contraction test), y-span associative, x-span coassociative");
    }

    // calibration bound sampling
    {
        Prng rng(opt.seed + 2);
        bool ok = true;
        int cayley_hits = 0;
        double worst = -1e300;
        for (int t = 0; t < opt.calibration_samples && ok; ++t) {
            OrientedPlane p = (t % 10 == 0) ? random_cayley_plane(rng)
                                            : random_rational_plane(rng, 8, 4);
            Rational c = restrict_to(sm.spin7.omega, p).coeff(IndexMask(0x0F));
            Rational d = p.gram_det();
            bool bound = c.sign() <= 0 || c * c <= d;
            bool equality = c.sign() > 0 && c * c == d;
            bool is_cayley = classify_plane(p, sm.spin7).cls == PlaneClass::cayley;
            ok = ok && bound && (equality == is_cayley);
            if (equality) ++cayley_hits;
            double margin = c.to_double() / std::sqrt(d.to_double());
            if (margin > worst) worst = margin;
        }
        add("calibration-bound", ok,
            std::to_string(opt.calibration_samples) + " planes, " + std::to_string(cayley_hits) +
                " calibrated, max ratio " + fmt(worst));
    }

    // taming certificates
    {
        auto self_cert = taming_check(sm.spin7.omega, sm.spin7, opt.taming_samples, opt.seed + 3);
        auto neg_cert = taming_check(-sm.spin7.omega, sm.spin7, 64, opt.seed + 3);
        KForm eps = sm.spin7.omega + KForm::monomial(8, {1, 2, 3, 4}, Rational(1, 100));
        auto eps_cert = taming_check(eps, sm.spin7, opt.taming_samples, opt.seed + 3);
        bool ok = self_cert.tamed && self_cert.self_taming_exact && !neg_cert.tamed &&
                  eps_cert.tamed && !eps_cert.self_taming_exact;
        add("taming", ok,
            "self: gram = -norm exactly, min cayley value " + fmt(self_cert.min_cayley_value) +
                "; -Omega rejected; +dx1234/100 accepted");
    }

    // metric reconstruction
    {
        auto mf = metric_from_3form(sm.g2.phi);
        auto mf8 = metric_from_3form(sm.g2.phi.scaled(Rational(8)));
        bool ok = mf.positive && mf.exact && mf.g.g == RatMat::identity(7) &&
                  mf.volume_scale == Rational(1);
        ok = ok && mf8.exact && mf8.g.g == RatMat::identity(7).scaled(Rational(4));
        ok = ok && !metric_from_3form(KForm::monomial(7, {4, 5, 6})).positive;
        Prng rng(opt.seed + 4);
        for (int t = 0; t < 20 && ok; ++t) {
            RatMat a(7, 7);
            do {
                for (int i = 0; i < 7; ++i)
                    for (int j = 0; j < 7; ++j) a.at(i, j) = Rational(rng.integer(-2, 2));
            } while (det(a).sign() <= 0);
            auto mfa = metric_from_3form(pullback(sm.g2.phi, a));
            ok = ok && mfa.exact && mfa.g.g == a.transpose() * a && mfa.volume_scale == det(a);
        }
        add("hitchin-metric", ok, "phi0 -> Id, 8 phi0 -> 4 Id, equivariant on 20 transports");
    }

    // SU(3) structure verdicts
    {
        auto good = su3_check(sm.su3.omega, sm.su3.rho1);
        auto bad1 = su3_check(sm.su3.omega + KForm::monomial(6, {1, 3}, Rational(1, 2)), sm.su3.rho1);
        auto bad2 = su3_check(sm.su3.omega, KForm::monomial(6, {3, 4, 5}));
        bool ok = good.pass && good.cx_exact && good.lambda == Rational(-4) && !bad1.omega_rho_zero &&
                  !bad2.rho_positive && bad2.lambda == Rational(0);
        add("su3-check", ok, "standard passes (lambda = -4), perturbed omega and decomposable rho fail");
    }

    add("rank-report", rank_report == std::vector<int>{7, 21, 14, 7, 8, 6, 1, 43, 35, 12},
        "ranks " + ranks_str(rank_report));

    rep.pass = true;
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
    return rep;
}

std::string VerifyReport::text() const {
    std::ostringstream os;
    os << "holonov forms-verify\n";
    os << "seed: " << options.seed << "\n";
    os << "tolerance: " << fmt(options.tolerance) << "\n";
    os << "samples: property_b=" << options.property_b_samples
       << " calibration=" << options.calibration_samples << " taming=" << options.taming_samples
       << "\n";
    if (options.mutate) os << "mutate: one coefficient of the model form flipped\n";
    for (const auto& c : checks)
        os << (c.pass ? "ok   " : "FAIL ") << c.name << ": " << c.detail << "\n";
    os << (pass ? "PASS" : "FAIL") << " (" << checks.size() << " checks)\n";
    return os.str();
}

}  // namespace holonov
