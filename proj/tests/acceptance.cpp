// acceptance.cpp — One PASS/FAIL line per acceptance criterion

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "gqms/errors.hpp"
#include "gqms/gap.hpp"
#include "gqms/models.hpp"
#include "gqms/sampling.hpp"
#include "gqms/standardize.hpp"

using namespace gqms;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            if (pass) {
                detail << "failed: ";
            } else {
                detail << "; ";
            }
            detail << what;
            pass = false;
        }
    }
};

int failures = 0;

void run(int id, const char* title, double runtime_limit, const std::function<void(Outcome&)>& body)
{
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (runtime_limit > 0.0 && secs >= runtime_limit) {
        std::ostringstream msg;
        msg << "runtime " << secs << " s >= " << runtime_limit << " s";
        out.require(false, msg.str());
    }
    std::printf("%s %d: %s (%.3f s) %s\n", out.pass ? "PASS" : "FAIL", id, title, secs, out.detail.str().c_str());
    std::fflush(stdout);
    if (!out.pass) {
        ++failures;
    }
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double sigma_ratio(const RMatrix& a)
{
    Eigen::JacobiSVD<RMatrix> svd(a);
    const RVector s = svd.singularValues();
    return s(0) > 0.0 ? s(s.size() - 1) / s(0) : 0.0;
}

double sigma_ratio(const CMatrix& a)
{
    Eigen::JacobiSVD<CMatrix> svd(a);
    const RVector s = svd.singularValues();
    return s(0) > 0.0 ? s(s.size() - 1) / s(0) : 0.0;
}

double eigen_ratio(const CVector& e)
{
    const double mx = e.cwiseAbs().maxCoeff();
    return mx > 0.0 ? e.cwiseAbs().minCoeff() / mx : 0.0;
}

// Equal-temperature two-mode family with random (u, v, a, b, c), optionally
// scrambled by a random symplectic change of coordinates. The KMS gap never
// exists here.
GeneratorParams equal_temperature_instance(sampling::Rng& rng)
{
    std::uniform_real_distribution<double> unif(0.2, 2.0);
    const double u = unif(rng);
    const double v = u + unif(rng);
    const double a = unif(rng), b = unif(rng) - 1.1;
    const double c = a + unif(rng);
    const GeneratorParams p = models::two_mode_example_params(u, v, a, b, c);
    return transform_params(p, SymplecticParts::from_op(sampling::random_symplectic(2, rng, 0.5)));
}

// Random stable instances cycling d = 1, 2, 3; every fifth is from the
// equal-temperature family so that both verdicts occur.
std::vector<GeneratorParams> instance_set(int count, std::uint64_t seed, bool with_equal_temperature)
{
    sampling::Rng rng(seed);
    std::vector<GeneratorParams> out;
    for (int i = 0; i < count; ++i) {
        if (with_equal_temperature && i % 5 == 4) {
            out.push_back(equal_temperature_instance(rng));
        } else {
            out.push_back(sampling::random_stable_params(1 + i % 3, rng).params);
        }
    }
    return out;
}

} // namespace

int main()
{
    std::printf("acceptance suite, seed %llu\n", static_cast<unsigned long long>(kSeed));

    run(1, "boson chain reference", 1.0, [](Outcome& o) {
        const models::BosonChainSpec spec;
        const GeneratorParams p = models::boson_chain_params(spec);
        const StandardizedGenerator sg = standardize(p);
        const gap::GapReport r = gap::analyze_gaps(sg);
        RVector expected(3);
        expected << 2.8, 2.5, 2.2;
        const double nu_err = linalg::max_abs(sg.williamson.nu - expected);
        o.require(nu_err <= 1e-9, "nu error " + fmt(nu_err));
        o.require(sg.partition.size() == 3, "expected three distinct beta");
        o.require(r.kms_exists, "kms_gap_exists should be true");
        o.require(!r.gns_exists, "gns_gap_exists should be false");
        const RMatrix s = solve_lyapunov(drift(p), diffusion(p)).to_matrix();
        const double s_err = linalg::max_abs(s - models::boson_chain_closed_form(spec).s_full);
        o.require(s_err <= 1e-9, "covariance error " + fmt(s_err));
        o.detail << "nu err " << fmt(nu_err) << ", S err " << fmt(s_err);
    });

    run(2, "equal-temperature counterexample", 1.0, [](Outcome& o) {
        const GeneratorParams p = models::two_mode_example_params(1.0, 2.0, 1.0, 0.0, 2.0);
        o.require(is_stable(drift(p)).stable, "drift not stable");
        const GaussianState inv = invariant_state(p);
        const double s_err = linalg::max_abs(inv.covariance.to_matrix() - (5.0 / 3.0) * RMatrix::Identity(4, 4));
        o.require(s_err <= 1e-10, "covariance error " + fmt(s_err));
        const StandardizedGenerator sg = standardize(p);
        const double b_err = (sg.beta.array() - std::log(4.0)).abs().maxCoeff();
        o.require(b_err <= 1e-10, "beta error " + fmt(b_err));
        const gap::GapReport r = gap::analyze_gaps(sg);
        o.require(!r.kms_exists, "kms_gap_exists should be false");
        o.require(r.kms.kernel_dims() == std::vector<Index>{1}, "per-class kernel dimension should be 1");
        Eigen::JacobiSVD<RMatrix> svd(r.kms_form);
        const double smin = svd.singularValues().minCoeff();
        o.require(smin < 1e-10, "smallest singular value " + fmt(smin));
        o.detail << "S err " << fmt(s_err) << ", beta err " << fmt(b_err) << ", sigma_min " << fmt(smin);
    });

    run(3, "one-mode OU regression", 1.0, [](Outcome& o) {
        const GeneratorParams p = models::ou_params(std::log(4.0));
        const RealLinearOp z = drift(p);
        const double z_err = linalg::max_abs(z.to_matrix() + 0.5 * RMatrix::Identity(2, 2));
        const double c_err = linalg::max_abs(diffusion(p).to_matrix() - (5.0 / 3.0) * RMatrix::Identity(2, 2));
        const double s_err =
            linalg::max_abs(invariant_state(p).covariance.to_matrix() - (5.0 / 3.0) * RMatrix::Identity(2, 2));
        o.require(z_err <= 1e-12 && c_err <= 1e-12 && s_err <= 1e-12, "Z, C or S mismatch");
        const gap::GapReport r = gap::analyze_gaps(standardize(p));
        o.require(r.kms_exists && r.gns_exists, "both gaps should exist");
        const double kg = r.kms_gap_first_order.value_or(NAN), gg = r.gns_gap_first_order.value_or(NAN);
        o.require(std::abs(kg - 0.5) <= 1e-10, "KMS gap " + fmt(kg));
        o.require(std::abs(gg - 0.5) <= 1e-10, "GNS gap " + fmt(gg));
        o.detail << "gaps " << kg << ", " << gg;
    });

    const int n_instances = 500;
    const std::vector<GeneratorParams> random_set = instance_set(n_instances, kSeed, false);

    run(4, "explicit KMS form vs drift form", 60.0, [&](Outcome& o) {
        sampling::Rng rng(kSeed + 4);
        double worst_rel = 0.0, worst_quad = -INFINITY;
        for (const GeneratorParams& p : random_set) {
            const StandardizedGenerator sg = standardize(p);
            const RealLinearOp z = drift(sg.params);
            const RealLinearOp dcsch = RealLinearOp::diagonal(
                (1.0 / (0.5 * sg.beta.array()).sinh()).matrix());
            const RealLinearOp via_drift = z.sharp() * dcsch + dcsch * z;
            const RealLinearOp closed = gap::kms_form_operator(sg.params.u(), sg.params.v(), sg.beta);
            worst_rel = std::max(worst_rel, linalg::scaled_diff(closed.to_matrix(), via_drift.to_matrix()));
            const RMatrix f = via_drift.to_matrix();
            for (int k = 0; k < 100; ++k) {
                RVector x = sampling::real_normal(f.rows(), rng);
                x.normalize();
                worst_quad = std::max(worst_quad, x.dot(f * x));
            }
        }
        o.require(worst_rel <= 1e-9, "relative difference " + fmt(worst_rel));
        o.require(worst_quad <= 1e-10, "x^T F x reached " + fmt(worst_quad));
        o.detail << n_instances << " instances, worst rel diff " << fmt(worst_rel) << ", max x^T F x "
                 << fmt(worst_quad);
    });

    run(5, "criterion equivalences", 0.0, [&](Outcome& o) {
        const std::vector<GeneratorParams> mixed = instance_set(n_instances, kSeed, true);
        const double tol = 1e-9;
        auto band = [&](double ratio) { return ratio >= tol / 10 && ratio <= tol * 10; };
        int kms_true = 0, gns_true = 0, borderline = 0, kms_mismatch = 0, gns_mismatch = 0, cor_violations = 0;
        for (const GeneratorParams& p : mixed) {
            const StandardizedGenerator sg = standardize(p);
            const gap::GapReport r = gap::analyze_gaps(sg);
            kms_true += r.kms_exists;
            gns_true += r.gns_exists;
            if (r.gns_exists && !r.kms_exists) {
                ++cor_violations;
            }
            const double form_ratio = sigma_ratio(r.kms_form);
            const double kms_eig_ratio = eigen_ratio(r.kms_eigenvalues);
            const double alt_ratio = sigma_ratio(r.gns_alt_matrix);
            const double gns_eig_ratio = eigen_ratio(r.gns_eigenvalues);
            const bool kms_band = r.kms.borderline() || band(form_ratio) || band(kms_eig_ratio);
            const bool gns_band = r.gns.borderline() || band(alt_ratio) || band(gns_eig_ratio);
            if (kms_band || gns_band) {
                ++borderline;
            }
            if (!kms_band && !(r.kms_exists == (form_ratio > tol) && r.kms_exists == (kms_eig_ratio > tol))) {
                ++kms_mismatch;
            }
            if (!gns_band && !(r.gns_exists == (alt_ratio > tol) && r.gns_exists == (gns_eig_ratio > tol))) {
                ++gns_mismatch;
            }
        }
        o.require(kms_mismatch == 0, std::to_string(kms_mismatch) + " KMS disagreements");
        o.require(gns_mismatch == 0, std::to_string(gns_mismatch) + " GNS disagreements");
        o.require(cor_violations == 0, std::to_string(cor_violations) + " instances with GNS but no KMS gap");
        o.require(kms_true < n_instances && kms_true > 0, "KMS verdicts not mixed");
        o.require(gns_true < n_instances && gns_true > 0, "GNS verdicts not mixed");
        o.detail << n_instances << " instances, KMS exists " << kms_true << ", GNS exists " << gns_true
                 << ", borderline " << borderline;
    });

    run(6, "invariance under symplectic reparametrization", 0.0, [&](Outcome& o) {
        const std::vector<GeneratorParams> mixed = instance_set(200, kSeed + 6, true);
        sampling::Rng rng(kSeed + 60);
        int verdict_mismatch = 0, skipped = 0;
        double worst = 0.0;
        for (const GeneratorParams& p : mixed) {
            const RealLinearOp m = sampling::random_symplectic(p.modes(), rng, 0.5);
            const gap::GapReport a = gap::analyze_gaps(standardize(p));
            const gap::GapReport b = gap::analyze_gaps(standardize(transform_params(p, SymplecticParts::from_op(m))));
            if (a.borderline() || b.borderline()) {
                ++skipped;
                continue;
            }
            if (a.kms_exists != b.kms_exists || a.gns_exists != b.gns_exists) {
                ++verdict_mismatch;
                continue;
            }
            if (a.kms_gap_first_order) {
                worst = std::max(worst, std::abs(*a.kms_gap_first_order - *b.kms_gap_first_order));
            }
            if (a.gns_gap_first_order) {
                worst = std::max(worst, std::abs(*a.gns_gap_first_order - *b.gns_gap_first_order));
            }
        }
        o.require(verdict_mismatch == 0, std::to_string(verdict_mismatch) + " verdict changes");
        o.require(worst <= 1e-7, "gap difference " + fmt(worst));
        o.detail << "200 pairs, borderline skipped " << skipped << ", worst gap diff " << fmt(worst);
    });

    run(7, "Williamson on planted covariances", 0.0, [](Outcome& o) {
        sampling::Rng rng(kSeed + 7);
        double nu_err = 0.0, rec = 0.0, symp = 0.0;
        for (int k = 0; k < 200; ++k) {
            const auto planted = sampling::planted_covariance(1 + k % 3, rng);
            const WilliamsonResult w = williamson(planted.s);
            nu_err = std::max(nu_err, linalg::max_abs(w.nu - planted.nu));
            rec = std::max(rec, w.reconstruction_residual);
            symp = std::max(symp, w.symplectic_residual);
        }
        o.require(nu_err <= 1e-9, "nu error " + fmt(nu_err));
        o.require(rec <= 1e-9, "reconstruction residual " + fmt(rec));
        o.require(symp <= 1e-9, "symplectic residual " + fmt(symp));
        o.detail << "200 covariances, nu err " << fmt(nu_err) << ", reconstruction " << fmt(rec)
                 << ", symplectic " << fmt(symp);
    });

    run(8, "evolution paths and decay rate", 0.0, [](Outcome& o) {
        sampling::Rng rng(kSeed + 8);
        double path = 0.0, fit = 0.0;
        for (int k = 0; k < 50; ++k) {
            const Index d = 1 + k % 3;
            const auto sample = sampling::random_stable_params(d, rng);
            const GaussianState s0{sampling::complex_normal(d, rng), RealLinearOp::identity(d)};
            const double t = std::min(4.0, 1.0 / std::abs(sample.abscissa));
            const GaussianState a = evolve_state(sample.params, s0, t, EvolutionMethod::ClosedForm);
            const GaussianState b = evolve_state(sample.params, s0, t, EvolutionMethod::Quadrature);
            path = std::max({path, linalg::scaled_diff(a.covariance.to_matrix(), b.covariance.to_matrix()),
                             linalg::scaled_diff(a.mean, b.mean)});
            const double rate =
                fit_covariance_decay_rate(sample.params, s0, decay_fit_times(sample.abscissa));
            fit = std::max(fit, std::abs(rate - 2.0 * sample.abscissa) / std::abs(2.0 * sample.abscissa));
        }
        o.require(path <= 1e-9, "path difference " + fmt(path));
        o.require(fit <= 0.05, "decay fit relative error " + fmt(fit));
        o.detail << "50 instances, path diff " << fmt(path) << ", worst fit error " << fmt(fit);
    });

    run(9, "A_t factorization of the KMS form", 0.0, [](Outcome& o) {
        const std::vector<GeneratorParams> set = instance_set(50, kSeed + 9, false);
        double worst = 0.0;
        for (const GeneratorParams& p : set) {
            const StandardizedGenerator sg = standardize(p);
            const RMatrix closed = gap::kms_form_operator(sg.params.u(), sg.params.v(), sg.beta).to_matrix();
            const RMatrix quad = gap::a_t_factorization(sg.params.u(), sg.params.v(), sg.beta).to_matrix();
            worst = std::max(worst, linalg::scaled_diff(quad, closed));
        }
        o.require(worst <= 1e-6, "relative difference " + fmt(worst));
        o.detail << "50 instances, worst rel diff " << fmt(worst);
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
