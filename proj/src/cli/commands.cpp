// commands.cpp — Analysis pipeline, reports and the gqms subcommands

#include "gqms/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "gqms/sampling.hpp"

namespace gqms::cli {

namespace {

std::string fmt(double x, int precision)
{
    std::ostringstream os;
    os << std::setprecision(precision) << x + 0.0;  // no "-0"
    return os.str();
}

std::string fmt(cplx z, int precision)
{
    std::ostringstream os;
    os << std::setprecision(precision) << z.real() + 0.0 << (z.imag() < 0 ? " - " : " + ")
       << std::abs(z.imag()) << "i";
    return os.str();
}

template <typename Vec>
std::string fmt_list(const Vec& v, int precision)
{
    std::ostringstream os;
    os << "(";
    for (Index i = 0; i < v.size(); ++i) {
        os << (i ? ", " : "") << fmt(v(i), precision);
    }
    os << ")";
    return os.str();
}

void print_matrix(std::ostream& os, const RMatrix& m, int precision, const std::string& indent)
{
    const int width = precision + 8;
    for (Index r = 0; r < m.rows(); ++r) {
        os << indent;
        for (Index c = 0; c < m.cols(); ++c) {
            os << std::setw(width) << fmt(m(r, c), precision);
        }
        os << '\n';
    }
}

json tolerances_json(const Options& opts)
{
    return {{"stability_margin", opts.tol_stability},
            {"temperature", opts.tol_temperature},
            {"rank", opts.tol_rank}};
}

json partition_json(const TemperaturePartition& p)
{
    json classes = json::array();
    for (std::size_t n = 0; n < p.classes.size(); ++n) {
        classes.push_back({{"modes", p.classes[n]}, {"beta", p.representative_beta[n]}});
    }
    return {{"classes", classes}, {"warnings", p.warnings}};
}

json rank_json(const linalg::RankDecision& r)
{
    return {{"rank", r.rank},
            {"columns", r.columns},
            {"kernel_dim", r.kernel_dim()},
            {"sigma_max", r.sigma_max},
            {"sigma_min", r.sigma_min},
            {"borderline", r.borderline}};
}

json singular_json(const gap::SingularityDecision& s)
{
    return {{"singular", s.singular}, {"ratio", s.ratio}, {"borderline", s.borderline}};
}

json gap_json(const gap::GapReport& g)
{
    json kms_classes = json::array();
    for (const auto& c : g.kms.classes) {
        kms_classes.push_back(rank_json(c));
    }
    json out;
    out["kms"] = {
        {"exists", g.kms_exists},
        {"criterion", "per temperature class: [U_n; V_n] has full column rank"},
        {"classes", kms_classes},
        {"kernel_dims", g.kms.kernel_dims()},
        {"gap_first_order_restricted", g.kms_gap_first_order ? json(*g.kms_gap_first_order) : json(nullptr)},
        {"matrix", to_json(g.kms_matrix)},
        {"eigenvalues", to_json(g.kms_eigenvalues)},
        {"form_singular", singular_json(g.kms_form_singular)},
        {"matrix_zero_eigenvalue", singular_json(g.kms_matrix_zero)},
    };
    out["gns"] = {
        {"exists", g.gns_exists},
        {"criterion", "[U | conj(V)] has rank 2d"},
        {"rank", rank_json(g.gns.rank)},
        {"gap_first_order_restricted", g.gns_gap_first_order ? json(*g.gns_gap_first_order) : json(nullptr)},
        {"matrix", to_json(g.gns_matrix)},
        {"eigenvalues", to_json(g.gns_eigenvalues)},
        {"alt_matrix", to_json(g.gns_alt_matrix)},
        {"alt_eigenvalues", to_json(g.gns_alt_eigenvalues)},
        {"alt_singular", singular_json(g.gns_alt_singular)},
        {"matrix_zero_eigenvalue", singular_json(g.gns_matrix_zero)},
    };
    out["diagnostics"] = {
        {"form_identity_residual", g.form_identity_residual},
        {"dual_drift_residual", g.dual_drift_residual},
        {"max_eigenvalue_imag", g.max_eigen_imag},
        {"max_eigenvalue_real", g.max_eigen_real},
        {"gns_alt_hermitian_residual", g.gns_alt_hermitian_residual},
        {"kms_consistent", g.kms_consistent()},
        {"gns_consistent", g.gns_consistent()},
        {"borderline", g.borderline()},
    };
    out["warnings"] = g.warnings;
    return out;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t index)
{
    // splitmix64 finalizer over seed and index
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

Analysis run_analysis(const GeneratorParams& params, const Options& opts)
{
    Analysis a;
    a.params = params;
    a.stability = is_stable(drift(params), opts.tol_stability);
    if (!a.stability.stable) {
        std::ostringstream msg;
        msg << "drift is not stable: spectral abscissa " << a.stability.abscissa << " is not below -"
            << opts.tol_stability;
        throw ModelError(msg.str(), a.stability.abscissa);
    }
    a.state = invariant_state(params);

    StandardizeOptions sopts;
    sopts.stability_margin = opts.tol_stability;
    sopts.temperature_tol = opts.tol_temperature;
    a.standardized = standardize(params, sopts);

    gap::GapOptions gopts;
    gopts.rank_tol = opts.tol_rank;
    a.gaps = gap::analyze_gaps(a.standardized, gopts);
    return a;
}

json analysis_to_json(const Analysis& a, const Options& opts)
{
    const auto& s = a.standardized;
    json out;
    out["tool_version"] = kToolVersion;
    out["tolerances"] = tolerances_json(opts);
    out["modes"] = a.params.modes();
    out["kraus"] = a.params.kraus();
    out["stability"] = {{"stable", a.stability.stable}, {"abscissa", a.stability.abscissa}};
    out["drift"] = to_json(drift(a.params).to_matrix());
    out["diffusion"] = to_json(diffusion(a.params).to_matrix());
    out["invariant_state"] = state_to_json(a.state);
    out["williamson"] = {
        {"nu", to_json(s.williamson.nu)},
        {"beta", to_json(s.williamson.beta)},
        {"G", to_json(s.williamson.g)},
        {"reconstruction_residual", s.williamson.reconstruction_residual},
        {"symplectic_residual", s.williamson.symplectic_residual},
        {"partition", partition_json(s.partition)},
    };
    out["standardized"] = {
        {"parameters", generator_to_json(s.params)},
        {"M1", to_json(s.m_parts.m1)},
        {"M2", to_json(s.m_parts.m2)},
        {"mean_removed", to_json(s.mean_removed)},
        {"zeta_residual", s.zeta_residual},
        {"diagonal_residual", s.diagonal_residual},
    };
    out["gap"] = gap_json(a.gaps);
    return out;
}

void print_analysis(std::ostream& os, const Analysis& a, const Options& opts)
{
    const int p = opts.precision;
    const auto& s = a.standardized;
    const auto& g = a.gaps;
    os << "gqms " << kToolVersion << "  d = " << a.params.modes() << ", m = " << a.params.kraus() << '\n';
    os << "tolerances: stability " << opts.tol_stability << ", temperature " << opts.tol_temperature
       << ", rank " << opts.tol_rank << "\n\n";

    os << "drift: spectral abscissa " << fmt(a.stability.abscissa, p) << " (stable)\n";
    os << "invariant state\n  mean " << fmt_list(a.state.mean, p) << "\n  covariance\n";
    print_matrix(os, a.state.covariance.to_matrix(), p, "    ");

    os << "\nWilliamson\n  nu   " << fmt_list(s.williamson.nu, p) << "\n  beta " << fmt_list(s.williamson.beta, p)
       << "\n  residuals: reconstruction " << fmt(s.williamson.reconstruction_residual, 3) << ", symplectic "
       << fmt(s.williamson.symplectic_residual, 3) << "\n  temperature classes:";
    for (std::size_t n = 0; n < s.partition.classes.size(); ++n) {
        os << " {";
        for (std::size_t k = 0; k < s.partition.classes[n].size(); ++k) {
            os << (k ? "," : "") << s.partition.classes[n][k] + 1;
        }
        os << "}";
    }
    os << '\n';

    os << "\nstandardization: zeta residual " << fmt(s.zeta_residual, 3) << ", diagonal residual "
       << fmt(s.diagonal_residual, 3) << '\n';

    os << "\nKMS spectral gap: " << (g.kms_exists ? "exists" : "does not exist") << "\n  kernel dimension per class:";
    for (const Index k : g.kms.kernel_dims()) {
        os << ' ' << k;
    }
    os << "\n  gap matrix eigenvalues " << fmt_list(g.kms_eigenvalues.real().eval(), p) << '\n';
    if (g.kms_gap_first_order) {
        os << "  first-order restricted gap " << fmt(*g.kms_gap_first_order, p) << '\n';
    }
    os << "  cross-checks: form singular " << (g.kms_form_singular.singular ? "yes" : "no")
       << ", zero eigenvalue " << (g.kms_matrix_zero.singular ? "yes" : "no") << '\n';

    os << "\nGNS spectral gap: " << (g.gns_exists ? "exists" : "does not exist") << "\n  rank [U | conj V] "
       << g.gns.rank.rank << " of " << 2 * a.params.modes() << "\n  gap matrix eigenvalues "
       << fmt_list(g.gns_eigenvalues.real().eval(), p) << '\n';
    if (g.gns_gap_first_order) {
        os << "  first-order restricted gap " << fmt(*g.gns_gap_first_order, p) << '\n';
    }
    os << "  cross-checks: alternative form singular " << (g.gns_alt_singular.singular ? "yes" : "no")
       << ", zero eigenvalue " << (g.gns_matrix_zero.singular ? "yes" : "no") << '\n';

    os << "\ndiagnostics: form identity " << fmt(g.form_identity_residual, 3) << ", dual drift "
       << fmt(g.dual_drift_residual, 3) << ", max |Im eig| " << fmt(g.max_eigen_imag, 3) << '\n';
    for (const auto& w : g.warnings) {
        os << "warning: " << w << '\n';
    }
}

int cmd_analyze(const std::string& path, const Options& opts, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const GeneratorParams params = read_generator(path);
        const Analysis a = run_analysis(params, opts);
        if (opts.json) {
            write_json(out, analysis_to_json(a, opts));
        } else {
            print_analysis(out, a, opts);
        }
        return kExitOk;
    });
}

int cmd_boson_chain(const models::BosonChainSpec& spec, const Options& opts, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const GeneratorParams params = models::boson_chain_params(spec);
        const Analysis a = run_analysis(params, opts);
        const models::BosonChainClosedForm cf = models::boson_chain_closed_form(spec);

        const RMatrix s_pipe = a.state.covariance.to_matrix();
        const double s_dev = linalg::max_abs(s_pipe - cf.s_full);
        const double nu_dev = linalg::max_abs(a.standardized.williamson.nu - cf.symplectic_eigenvalues);
        const double beta_dev = linalg::max_abs(a.standardized.williamson.beta - cf.final_betas);

        if (opts.json) {
            json j = analysis_to_json(a, opts);
            j["closed_form"] = {
                {"omega", spec.omega},
                {"beta1", spec.beta1},
                {"beta3", spec.beta3},
                {"lambda", cf.lambda},
                {"mu", cf.mu},
                {"r", cf.r},
                {"covariance", to_json(cf.s_full)},
                {"symplectic_eigenvalues", to_json(cf.symplectic_eigenvalues)},
                {"final_betas", to_json(cf.final_betas)},
                {"max_deviation", {{"covariance", s_dev}, {"nu", nu_dev}, {"beta", beta_dev}}},
            };
            write_json(out, j);
        } else {
            print_analysis(out, a, opts);
            const int p = opts.precision;
            out << "\nclosed form (omega = " << spec.omega << ", beta1 = " << fmt(spec.beta1, p)
                << ", beta3 = " << fmt(spec.beta3, p) << ")\n";
            out << "  lambda " << fmt(cf.lambda, p) << ", mu " << fmt(cf.mu, p) << ", r " << fmt(cf.r, p) << '\n';
            out << "  " << std::left << std::setw(12) << "" << std::setw(p + 10) << "pipeline" << std::setw(p + 10)
                << "closed form" << "deviation\n";
            for (Index k = 0; k < 3; ++k) {
                const double x = a.standardized.williamson.nu(k);
                const double y = cf.symplectic_eigenvalues(k);
                out << "  " << std::setw(12) << ("nu_" + std::to_string(k + 1)) << std::setw(p + 10) << fmt(x, p)
                    << std::setw(p + 10) << fmt(y, p) << fmt(std::abs(x - y), 3) << '\n';
            }
            for (Index k = 0; k < 3; ++k) {
                const double x = a.standardized.williamson.beta(k);
                const double y = cf.final_betas(k);
                out << "  " << std::setw(12) << ("beta_" + std::to_string(k + 1)) << std::setw(p + 10) << fmt(x, p)
                    << std::setw(p + 10) << fmt(y, p) << fmt(std::abs(x - y), 3) << '\n';
            }
            out << std::right << "  covariance max deviation " << fmt(s_dev, 3) << '\n';
        }
        return kExitOk;
    });
}

InstanceResult fuzz_instance(int index, Index d, std::uint64_t seed, const Options& opts, const FuzzOptions& fopts)
{
    InstanceResult r;
    r.index = index;
    r.d = d;
    sampling::Rng rng(mix(seed, static_cast<std::uint64_t>(index)));

    std::map<std::string, double> worst;
    auto record = [&](const std::string& name, double value, double limit) {
        auto [it, inserted] = worst.emplace(name, value);
        if (!inserted) {
            it->second = std::max(it->second, value);
        }
        if (!(value <= limit)) {
            r.violations.push_back({name, value, limit});
        }
    };

    try {
        const sampling::SampledParams sample = sampling::random_stable_params(d, rng, opts.tol_stability);
        const GeneratorParams& p = sample.params;
        r.instance = generator_to_json(p);

        const RealLinearOp z = drift(p);
        const RealLinearOp c = diffusion(p);
        const RMatrix cm = c.to_matrix();
        const double cscale = std::max(1.0, linalg::max_abs(cm));

        // diffusion positivity
        Eigen::SelfAdjointEigenSolver<RMatrix> ceig(cm, Eigen::EigenvaluesOnly);
        record("diffusion_positivity", -ceig.eigenvalues().minCoeff() / cscale, 1e-12);

        // Lyapunov residual and validity
        const RMatrix s = solve_lyapunov(z, c).to_matrix();
        const RMatrix zm = z.to_matrix();
        record("lyapunov_residual", linalg::max_abs(zm.transpose() * s + s * zm + cm) / cscale, 1e-10);
        const GaussianState inv = invariant_state(p);
        record("state_validity", -check_gaussian_state(inv).min_eigenvalue, 1e-9);

        // evolution: closed form vs quadrature
        const double unit = 1.0 / std::abs(sample.abscissa);
        GaussianState s0{sampling::complex_normal(d, rng), RealLinearOp::identity(d)};
        for (const double t : {0.25 * std::min(unit, 4.0), std::min(unit, 4.0)}) {
            const GaussianState a = evolve_state(p, s0, t, EvolutionMethod::ClosedForm);
            const GaussianState b = evolve_state(p, s0, t, EvolutionMethod::Quadrature);
            const double dev = std::max(linalg::scaled_diff(a.covariance.to_matrix(), b.covariance.to_matrix()),
                                        linalg::scaled_diff(a.mean, b.mean));
            record("evolution_paths", dev, 1e-9);
        }
        if (fopts.decay_fit) {
            const std::vector<double> times = decay_fit_times(sample.abscissa);
            const double rate = fit_covariance_decay_rate(p, s0, times);
            record("decay_fit", std::abs(rate - 2.0 * sample.abscissa) / std::abs(2.0 * sample.abscissa), 0.05);
        }

        // Williamson and standardization
        StandardizeOptions sopts;
        sopts.stability_margin = opts.tol_stability;
        sopts.temperature_tol = opts.tol_temperature;
        const StandardizedGenerator sg = standardize(p, sopts);
        record("williamson_reconstruction", sg.williamson.reconstruction_residual, 1e-9);
        record("williamson_symplectic", sg.williamson.symplectic_residual, 1e-9);
        record("standardized_zeta", sg.zeta_residual, 1e-9);
        record("standardized_diagonal", sg.diagonal_residual, 1e-8);
        const CVector z_ev = linalg::eigenvalues(zm);
        const CVector zt_ev = linalg::eigenvalues(drift(sg.params).to_matrix());
        double spec_dev = 0.0;
        for (Index i = 0; i < z_ev.size(); ++i) {
            spec_dev = std::max(spec_dev, (zt_ev.array() - z_ev(i)).abs().minCoeff());
        }
        record("drift_spectrum", spec_dev / std::max(1.0, z_ev.cwiseAbs().maxCoeff()), 1e-9);

        // gaps
        gap::GapOptions gopts;
        gopts.rank_tol = opts.tol_rank;
        const gap::GapReport g = gap::analyze_gaps(sg, gopts);
        r.kms_exists = g.kms_exists;
        r.gns_exists = g.gns_exists;
        record("form_identity", g.form_identity_residual, 1e-9);
        record("dual_drift", g.dual_drift_residual, 1e-12);
        const double escale = std::max(1.0, std::max(g.kms_eigenvalues.cwiseAbs().maxCoeff(),
                                                     g.gns_eigenvalues.cwiseAbs().maxCoeff()));
        record("eigen_imag", g.max_eigen_imag / escale, 1e-8);
        record("eigen_real", g.max_eigen_real / escale, 1e-8);
        record("gns_alt_hermitian", g.gns_alt_hermitian_residual, 1e-10);

        double neg_kms = -1e300, neg_gns = -1e300;
        for (int k = 0; k < 100; ++k) {
            const RVector x = sampling::real_normal(2 * d, rng);
            neg_kms = std::max(neg_kms, x.dot(g.kms_form * x));
            const CVector y = sampling::complex_normal(2 * d, rng);
            neg_gns = std::max(neg_gns, (y.adjoint() * g.gns_alt_matrix * y)(0, 0).real());
        }
        record("form_negativity", neg_kms, 1e-10);
        record("gns_alt_negativity", neg_gns, 1e-9 * std::max(1.0, linalg::max_abs(g.gns_alt_matrix)));

        if (g.borderline()) {
            r.borderline.push_back("gap criteria");
        } else {
            record("kms_equivalence", g.kms_consistent() ? 0.0 : 1.0, 0.0);
            record("gns_equivalence", g.gns_consistent() ? 0.0 : 1.0, 0.0);
        }
        record("gns_implies_kms", (g.gns_exists && !g.kms_exists) ? 1.0 : 0.0, 0.0);

        // invariance under a random symplectic change of parametrization
        const RealLinearOp m = sampling::random_symplectic(d, rng);
        const GeneratorParams p2 = transform_params(p, SymplecticParts::from_op(m));
        const StandardizedGenerator sg2 = standardize(p2, sopts);
        const gap::GapReport g2 = gap::analyze_gaps(sg2, gopts);
        if (g.borderline() || g2.borderline()) {
            r.borderline.push_back("invariance");
        } else {
            const bool same = g.kms_exists == g2.kms_exists && g.gns_exists == g2.gns_exists;
            record("invariance_verdicts", same ? 0.0 : 1.0, 0.0);
        }
        auto value_dev = [](const std::optional<double>& a, const std::optional<double>& b) {
            if (a.has_value() != b.has_value()) {
                return 0.0;  // verdict mismatch is reported above
            }
            return a ? std::abs(*a - *b) / std::max(1.0, std::abs(*a)) : 0.0;
        };
        record("invariance_values", std::max(value_dev(g.kms_gap_first_order, g2.kms_gap_first_order),
                                             value_dev(g.gns_gap_first_order, g2.gns_gap_first_order)),
               1e-7);

        if (fopts.a_t_check) {
            const RealLinearOp fact = gap::a_t_factorization(sg.params.u(), sg.params.v(), sg.beta);
            record("a_t_factorization", linalg::scaled_diff(fact.to_matrix(), g.kms_form_closed.to_matrix()), 1e-6);
        }
    } catch (const std::exception& e) {
        r.error = e.what();
        r.violations.push_back({"exception", 1.0, 0.0});
    }
    r.metrics.assign(worst.begin(), worst.end());
    return r;
}

std::vector<InstanceResult> run_fuzz(const Options& opts, const FuzzOptions& fopts)
{
    if (fopts.count < 0) {
        throw std::invalid_argument("fuzz: count must be nonnegative");
    }
    if (fopts.dims.empty()) {
        throw std::invalid_argument("fuzz: at least one dimension is required");
    }
    for (const int d : fopts.dims) {
        if (d < 1) {
            throw std::invalid_argument("fuzz: dimensions must be positive");
        }
    }
    const auto count = static_cast<std::size_t>(fopts.count);
    std::vector<InstanceResult> results(count);
    unsigned threads = fopts.threads > 0 ? static_cast<unsigned>(fopts.threads) : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));

    std::mutex mu;
    std::size_t next = 0;
    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= count) {
                    return;
                }
                i = next++;
            }
            const Index d = fopts.dims[i % fopts.dims.size()];
            results[i] = fuzz_instance(static_cast<int>(i), d, opts.seed, opts, fopts);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    return results;
}

int cmd_fuzz(const Options& opts, const FuzzOptions& fopts, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto start = std::chrono::steady_clock::now();
        const std::vector<InstanceResult> results = run_fuzz(opts, fopts);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        std::map<std::string, double> worst;
        std::map<Index, int> per_dim;
        int violating = 0, borderline = 0, kms = 0, gns = 0;
        json violations = json::array();
        for (const auto& r : results) {
            ++per_dim[r.d];
            kms += r.kms_exists;
            gns += r.gns_exists;
            borderline += !r.borderline.empty();
            for (const auto& [name, value] : r.metrics) {
                auto [it, inserted] = worst.emplace(name, value);
                if (!inserted) {
                    it->second = std::max(it->second, value);
                }
            }
            if (!r.violations.empty()) {
                ++violating;
                json checks = json::array();
                for (const auto& v : r.violations) {
                    checks.push_back({{"check", v.check}, {"value", v.value}, {"limit", v.limit}});
                }
                violations.push_back({{"index", r.index},
                                      {"d", r.d},
                                      {"checks", checks},
                                      {"error", r.error},
                                      {"instance", r.instance}});
            }
        }

        if (opts.json) {
            json dims = json::object();
            for (const auto& [d, n] : per_dim) {
                dims[std::to_string(d)] = n;
            }
            json j;
            j["tool_version"] = kToolVersion;
            j["seed"] = opts.seed;
            j["tolerances"] = tolerances_json(opts);
            j["count"] = fopts.count;
            j["per_dimension"] = dims;
            j["kms_exists"] = kms;
            j["gns_exists"] = gns;
            j["borderline"] = borderline;
            j["violating_instances"] = violating;
            j["worst"] = worst;
            j["violations"] = violations;
            write_json(out, j);
        } else {
            out << "gqms fuzz " << kToolVersion << ": " << fopts.count << " instances, seed " << opts.seed << '\n';
            for (const auto& [d, n] : per_dim) {
                out << "  d = " << d << ": " << n << '\n';
            }
            out << "  KMS gap exists " << kms << ", GNS gap exists " << gns << ", borderline " << borderline << '\n';
            if (!worst.empty()) {
                out << "  worst value per check\n";
                for (const auto& [name, value] : worst) {
                    out << "    " << std::left << std::setw(28) << name << std::right << fmt(value, 3) << '\n';
                }
            }
            out << "  violating instances: " << violating << '\n';
            for (const auto& v : violations) {
                out << "\ninstance " << v["index"].get<int>() << " (d = " << v["d"].get<long>() << ")\n";
                for (const auto& c : v["checks"]) {
                    out << "  " << c["check"].get<std::string>() << ": " << c["value"].get<double>() << " > "
                        << c["limit"].get<double>() << '\n';
                }
                if (!v["error"].get<std::string>().empty()) {
                    out << "  error: " << v["error"].get<std::string>() << '\n';
                }
                out << "  generator:\n";
                write_json(out, v["instance"]);
            }
        }
        err << "fuzz: " << fopts.count << " instances in " << fmt(seconds, 3) << " s\n";
        return violating == 0 ? kExitOk : kExitNumerical;
    });
}

int cmd_evolve(const std::string& path, const EvolveOptions& eopts, const Options& opts, std::ostream& out,
               std::ostream& err)
{
    return guarded(err, [&] {
        const GeneratorParams params = read_generator(path);
        const Index d = params.modes();
        GaussianState s0{CVector::Zero(d), RealLinearOp::identity(d)};
        if (eopts.state_path) {
            s0 = read_state(*eopts.state_path, d);
        }
        for (const double t : eopts.times) {
            if (!(t >= 0.0)) {
                throw std::invalid_argument("evolve: times must be nonnegative");
            }
        }

        const StabilityReport st = is_stable(drift(params));
        std::optional<GaussianState> inv;
        if (st.stable) {
            inv = invariant_state(params);
        }
        if (eopts.fit && !is_stable(drift(params), opts.tol_stability).stable) {
            throw ModelError("evolve: decay fit requires a stable drift", st.abscissa);
        }

        const std::vector<EvolutionSample> traj = evolve_trajectory(params, s0, eopts.times, eopts.method);
        auto distance = [&](const GaussianState& s) -> std::optional<double> {
            if (!inv) {
                return std::nullopt;
            }
            return (s.covariance.to_matrix() - inv->covariance.to_matrix()).norm() + (s.mean - inv->mean).norm();
        };

        std::optional<double> rate;
        if (eopts.fit) {
            const std::vector<double> times = decay_fit_times(st.abscissa);
            rate = fit_covariance_decay_rate(params, s0, times);
        }

        if (opts.json) {
            json rows = json::array();
            for (const auto& smp : traj) {
                const auto dist = distance(smp.state);
                rows.push_back({{"t", smp.t},
                                {"mean", to_json(smp.state.mean)},
                                {"covariance", to_json(smp.state.covariance.to_matrix())},
                                {"distance_to_invariant", dist ? json(*dist) : json(nullptr)}});
            }
            json j;
            j["tool_version"] = kToolVersion;
            j["abscissa"] = st.abscissa;
            j["rows"] = rows;
            if (rate) {
                j["decay_fit"] = {{"rate", *rate},
                                  {"expected", 2.0 * st.abscissa},
                                  {"relative_error", std::abs(*rate - 2.0 * st.abscissa) / std::abs(2.0 * st.abscissa)}};
            }
            write_json(out, j);
        } else {
            const int p = opts.precision;
            out << "spectral abscissa " << fmt(st.abscissa, p) << '\n';
            for (const auto& smp : traj) {
                const auto dist = distance(smp.state);
                out << "t = " << fmt(smp.t, p) << "\n  mean " << fmt_list(smp.state.mean, p)
                    << "\n  distance to invariant " << (dist ? fmt(*dist, p) : std::string("n/a")) << "\n  covariance\n";
                print_matrix(out, smp.state.covariance.to_matrix(), p, "    ");
            }
            if (rate) {
                out << "decay fit: rate " << fmt(*rate, p) << ", 2 * abscissa " << fmt(2.0 * st.abscissa, p)
                    << ", relative error " << fmt(std::abs(*rate - 2.0 * st.abscissa) / std::abs(2.0 * st.abscissa), 3)
                    << '\n';
            }
        }
        return kExitOk;
    });
}

int cmd_model(const std::string& name, const Options&, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        GeneratorParams p;
        if (name == "ou") {
            p = models::ou_params(std::log(4.0));
        } else if (name == "two-mode") {
            p = models::two_mode_example_params(1.0, 2.0, 1.0, 0.0, 2.0);
        } else if (name == "boson-chain") {
            p = models::boson_chain_params({});
        } else {
            throw std::invalid_argument("model: unknown model '" + name + "' (ou, two-mode, boson-chain)");
        }
        write_json(out, generator_to_json(p));
        return kExitOk;
    });
}

} // namespace gqms::cli
