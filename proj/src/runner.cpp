#include "euler2d/runner.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "euler2d/analysis.hpp"
#include "euler2d/commutator.hpp"
#include "euler2d/doss.hpp"
#include "euler2d/io.hpp"
#include "euler2d/mollifier.hpp"
#include "euler2d/parallel.hpp"
#include "euler2d/rng.hpp"
#include "euler2d/spectral.hpp"
#include "euler2d/vorticity.hpp"

namespace euler2d {

namespace {

KernelEvaluator make_kernel(const RunConfig& cfg) {
    if (!cfg.kernel_table_path.empty() && !cfg.kernel_rebuild &&
        std::filesystem::exists(cfg.kernel_table_path)) {
        return KernelEvaluator::load(cfg.kernel_table_path);
    }
    KernelEvaluator k(cfg.kernel_split, KernelTableSpec{cfg.kernel_table_n, cfg.kernel_core_cells});
    if (!cfg.kernel_table_path.empty()) k.save(cfg.kernel_table_path);
    return k;
}

BrownianDriver make_driver(const RunConfig& cfg, const NoiseBasis& basis) {
    return BrownianDriver(cfg.seed, basis.mode_count(), cfg.solver.dt, cfg.driver_substeps);
}

std::string schema_text(const std::string& experiment) {
    std::ostringstream s;
    s << "experiment = " << experiment << "\n";
    if (experiment == "simulate") {
        s << "summary.csv: time, mean_displacement, sup_ratio, measure_deviation\n"
          << "  time               stored solver time\n"
          << "  mean_displacement  marker/realization average torus distance from the labels\n"
          << "  sup_ratio          ||xi_t||_inf / ||xi_0||_inf from a CIC deposit\n"
          << "  measure_deviation  max relative occupancy deviation on the coarse grid\n"
          << "flow.bin: binary flow snapshot (header + little-endian f64 positions)\n"
          << "convergence.json: per-window Picard distance traces\n";
    } else if (experiment == "picard-trace") {
        s << "picard.csv: window, t_begin, t_end, iteration, rho\n";
    } else if (experiment == "stability-sweep") {
        s << "stability.csv: eps, kernel_l1, flow_dist, bound\n"
          << "weak.csv: eps, phi, time, value (E|<phi,xi^eps>-<phi,xi>| by marker sums)\n";
    } else if (experiment == "commutator-scan") {
        s << "commutator.csv: eps, p, lp_norm, bound\n";
    } else if (experiment == "doss-check") {
        s << "doss.csv: dt, distance, min_det, max_det\n";
    } else if (experiment == "lemma-suite") {
        s << "lemma.csv: check, value, threshold, pass\n";
    } else if (experiment == "kernel-build") {
        s << "kernel_table.bin: binary kernel table (header + little-endian f64 pairs)\n";
    }
    return s.str();
}

ExperimentOutput run_simulate(const RunConfig& cfg) {
    ExperimentOutput out;
    const KernelEvaluator kernel = make_kernel(cfg);
    const NoiseBasis basis = cfg.make_basis();
    const BrownianDriver driver = make_driver(cfg, basis);
    const Xi0Preset xi0 = cfg.make_xi0();
    const std::vector<double> xi0_markers = sample_xi0(xi0, cfg.sim_n);

    PicardReport report;
    const FlowState flow = solve_euler_flow(cfg.sim_n, cfg.sim_m, xi0_markers, basis, driver,
                                            cfg.solver, kernel, &report);

    CsvWriter summary({"time", "mean_displacement", "sup_ratio", "measure_deviation"});
    const std::vector<Vec2> labels = FlowState::initial_markers(cfg.sim_n);
    const int coarse = std::max(2, cfg.sim_n / 4);
    for (int s = 0; s < flow.stored_count(); ++s) {
        double disp = 0.0;
        for (int m = 0; m < flow.realizations; ++m)
            for (int j = 0; j < flow.marker_count(); ++j)
                disp += torus_distance(flow.pos(s, m, j), labels[j]);
        disp /= static_cast<double>(flow.realizations) * flow.marker_count();
        const VorticityField xi = pushforward_vorticity(flow, xi0_markers, s, DepositScheme::CIC);
        const MaxPrincipleResult mp = max_principle_check(xi, xi0.sup_norm);
        const MeasurePreservationResult mpres = measure_preservation_check(flow, s, coarse);
        summary.row_values({flow.times[s], disp, mp.sup_ratio, mpres.max_relative_deviation});
    }

    nlohmann::json conv;
    conv["converged"] = report.converged;
    conv["total_iterations"] = report.total_iterations;
    nlohmann::json windows = nlohmann::json::array();
    for (const auto& w : report.windows) {
        nlohmann::json jw;
        jw["t_begin"] = w.t_begin;
        jw["t_end"] = w.t_end;
        jw["rho"] = w.rho;
        windows.push_back(jw);
    }
    conv["windows"] = windows;

    out.files.emplace_back("summary.csv", summary.text());
    out.files.emplace_back("convergence.json", conv.dump(2) + "\n");
    out.files.emplace_back("flow.bin", flow.to_bytes());
    out.primary_csv = "summary.csv";
    return out;
}

ExperimentOutput run_picard_trace(const RunConfig& cfg) {
    ExperimentOutput out;
    const KernelEvaluator kernel = make_kernel(cfg);
    const NoiseBasis basis = cfg.make_basis();
    const BrownianDriver driver = make_driver(cfg, basis);
    const std::vector<double> xi0_markers = sample_xi0(cfg.make_xi0(), cfg.sim_n);

    PicardReport report;
    solve_euler_flow(cfg.sim_n, cfg.sim_m, xi0_markers, basis, driver, cfg.solver, kernel, &report);
    CsvWriter csv({"window", "t_begin", "t_end", "iteration", "rho"});
    for (size_t w = 0; w < report.windows.size(); ++w)
        for (size_t i = 0; i < report.windows[w].rho.size(); ++i)
            csv.row_values({static_cast<double>(w), report.windows[w].t_begin,
                            report.windows[w].t_end, static_cast<double>(i),
                            report.windows[w].rho[i]});
    out.files.emplace_back("picard.csv", csv.text());
    out.primary_csv = "picard.csv";
    return out;
}

ExperimentOutput run_stability_sweep(const RunConfig& cfg) {
    ExperimentOutput out;
    const KernelEvaluator kernel = make_kernel(cfg);
    const NoiseBasis basis = cfg.make_basis();
    const BrownianDriver driver = make_driver(cfg, basis);
    const Xi0Preset xi0 = cfg.make_xi0();
    const std::vector<double> xi0_markers = sample_xi0(xi0, cfg.sim_n);

    TorusQuadConfig quad;
    quad.base_cells = 32;
    quad.ratio = 0.4;
    quad.max_depth = 16;
    const double c_hat = log_lipschitz_sweep(kernel, 60, cfg.seed ^ 0xA5A5u, 1e-3, 0.5, quad).max_ratio;

    // exact flow plus one regularized flow per eps, common noise path
    SolverConfig base = cfg.solver;
    base.mollify_eps = 0.0;
    const FlowState exact = direct_self_consistent_solve(cfg.sim_n, cfg.sim_m, xi0_markers, basis,
                                                         driver, base, kernel);
    const double rate = 2.0 * c_hat * xi0.sup_norm + basis.l2_c01_norm();

    CsvWriter csv({"eps", "kernel_l1", "flow_dist", "bound"});
    CsvWriter weak({"eps", "phi", "time", "value"});
    std::vector<TestFunction> phis;
    for (int i = 0; i < 3; ++i) phis.push_back(TestFunction::random(cfg.seed ^ (77u + i), 3, 1.0));
    std::vector<int> t_probe;
    for (int s = 0; s < exact.stored_count(); s += std::max(1, exact.stored_count() / 4))
        t_probe.push_back(s);

    for (double eps : cfg.sweep_eps) {
        const KernelEvaluator mollified(kernel.split_config(), eps,
                                        std::max(256, cfg.solver.field_n > 0 ? cfg.solver.field_n
                                                                             : cfg.sim_n));
        const double l1 = kernel_l1_distance(kernel, mollified, quad);
        SolverConfig mcfg = cfg.solver;
        mcfg.mollify_eps = eps;
        const FlowState approx = direct_self_consistent_solve(cfg.sim_n, cfg.sim_m, xi0_markers,
                                                              basis, driver, mcfg, kernel);
        const double dist = flow_distance(approx, exact);
        const double v0 = xi0.sup_norm * cfg.solver.horizon * l1;
        const double bound = comparison_v(cfg.solver.horizon, v0, rate > 0.0 ? rate : 1e-12);
        csv.row_values({eps, l1, dist, bound});

        const auto table = weak_vorticity_convergence(exact, approx, xi0_markers, phis, t_probe);
        for (size_t p = 0; p < phis.size(); ++p)
            for (size_t t = 0; t < t_probe.size(); ++t)
                weak.row_values({eps, static_cast<double>(p), exact.times[t_probe[t]],
                                 table[p][t]});
    }
    out.files.emplace_back("stability.csv", csv.text());
    out.files.emplace_back("weak.csv", weak.text());
    out.primary_csv = "stability.csv";
    return out;
}

ExperimentOutput run_commutator_scan(const RunConfig& cfg) {
    ExperimentOutput out;
    const int n = 256;
    // smooth divergence-free v induced by a random low-degree vorticity
    const TestFunction xi_stream = TestFunction::random(cfg.seed ^ 0x51u, 6, 1.0);
    ScalarGrid stream(n);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) stream.at(ix, iy) = xi_stream.value(stream.point(ix, iy));
    const VectorGrid v = velocity_from_vorticity(stream);
    ScalarGrid w(n);
    const TestFunction wf = TestFunction::random(cfg.seed ^ 0xBEEFu, 4, 1.0);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) w.at(ix, iy) = wf.value(w.point(ix, iy));

    CsvWriter csv({"eps", "p", "lp_norm", "bound"});
    bool all_ok = true;
    for (double p : {1.0, 2.0, 4.0}) {
        const auto rows = commutator_lp_decay(v, w, cfg.sweep_eps, p);
        for (const auto& r : rows) {
            csv.row_values({r.eps, p, r.lp_norm, r.bound});
            all_ok = all_ok && r.lp_norm <= r.bound;
        }
    }
    out.files.emplace_back("commutator.csv", csv.text());
    out.primary_csv = "commutator.csv";
    out.checks_passed = all_ok;
    return out;
}

ExperimentOutput run_doss_check(const RunConfig& cfg) {
    ExperimentOutput out;
    const KernelEvaluator kernel = make_kernel(cfg);
    const NoiseBasis basis = cfg.make_basis();
    const BrownianDriver driver = make_driver(cfg, basis);
    const std::vector<double> xi0_markers = sample_xi0(cfg.make_xi0(), cfg.sim_n);

    const NoiseFlow nf(basis, driver, cfg.doss_grid_n, cfg.solver.dt, cfg.solver.horizon, cfg.sim_m);
    const FlowState tilde = random_ode_solve(nf, xi0_markers, cfg.sim_n, kernel,
                                             cfg.solver.store_stride);
    SolverConfig dcfg = cfg.solver;
    dcfg.drift_mode = DriftMode::ParticleSum;
    const FlowState direct = direct_self_consistent_solve(cfg.sim_n, cfg.sim_m, xi0_markers, basis,
                                                          driver, dcfg, kernel);
    const double dist = equivalence_check(nf, tilde, direct);
    double min_det = 1e300, max_det = -1e300;
    for (int m = 0; m < cfg.sim_m; ++m) {
        min_det = std::min(min_det, nf.min_det(m));
        max_det = std::max(max_det, nf.max_det(m));
    }
    CsvWriter csv({"dt", "distance", "min_det", "max_det"});
    csv.row_values({cfg.solver.dt, dist, min_det, max_det});
    out.files.emplace_back("doss.csv", csv.text());
    out.primary_csv = "doss.csv";
    return out;
}

ExperimentOutput run_kernel_build(const RunConfig& cfg) {
    ExperimentOutput out;
    KernelEvaluator k(cfg.kernel_split, KernelTableSpec{cfg.kernel_table_n, cfg.kernel_core_cells});
    out.files.emplace_back("kernel_table.bin", k.to_bytes());
    out.primary_csv = "";
    return out;
}

ExperimentOutput run_lemma_suite(const RunConfig& cfg) {
    ExperimentOutput out;
    CsvWriter csv({"check", "value", "threshold", "pass"});
    bool all = true;
    auto add = [&](const std::string& name, double value, double threshold, bool pass) {
        csv.row({name, format_double(value), format_double(threshold), pass ? "1" : "0"});
        all = all && pass;
    };

    // gamma subadditivity over random pairs
    {
        double worst = 0.0;
        for (int i = 0; i < 100000; ++i) {
            const double a = 10.0 * rng::uniform_open(rng::hash_tuple(cfg.seed, i, 0, 0, 0));
            const double b = 10.0 * rng::uniform_open(rng::hash_tuple(cfg.seed, i, 1, 0, 0));
            worst = std::max(worst, gamma_modulus(a + b) - gamma_modulus(a) - gamma_modulus(b));
        }
        add("gamma_subadditivity_excess", worst, 1e-12, worst <= 1e-12);
    }
    // gamma linear bound sampling
    {
        bool ok = true;
        for (int i = 0; i < 10000; ++i) {
            const double r = 10.0 * rng::uniform_open(rng::hash_tuple(cfg.seed, i, 2, 0, 0));
            const double eps = std::exp(-1.0) * rng::uniform_open(rng::hash_tuple(cfg.seed, i, 3, 0, 0));
            if (eps <= 0.0) continue;
            ok = ok && gamma_linear_bound_check(r, eps).holds;
        }
        add("gamma_linear_bound_holds", ok ? 1.0 : 0.0, 1.0, ok);
    }
    // comparison ODE residuals
    {
        const int m = 1025;
        std::vector<double> gz(m), gv(m);
        const double C = 1.0, T = 1.0;
        for (int i = 0; i < m; ++i) {
            const double t = T * i / (m - 1);
            gz[i] = C * gamma_modulus(comparison_z(t, 0.02, C));
            const double vv = comparison_v(t, 0.02, C);
            gv[i] = C * (gamma_modulus(vv) + vv);
        }
        const double rz = std::fabs(comparison_z(T, 0.02, C) - 0.02 - trapezoid(gz, T));
        const double rv = std::fabs(comparison_v(T, 0.02, C) - 0.02 - trapezoid(gv, T));
        add("comparison_z_integral_residual", rz, 1e-6, rz < 1e-6);
        add("comparison_v_integral_residual", rv, 1e-6, rv < 1e-6);
    }
    // recursion oracle dominated by the envelope bound
    {
        double worst = -1e300;
        for (int trial = 0; trial < 100; ++trial) {
            IterationBoundParams p;
            p.A = 0.2 + 2.0 * rng::uniform_open(rng::hash_tuple(cfg.seed, trial, 6, 0, 0));
            p.B = 2.0 * rng::uniform_open(rng::hash_tuple(cfg.seed, trial, 7, 0, 0));
            p.T = 0.1 + rng::uniform_open(rng::hash_tuple(cfg.seed, trial, 8, 0, 0));
            p.rho0_sup = 2.0 * rng::uniform_open(rng::hash_tuple(cfg.seed, trial, 9, 0, 0));
            for (int nn : {1, 3, 12}) {
                p.n = nn;
                const auto rho = recursion_oracle(p, {p.rho0_sup}, 512);
                worst = std::max(worst, rho.back() - picard_bound_envelope(p, p.T));
            }
        }
        add("recursion_oracle_envelope_excess", worst, 0.0, worst <= 0.0);
    }
    // commutator: mollifier moment identity and one decay row
    {
        const double m00 = Mollifier::gradient_moment(0, 0);
        add("mollifier_moment_identity", std::fabs(m00 + 1.0), 1e-9, std::fabs(m00 + 1.0) < 1e-9);
        const int n = 128;
        const TestFunction xi_stream = TestFunction::random(cfg.seed ^ 0x52u, 5, 1.0);
        const TestFunction wfn = TestFunction::random(cfg.seed ^ 0x53u, 5, 1.0);
        ScalarGrid stream(n), w(n);
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                stream.at(ix, iy) = xi_stream.value(stream.point(ix, iy));
                w.at(ix, iy) = wfn.value(w.point(ix, iy));
            }
        const VectorGrid v = velocity_from_vorticity(stream);
        const auto rows = commutator_lp_decay(v, w, {0.125, 0.0625}, 2.0);
        for (const auto& r : rows)
            add("commutator_bound_eps_" + format_double(r.eps), r.lp_norm, r.bound,
                r.lp_norm <= r.bound);
    }
    out.files.emplace_back("lemma.csv", csv.text());
    out.primary_csv = "lemma.csv";
    out.checks_passed = all;
    return out;
}

}  // namespace

ExperimentOutput run_experiment(const RunConfig& cfg) {
    set_worker_count(cfg.workers);
    ExperimentOutput out;
    if (cfg.experiment == "simulate")
        out = run_simulate(cfg);
    else if (cfg.experiment == "picard-trace")
        out = run_picard_trace(cfg);
    else if (cfg.experiment == "stability-sweep")
        out = run_stability_sweep(cfg);
    else if (cfg.experiment == "commutator-scan")
        out = run_commutator_scan(cfg);
    else if (cfg.experiment == "doss-check")
        out = run_doss_check(cfg);
    else if (cfg.experiment == "kernel-build")
        out = run_kernel_build(cfg);
    else if (cfg.experiment == "lemma-suite")
        out = run_lemma_suite(cfg);
    else
        throw ConfigError("experiment", "unknown experiment " + cfg.experiment);
    out.files.emplace_back("schema.txt", schema_text(cfg.experiment));
    return out;
}

namespace {

RunConfig load_config(const std::string& config_path, const std::string& experiment_override,
                      int workers_override, std::optional<std::uint64_t> seed_override,
                      std::string* raw_text) {
    KeyValueFile kv = KeyValueFile::parse_file(config_path);
    std::string text = kv.raw_text();
    if (!experiment_override.empty()) text += "\nexperiment = " + experiment_override + "\n";
    if (workers_override > 0) text += "workers = " + std::to_string(workers_override) + "\n";
    if (seed_override) text += "seed = " + std::to_string(*seed_override) + "\n";
    if (raw_text) *raw_text = text;
    return RunConfig::from_file(KeyValueFile::parse_text(text));
}

int classify_and_report(const std::string& out_dir, const std::exception& e) {
    if (const auto* ce = dynamic_cast<const ConfigError*>(&e)) {
        write_diagnostic(out_dir, "config_validation", ce->field, ce->what());
        return 2;
    }
    if (dynamic_cast<const BlowUpError*>(&e)) {
        write_diagnostic(out_dir, "numerical_blow_up", "", e.what());
        return 3;
    }
    if (dynamic_cast<const ConvergenceError*>(&e)) {
        write_diagnostic(out_dir, "convergence_failure", "", e.what());
        return 4;
    }
    write_diagnostic(out_dir, "internal_error", "", e.what());
    return 1;
}

}  // namespace

int run_cli(const std::string& config_path, const std::string& out_dir,
            const std::string& experiment_override, int workers_override,
            std::optional<std::uint64_t> seed_override) {
    std::filesystem::create_directories(out_dir);
    std::string config_text;
    try {
        const RunConfig cfg = load_config(config_path, experiment_override, workers_override,
                                          seed_override, &config_text);
        const ExperimentOutput out = run_experiment(cfg);
        std::vector<std::string> names;
        for (const auto& [name, content] : out.files) {
            write_text_file(out_dir + "/" + name, content);
            names.push_back(name);
        }
        write_manifest(out_dir, config_text, cfg.seed, names);
        return out.checks_passed ? 0 : 1;
    } catch (const std::exception& e) {
        return classify_and_report(out_dir, e);
    }
}

int run_sweep_cli(const std::string& config_path, const std::string& out_dir,
                  const std::string& axis, const std::vector<std::string>& values,
                  const std::string& experiment_override, int workers_override,
                  std::optional<std::uint64_t> seed_override) {
    std::filesystem::create_directories(out_dir);
    if (axis != "dt" && axis != "N" && axis != "M" && axis != "eps") {
        write_diagnostic(out_dir, "config_validation", "sweep.axis",
                         "axis must be one of dt, N, M, eps");
        return 2;
    }
    if (values.empty()) {
        write_diagnostic(out_dir, "config_validation", "sweep.values", "no values given");
        return 2;
    }
    std::string config_text;
    try {
        load_config(config_path, experiment_override, workers_override, seed_override, &config_text);
    } catch (const std::exception& e) {
        return classify_and_report(out_dir, e);
    }

    std::string merged;
    bool any_failed = false;
    std::vector<std::string> names;
    for (const std::string& value : values) {
        std::string text = config_text + "\n";
        if (axis == "dt")
            text += "sim.dt = " + value + "\n";
        else if (axis == "N")
            text += "sim.N = " + value + "\n";
        else if (axis == "M")
            text += "sim.M = " + value + "\n";
        else
            text += "sim.mollify_eps = " + value + "\n";
        std::string status = "ok";
        std::string table;
        try {
            const RunConfig cfg = RunConfig::from_file(KeyValueFile::parse_text(text));
            const ExperimentOutput out = run_experiment(cfg);
            for (const auto& [name, content] : out.files)
                if (name == out.primary_csv) table = content;
        } catch (const std::exception& e) {
            status = std::string("error: ") + e.what();
            any_failed = true;
        }
        // merge with provenance columns
        std::istringstream rows(table);
        std::string line;
        bool first = true;
        while (std::getline(rows, line)) {
            if (line.empty()) continue;
            if (first) {
                if (merged.empty()) merged = "axis,value,status," + line + "\n";
                first = false;
                continue;
            }
            merged += axis + "," + value + "," + status + "," + line + "\n";
        }
        if (table.empty()) {
            if (merged.empty()) merged = "axis,value,status\n";
            merged += axis + "," + value + "," + status + "\n";
        }
    }
    write_text_file(out_dir + "/sweep.csv", merged);
    names.push_back("sweep.csv");
    write_manifest(out_dir, config_text + "\naxis=" + axis, seed_override ? *seed_override : 0,
                   names);
    return any_failed ? 1 : 0;
}

}  // namespace euler2d
