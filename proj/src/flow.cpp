#include "euler2d/flow.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "euler2d/mollifier.hpp"
#include "euler2d/parallel.hpp"
#include "euler2d/spectral.hpp"

namespace euler2d {

namespace {
std::atomic<int> g_workers{1};
}

void set_worker_count(int workers) { g_workers.store(workers < 1 ? 1 : workers); }
int worker_count() { return g_workers.load(); }

int SolverConfig::steps() const { return static_cast<int>(std::llround(horizon / dt)); }

void SolverConfig::validate(int marker_n) const {
    if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
    if (!(horizon > 0.0)) throw std::invalid_argument("SolverConfig: horizon must be positive");
    const double ratio = horizon / dt;
    if (std::fabs(ratio - std::llround(ratio)) > 1e-9)
        throw std::invalid_argument("SolverConfig: horizon must be an integer multiple of dt");
    if (steps() < 1) throw std::invalid_argument("SolverConfig: horizon shorter than one step");
    if (store_stride < 1 || steps() % store_stride != 0)
        throw std::invalid_argument("SolverConfig: store_stride must divide the step count");
    if (marker_n < 2) throw std::invalid_argument("SolverConfig: marker grid too small");
    if (drift_mode == DriftMode::GridSpectral) {
        const int n = field_n > 0 ? field_n : marker_n;
        if (n < 4 || (n & (n - 1)) != 0)
            throw std::invalid_argument("SolverConfig: spectral field grid must be a power of two");
    }
    if (mollify_eps < 0.0 || mollify_eps > 1.0)
        throw std::invalid_argument("SolverConfig: mollify_eps outside [0, 1]");
    if (picard_max_iters < 2) throw std::invalid_argument("SolverConfig: picard_max_iters < 2");
    if (!(picard_tol > 0.0)) throw std::invalid_argument("SolverConfig: picard_tol must be positive");
    if (picard_window < 0.0 || picard_window > horizon + 1e-12)
        throw std::invalid_argument("SolverConfig: picard_window outside (0, horizon]");
    if (!(contraction_threshold > 0.0 && contraction_threshold < 1.0))
        throw std::invalid_argument("SolverConfig: contraction_threshold must lie in (0, 1)");
}

Vec2 FlowState::marker_label(int n, int j) {
    const int ix = j % n;
    const int iy = j / n;
    return {(ix + 0.5) / n - 0.5, (iy + 0.5) / n - 0.5};
}

std::vector<Vec2> FlowState::initial_markers(int n) {
    std::vector<Vec2> out(static_cast<size_t>(n) * n);
    for (size_t j = 0; j < out.size(); ++j) out[j] = marker_label(n, static_cast<int>(j));
    return out;
}

namespace {
constexpr char kFlowMagic[8] = {'E', '2', 'D', 'F', 'L', 'O', 'W', '1'};
}

std::string FlowState::to_bytes() const {
    std::ostringstream out(std::ios::binary);
    out.write(kFlowMagic, 8);
    const std::uint32_t version = 1, n = marker_n, m = realizations, stride = store_stride,
                        stored = stored_count();
    out.write(reinterpret_cast<const char*>(&version), 4);
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&m), 4);
    out.write(reinterpret_cast<const char*>(&stride), 4);
    out.write(reinterpret_cast<const char*>(&stored), 4);
    out.write(reinterpret_cast<const char*>(&dt), 8);
    out.write(reinterpret_cast<const char*>(&seed), 8);
    out.write(reinterpret_cast<const char*>(times.data()),
              static_cast<std::streamsize>(8 * times.size()));
    out.write(reinterpret_cast<const char*>(positions.data()),
              static_cast<std::streamsize>(sizeof(Vec2) * positions.size()));
    return out.str();
}

void FlowState::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("FlowState::save: cannot open " + path);
    const std::string bytes = to_bytes();
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("FlowState::save: write failed for " + path);
}

FlowState FlowState::from_bytes(const std::string& bytes) {
    std::istringstream in(bytes, std::ios::binary);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kFlowMagic, 8) != 0)
        throw std::runtime_error("FlowState::from_bytes: bad magic");
    std::uint32_t version = 0, n = 0, m = 0, stride = 0, stored = 0;
    in.read(reinterpret_cast<char*>(&version), 4);
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(&m), 4);
    in.read(reinterpret_cast<char*>(&stride), 4);
    in.read(reinterpret_cast<char*>(&stored), 4);
    if (version != 1) throw std::runtime_error("FlowState::load: unsupported version");
    FlowState f;
    f.marker_n = static_cast<int>(n);
    f.realizations = static_cast<int>(m);
    f.store_stride = static_cast<int>(stride);
    in.read(reinterpret_cast<char*>(&f.dt), 8);
    in.read(reinterpret_cast<char*>(&f.seed), 8);
    f.times.resize(stored);
    in.read(reinterpret_cast<char*>(f.times.data()), static_cast<std::streamsize>(8 * stored));
    f.positions.resize(static_cast<size_t>(stored) * m * n * n);
    in.read(reinterpret_cast<char*>(f.positions.data()),
            static_cast<std::streamsize>(sizeof(Vec2) * f.positions.size()));
    if (!in) throw std::runtime_error("FlowState::from_bytes: truncated data");
    return f;
}

FlowState FlowState::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("FlowState::load: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_bytes(ss.str());
}

DriftEval::DriftEval(const KernelEvaluator* kernel, const Vec2* pos, const double* weights,
                     int count)
    : kernel_(kernel), pos_(pos), weights_(weights), count_(count), grid_mode_(false) {}

DriftEval::DriftEval(VectorGrid u) : grid_(std::move(u)), grid_mode_(true) {}

Vec2 DriftEval::operator()(const Vec2& x) const {
    if (grid_mode_) return interp_bicubic(grid_, x);
    Vec2 acc{0.0, 0.0};
    for (int j = 0; j < count_; ++j) {
        if (weights_[j] == 0.0) continue;
        if (pos_[j].x == x.x && pos_[j].y == x.y) continue;  // self-term excluded
        acc += (*kernel_)(torus_diff(x, pos_[j])) * weights_[j];
    }
    return acc;
}

namespace {

/// Cloud-in-cell deposit of weighted markers onto a cell-centered grid;
/// accumulates weight / cell-area (a density).
ScalarGrid deposit_weights_cic(const Vec2* pos, const double* weights, int count, int grid_n) {
    ScalarGrid dep(grid_n);
    const double inv_area = static_cast<double>(grid_n) * grid_n;
    for (int j = 0; j < count; ++j) {
        if (weights[j] == 0.0) continue;
        const double gx = (pos[j].x + 0.5) * grid_n - 0.5;
        const double gy = (pos[j].y + 0.5) * grid_n - 0.5;
        const double bx = std::floor(gx), by = std::floor(gy);
        const double fx = gx - bx, fy = gy - by;
        int ix = static_cast<int>(bx) % grid_n;
        int iy = static_cast<int>(by) % grid_n;
        if (ix < 0) ix += grid_n;
        if (iy < 0) iy += grid_n;
        const int ix1 = (ix + 1) % grid_n;
        const int iy1 = (iy + 1) % grid_n;
        const double w = weights[j] * inv_area;
        dep.at(ix, iy) += w * (1.0 - fx) * (1.0 - fy);
        dep.at(ix1, iy) += w * fx * (1.0 - fy);
        dep.at(ix, iy1) += w * (1.0 - fx) * fy;
        dep.at(ix1, iy1) += w * fx * fy;
    }
    return dep;
}

}  // namespace

DriftBuilder::DriftBuilder(DriftMode mode, const KernelEvaluator* kernel, int marker_n,
                           const std::vector<double>& xi0_markers, int field_n, double mollify_eps)
    : mode_(mode), kernel_(kernel), marker_n_(marker_n),
      field_n_(field_n > 0 ? field_n : marker_n), xi0_markers_(xi0_markers) {
    if (static_cast<int>(xi0_markers.size()) != marker_n * marker_n)
        throw std::invalid_argument("DriftBuilder: xi0 sample count mismatch");
    const double h2 = 1.0 / (static_cast<double>(marker_n) * marker_n);
    weights_.resize(xi0_markers.size());
    for (size_t j = 0; j < weights_.size(); ++j) weights_[j] = xi0_markers[j] * h2;
    if (mode_ == DriftMode::ParticleSum && kernel_ == nullptr)
        throw std::invalid_argument("DriftBuilder: particle-sum drift needs a kernel");
    if (mode_ == DriftMode::GridSpectral && mollify_eps > 0.0) {
        mollifier_multiplier_ = Mollifier(mollify_eps).spectral_multiplier_exact(field_n_);
        use_multiplier_ = true;
    }
}

DriftEval DriftBuilder::bind(const Vec2* positions) const {
    if (mode_ == DriftMode::ParticleSum) {
        return DriftEval(kernel_, positions, weights_.data(), static_cast<int>(weights_.size()));
    }
    ScalarGrid xi =
        deposit_weights_cic(positions, weights_.data(), static_cast<int>(weights_.size()), field_n_);
    return DriftEval(
        velocity_from_vorticity(xi, use_multiplier_ ? &mollifier_multiplier_ : nullptr));
}

FlowState solve_linear_flow(int marker_n, int realizations, const DriftProvider& drift,
                            const NoiseBasis& basis, const BrownianDriver& driver,
                            const SolverConfig& cfg, const std::vector<Vec2>* initial,
                            int first_step, const StepObserver* observer) {
    cfg.validate(marker_n);
    if (realizations < 1) throw std::invalid_argument("solve_linear_flow: need >= 1 realization");
    const int steps = cfg.steps();
    const int markers = marker_n * marker_n;
    const int stored = steps / cfg.store_stride + 1;
    const std::vector<Vec2> start = initial ? *initial : FlowState::initial_markers(marker_n);
    const bool per_realization_start =
        static_cast<int>(start.size()) == realizations * markers && realizations > 1;
    if (!per_realization_start && static_cast<int>(start.size()) != markers)
        throw std::invalid_argument("solve_linear_flow: initial positions size mismatch");

    FlowState out;
    out.marker_n = marker_n;
    out.realizations = realizations;
    out.dt = cfg.dt;
    out.store_stride = cfg.store_stride;
    out.seed = driver.seed();
    out.provenance = basis.description();
    out.times.resize(stored);
    for (int s = 0; s < stored; ++s)
        out.times[s] = (first_step + static_cast<double>(s) * cfg.store_stride) * cfg.dt;
    out.positions.resize(static_cast<size_t>(stored) * realizations * markers);

    const int modes = basis.mode_count();
    const bool heun = cfg.scheme == Scheme::StratonovichHeun;

    std::atomic<bool> blew_up{false};
    std::string blow_up_what;

    auto run_realization = [&](int m) {
        if (blew_up.load()) return;
        std::vector<Vec2> cur(markers);
        const Vec2* src = per_realization_start ? start.data() + static_cast<size_t>(m) * markers
                                                : start.data();
        for (int j = 0; j < markers; ++j) cur[j] = wrap(src[j]);
        std::vector<Vec2> vel(markers), pred(markers);
        std::vector<double> dw(modes);
        for (int j = 0; j < markers; ++j) out.positions[out.index(0, m, j)] = cur[j];
        if (observer) (*observer)(first_step, m, out.slice(0, m), markers);
        for (int step = 0; step < steps; ++step) {
            const int gstep = first_step + step;
            for (int k = 0; k < modes; ++k) dw[k] = driver.increment(m, k, gstep);
            const DriftEval u = drift(gstep, m, cur.data());
            for (int j = 0; j < markers; ++j) vel[j] = u(cur[j]);
            if (!heun) {
                for (int j = 0; j < markers; ++j) {
                    Vec2 x = cur[j] + vel[j] * cfg.dt;
                    for (int k = 0; k < modes; ++k) x += basis.eval(k, cur[j]) * dw[k];
                    cur[j] = wrap(x);
                }
            } else {
                for (int j = 0; j < markers; ++j) {
                    Vec2 x = cur[j] + vel[j] * cfg.dt;
                    for (int k = 0; k < modes; ++k) x += basis.eval(k, cur[j]) * dw[k];
                    pred[j] = wrap(x);
                }
                const DriftEval u2 = drift(gstep + 1, m, pred.data());
                for (int j = 0; j < markers; ++j) {
                    Vec2 x = cur[j] + (vel[j] + u2(pred[j])) * (0.5 * cfg.dt);
                    for (int k = 0; k < modes; ++k)
                        x += (basis.eval(k, cur[j]) + basis.eval(k, pred[j])) * (0.5 * dw[k]);
                    cur[j] = wrap(x);
                }
            }
            for (int j = 0; j < markers; ++j) {
                if (!std::isfinite(cur[j].x) || !std::isfinite(cur[j].y)) {
                    std::ostringstream what;
                    what << "trajectory blow-up at step " << gstep << " realization " << m
                         << " marker " << j;
                    blow_up_what = what.str();
                    blew_up.store(true);
                    return;
                }
            }
            if ((step + 1) % cfg.store_stride == 0) {
                const int s = (step + 1) / cfg.store_stride;
                for (int j = 0; j < markers; ++j) out.positions[out.index(s, m, j)] = cur[j];
                if (observer) (*observer)(gstep + 1, m, out.slice(s, m), markers);
            }
        }
    };

    // observer callbacks run serially so realizations arrive in order
    const int workers = observer ? 1 : worker_count();
    parallel_for(realizations, run_realization, workers);
    if (blew_up.load()) throw BlowUpError(blow_up_what);
    return out;
}

Vec2 drift_from_flow(const FlowState& psi, const std::vector<double>& xi0_markers, int t_index,
                     int realization, const Vec2& x, const KernelEvaluator& kernel, DriftMode mode,
                     int field_n) {
    if (t_index < 0 || t_index >= psi.stored_count())
        throw std::out_of_range("drift_from_flow: time index");
    DriftBuilder builder(mode, &kernel, psi.marker_n, xi0_markers, field_n);
    return builder.bind(psi.slice(t_index, realization))(x);
}

namespace {

/// Drift provider reading frozen positions from an iterate; steps past the
/// window reuse the last slice (frozen extension).
DriftProvider frozen_drift(const FlowState& psi, const DriftBuilder& builder, int first_step) {
    const FlowState* p = &psi;
    const DriftBuilder* b = &builder;
    return [p, b, first_step](int gstep, int m, const Vec2*) {
        int idx = gstep - first_step;
        if (idx >= p->stored_count()) idx = p->stored_count() - 1;
        if (idx < 0) idx = 0;
        return b->bind(p->slice(idx, m));
    };
}

/// Constant-in-time iterate holding the window's start positions (the
/// frozen extension used to seed each Picard window). `start` holds either
/// one shared marker set or one per realization.
FlowState frozen_state(int marker_n, int realizations, double dt, int first_step, int steps,
                       const std::vector<Vec2>& start) {
    const int markers = marker_n * marker_n;
    const bool per_realization = static_cast<int>(start.size()) == realizations * markers &&
                                 realizations > 1;
    FlowState f;
    f.marker_n = marker_n;
    f.realizations = realizations;
    f.dt = dt;
    f.store_stride = 1;
    f.times.resize(steps + 1);
    for (int s = 0; s <= steps; ++s) f.times[s] = (first_step + s) * dt;
    f.positions.resize(static_cast<size_t>(steps + 1) * realizations * markers);
    for (int s = 0; s <= steps; ++s)
        for (int m = 0; m < realizations; ++m) {
            const Vec2* src =
                per_realization ? start.data() + static_cast<size_t>(m) * markers : start.data();
            std::copy(src, src + markers,
                      f.positions.begin() + static_cast<std::ptrdiff_t>(f.index(s, m, 0)));
        }
    return f;
}

}  // namespace

FlowState picard_map(const FlowState& psi, const std::vector<double>& xi0_markers,
                     const KernelEvaluator& kernel, const NoiseBasis& basis,
                     const BrownianDriver& driver, const SolverConfig& cfg, int first_step,
                     const std::vector<Vec2>* initial) {
    if (psi.store_stride != 1)
        throw std::invalid_argument("picard_map: iterate must store every step");
    DriftBuilder builder(cfg.drift_mode, &kernel, psi.marker_n, xi0_markers, cfg.field_n,
                         cfg.mollify_eps);
    const DriftProvider drift = frozen_drift(psi, builder, first_step);
    return solve_linear_flow(psi.marker_n, psi.realizations, drift, basis, driver, cfg, initial,
                             first_step, nullptr);
}

double flow_distance(const FlowState& a, const FlowState& b) {
    if (a.marker_n != b.marker_n || a.realizations != b.realizations ||
        a.stored_count() != b.stored_count())
        throw std::invalid_argument("flow_distance: shape mismatch");
    const int markers = a.marker_count();
    double sup = 0.0;
    for (int s = 0; s < a.stored_count(); ++s) {
        double acc = 0.0;
        for (int m = 0; m < a.realizations; ++m) {
            const Vec2* pa = a.slice(s, m);
            const Vec2* pb = b.slice(s, m);
            for (int j = 0; j < markers; ++j) acc += torus_distance(pa[j], pb[j]);
        }
        sup = std::max(sup, acc / (static_cast<double>(markers) * a.realizations));
    }
    return sup;
}

FlowState solve_euler_flow(int marker_n, int realizations, const std::vector<double>& xi0_markers,
                           const NoiseBasis& basis, const BrownianDriver& driver,
                           const SolverConfig& cfg, const KernelEvaluator& kernel,
                           PicardReport* report) {
    SolverConfig window_cfg = cfg;
    window_cfg.store_stride = 1;  // iterates must hold every step
    window_cfg.validate(marker_n);
    const int total_steps = window_cfg.steps();
    int window_steps = total_steps;
    if (cfg.picard_window > 0.0)
        window_steps =
            std::min(total_steps, std::max(1, static_cast<int>(std::llround(cfg.picard_window / cfg.dt))));

    const int markers = marker_n * marker_n;
    PicardReport local_report;
    FlowState acc;  // accumulated flow over [0, horizon]
    acc.marker_n = marker_n;
    acc.realizations = realizations;
    acc.dt = cfg.dt;
    acc.store_stride = 1;
    acc.seed = driver.seed();
    acc.times.assign(1, 0.0);
    const std::vector<Vec2> labels = FlowState::initial_markers(marker_n);
    acc.positions.resize(static_cast<size_t>(realizations) * markers);
    for (int m = 0; m < realizations; ++m)
        std::copy(labels.begin(), labels.end(),
                  acc.positions.begin() + static_cast<std::ptrdiff_t>(acc.index(0, m, 0)));

    // per-realization start positions of the current window
    std::vector<Vec2> start(static_cast<size_t>(realizations) * markers);
    for (int m = 0; m < realizations; ++m)
        std::copy(labels.begin(), labels.end(), start.begin() + static_cast<size_t>(m) * markers);

    int first_step = 0;
    int guard = 0;
    while (first_step < total_steps) {
        if (++guard > 4 * total_steps + 64)
            throw ConvergenceError("solve_euler_flow: window subdivision did not terminate", {});
        const int w = std::min(window_steps, total_steps - first_step);
        window_cfg.horizon = w * cfg.dt;

        PicardWindowReport wreport;
        wreport.t_begin = first_step * cfg.dt;
        wreport.t_end = (first_step + w) * cfg.dt;

        FlowState prev = frozen_state(marker_n, realizations, cfg.dt, first_step, w, start);
        FlowState next;
        bool window_converged = false;
        bool shrink_window = false;
        for (int it = 0; it < cfg.picard_max_iters; ++it) {
            next = picard_map(prev, xi0_markers, kernel, basis, driver, window_cfg, first_step,
                              &start);
            const double rho = flow_distance(next, prev);
            wreport.rho.push_back(rho);
            ++local_report.total_iterations;
            if (rho <= cfg.picard_tol) {
                window_converged = true;
                break;
            }
            // adapt the window on the first measured contraction ratio
            if (it == 1 && wreport.rho[0] > cfg.picard_tol && w > 4) {
                const double ratio = wreport.rho[1] / wreport.rho[0];
                if (ratio > cfg.contraction_threshold) {
                    shrink_window = true;
                    break;
                }
            }
            prev = std::move(next);
        }
        if (shrink_window) {
            window_steps = std::max(1, w / 2);
            continue;
        }
        if (!window_converged) {
            local_report.windows.push_back(wreport);
            if (report) *report = local_report;
            throw ConvergenceError("solve_euler_flow: no contraction within iteration budget",
                                   wreport.rho);
        }
        local_report.windows.push_back(wreport);

        // append slices 1..w of the converged window
        const int old_stored = acc.stored_count();
        acc.times.resize(old_stored + w);
        std::vector<Vec2> grown(static_cast<size_t>(old_stored + w) * realizations * markers);
        std::memcpy(grown.data(), acc.positions.data(), sizeof(Vec2) * acc.positions.size());
        for (int s = 1; s <= w; ++s) {
            acc.times[old_stored + s - 1] = next.times[s];
            for (int m = 0; m < realizations; ++m)
                std::memcpy(
                    &grown[(static_cast<size_t>(old_stored + s - 1) * realizations + m) * markers],
                    next.slice(s, m), sizeof(Vec2) * markers);
        }
        acc.positions = std::move(grown);

        // the next window starts from the converged end state, per realization
        for (int m = 0; m < realizations; ++m)
            std::memcpy(&start[static_cast<size_t>(m) * markers], next.slice(w, m),
                        sizeof(Vec2) * markers);
        first_step += w;
    }
    local_report.converged = true;
    if (report) *report = local_report;
    return acc;
}

FlowState direct_self_consistent_solve(int marker_n, int realizations,
                                        const std::vector<double>& xi0_markers,
                                        const NoiseBasis& basis, const BrownianDriver& driver,
                                        const SolverConfig& cfg, const KernelEvaluator& kernel,
                                        const StepObserver* observer) {
    DriftBuilder builder(cfg.drift_mode, &kernel, marker_n, xi0_markers, cfg.field_n,
                         cfg.mollify_eps);
    const DriftProvider drift = [&builder](int, int, const Vec2* positions) {
        return builder.bind(positions);
    };
    return solve_linear_flow(marker_n, realizations, drift, basis, driver, cfg, nullptr, 0,
                             observer);
}

MeasurePreservationResult measure_preservation_check(const FlowState& flow, int t_index,
                                                     int coarse_n) {
    if (t_index < 0 || t_index >= flow.stored_count())
        throw std::out_of_range("measure_preservation_check: time index");
    if (coarse_n < 2) throw std::invalid_argument("measure_preservation_check: coarse grid too small");
    MeasurePreservationResult res;
    res.histogram = ScalarGrid(coarse_n);
    const int markers = flow.marker_count();
    for (int m = 0; m < flow.realizations; ++m) {
        const Vec2* pos = flow.slice(t_index, m);
        for (int j = 0; j < markers; ++j) {
            int ix = static_cast<int>(std::floor((pos[j].x + 0.5) * coarse_n)) % coarse_n;
            int iy = static_cast<int>(std::floor((pos[j].y + 0.5) * coarse_n)) % coarse_n;
            if (ix < 0) ix += coarse_n;
            if (iy < 0) iy += coarse_n;
            res.histogram.at(ix, iy) += 1.0;
        }
    }
    const double expected = static_cast<double>(flow.realizations) * markers /
                            (static_cast<double>(coarse_n) * coarse_n);
    for (double& v : res.histogram.v)
        res.max_relative_deviation =
            std::max(res.max_relative_deviation, std::fabs(v / expected - 1.0));
    res.sampling_floor = static_cast<double>(coarse_n) / flow.marker_n +
                         1.0 / std::sqrt(static_cast<double>(flow.realizations));
    return res;
}

namespace {

double regression_slope(const std::vector<double>& logx, const std::vector<double>& logy) {
    const size_t n = logx.size();
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += logx[i];
        my += logy[i];
    }
    mx /= n;
    my /= n;
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < n; ++i) {
        num += (logx[i] - mx) * (logy[i] - my);
        den += (logx[i] - mx) * (logx[i] - mx);
    }
    return num / den;
}

}  // namespace

HolderRegression holder_regression(const FlowState& flow, double p) {
    if (p < 2.0) throw std::domain_error("holder_regression: p must be >= 2");
    if (flow.stored_count() < 5 || flow.marker_n < 8)
        throw std::invalid_argument("holder_regression: too few samples");
    HolderRegression out;
    const int markers = flow.marker_count();
    const int n = flow.marker_n;

    // time exponent: moments of |Phi_{t+L} - Phi_t|^p against the lag
    {
        std::vector<double> lx, ly;
        for (int lag = 1; lag < flow.stored_count(); lag *= 2) {
            double acc = 0.0;
            int cnt = 0;
            for (int m = 0; m < flow.realizations; ++m)
                for (int s = 0; s + lag < flow.stored_count(); s += std::max(1, flow.stored_count() / 6))
                    for (int j = 0; j < markers; j += 7) {
                        acc += std::pow(torus_distance(flow.pos(s + lag, m, j), flow.pos(s, m, j)), p);
                        ++cnt;
                    }
            if (cnt == 0) continue;
            lx.push_back(std::log(flow.times[lag] - flow.times[0]));
            ly.push_back(std::log(acc / cnt + 1e-300));
        }
        if (lx.size() < 3) throw std::invalid_argument("holder_regression: too few time lags");
        out.time_exponent = regression_slope(lx, ly);
    }

    // space exponent: moments against the initial marker separation at the
    // final time
    {
        const int s_final = flow.stored_count() - 1;
        std::vector<double> lx, ly;
        for (int off = 1; off <= n / 4; off *= 2) {
            double acc = 0.0;
            int cnt = 0;
            for (int m = 0; m < flow.realizations; ++m)
                for (int j = 0; j < markers; j += 3) {
                    const int ix = j % n, iy = j / n;
                    const int j2 = iy * n + (ix + off) % n;
                    acc += std::pow(torus_distance(flow.pos(s_final, m, j), flow.pos(s_final, m, j2)), p);
                    ++cnt;
                }
            lx.push_back(std::log(static_cast<double>(off) / n));
            ly.push_back(std::log(acc / cnt + 1e-300));
        }
        if (lx.size() < 3) throw std::invalid_argument("holder_regression: too few separations");
        out.space_exponent = regression_slope(lx, ly);
    }
    return out;
}

}  // namespace euler2d
