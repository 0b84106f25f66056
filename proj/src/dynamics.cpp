#include "rydgrover/dynamics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <functional>
#include <random>
#include <stdexcept>

namespace rydgrover {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr std::size_t kDenseLimit = 256;
constexpr double kRkRelTol = 1e-10;
constexpr double kRkAbsTol = 1e-13;
constexpr double kInvSqrt2 = 0.70710678118654752440;
} // namespace

double InteractionGraph::shift_between(int atom_a, int level_a, int atom_b, int level_b) const {
    for (const PairShift& s : shifts) {
        if ((s.atom_a == atom_a && s.level_a == level_a && s.atom_b == atom_b && s.level_b == level_b) ||
            (s.atom_a == atom_b && s.level_a == level_b && s.atom_b == atom_a && s.level_b == level_a))
            return s.sign * s.magnitude;
    }
    return 0.0;
}

void InteractionGraph::validate(const std::vector<AtomSpec>& atoms) const {
    for (const PairShift& s : shifts) {
        if (s.atom_a == s.atom_b) throw std::invalid_argument("InteractionGraph: diagonal entry");
        if (s.atom_a < 0 || s.atom_b < 0 || s.atom_a >= static_cast<int>(atoms.size()) ||
            s.atom_b >= static_cast<int>(atoms.size()))
            throw std::invalid_argument("InteractionGraph: atom index out of range");
        if (s.magnitude < 0.0) throw std::invalid_argument("InteractionGraph: negative magnitude");
        if (!std::isfinite(s.magnitude)) throw std::invalid_argument("InteractionGraph: non-finite shift");
    }
    for (const LevelDecay& d : decay)
        if (d.gamma < 0.0 || !std::isfinite(d.gamma))
            throw std::invalid_argument("InteractionGraph: bad decay rate");
}

InteractionGraph uniform_graph(const std::vector<AtomSpec>& atoms, LevelRole role, double shift,
                               double gamma) {
    InteractionGraph g;
    const int n = static_cast<int>(atoms.size());
    for (int i = 0; i < n; ++i) {
        const int li = atoms[static_cast<std::size_t>(i)].level(role);
        if (li < 0) continue;
        for (int j = i + 1; j < n; ++j) {
            const int lj = atoms[static_cast<std::size_t>(j)].level(role);
            if (lj < 0) continue;
            g.shifts.push_back({i, j, li, lj, shift, 1});
        }
    }
    if (gamma > 0.0) g.decay.push_back({role, gamma});
    return g;
}

// ---------------------------------------------------------------------------
// Matrix-free effective Hamiltonian

namespace {

struct BareCoupling {
    std::size_t stride = 1;
    int dim = 0;
    int from = 0, to = 0;
    Complex half_rabi; // (rabi/2) e^{i phase}, row `from`, column `to`
};

struct BrightCoupling {
    std::size_t stride = 1;
    int dim = 0;
    int a = 0, b = 0, ryd = 0; // bright = (|a> - |b>)/sqrt(2)
    Complex half_rabi;
};

class HamiltonianOp {
  public:
    HamiltonianOp(const std::vector<AtomSpec>& atoms, const DriveSpec& drive,
                  const InteractionGraph& graph) {
        graph.validate(atoms);
        const int n = static_cast<int>(atoms.size());
        std::vector<std::size_t> strides(static_cast<std::size_t>(n));
        dim_ = 1;
        for (int i = n; i-- > 0;) {
            strides[static_cast<std::size_t>(i)] = dim_;
            dim_ *= static_cast<std::size_t>(atoms[static_cast<std::size_t>(i)].num_levels);
        }

        for (const DriveTerm& t : drive.terms) {
            if (t.atom < 0 || t.atom >= n) throw std::invalid_argument("DriveSpec: atom out of range");
            if (t.rabi < 0.0 || !std::isfinite(t.rabi) || !std::isfinite(t.phase))
                throw std::invalid_argument("DriveSpec: bad drive parameters");
            const AtomSpec& spec = atoms[static_cast<std::size_t>(t.atom)];
            const Complex c = 0.5 * t.rabi * std::polar(1.0, t.phase);
            if (t.bright) {
                bright_.push_back({strides[static_cast<std::size_t>(t.atom)], spec.num_levels,
                                   t.a_level, t.b_level, t.to_level, c});
            } else {
                bare_.push_back({strides[static_cast<std::size_t>(t.atom)], spec.num_levels,
                                 t.a_level, t.to_level, c});
            }
        }

        // Diagonal: pair shifts and -i/2 decay.
        diagonal_.assign(dim_, Complex{});
        for (const PairShift& s : graph.shifts) {
            const auto sa = strides[static_cast<std::size_t>(s.atom_a)];
            const auto sb = strides[static_cast<std::size_t>(s.atom_b)];
            const auto da = static_cast<std::size_t>(atoms[static_cast<std::size_t>(s.atom_a)].num_levels);
            const auto db = static_cast<std::size_t>(atoms[static_cast<std::size_t>(s.atom_b)].num_levels);
            for (std::size_t idx = 0; idx < dim_; ++idx) {
                if ((idx / sa) % da == static_cast<std::size_t>(s.level_a) &&
                    (idx / sb) % db == static_cast<std::size_t>(s.level_b))
                    diagonal_[idx] += s.sign * s.magnitude;
            }
        }
        for (const LevelDecay& d : graph.decay) {
            for (int a = 0; a < n; ++a) {
                const int lvl = atoms[static_cast<std::size_t>(a)].level(d.role);
                if (lvl < 0) continue;
                const auto sa = strides[static_cast<std::size_t>(a)];
                const auto da = static_cast<std::size_t>(atoms[static_cast<std::size_t>(a)].num_levels);
                for (std::size_t idx = 0; idx < dim_; ++idx)
                    if ((idx / sa) % da == static_cast<std::size_t>(lvl))
                        diagonal_[idx] += Complex{0.0, -0.5 * d.gamma};
            }
        }
    }

    std::size_t dim() const { return dim_; }

    // out = H in
    void apply(const Complex* in, Complex* out) const {
        for (std::size_t i = 0; i < dim_; ++i) out[i] = diagonal_[i] * in[i];
        for (const BareCoupling& b : bare_) {
            const std::size_t groups = dim_ / static_cast<std::size_t>(b.dim);
            const std::size_t span = b.stride * static_cast<std::size_t>(b.dim);
            for (std::size_t g = 0; g < groups; ++g) {
                const std::size_t base = (g / b.stride) * span + g % b.stride;
                const std::size_t i_from = base + static_cast<std::size_t>(b.from) * b.stride;
                const std::size_t i_to = base + static_cast<std::size_t>(b.to) * b.stride;
                out[i_from] += b.half_rabi * in[i_to];
                out[i_to] += std::conj(b.half_rabi) * in[i_from];
            }
        }
        for (const BrightCoupling& b : bright_) {
            const std::size_t groups = dim_ / static_cast<std::size_t>(b.dim);
            const std::size_t span = b.stride * static_cast<std::size_t>(b.dim);
            for (std::size_t g = 0; g < groups; ++g) {
                const std::size_t base = (g / b.stride) * span + g % b.stride;
                const std::size_t ia = base + static_cast<std::size_t>(b.a) * b.stride;
                const std::size_t ib = base + static_cast<std::size_t>(b.b) * b.stride;
                const std::size_t ir = base + static_cast<std::size_t>(b.ryd) * b.stride;
                out[ia] += b.half_rabi * kInvSqrt2 * in[ir];
                out[ib] -= b.half_rabi * kInvSqrt2 * in[ir];
                out[ir] += std::conj(b.half_rabi) * kInvSqrt2 * (in[ia] - in[ib]);
            }
        }
    }

  private:
    std::size_t dim_ = 0;
    std::vector<Complex> diagonal_;
    std::vector<BareCoupling> bare_;
    std::vector<BrightCoupling> bright_;
};

} // namespace

// ---------------------------------------------------------------------------
// Propagator

struct Propagator::Impl {
    HamiltonianOp op;
    bool force_rk = false;

    bool dense = false;
    Eigen::MatrixXcd vectors;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
    Eigen::VectorXcd values;

    explicit Impl(const std::vector<AtomSpec>& atoms, const DriveSpec& drive,
                  const InteractionGraph& graph)
        : op(atoms, drive, graph) {
        if (op.dim() <= kDenseLimit) {
            const auto n = static_cast<Eigen::Index>(op.dim());
            Eigen::MatrixXcd h(n, n);
            std::vector<Complex> e(op.dim()), col(op.dim());
            for (Eigen::Index j = 0; j < n; ++j) {
                std::fill(e.begin(), e.end(), Complex{});
                e[static_cast<std::size_t>(j)] = 1.0;
                op.apply(e.data(), col.data());
                for (Eigen::Index i = 0; i < n; ++i) h(i, j) = col[static_cast<std::size_t>(i)];
            }
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h, true);
            if (solver.info() != Eigen::Success)
                throw std::runtime_error("Propagator: eigendecomposition failed");
            vectors = solver.eigenvectors();
            values = solver.eigenvalues();
            lu.compute(vectors);
            dense = true;
        }
    }

    void advance_dense(RegisterState& state, double dt) const {
        const auto n = static_cast<Eigen::Index>(op.dim());
        Eigen::Map<Eigen::VectorXcd> psi(state.amplitudes().data(), n);
        Eigen::VectorXcd w = lu.solve(psi);
        for (Eigen::Index i = 0; i < n; ++i)
            w(i) *= std::exp(Complex{0.0, -1.0} * values(i) * dt);
        psi = vectors * w;
    }

    // Dormand-Prince 5(4) with PI-free step control on d psi/dt = -i H psi.
    void advance_rk(RegisterState& state, double duration) const {
        const std::size_t n = op.dim();
        auto deriv = [&](const std::vector<Complex>& y, std::vector<Complex>& dy) {
            op.apply(y.data(), dy.data());
            for (std::size_t i = 0; i < n; ++i) dy[i] *= Complex{0.0, -1.0};
        };

        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                                a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                                a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                                e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                                e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

        std::vector<Complex> y(state.amplitudes().begin(), state.amplitudes().end());
        std::vector<Complex> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y5(n);

        double t = 0.0;
        double h = duration / 64.0;
        deriv(y, k1);
        int guard = 0;
        while (t < duration) {
            if (++guard > 2000000) throw std::runtime_error("Propagator: integrator stalled");
            h = std::min(h, duration - t);
            for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a21 * k1[i]);
            deriv(tmp, k2);
            for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
            deriv(tmp, k3);
            for (std::size_t i = 0; i < n; ++i)
                tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            deriv(tmp, k4);
            for (std::size_t i = 0; i < n; ++i)
                tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            deriv(tmp, k5);
            for (std::size_t i = 0; i < n; ++i)
                tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
            deriv(tmp, k6);
            for (std::size_t i = 0; i < n; ++i)
                y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
            deriv(y5, k7);

            double err = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const Complex e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                       e7 * k7[i]);
                const double scale = kRkAbsTol + kRkRelTol * std::max(std::abs(y[i]), std::abs(y5[i]));
                err = std::max(err, std::abs(e) / scale);
            }
            if (err <= 1.0) {
                t += h;
                y.swap(y5);
                k1.swap(k7); // first-same-as-last
            }
            const double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
            h *= std::clamp(factor, 0.2, 5.0);
        }
        std::copy(y.begin(), y.end(), state.amplitudes().begin());
    }
};

Propagator::Propagator(std::vector<AtomSpec> atoms, const DriveSpec& drive,
                       const InteractionGraph& graph)
    : impl_(std::make_unique<Impl>(atoms, drive, graph)) {}

Propagator::~Propagator() = default;
Propagator::Propagator(Propagator&&) noexcept = default;
Propagator& Propagator::operator=(Propagator&&) noexcept = default;

void Propagator::force_integrator(bool on) { impl_->force_rk = on; }

void Propagator::advance(RegisterState& state, double dt) const {
    if (state.dim() != impl_->op.dim()) throw std::invalid_argument("Propagator: dimension mismatch");
    if (dt < 0.0 || !std::isfinite(dt)) throw std::invalid_argument("Propagator: bad duration");
    if (dt == 0.0) return;
    if (impl_->dense && !impl_->force_rk)
        impl_->advance_dense(state, dt);
    else
        impl_->advance_rk(state, dt);
}

void evolve(RegisterState& state, const DriveSpec& drive, const InteractionGraph& graph,
            double duration) {
    Propagator(state.atoms(), drive, graph).advance(state, duration);
}

// ---------------------------------------------------------------------------
// Collective enhancement

EnhancementResult collective_enhancement(int m, double rabi, double blockade_b) {
    if (m < 1) throw std::invalid_argument("collective_enhancement: m must be >= 1");
    if (rabi <= 0.0 || blockade_b < 0.0)
        throw std::invalid_argument("collective_enhancement: bad parameters");

    const std::vector<AtomSpec> atoms(static_cast<std::size_t>(m), AtomSpec::qubit());
    const int ryd = atoms.front().level(LevelRole::RydR);

    DriveSpec drive;
    for (int a = 0; a < m; ++a) drive.terms.push_back({a, false, 0, -1, ryd, rabi, 0.0});
    const InteractionGraph graph = uniform_graph(atoms, LevelRole::RydR, blockade_b, 0.0);

    RegisterState state = basis_state(atoms, BasisLabel(static_cast<std::size_t>(m), 0));
    const std::size_t ground = state.flat_index(BasisLabel(static_cast<std::size_t>(m), 0));

    const Propagator prop(atoms, drive, graph);
    const double enhanced = std::sqrt(static_cast<double>(m)) * rabi;
    const int periods = 20;
    const int samples = 2048;
    const double total = periods * 2.0 * kPi / enhanced;
    const double dt = total / samples;

    std::vector<double> signal(static_cast<std::size_t>(samples));
    double mean = 0.0;
    for (int j = 0; j < samples; ++j) {
        signal[static_cast<std::size_t>(j)] = std::norm(state.amp(ground));
        mean += signal[static_cast<std::size_t>(j)];
        prop.advance(state, dt);
    }
    mean /= samples;
    for (double& v : signal) v -= mean;

    auto power = [&](double omega) {
        Complex acc{};
        for (int j = 0; j < samples; ++j)
            acc += signal[static_cast<std::size_t>(j)] * std::polar(1.0, -omega * j * dt);
        return std::norm(acc);
    };

    // Coarse scan then golden-section refinement of the spectral peak.
    const double lo0 = 0.2 * rabi, hi0 = (std::sqrt(static_cast<double>(m)) + 1.5) * rabi;
    const int coarse = 400;
    double best_w = lo0, best_p = -1.0;
    for (int i = 0; i <= coarse; ++i) {
        const double w = lo0 + (hi0 - lo0) * i / coarse;
        const double p = power(w);
        if (p > best_p) {
            best_p = p;
            best_w = w;
        }
    }
    double lo = best_w - (hi0 - lo0) / coarse;
    double hi = best_w + (hi0 - lo0) / coarse;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = power(x1), f2 = power(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = power(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = power(x1);
        }
    }

    EnhancementResult result;
    result.ratio = 0.5 * (lo + hi) / rabi;
    result.weak_blockade_warning = m > 1 && blockade_b < 10.0 * rabi;
    return result;
}

// ---------------------------------------------------------------------------
// Fragments

Fragment controlled_phase_fragment() {
    const std::vector<AtomSpec> atoms(2, AtomSpec::qubit());
    const int g1 = atoms.front().level(LevelRole::Ground1);
    const int ryd = atoms.front().level(LevelRole::RydR);

    Fragment f;
    f.atoms = atoms;
    FragmentStep up;
    up.pulse = PulseSpec{0, PulseKind::Bare, g1, ryd, kPi, 0.0, {}};
    FragmentStep blocked;
    blocked.pulse = PulseSpec{1, PulseKind::Bare, g1, ryd, 2.0 * kPi, 0.0,
                              BlockadeCondition{{0}, {ryd}}};
    FragmentStep down;
    down.pulse = PulseSpec{0, PulseKind::Bare, g1, ryd, kPi, 0.0, {}};
    f.steps = {up, blocked, down};
    return f;
}

Fragment sequential_oracle_fragment(int k, const BasisLabel& marked) {
    if (k < 1 || static_cast<int>(marked.size()) != k)
        throw std::invalid_argument("sequential_oracle_fragment: marked needs k binary digits");
    const std::vector<AtomSpec> atoms(static_cast<std::size_t>(k), AtomSpec::qubit());
    const int ryd = atoms.front().level(LevelRole::RydR);

    Fragment f;
    f.atoms = atoms;
    auto push_pulse = [&](int atom) {
        const int from = marked[static_cast<std::size_t>(atom)] == 0 ? 1 : 0;
        FragmentStep step;
        step.pulse = PulseSpec{atom, PulseKind::Bare, from, ryd, kPi, 0.0, {}};
        if (atom > 0) {
            BlockadeCondition cond;
            for (int a = 0; a < atom; ++a) cond.atoms.push_back(a);
            cond.levels = {ryd};
            step.pulse.blockade = std::move(cond);
        }
        f.steps.push_back(std::move(step));
    };
    for (int atom = 0; atom < k; ++atom) push_pulse(atom);
    for (int atom = k - 1; atom >= 0; --atom) push_pulse(atom);
    return f;
}

Fragment controlled_transfer_fragment(const std::vector<AtomSpec>& atoms, int ctl_atom,
                                      int ctl_level, int tgt_atom, int a_level, int b_level) {
    if (ctl_atom == tgt_atom)
        throw std::invalid_argument("controlled_transfer_fragment: overlapping atoms");
    const AtomSpec& cspec = atoms.at(static_cast<std::size_t>(ctl_atom));
    const AtomSpec& tspec = atoms.at(static_cast<std::size_t>(tgt_atom));
    const int cr = cspec.level(LevelRole::RydR);
    const int tr = tspec.level(LevelRole::RydR);
    if (cr < 0 || tr < 0)
        throw std::invalid_argument("controlled_transfer_fragment: missing Rydberg level");

    if (a_level < 0 || b_level < 0 || a_level >= tspec.num_levels || b_level >= tspec.num_levels ||
        a_level == b_level)
        throw std::invalid_argument("controlled_transfer_fragment: bad target level pair");

    Fragment f;
    f.atoms = atoms;
    FragmentStep ctl_up;
    ctl_up.pulse = PulseSpec{ctl_atom, PulseKind::Bare, ctl_level, cr, kPi, 0.0, {}};

    FragmentStep tgt_up;
    tgt_up.kind = FragmentStep::Kind::PairBright;
    tgt_up.atom = tgt_atom;
    tgt_up.a_level = a_level;
    tgt_up.b_level = b_level;
    tgt_up.ryd_level = tr;
    tgt_up.angle = kPi;
    tgt_up.phase = 0.0;

    FragmentStep dwell;
    dwell.kind = FragmentStep::Kind::Dwell;
    dwell.dwell_atom_a = ctl_atom;
    dwell.dwell_atom_b = tgt_atom;
    dwell.dwell_level_a = cr;
    dwell.dwell_level_b = tr;
    dwell.dwell_phase = -kPi;

    FragmentStep tgt_down = tgt_up;
    tgt_down.phase = kPi;
    FragmentStep ctl_down = ctl_up;
    ctl_down.pulse.phase = kPi;

    f.steps = {ctl_up, tgt_up, dwell, tgt_down, ctl_down};
    return f;
}

namespace {
void apply_pair_bright(RegisterState& state, const FragmentStep& step) {
    const BlockadeCondition* cond = step.blockade ? &*step.blockade : nullptr;
    pair_bright_pulse(state, step.atom, step.a_level, step.b_level, step.ryd_level, step.angle,
                      step.phase, cond);
}
} // namespace

RegisterState run_ideal(const Fragment& fragment, RegisterState state) {
    for (const FragmentStep& step : fragment.steps) {
        if (step.kind == FragmentStep::Kind::Pulse) {
            apply_pulse(state, step.pulse);
        } else if (step.kind == FragmentStep::Kind::PairBright) {
            apply_pair_bright(state, step);
        } else {
            const Complex phase = std::polar(1.0, step.dwell_phase);
            auto amps = state.amplitudes();
            for (std::size_t idx = 0; idx < amps.size(); ++idx)
                if (state.digit(idx, step.dwell_atom_a) == step.dwell_level_a &&
                    state.digit(idx, step.dwell_atom_b) == step.dwell_level_b)
                    amps[idx] *= phase;
        }
    }
    return state;
}

namespace {

// One timed segment of a fragment's dynamical execution; the propagators are
// built once and shared across a batch of input states.
struct TimedSegment {
    Propagator propagator;
    double duration;
};

std::vector<TimedSegment> build_segments(const Fragment& fragment, const InteractionGraph& graph,
                                         double omega) {
    if (omega <= 0.0) throw std::invalid_argument("run_dynamical: omega must be positive");
    std::vector<TimedSegment> segments;
    segments.reserve(fragment.steps.size());
    for (const FragmentStep& step : fragment.steps) {
        if (step.kind == FragmentStep::Kind::Pulse) {
            const PulseSpec& p = step.pulse;
            const AtomSpec& spec = fragment.atoms[static_cast<std::size_t>(p.atom)];
            DriveSpec drive;
            if (p.kind == PulseKind::Bright)
                drive.terms.push_back({p.atom, true, spec.level(LevelRole::Ground0),
                                       spec.level(LevelRole::Ground1), p.to_level, omega, p.phase});
            else
                drive.terms.push_back({p.atom, false, p.from_level, -1, p.to_level, omega, p.phase});
            segments.push_back({Propagator(fragment.atoms, drive, graph), p.angle / omega});
        } else if (step.kind == FragmentStep::Kind::PairBright) {
            DriveSpec drive;
            drive.terms.push_back(
                {step.atom, true, step.a_level, step.b_level, step.ryd_level, omega, step.phase});
            segments.push_back({Propagator(fragment.atoms, drive, graph), step.angle / omega});
        } else {
            const double b = std::abs(graph.shift_between(step.dwell_atom_a, step.dwell_level_a,
                                                          step.dwell_atom_b, step.dwell_level_b));
            if (b <= 0.0) throw std::invalid_argument("run_dynamical: dwell pair missing from graph");
            segments.push_back(
                {Propagator(fragment.atoms, DriveSpec{}, graph), std::abs(step.dwell_phase) / b});
        }
    }
    return segments;
}

} // namespace

RegisterState run_dynamical(const Fragment& fragment, const InteractionGraph& graph, double omega,
                            RegisterState state) {
    for (const TimedSegment& segment : build_segments(fragment, graph, omega))
        segment.propagator.advance(state, segment.duration);
    return state;
}

std::vector<RegisterState> qubit_basis_inputs(const std::vector<AtomSpec>& atoms) {
    const int k = static_cast<int>(atoms.size());
    std::vector<RegisterState> inputs;
    inputs.reserve(1u << k);
    for (std::uint64_t bits = 0; bits < (1ull << k); ++bits) {
        BasisLabel label(static_cast<std::size_t>(k));
        for (int a = 0; a < k; ++a) {
            const AtomSpec& spec = atoms[static_cast<std::size_t>(a)];
            const bool one = (bits >> (k - 1 - a)) & 1ull;
            label[static_cast<std::size_t>(a)] =
                one ? spec.level(LevelRole::Ground1) : spec.level(LevelRole::Ground0);
        }
        inputs.push_back(basis_state(atoms, label));
    }
    return inputs;
}

std::vector<RegisterState> random_qubit_inputs(const std::vector<AtomSpec>& atoms, int count,
                                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<RegisterState> inputs;
    inputs.reserve(static_cast<std::size_t>(count));
    for (int c = 0; c < count; ++c) {
        std::vector<std::vector<Complex>> per_atom;
        RegisterState state(atoms);
        auto amps = state.amplitudes();
        // Gaussian amplitudes on the qubit sub-labels only.
        for (std::size_t idx = 0; idx < amps.size(); ++idx) {
            bool in_qubit_space = true;
            for (int a = 0; a < state.num_atoms() && in_qubit_space; ++a) {
                const AtomSpec& spec = atoms[static_cast<std::size_t>(a)];
                const int d = state.digit(idx, a);
                in_qubit_space = d == spec.level(LevelRole::Ground0) || d == spec.level(LevelRole::Ground1);
            }
            if (in_qubit_space) amps[idx] = Complex{gauss(rng), gauss(rng)};
        }
        const double n = std::sqrt(state.norm_sq());
        for (auto& a : amps) a /= n;
        inputs.push_back(std::move(state));
    }
    return inputs;
}

double gate_error(const Fragment& fragment, const InteractionGraph& graph, double omega,
                  std::span<const RegisterState> inputs) {
    if (inputs.empty()) throw std::invalid_argument("gate_error: empty input set");
    const std::vector<TimedSegment> segments = build_segments(fragment, graph, omega);
    double total = 0.0;
    for (const RegisterState& input : inputs) {
        const RegisterState ideal = run_ideal(fragment, input);
        RegisterState dyn = input;
        for (const TimedSegment& segment : segments) segment.propagator.advance(dyn, segment.duration);
        total += 1.0 - fidelity_mod_phase(dyn, ideal) + (1.0 - dyn.norm_sq());
    }
    return total / static_cast<double>(inputs.size());
}

double optimal_rabi(double blockade_b, double tau) {
    if (blockade_b <= 0.0 || tau <= 0.0) throw std::invalid_argument("optimal_rabi: inputs must be positive");
    return std::cbrt(7.0 * kPi) * std::pow(blockade_b, 2.0 / 3.0) / std::cbrt(tau);
}

double min_error_formula(double blockade_b, double tau) {
    if (blockade_b * tau <= 0.0)
        throw std::invalid_argument("min_error_formula: B*tau must be positive");
    return 3.0 * std::pow(7.0 * kPi, 2.0 / 3.0) / 8.0 * std::pow(blockade_b * tau, -2.0 / 3.0);
}

// ---------------------------------------------------------------------------
// Controlled-phase error study

namespace {

// Shift-spread-averaged error of a pulse fragment at one drive strength.
double spread_averaged_error(const Fragment& fragment, std::span<const RegisterState> inputs,
                             double blockade_b, double tau, double omega,
                             const ControlledPhaseStudy& study) {
    const double gamma = 1.0 / tau;
    const int samples = std::max(1, study.b_samples);
    double total = 0.0;
    for (int j = 0; j < samples; ++j) {
        const double frac = (samples == 1) ? 0.0 : (2.0 * (j + 0.5) / samples - 1.0);
        const double b_j = blockade_b * (1.0 + study.b_spread * frac);
        const InteractionGraph graph = uniform_graph(fragment.atoms, LevelRole::RydR, b_j, gamma);
        total += gate_error(fragment, graph, omega, inputs);
    }
    return total / samples;
}

// Coarse log scan plus golden-section refinement of the drive strength.
double minimize_over_drive(const std::function<double(double)>& error_at, double omega_center,
                           double omega_cap, int points, double* error_out) {
    const double lo0 = omega_center / 8.0;
    const double hi0 = std::min(omega_center * 8.0, omega_cap);
    double best_w = lo0, best_e = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= points; ++i) {
        const double w = lo0 * std::pow(hi0 / lo0, static_cast<double>(i) / points);
        const double e = error_at(w);
        if (e < best_e) {
            best_e = e;
            best_w = w;
        }
    }
    const double step = std::pow(hi0 / lo0, 1.0 / points);
    double lo = best_w / step, hi = best_w * step;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = error_at(x1), f2 = error_at(x2);
    for (int it = 0; it < 40 && (hi - lo) / hi > 1e-4; ++it) {
        if (f1 > f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = error_at(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = error_at(x1);
        }
    }
    const double w_mid = 0.5 * (lo + hi);
    const double e_mid = error_at(w_mid);
    if (e_mid < best_e) {
        best_e = e_mid;
        best_w = w_mid;
    }
    if (error_out != nullptr) *error_out = best_e;
    return best_w;
}

} // namespace

double controlled_phase_error(double blockade_b, double tau, double omega,
                              const ControlledPhaseStudy& study) {
    if (blockade_b <= 0.0 || tau <= 0.0 || omega <= 0.0)
        throw std::invalid_argument("controlled_phase_error: inputs must be positive");
    const Fragment fragment = controlled_phase_fragment();
    const std::vector<RegisterState> inputs = qubit_basis_inputs(fragment.atoms);
    return spread_averaged_error(fragment, inputs, blockade_b, tau, omega, study);
}

ControlledPhaseMinimum minimize_controlled_phase_error(double blockade_b, double tau,
                                                       const ControlledPhaseStudy& study) {
    ControlledPhaseMinimum result;
    result.omega_opt_formula = optimal_rabi(blockade_b, tau);
    result.error_formula = min_error_formula(blockade_b, tau);
    result.omega_min = minimize_over_drive(
        [&](double w) { return controlled_phase_error(blockade_b, tau, w, study); },
        result.omega_opt_formula, blockade_b, std::max(8, study.omega_points), &result.error_min);
    return result;
}

double empirical_step_prefactor(int k, double b_tau, const ControlledPhaseStudy& study) {
    if (k < 1 || b_tau <= 0.0) throw std::invalid_argument("empirical_step_prefactor: bad inputs");
    const double tau = 1.0;
    BasisLabel marked(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) marked[static_cast<std::size_t>(i)] = i % 2;
    const Fragment fragment = sequential_oracle_fragment(k, marked);
    const std::vector<RegisterState> inputs = qubit_basis_inputs(fragment.atoms);

    double error_min = 0.0;
    minimize_over_drive(
        [&](double w) { return spread_averaged_error(fragment, inputs, b_tau, tau, w, study); },
        optimal_rabi(b_tau, tau), b_tau, std::max(8, study.omega_points), &error_min);
    return error_min * std::pow(b_tau, 2.0 / 3.0);
}

} // namespace rydgrover
