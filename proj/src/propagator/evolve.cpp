// Copyright 2026 The superatom-qpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "superatom/propagator/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "superatom/core/states.hpp"

namespace superatom {

namespace {

constexpr double kGroundFloor = 1e-6;
// The user tolerance targets the global error; the step controller works on local error.
constexpr double kLocalTolScale = 0.02;

void check_options(const EvolveOptions& o, TimeSpan span) {
    if (!(o.tol > 0.0) || o.tol > 1e-8) {
        throw std::invalid_argument("integrator tolerance must lie in (0, 1e-8]");
    }
    if (!std::isfinite(span.start) || !std::isfinite(span.end) || span.end < span.start) {
        throw std::invalid_argument("time span must be finite and ordered");
    }
    if (o.samples < 0) {
        throw std::invalid_argument("sample count must be nonnegative");
    }
}

std::vector<double> sample_times(TimeSpan span, int samples) {
    std::vector<double> s;
    if (samples < 2) {
        s = {span.start, span.end};
    } else {
        for (int i = 0; i < samples; ++i) {
            s.push_back(i == samples - 1 ? span.end
                                         : span.start + (span.end - span.start) * i / (samples - 1));
        }
    }
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

/// Integration stops: samples plus schedule breakpoints inside the span.
std::vector<double> stop_times(const HamiltonianModel& model, const std::vector<double>& samples, TimeSpan span) {
    std::vector<double> stops = samples;
    for (double b : model.schedule().breakpoints()) {
        if (b > span.start && b < span.end) {
            stops.push_back(b);
        }
    }
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
    return stops;
}

IntegratorOptions integrator_options(const EvolveOptions& o) {
    IntegratorOptions io;
    io.rtol = o.tol * kLocalTolScale;
    io.atol = o.tol * kLocalTolScale;
    io.max_step = o.max_step;
    return io;
}

bool phase_guard(const cplx& a, const cplx& b) {
    if (std::abs(a) < kGroundFloor || std::abs(b) < kGroundFloor) {
        return true;
    }
    return std::abs(std::arg(b / a)) < 0.5 * kPi;
}

/// Piecewise integration between consecutive stops. `active` is shared with
/// the right-hand side closure and refreshed per piece.
template <typename SampleFn>
void drive(const HamiltonianModel& model, const std::vector<double>& stops, const std::vector<double>& samples,
           StateVector& y, const Rhs& rhs, std::vector<int>& active, const EvolveOptions& o,
           IntegratorStats& stats, const StepGuard& guard, const StepObserver& observer, SampleFn sample) {
    std::size_t next_sample = 0;
    double h = 0.0;
    const IntegratorOptions io = integrator_options(o);
    auto maybe_sample = [&](double t) {
        if (next_sample < samples.size() && samples[next_sample] == t) {
            sample(t, y);
            ++next_sample;
        }
    };
    maybe_sample(stops.front());
    for (std::size_t s = 0; s + 1 < stops.size(); ++s) {
        const double a = stops[s];
        const double b = stops[s + 1];
        active = model.active_segments(a, b);
        if (!active.empty()) {
            dop853_integrate(rhs, a, b, y, h, io, stats, guard, observer);
        } else if (observer) {
            observer(b, y);
        }
        maybe_sample(b);
    }
}

}  // namespace

Trajectory evolve_schrodinger(const StateVector& initial, const HamiltonianModel& model, TimeSpan span,
                              const EvolveOptions& options, const LindbladModel& lindblad) {
    check_options(options, span);
    if (lindblad.has_jumps()) {
        throw std::invalid_argument("decay jumps need evolve_master");
    }
    
    lindblad.validate();
    if (static_cast<std::size_t>(initial.size()) != model.dim()) {
        throw std::invalid_argument("initial state does not match the basis dimension");
    }
    const BlockadedBasis& basis = model.basis();
    const LogicalFrame frame(basis);
    const Eigen::VectorXd half_loss = 0.5 * model.loss_rates(lindblad);
    const bool lossy = lindblad.active();
    const std::size_t g = ground_index(basis);

    std::vector<int> active;
    const Rhs rhs = [&](double t, const StateVector& y, StateVector& dy) {
        model.apply(t, active, y.data(), dy.data());
        dy *= cplx(0.0, -1.0);
        if (lossy) {
            dy.array() -= half_loss.array() * y.array();
        }
    };

    Trajectory tr;
    const double norm0 = initial.squaredNorm();
    const auto samples = sample_times(span, options.samples);
    const auto stops = stop_times(model, samples, span);
    StateVector y = initial;

    StepGuard guard;
    StepObserver observer;
    if (options.track_ground) {
        tr.fine_times.push_back(span.start);
        tr.fine_ground.push_back(y[static_cast<Eigen::Index>(g)]);
        guard = [g](double, const StateVector& y0, double, const StateVector& y1) {
            return phase_guard(y0[static_cast<Eigen::Index>(g)], y1[static_cast<Eigen::Index>(g)]);
        };
        observer = [&tr, g](double t, const StateVector& yy) {
            tr.fine_times.push_back(t);
            tr.fine_ground.push_back(yy[static_cast<Eigen::Index>(g)]);
        };
    }

    auto sample = [&](double t, const StateVector& psi) {
        tr.times.push_back(t);
        const StateVector amps = frame.project(psi);
        std::vector<double> p(static_cast<std::size_t>(amps.size()));
        double total = 0.0;
        for (Eigen::Index k = 0; k < amps.size(); ++k) {
            p[static_cast<std::size_t>(k)] = std::norm(amps[k]);
            total += p[static_cast<std::size_t>(k)];
        }
        const double n = psi.squaredNorm();
        tr.populations.push_back(std::move(p));
        tr.rydberg.push_back(rydberg_population(psi, basis));
        tr.norm.push_back(n);
        tr.sink.push_back(norm0 - n);
        tr.leakage.push_back(norm0 - total);
        tr.ground.push_back(psi[static_cast<Eigen::Index>(g)]);
        if (options.keep_states) {
            tr.states.push_back(psi);
        }
    };

    drive(model, stops, samples, y, rhs, active, options, tr.stats, guard, observer, sample);
    tr.final_state = y;
    return tr;
}

StateVector propagate(const StateVector& initial, const HamiltonianModel& model, TimeSpan span, double tol,
                      const LindbladModel& lindblad) {
    EvolveOptions o;
    o.tol = tol;
    o.samples = 0;
    o.track_ground = false;
    return *evolve_schrodinger(initial, model, span, o, lindblad).final_state;
}

DensityMatrix propagate_density(const DensityMatrix& initial, const HamiltonianModel& model, TimeSpan span, double tol,
                                const LindbladModel& lindblad) {
    EvolveOptions o;
    o.tol = tol;
    o.samples = 0;
    o.track_ground = false;
    return *evolve_master(initial, model, lindblad, span, o).final_density;
}

namespace {

Trajectory evolve_density(const DensityMatrix& initial, const HamiltonianModel& model, const LindbladModel& lindblad,
                          TimeSpan span, const EvolveOptions& options) {
    const BlockadedBasis& basis = model.basis();
    const LogicalFrame frame(basis);
    const auto full = static_cast<Eigen::Index>(model.dim());

    // Rows of rho outside the reachable set of the initial support stay zero.
    std::vector<std::int32_t> seed;
    for (Eigen::Index i = 0; i < full; ++i) {
        if (initial.row(i).cwiseAbs().maxCoeff() > 0.0) {
            seed.push_back(static_cast<std::int32_t>(i));
        }
    }
    const std::vector<std::int32_t> keep = model.reachable(seed, lindblad);
    const auto d = static_cast<Eigen::Index>(keep.size());
    std::vector<std::int32_t> local(static_cast<std::size_t>(full), -1);
    for (Eigen::Index k = 0; k < d; ++k) {
        local[static_cast<std::size_t>(keep[static_cast<std::size_t>(k)])] = static_cast<std::int32_t>(k);
    }

    const Eigen::VectorXd all_gamma = model.loss_rates(lindblad);
    Eigen::VectorXd gamma(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        gamma[k] = all_gamma[keep[static_cast<std::size_t>(k)]];
    }
    auto jumps = model.jump_channels(lindblad);
    for (auto& ch : jumps) {
        std::vector<std::pair<std::int32_t, std::int32_t>> moves;
        for (const auto& [from, to] : ch.moves) {
            if (local[static_cast<std::size_t>(from)] >= 0) {
                moves.emplace_back(local[static_cast<std::size_t>(from)], local[static_cast<std::size_t>(to)]);
            }
        }
        ch.moves = std::move(moves);
    }

    auto embed = [&](const cplx* rho) {
        CMatrix out = CMatrix::Zero(full, full);
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index i = 0; i < d; ++i) {
                out(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)]) = rho[j * d + i];
            }
        }
        return out;
    };

    std::vector<int> active;
    CMatrix wide_in = CMatrix::Zero(full, d);
    CMatrix wide_out(full, d);
    CMatrix h_rho(d, d);
    const Rhs rhs = [&](double t, const StateVector& y, StateVector& dy) {
        Eigen::Map<const CMatrix> rho(y.data(), d, d);
        if (d == full) {
            model.apply(t, active, y.data(), h_rho.data(), static_cast<std::size_t>(d));
        } else {
            for (Eigen::Index i = 0; i < d; ++i) {
                wide_in.row(keep[static_cast<std::size_t>(i)]) = rho.row(i);
            }
            model.apply(t, active, wide_in.data(), wide_out.data(), static_cast<std::size_t>(d));
            for (Eigen::Index i = 0; i < d; ++i) {
                h_rho.row(i) = wide_out.row(keep[static_cast<std::size_t>(i)]);
            }
        }
        Eigen::Map<CMatrix> drho(dy.data(), d, d);
        // X = -i H rho - Gamma rho / 2, d rho/dt = X + X^dag.
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index i = j; i < d; ++i) {
                const cplx xij = cplx(h_rho(i, j).imag(), -h_rho(i, j).real()) - 0.5 * gamma[i] * rho(i, j);
                const cplx xji = cplx(h_rho(j, i).imag(), -h_rho(j, i).real()) - 0.5 * gamma[j] * rho(j, i);
                const cplx v = xij + std::conj(xji);
                drho(i, j) = v;
                drho(j, i) = std::conj(v);
            }
        }
        // Sum over channels of rate L rho L^dag.
        for (const auto& ch : jumps) {
            for (const auto& [fa, ta] : ch.moves) {
                for (const auto& [fb, tb] : ch.moves) {
                    drho(ta, tb) += ch.rate * rho(fa, fb);
                }
            }
        }
        double loss = 0.0;
        if (jumps.empty()) {
            for (Eigen::Index i = 0; i < d; ++i) {
                loss += gamma[i] * rho(i, i).real();
            }
        }
        dy[d * d] = loss;
    };

    Trajectory tr;
    const auto samples = sample_times(span, options.samples);
    const auto stops = stop_times(model, samples, span);
    StateVector y(d * d + 1);
    {
        Eigen::Map<CMatrix> rho(y.data(), d, d);
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index i = 0; i < d; ++i) {
                rho(i, j) = initial(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)]);
            }
        }
    }
    y[d * d] = 0.0;

    auto sample = [&](double t, const StateVector& yy) {
        const CMatrix rho = embed(yy.data());
        tr.times.push_back(t);
        const CMatrix block = frame.project(rho);
        std::vector<double> p(static_cast<std::size_t>(block.rows()));
        double total = 0.0;
        for (Eigen::Index k = 0; k < block.rows(); ++k) {
            p[static_cast<std::size_t>(k)] = block(k, k).real();
            total += block(k, k).real();
        }
        const double trace = rho.trace().real();
        tr.populations.push_back(std::move(p));
        tr.rydberg.push_back(rydberg_population(rho, basis));
        tr.norm.push_back(trace);
        tr.sink.push_back(yy[d * d].real());
        tr.leakage.push_back(trace + yy[d * d].real() - total);
    };
    drive(model, stops, samples, y, rhs, active, options, tr.stats, {}, {}, sample);
    tr.final_density = embed(y.data());
    return tr;
}

Trajectory evolve_eigen(const DensityMatrix& initial, const HamiltonianModel& model, const LindbladModel& lindblad,
                        TimeSpan span, const EvolveOptions& options) {
    const BlockadedBasis& basis = model.basis();
    const LogicalFrame frame(basis);
    const auto d = static_cast<Eigen::Index>(model.dim());
    const Eigen::VectorXd half_loss = 0.5 * model.loss_rates(lindblad);

    Eigen::SelfAdjointEigenSolver<CMatrix> es(initial);
    std::vector<Eigen::Index> keep;
    const double cutoff = 1e-15 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    for (Eigen::Index k = 0; k < d; ++k) {
        if (es.eigenvalues()[k] > cutoff) {
            keep.push_back(k);
        }
    }
    const auto r = static_cast<Eigen::Index>(keep.size());
    Eigen::VectorXd w(r);
    StateVector y(d * r);
    for (Eigen::Index c = 0; c < r; ++c) {
        w[c] = es.eigenvalues()[keep[static_cast<std::size_t>(c)]];
        y.segment(c * d, d) = es.eigenvectors().col(keep[static_cast<std::size_t>(c)]);
    }

    std::vector<int> active;
    const Rhs rhs = [&](double t, const StateVector& yy, StateVector& dy) {
        model.apply(t, active, yy.data(), dy.data(), static_cast<std::size_t>(r));
        for (Eigen::Index c = 0; c < r; ++c) {
            auto out = dy.segment(c * d, d);
            out *= cplx(0.0, -1.0);
            out.array() -= half_loss.array() * yy.segment(c * d, d).array();
        }
    };

    Trajectory tr;
    const double trace0 = initial.trace().real();
    const auto samples = sample_times(span, options.samples);
    const auto stops = stop_times(model, samples, span);
    auto sample = [&](double t, const StateVector& yy) {
        tr.times.push_back(t);
        std::vector<double> p(frame.logical_dim(), 0.0);
        double trace = 0.0;
        double ryd = 0.0;
        for (Eigen::Index c = 0; c < r; ++c) {
            const StateVector psi = yy.segment(c * d, d);
            const StateVector amps = frame.project(psi);
            for (Eigen::Index k = 0; k < amps.size(); ++k) {
                p[static_cast<std::size_t>(k)] += w[c] * std::norm(amps[k]);
            }
            trace += w[c] * psi.squaredNorm();
            ryd += w[c] * rydberg_population(psi, basis);
        }
        double total = 0.0;
        for (double v : p) {
            total += v;
        }
        tr.populations.push_back(std::move(p));
        tr.rydberg.push_back(ryd);
        tr.norm.push_back(trace);
        tr.sink.push_back(trace0 - trace);
        tr.leakage.push_back(trace0 - total);
    };
    drive(model, stops, samples, y, rhs, active, options, tr.stats, {}, {}, sample);
    CMatrix rho = CMatrix::Zero(d, d);
    for (Eigen::Index c = 0; c < r; ++c) {
        const StateVector psi = y.segment(c * d, d);
        rho.noalias() += w[c] * psi * psi.adjoint();
    }
    tr.final_density = rho;
    return tr;
}

}  // namespace

Trajectory evolve_master(const DensityMatrix& initial, const HamiltonianModel& model, const LindbladModel& lindblad,
                         TimeSpan span, const EvolveOptions& options, MasterMethod method) {
    check_options(options, span);
    lindblad.validate();
    const auto d = static_cast<Eigen::Index>(model.dim());
    if (initial.rows() != d || initial.cols() != d) {
        throw std::invalid_argument("initial density matrix does not match the basis dimension");
    }
    if ((initial - initial.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::invalid_argument("initial density matrix is not Hermitian");
    }
    if (method == MasterMethod::eigen && lindblad.has_jumps()) {
        throw std::invalid_argument("the eigen method cannot represent decay jumps");
    }
    if (method == MasterMethod::automatic && lindblad.has_jumps()) {
        method = MasterMethod::density;
    }
    if (method == MasterMethod::automatic) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(initial, Eigen::EigenvaluesOnly);
        const double cutoff = 1e-15 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        const auto rank = (es.eigenvalues().array() > cutoff).count();
        method = 4 * rank <= d ? MasterMethod::eigen : MasterMethod::density;
    }
    if (method == MasterMethod::eigen) {
        return evolve_eigen(initial, model, lindblad, span, options);
    }
    return evolve_density(initial, model, lindblad, span, options);
}

std::vector<double> ground_phase(const Trajectory& tr) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> out(tr.times.size(), nan);
    const bool fine = !tr.fine_times.empty();
    const std::vector<double>& ts = fine ? tr.fine_times : tr.times;
    const std::vector<cplx>& amps = fine ? tr.fine_ground : tr.ground;
    if (amps.empty()) {
        return out;
    }
    std::vector<double> unwrapped(amps.size(), nan);
    double reference = nan;
    double last = nan;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (std::abs(amps[i]) < kGroundFloor) {
            continue;
        }
        const double a = std::arg(amps[i]);
        if (std::isnan(reference)) {
            reference = a;
            last = 0.0;
            unwrapped[i] = 0.0;
            continue;
        }
        double v = a - reference;
        v += kTwoPi * std::round((last - v) / kTwoPi);
        unwrapped[i] = v;
        last = v;
    }
    if (!fine) {
        return unwrapped;
    }
    std::size_t j = 0;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        while (j + 1 < ts.size() && ts[j] < tr.times[i]) {
            ++j;
        }
        std::size_t k = j;
        while (k + 1 < ts.size() && ts[k + 1] == tr.times[i]) {
            ++k;
        }
        if (ts[k] == tr.times[i]) {
            out[i] = unwrapped[k];
        }
    }
    return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr) {
    const std::vector<double> alpha = ground_phase(tr);
    const std::size_t np = tr.populations.empty() ? 0 : tr.populations.front().size();
    const int bits = np <= 1 ? 0 : static_cast<int>(std::lround(std::log2(static_cast<double>(np))));
    out << "t";
    for (std::size_t k = 0; k < np; ++k) {
        out << ",P";
        for (int b = bits - 1; b >= 0; --b) {
            out << ((k >> b) & 1U);
        }
    }
    out << ",alpha,rydberg,leakage,sink\n";
    out.precision(17);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        out << tr.times[i];
        for (double p : tr.populations[i]) {
            out << ',' << p;
        }
        out << ',';
        if (!std::isnan(alpha[i])) {
            out << alpha[i];
        } else {
            out << "nan";
        }
        out << ',' << tr.rydberg[i] << ',' << tr.leakage[i] << ',' << tr.sink[i] << '\n';
    }
}

}  // namespace superatom
