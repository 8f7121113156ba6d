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

#include "superatom/propagator/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace superatom {

void LindbladModel::validate() const {
    if (!(gamma_e >= 0.0) || !(gamma_r >= 0.0) || !std::isfinite(gamma_e) || !std::isfinite(gamma_r)) {
        throw std::invalid_argument("decay rates must be finite and nonnegative");
    }
}

LindbladModel LindbladModel::reference_rates() { return {mhz(5.0), khz(0.8)}; }

HamiltonianModel::HamiltonianModel(BlockadedBasis basis, PulseSchedule schedule)
    : basis_(std::move(basis)), schedule_(std::move(schedule)) {
    if (schedule_.max_ensemble() >= basis_.n_ensembles()) {
        throw std::invalid_argument("schedule addresses an ensemble missing from the basis");
    }
    const int n = basis_.n_atoms();
    std::vector<Level> scratch(static_cast<std::size_t>(n));
    for (const Segment& seg : schedule_.segments()) {
        CompiledSegment cs;
        for (const Coupling& c : seg.couplings) {
            CompiledCoupling cc;
            const auto [first, last] = basis_.atom_range(c.ensemble);
            for (std::size_t i = 0; i < basis_.dim(); ++i) {
                const auto cfg = basis_.config(i);
                for (int a = first; a < last; ++a) {
                    if (cfg[static_cast<std::size_t>(a)] != c.transition.lower) {
                        continue;
                    }
                    scratch.assign(cfg.begin(), cfg.end());
                    scratch[static_cast<std::size_t>(a)] = c.transition.upper;
                    if (auto j = basis_.index_of(scratch)) {
                        cc.pairs.push_back({static_cast<std::int32_t>(*j), static_cast<std::int32_t>(i)});
                    }
                }
            }
            cs.couplings.push_back(std::move(cc));
        }
        for (const LevelShift& s : seg.shifts) {
            CompiledShift sh;
            const auto [first, last] = basis_.atom_range(s.ensemble);
            for (std::size_t i = 0; i < basis_.dim(); ++i) {
                int k = 0;
                for (int a = first; a < last; ++a) {
                    k += basis_.level_of(i, a) == s.level ? 1 : 0;
                }
                if (k > 0) {
                    sh.index.push_back(static_cast<std::int32_t>(i));
                    sh.count.push_back(static_cast<double>(k));
                }
            }
            cs.shifts.push_back(std::move(sh));
        }
        compiled_.push_back(std::move(cs));
    }
}

std::vector<int> HamiltonianModel::active_segments(double t0, double t1) const {
    std::vector<int> out;
    const auto& segs = schedule_.segments();
    for (std::size_t k = 0; k < segs.size(); ++k) {
        if (segs[k].covers(t0, t1)) {
            out.push_back(static_cast<int>(k));
        }
    }
    return out;
}

std::vector<int> HamiltonianModel::active_segments_at(double t) const { return active_segments(t, t); }

Operator HamiltonianModel::build_hamiltonian(double t) const {
    const auto d = static_cast<Eigen::Index>(dim());
    Operator h = Operator::Zero(d, d);
    const auto active = active_segments_at(t);
    for (Eigen::Index j = 0; j < d; ++j) {
        StateVector e = StateVector::Zero(d);
        e[j] = 1.0;
        StateVector col(d);
        apply(t, active, e.data(), col.data());
        h.col(j) = col;
    }
    return h;
}

void HamiltonianModel::apply(double t, const std::vector<int>& active, const cplx* in, cplx* out,
                             std::size_t cols) const {
    const std::size_t d = dim();
    std::fill(out, out + d * cols, cplx(0.0));
    const auto& segs = schedule_.segments();
    for (int k : active) {
        const Segment& seg = segs[static_cast<std::size_t>(k)];
        const CompiledSegment& cs = compiled_[static_cast<std::size_t>(k)];
        for (std::size_t s = 0; s < seg.shifts.size(); ++s) {
            const double energy = seg.shifts[s].energy;
            const CompiledShift& sh = cs.shifts[s];
            for (std::size_t c = 0; c < cols; ++c) {
                const cplx* x = in + c * d;
                cplx* y = out + c * d;
                for (std::size_t m = 0; m < sh.index.size(); ++m) {
                    y[sh.index[m]] += energy * sh.count[m] * x[sh.index[m]];
                }
            }
        }
        for (std::size_t q = 0; q < seg.couplings.size(); ++q) {
            const Coupling& cp = seg.couplings[q];
            const double amp = 0.5 * evaluate(cp.envelope, t);
            if (amp == 0.0) {
                continue;
            }
            const cplx up = std::polar(amp, cp.phase);
            const cplx down = std::conj(up);
            const auto& pairs = cs.couplings[q].pairs;
            for (std::size_t c = 0; c < cols; ++c) {
                const cplx* x = in + c * d;
                cplx* y = out + c * d;
                for (const Pair& p : pairs) {
                    y[p.upper] += up * x[p.lower];
                    y[p.lower] += down * x[p.upper];
                }
            }
        }
    }
}

Eigen::VectorXd HamiltonianModel::loss_rates(const LindbladModel& lindblad) const {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim()));
    for (std::size_t i = 0; i < dim(); ++i) {
        double r = 0.0;
        for (Level l : basis_.config(i)) {
            if (l == Level::e) {
                r += lindblad.gamma_e;
            } else if (LevelScheme::is_rydberg(l)) {
                r += lindblad.gamma_r;
            }
        }
        g[static_cast<Eigen::Index>(i)] = r;
    }
    return g;
}

std::vector<HamiltonianModel::JumpChannel> HamiltonianModel::jump_channels(const LindbladModel& lindblad) const {
    std::vector<JumpChannel> out;
    if (!lindblad.has_jumps()) {
        return out;
    }
    const struct {
        Level from;
        Level to;
        double rate;
    } kinds[] = {{Level::e, Level::g0, lindblad.gamma_e},
                 {Level::r0, Level::g0, lindblad.gamma_r},
                 {Level::r1, Level::g1, lindblad.gamma_r}};
    std::vector<Level> scratch;
    for (int atom = 0; atom < basis_.n_atoms(); ++atom) {
        for (const auto& k : kinds) {
            if (k.rate <= 0.0) {
                continue;
            }
            JumpChannel ch;
            ch.rate = k.rate;
            for (std::size_t i = 0; i < dim(); ++i) {
                const auto c = basis_.config(i);
                if (c[static_cast<std::size_t>(atom)] != k.from) {
                    continue;
                }
                scratch.assign(c.begin(), c.end());
                scratch[static_cast<std::size_t>(atom)] = k.to;
                const auto j = basis_.index_of(scratch);
                if (!j) {
                    throw std::logic_error("decay target missing from the basis");
                }
                ch.moves.emplace_back(static_cast<std::int32_t>(i), static_cast<std::int32_t>(*j));
            }
            if (!ch.moves.empty()) {
                out.push_back(std::move(ch));
            }
        }
    }
    return out;
}

std::vector<std::int32_t> HamiltonianModel::reachable(const std::vector<std::int32_t>& seed,
                                                      const LindbladModel& lindblad) const {
    std::vector<std::vector<std::int32_t>> adj(dim());
    for (const auto& cs : compiled_) {
        for (const auto& cc : cs.couplings) {
            for (const Pair& p : cc.pairs) {
                adj[static_cast<std::size_t>(p.upper)].push_back(p.lower);
                adj[static_cast<std::size_t>(p.lower)].push_back(p.upper);
            }
        }
    }
    for (const auto& ch : jump_channels(lindblad)) {
        for (const auto& [from, to] : ch.moves) {
            adj[static_cast<std::size_t>(from)].push_back(to);
        }
    }
    std::vector<char> seen(dim(), 0);
    std::vector<std::int32_t> stack;
    for (std::int32_t s : seed) {
        if (!seen[static_cast<std::size_t>(s)]) {
            seen[static_cast<std::size_t>(s)] = 1;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        const std::int32_t k = stack.back();
        stack.pop_back();
        for (std::int32_t n : adj[static_cast<std::size_t>(k)]) {
            if (!seen[static_cast<std::size_t>(n)]) {
                seen[static_cast<std::size_t>(n)] = 1;
                stack.push_back(n);
            }
        }
    }
    std::vector<std::int32_t> out;
    for (std::size_t k = 0; k < dim(); ++k) {
        if (seen[k]) {
            out.push_back(static_cast<std::int32_t>(k));
        }
    }
    return out;
}

}  // namespace superatom
