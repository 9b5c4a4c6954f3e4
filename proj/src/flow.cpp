#include "warpflow/flow.hpp"

#include <cmath>

namespace warpflow {

namespace {

class Stepper {
public:
    Stepper(const BaseGrid& grid, const WarpingProfile& profile)
        : grid_(grid), profile_(profile) {}

    double min_omega(const Field& rho) {
        profile_.eval_fields(rho, phi_, dphi_);
        Field g2 = gradient_sq(grid_, rho);
        return std::sqrt((phi_.square() + g2).minCoeff());
    }

    // classical RK4; stage band checks happen inside the speed kernel
    void advance(const Field& rho, double dt, Field& out) {
        detail::speed_into(grid_, profile_, rho, ws_, k1_);
        tmp_ = rho + 0.5 * dt * k1_;
        detail::speed_into(grid_, profile_, tmp_, ws_, k2_);
        tmp_ = rho + 0.5 * dt * k2_;
        detail::speed_into(grid_, profile_, tmp_, ws_, k3_);
        tmp_ = rho + dt * k3_;
        detail::speed_into(grid_, profile_, tmp_, ws_, k4_);
        out = rho + dt / 6.0 * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
        if (!out.allFinite()) throw NonFiniteError("flow step produced NaN/Inf");
    }

private:
    const BaseGrid& grid_;
    const WarpingProfile& profile_;
    detail::SpeedWorkspace ws_;
    Field k1_, k2_, k3_, k4_, tmp_, phi_, dphi_;
};

} // namespace

double stable_dt(const BaseGrid& grid, const WarpingProfile& profile,
                 const GraphState& state, double cfl) {
    Field phi, dphi;
    profile.eval_fields(state.rho, phi, dphi);
    const double min_w = std::sqrt((phi.square() + gradient_sq(grid, state.rho)).minCoeff());
    return cfl * grid.spacing() * grid.spacing() * min_w;
}

GraphState step(const BaseGrid& grid, const WarpingProfile& profile,
                const GraphState& state, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    Stepper stepper(grid, profile);
    Field next;
    stepper.advance(state.rho, dt, next);
    return GraphState(std::move(next), state.t + dt);
}

Trajectory run(const BaseGrid& grid, const WarpingProfile& profile, const FlowConfig& cfg,
               GraphState initial, const IsoProfile& iso) {
    if (!(cfg.cfl > 0.0) || cfg.cfl > 1.0)
        throw std::invalid_argument("run: cfl must lie in (0, 1]");
    if (!(cfg.t_max > 0.0)) throw std::invalid_argument("run: t_max must be positive");
    if (!(cfg.tol_osc > 0.0)) throw std::invalid_argument("run: tol_osc must be positive");
    if (cfg.record_every < 1) throw std::invalid_argument("run: record_every must be >= 1");

    Trajectory traj;
    const bool keep_states = cfg.store_states || cfg.h_evolution;
    auto record = [&](const GraphState& st) {
        if (!traj.records.empty() && traj.records.back().t == st.t) return;
        traj.records.push_back(collect_record(grid, profile, st, cfg.K, &iso));
        if (keep_states || traj.states.empty())
            traj.states.push_back(st);
    };

    Stepper stepper(grid, profile);
    GraphState state = std::move(initial);
    record(state);

    const double cfl_dt = cfg.cfl * grid.spacing() * grid.spacing();
    long step_idx = 0;
    while (true) {
        const double osc = state.rho.maxCoeff() - state.rho.minCoeff();
        if (osc < cfg.tol_osc) {
            traj.termination = Termination::Converged;
            break;
        }
        if (state.t >= cfg.t_max * (1.0 - 1e-14)) {
            traj.termination = Termination::TMaxReached;
            break;
        }
        double dt = std::min(cfl_dt * stepper.min_omega(state.rho), cfg.t_max - state.t);
        Field next;
        try {
            try {
                stepper.advance(state.rho, dt, next);
            } catch (const NonFiniteError&) {
                dt *= 0.5; // one retry at half step
                stepper.advance(state.rho, dt, next);
            }
        } catch (const std::exception& e) {
            traj.termination = Termination::NumericalFailure;
            traj.failure_reason = e.what();
            break;
        }
        state = GraphState(std::move(next), state.t + dt);
        ++step_idx;
        if (step_idx % cfg.record_every == 0) record(state);
    }
    record(state); // termination snapshot (skipped if it coincides with the last record)
    if (!keep_states && (traj.states.empty() || traj.states.back().t != state.t))
        traj.states.push_back(state); // final state always kept

    if (cfg.h_evolution) {
        for (std::size_t k = 1; k + 1 < traj.states.size(); ++k) {
            const double dl = traj.states[k].t - traj.states[k - 1].t;
            const double dr = traj.states[k + 1].t - traj.states[k].t;
            if (!(dl > 0.0) || !(dr > 0.0) || dr > 2.0 * dl || dl > 2.0 * dr) continue;
            traj.records[k].h_evolution_residual = h_evolution_residual(
                grid, profile, cfg.K, traj.states[k - 1], traj.states[k], traj.states[k + 1]);
        }
    }
    return traj;
}

} // namespace warpflow
