#include "pdcp/steppers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pdcp {

StepMode step_mode_from_name(const std::string& name) {
    if (name == "constant") return StepMode::Constant;
    if (name == "quadratic") return StepMode::Quadratic;
    throw std::invalid_argument("unknown step mode '" + name + "'");
}

std::string step_mode_name(StepMode mode) {
    return mode == StepMode::Constant ? "constant" : "quadratic";
}

TimeGrid make_time_grid(int n_steps, double t_maturity, StepMode mode) {
    if (n_steps < 1) throw std::invalid_argument("time grid: need n_steps >= 1");
    TimeGrid g;
    g.mode = mode;
    g.times.resize(n_steps + 1);
    for (int n = 0; n <= n_steps; ++n) {
        if (mode == StepMode::Constant) {
            g.times[n] = (double(n) * t_maturity) / n_steps;
        } else {
            const double f = double(n) / n_steps;
            g.times[n] = f * f * t_maturity;
        }
    }
    g.times[0] = 0.0;
    g.times[n_steps] = t_maturity;
    return g;
}

bool method_carries_multiplier(Method m) {
    switch (m) {
        case Method::ThetaEP:
        case Method::ThetaP: return false;
        default: return true;
    }
}

bool method_is_adi(Method m) {
    return m == Method::DoIT || m == Method::CSIT || m == Method::MCSIT ||
           m == Method::HVIT;
}

void MethodConfig::validate() const {
    if (!(theta > 0.0)) throw std::invalid_argument("method: theta must be positive");
    if (damping_substeps < 0)
        throw std::invalid_argument("method: damping_substeps must be >= 0");
    if (!(penalty.large > 0.0) || !(penalty.tol > 0.0) || penalty.kappa_max < 1)
        throw std::invalid_argument("method: bad penalty parameters");
}

std::string MethodConfig::name() const {
    auto theta_tag = [&](const char* family) -> std::string {
        if (theta == 1.0) return std::string("BE-") + family;
        if (theta == 0.5) return std::string("CN-") + family;
        return std::string("theta") + std::to_string(theta) + "-" + family;
    };
    switch (method) {
        case Method::ThetaEP: return theta_tag("EP");
        case Method::ThetaIT: return theta_tag("IT");
        case Method::ThetaITVariant: return theta_tag("IT-variant");
        case Method::PR: return "PR";
        case Method::ThetaP: return theta_tag("P");
        case Method::DoIT: return "Do-IT";
        case Method::CSIT: return "CS-IT";
        case Method::MCSIT: return "MCS-IT";
        case Method::HVIT: return "HV-IT";
    }
    throw std::logic_error("method: bad enum");
}

MethodConfig MethodConfig::from_name(const std::string& name) {
    MethodConfig c;
    if (name == "BE-EP") { c.method = Method::ThetaEP; c.theta = 1.0; }
    else if (name == "CN-EP") { c.method = Method::ThetaEP; c.theta = 0.5; }
    else if (name == "BE-IT") { c.method = Method::ThetaIT; c.theta = 1.0; }
    else if (name == "CN-IT") { c.method = Method::ThetaIT; c.theta = 0.5; }
    else if (name == "BE-IT-variant") { c.method = Method::ThetaITVariant; c.theta = 1.0; }
    else if (name == "CN-IT-variant") { c.method = Method::ThetaITVariant; c.theta = 0.5; }
    else if (name == "BE-P") { c.method = Method::ThetaP; c.theta = 1.0; }
    else if (name == "CN-P") { c.method = Method::ThetaP; c.theta = 0.5; }
    else if (name == "PR") { c.method = Method::PR; c.theta = 0.5; }
    else if (name == "Do-IT") { c.method = Method::DoIT; c.theta = 0.5; }
    else if (name == "CS-IT") { c.method = Method::CSIT; c.theta = 0.5; }
    else if (name == "MCS-IT") { c.method = Method::MCSIT; c.theta = 1.0 / 3.0; }
    else if (name == "HV-IT") { c.method = Method::HVIT; c.theta = 1.0 / (2.0 + std::sqrt(2.0)); }
    else throw std::invalid_argument("unknown method name '" + name + "'");
    return c;
}

StepperState initial_state(const std::vector<double>& u0) {
    StepperState s;
    s.u_hat = u0;
    s.lambda_hat.assign(u0.size(), 0.0);
    s.step_index = 0;
    return s;
}

// ---------------------------------------------------------------------------

Stepper::Stepper(const SpatialOperator& op, PenaltyParams penalty)
    : Stepper(op, op.payoff_vec, penalty) {}

Stepper::Stepper(const SpatialOperator& op, std::vector<double> obstacle,
                 PenaltyParams penalty)
    : op_(op), obstacle_(std::move(obstacle)), penalty_(penalty) {
    if (static_cast<int>(obstacle_.size()) != op_.size())
        throw std::invalid_argument("stepper: obstacle length mismatch");
}

void Stepper::solve_full(double c, std::vector<double>& x) {
    if (!op_.two_d) {
        auto it = tri_full_.find(c);
        if (it == tri_full_.end()) {
            TridiagMatrix t = TridiagMatrix::identity_minus(c, op_.d1_lower, op_.d1_diag,
                                                            op_.d1_upper);
            tridiag_factor_inplace(t);
            it = tri_full_.emplace(c, std::move(t)).first;
        }
        tridiag_solve_inplace(it->second, x);
    } else {
        auto it = band_full_.find(c);
        if (it == band_full_.end()) {
            BandMatrix b = BandMatrix::identity_minus_csr(c, op_.a_full);
            banded_factor_inplace(b);
            it = band_full_.emplace(c, std::move(b)).first;
        }
        banded_solve_inplace(it->second, x);
    }
}

// Implicit ADI sweep in one direction: y <- solve(I - c*Aj, y - c*Aj*anchor).
void Stepper::sweep(int direction, double c, std::vector<double>& y,
                    const std::vector<double>& anchor) {
    auto it = lines_.find(c);
    if (it == lines_.end()) {
        TridiagMatrix t1 = TridiagMatrix::identity_minus(c, op_.d1_lower, op_.d1_diag,
                                                         op_.d1_upper);
        TridiagMatrix t2 = TridiagMatrix::identity_minus(c, op_.d2_lower, op_.d2_diag,
                                                         op_.d2_upper);
        tridiag_factor_inplace(t1);
        tridiag_factor_inplace(t2);
        it = lines_.emplace(c, std::make_pair(std::move(t1), std::move(t2))).first;
    }
    const CsrMatrix& aj = direction == 1 ? op_.a1 : op_.a2;
    aj.apply(anchor, tmp_);
    const int n = op_.size();
    for (int l = 0; l < n; ++l) y[l] -= c * tmp_[l];

    const int n1 = op_.n1();
    const int n2 = op_.n2();
    if (direction == 1) {
        const TridiagMatrix& lu = it->second.first;
        line_.resize(n1);
        for (int j = 0; j < n2; ++j) {
            std::copy_n(y.begin() + std::size_t(j) * n1, n1, line_.begin());
            tridiag_solve_inplace(lu, line_);
            std::copy_n(line_.begin(), n1, y.begin() + std::size_t(j) * n1);
        }
    } else {
        const TridiagMatrix& lu = it->second.second;
        line_.resize(n2);
        for (int i = 0; i < n1; ++i) {
            for (int j = 0; j < n2; ++j) line_[j] = y[i + std::size_t(j) * n1];
            tridiag_solve_inplace(lu, line_);
            for (int j = 0; j < n2; ++j) y[i + std::size_t(j) * n1] = line_[j];
        }
    }
}

// Shared final stage of the IT-splitting methods; eps is the multiplier
// weight (dt, or theta*dt for the variant, or dt/2 for PR acting on the
// explicitly advanced vector).
void Stepper::it_update(StepperState& s, const std::vector<double>& ubar, double eps) {
    const int n = op_.size();
    for (int l = 0; l < n; ++l) {
        const double a = ubar[l] - eps * s.lambda_hat[l];
        s.u_hat[l] = std::max(a, obstacle_[l]);
        s.lambda_hat[l] = std::max(0.0, (obstacle_[l] - a) / eps);
    }
}

void Stepper::theta_ep_step(StepperState& s, double dt, double theta) {
    const int n = op_.size();
    op_.apply(OperatorPart::Full, s.u_hat, av_);
    ubar_ = s.u_hat;
    const double w = (1.0 - theta) * dt;
    for (int l = 0; l < n; ++l) ubar_[l] += w * av_[l];
    solve_full(theta * dt, ubar_);
    for (int l = 0; l < n; ++l) s.u_hat[l] = std::max(ubar_[l], obstacle_[l]);
    ++s.step_index;
}

void Stepper::theta_it_step(StepperState& s, double dt, double theta) {
    const int n = op_.size();
    op_.apply(OperatorPart::Full, s.u_hat, av_);
    ubar_ = s.u_hat;
    const double w = (1.0 - theta) * dt;
    for (int l = 0; l < n; ++l) ubar_[l] += w * av_[l] + dt * s.lambda_hat[l];
    solve_full(theta * dt, ubar_);
    it_update(s, ubar_, dt);
    ++s.step_index;
}

void Stepper::theta_it_variant_step(StepperState& s, double dt, double theta) {
    const int n = op_.size();
    op_.apply(OperatorPart::Full, s.u_hat, av_);
    ubar_ = s.u_hat;
    const double w = (1.0 - theta) * dt;
    for (int l = 0; l < n; ++l) ubar_[l] += w * av_[l] + dt * s.lambda_hat[l];
    solve_full(theta * dt, ubar_);
    it_update(s, ubar_, theta * dt);
    ++s.step_index;
}

void Stepper::pr_step(StepperState& s, double dt) {
    const int n = op_.size();
    const double half = 0.5 * dt;
    ubar_ = s.u_hat;
    for (int l = 0; l < n; ++l) ubar_[l] += half * s.lambda_hat[l];
    solve_full(half, ubar_);
    op_.apply(OperatorPart::Full, ubar_, av_);
    for (int l = 0; l < n; ++l) {
        const double b = ubar_[l] + half * av_[l];
        s.u_hat[l] = std::max(b, obstacle_[l]);
        s.lambda_hat[l] = std::max(0.0, (obstacle_[l] - b) / half);
    }
    ++s.step_index;
}

int Stepper::theta_p_step(StepperState& s, double dt, double theta) {
    const int n = op_.size();
    const double c = theta * dt;
    op_.apply(OperatorPart::Full, s.u_hat, av_);
    rhs_ = s.u_hat;
    const double w = (1.0 - theta) * dt;
    for (int l = 0; l < n; ++l) rhs_[l] += w * av_[l];

    // unfactored base matrix I - c*A, shifted by the penalty diagonal each pass
    const TridiagMatrix* tri_base = nullptr;
    const BandMatrix* band_base = nullptr;
    if (!op_.two_d) {
        auto it = tri_base_.find(c);
        if (it == tri_base_.end())
            it = tri_base_
                     .emplace(c, TridiagMatrix::identity_minus(c, op_.d1_lower, op_.d1_diag,
                                                               op_.d1_upper))
                     .first;
        tri_base = &it->second;
    } else {
        auto it = band_base_.find(c);
        if (it == band_base_.end())
            it = band_base_.emplace(c, BandMatrix::identity_minus_csr(c, op_.a_full)).first;
        band_base = &it->second;
    }

    std::vector<std::uint8_t> mask(n), next_mask(n);
    std::vector<double>& cur = ubar_;
    cur = s.u_hat; // iterate 0
    for (int l = 0; l < n; ++l) mask[l] = cur[l] < obstacle_[l] ? 1 : 0;

    int iterations = 0;
    bool converged = false;
    while (iterations < penalty_.kappa_max && !converged) {
        tmp_ = rhs_;
        if (!op_.two_d) {
            tri_scratch_ = *tri_base;
            for (int l = 0; l < n; ++l)
                if (mask[l]) {
                    tri_scratch_.diag[l] += penalty_.large;
                    tmp_[l] += penalty_.large * obstacle_[l];
                }
            tridiag_factor_inplace(tri_scratch_);
            tridiag_solve_inplace(tri_scratch_, tmp_);
        } else {
            band_scratch_ = *band_base;
            for (int l = 0; l < n; ++l)
                if (mask[l]) {
                    band_scratch_.at(l, l) += penalty_.large;
                    tmp_[l] += penalty_.large * obstacle_[l];
                }
            banded_factor_inplace(band_scratch_);
            banded_solve_inplace(band_scratch_, tmp_);
        }
        ++iterations;

        double change = 0.0;
        for (int l = 0; l < n; ++l) {
            change = std::max(change,
                              std::abs(tmp_[l] - cur[l]) / std::max(1.0, std::abs(tmp_[l])));
            next_mask[l] = tmp_[l] < obstacle_[l] ? 1 : 0;
        }
        converged = change < penalty_.tol || next_mask == mask;
        cur.swap(tmp_);
        mask.swap(next_mask);
    }
    if (!converged)
        throw NonConvergenceError("penalty iteration: kappa_max exceeded",
                                  double(penalty_.kappa_max));

    s.u_hat = cur;
    ++s.step_index;
    penalty_iterations += iterations;
    penalty_steps += 1;
    return iterations;
}

void Stepper::adi_it_step(StepperState& s, double dt, AdiScheme scheme, double theta) {
    if (!op_.two_d)
        throw std::invalid_argument("adi step: operator has no directional split");
    const int n = op_.size();
    const double c = theta * dt;

    op_.apply(OperatorPart::Full, s.u_hat, av_);
    y0_ = s.u_hat;
    for (int l = 0; l < n; ++l) y0_[l] += dt * av_[l] + dt * s.lambda_hat[l];

    y_ = y0_;
    sweep(1, c, y_, s.u_hat);
    sweep(2, c, y_, s.u_hat); // y_ = Y_2

    const std::vector<double>* ubar = &y_;
    if (scheme != AdiScheme::Do) {
        // correction stages act on Y_2 - u
        tmp_.resize(n);
        for (int l = 0; l < n; ++l) tmp_[l] = y_[l] - s.u_hat[l];
        yt_ = y0_;
        if (scheme == AdiScheme::MCS) {
            op_.apply(OperatorPart::A0, tmp_, rhs_);
            for (int l = 0; l < n; ++l) yt_[l] += c * rhs_[l];
            op_.apply(OperatorPart::Full, tmp_, rhs_);
            const double w = (0.5 - theta) * dt;
            for (int l = 0; l < n; ++l) yt_[l] += w * rhs_[l];
            sweep(1, c, yt_, s.u_hat);
            sweep(2, c, yt_, s.u_hat);
        } else { // HV
            op_.apply(OperatorPart::Full, tmp_, rhs_);
            for (int l = 0; l < n; ++l) yt_[l] += 0.5 * dt * rhs_[l];
            sweep(1, c, yt_, y_);
            sweep(2, c, yt_, y_);
        }
        ubar = &yt_;
    }

    it_update(s, *ubar, dt);
    ++s.step_index;
}

void Stepper::step(const MethodConfig& cfg, StepperState& s, double dt) {
    switch (cfg.method) {
        case Method::ThetaEP: theta_ep_step(s, dt, cfg.theta); return;
        case Method::ThetaIT: theta_it_step(s, dt, cfg.theta); return;
        case Method::ThetaITVariant: theta_it_variant_step(s, dt, cfg.theta); return;
        case Method::PR: pr_step(s, dt); return;
        case Method::ThetaP: theta_p_step(s, dt, cfg.theta); return;
        case Method::DoIT: adi_it_step(s, dt, AdiScheme::Do, cfg.theta); return;
        case Method::CSIT: adi_it_step(s, dt, AdiScheme::MCS, 0.5); return;
        case Method::MCSIT: adi_it_step(s, dt, AdiScheme::MCS, cfg.theta); return;
        case Method::HVIT: adi_it_step(s, dt, AdiScheme::HV, cfg.theta); return;
    }
    throw std::logic_error("step: bad method");
}

// ---------------------------------------------------------------------------

namespace {

// Backward Euler damping variant of a method: the same family for the
// theta-based methods, theta-IT for PR, the IT variant and the ADI schemes.
MethodConfig damping_config(const MethodConfig& cfg) {
    MethodConfig d = cfg;
    d.theta = 1.0;
    switch (cfg.method) {
        case Method::ThetaEP:
        case Method::ThetaP: break;
        default: d.method = Method::ThetaIT; break;
    }
    return d;
}

} // namespace

RunResult run_method(const MethodConfig& cfg, const SpatialOperator& op,
                     const TimeGrid& grid, const std::vector<double>& u0,
                     const StepObserver& observer) {
    return run_method(cfg, op, grid, u0, op.payoff_vec, observer);
}

RunResult run_method(const MethodConfig& cfg, const SpatialOperator& op,
                     const TimeGrid& grid, const std::vector<double>& u0,
                     std::vector<double> obstacle, const StepObserver& observer) {
    cfg.validate();
    if (static_cast<int>(u0.size()) != op.size())
        throw std::invalid_argument("run_method: initial vector length mismatch");

    Stepper stepper(op, std::move(obstacle), cfg.penalty);
    StepperState state = initial_state(u0);
    const MethodConfig damped = damping_config(cfg);
    const int n_steps = grid.n_steps();

    for (int n = 1; n <= n_steps; ++n) {
        const double dt = grid.times[n] - grid.times[n - 1];
        if (n <= cfg.damping_substeps) {
            stepper.step(damped, state, 0.5 * dt);
            stepper.step(damped, state, 0.5 * dt);
        } else {
            stepper.step(cfg, state, dt);
        }
        state.step_index = n; // substep pairs count as one interval
        if (observer) observer(n, grid.times[n], state);
    }

    RunResult res;
    res.state = std::move(state);
    res.penalty_iterations = stepper.penalty_iterations;
    res.penalty_steps = stepper.penalty_steps;
    return res;
}

} // namespace pdcp
