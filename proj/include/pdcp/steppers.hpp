#ifndef PDCP_STEPPERS_HPP
#define PDCP_STEPPERS_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pdcp/linsolve.hpp"
#include "pdcp/spatial_operator.hpp"

namespace pdcp {

enum class StepMode { Constant, Quadratic };

StepMode step_mode_from_name(const std::string& name);
std::string step_mode_name(StepMode mode);

// Temporal grid t_0 = 0 < ... < t_N = T. Constant: t_n = n T / N.
// Quadratic: t_n = (n/N)^2 T, so step sizes grow linearly with n.
struct TimeGrid {
    std::vector<double> times;
    StepMode mode = StepMode::Constant;

    int n_steps() const { return static_cast<int>(times.size()) - 1; }
};

TimeGrid make_time_grid(int n_steps, double t_maturity, StepMode mode);

enum class Method { ThetaEP, ThetaIT, ThetaITVariant, PR, ThetaP, DoIT, CSIT, MCSIT, HVIT };

bool method_carries_multiplier(Method m);
bool method_is_adi(Method m);

struct PenaltyParams {
    double large = 1e7;
    double tol = 1e-7;
    int kappa_max = 30;
};

struct MethodConfig {
    Method method = Method::ThetaIT;
    double theta = 0.5;
    PenaltyParams penalty;
    int damping_substeps = 2; // leading intervals run as two half steps

    void validate() const;
    std::string name() const;
    // "BE-IT", "CN-P", "PR", "MCS-IT", ... (theta filled per the usual table)
    static MethodConfig from_name(const std::string& name);
};

// Solution/multiplier pair advanced in time. For every multiplier-carrying
// method the update formulas keep u_hat >= obstacle and the componentwise
// complementarity (u_hat - obstacle) * lambda_hat = 0 exact in floating
// point. The penalty method leaves lambda_hat at zero and may undershoot
// the obstacle by O(tol).
struct StepperState {
    std::vector<double> u_hat;
    std::vector<double> lambda_hat;
    int step_index = 0;
};

StepperState initial_state(const std::vector<double>& u0);

// One engine per run: owns the factor caches (keyed by the coefficient c of
// I - cA, so constant step sizes factor once) and scratch buffers. The
// obstacle defaults to the operator's payoff vector.
class Stepper {
  public:
    enum class AdiScheme { Do, MCS, HV };

    explicit Stepper(const SpatialOperator& op, PenaltyParams penalty = {});
    Stepper(const SpatialOperator& op, std::vector<double> obstacle,
            PenaltyParams penalty);

    void theta_ep_step(StepperState& s, double dt, double theta);
    void theta_it_step(StepperState& s, double dt, double theta);
    void theta_it_variant_step(StepperState& s, double dt, double theta);
    void pr_step(StepperState& s, double dt);
    // returns the number of linear solves used
    int theta_p_step(StepperState& s, double dt, double theta);
    void adi_it_step(StepperState& s, double dt, AdiScheme scheme, double theta);

    void step(const MethodConfig& cfg, StepperState& s, double dt);

    const std::vector<double>& obstacle() const { return obstacle_; }
    long long penalty_iterations = 0;
    int penalty_steps = 0;

  private:
    void solve_full(double c, std::vector<double>& x);
    void line_solve(double c, std::vector<double>& x);
    // rhs of an implicit sweep, then solve (I - c*Aj) in place per line
    void sweep(int direction, double c, std::vector<double>& y,
               const std::vector<double>& anchor);
    void it_update(StepperState& s, const std::vector<double>& ubar, double eps);

    const SpatialOperator& op_;
    std::vector<double> obstacle_;
    PenaltyParams penalty_;

    std::map<double, TridiagMatrix> tri_full_;      // 1D: LU of I - cA
    std::map<double, TridiagMatrix> tri_base_;      // 1D: unfactored I - cA
    std::map<double, BandMatrix> band_full_;        // 2D: LU of I - cA
    std::map<double, BandMatrix> band_base_;        // 2D: unfactored I - cA
    std::map<double, std::pair<TridiagMatrix, TridiagMatrix>> lines_; // LU of I - cAj

    TridiagMatrix tri_scratch_;
    BandMatrix band_scratch_;
    std::vector<double> av_, rhs_, ubar_, y0_, y_, yt_, tmp_, line_;
};

struct RunResult {
    StepperState state;
    long long penalty_iterations = 0;
    int penalty_steps = 0;

    double avg_penalty_iters() const {
        return penalty_steps > 0 ? double(penalty_iterations) / penalty_steps : 0.0;
    }
};

// Called after each completed time interval n = 1..N with t_n and the state.
using StepObserver = std::function<void(int n, double t, const StepperState&)>;

// Full run: u_hat starts at u0 with zero multiplier; the first
// damping_substeps intervals are executed as two half steps of the damping
// method (the same family at theta = 1 for EP/IT/P, the theta-IT method at
// theta = 1 for PR, the IT variant and the ADI-IT schemes).
RunResult run_method(const MethodConfig& cfg, const SpatialOperator& op,
                     const TimeGrid& grid, const std::vector<double>& u0,
                     const StepObserver& observer = {});

// Variant with a separate obstacle vector (tests use this to disable the
// American constraint while keeping the initial condition).
RunResult run_method(const MethodConfig& cfg, const SpatialOperator& op,
                     const TimeGrid& grid, const std::vector<double>& u0,
                     std::vector<double> obstacle, const StepObserver& observer = {});

} // namespace pdcp

#endif
