#ifndef PDCP_HARNESS_HPP
#define PDCP_HARNESS_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pdcp/mesh.hpp"
#include "pdcp/payoff.hpp"
#include "pdcp/spatial_operator.hpp"
#include "pdcp/steppers.hpp"

namespace pdcp {

// One temporal-convergence experiment: an option, its model parameters, the
// mesh family (one nu per spatial resolution), the methods to compare and
// the time-stepping rule N = m with a tenfold reference.
struct ExperimentSpec {
    Payoff payoff;
    FinancialParams fin;
    MeshParams grid;
    std::vector<std::string> methods;
    std::vector<int> nu_list;
    StepMode steps = StepMode::Constant;
    int ref_multiplier = 10;
    int damping_substeps = 2;
    PenaltyParams penalty;

    void validate() const;
    // stable string identifying everything a cached reference depends on
    std::string canonical_key() const;

    static ExperimentSpec from_json_text(const std::string& text);
    static ExperimentSpec from_json_file(const std::string& path);
};

// Spatial discretization of a spec at one resolution.
struct DiscreteProblem {
    int nu = 0;
    int m = 0; // mesh intervals per direction
    SpatialOperator op;
};

DiscreteProblem build_problem(const ExperimentSpec& spec, int nu);

// CN-P reference solution with N = ref_multiplier*m steps on the problem's
// own grid, cached on disk under cache_dir when nonempty.
std::vector<double> compute_reference(const ExperimentSpec& spec,
                                      const DiscreteProblem& problem,
                                      const std::string& cache_dir);

// Max-norm difference over grid nodes strictly inside (K/2, 3K/2) per axis.
double temporal_error(const std::vector<double>& u_final,
                      const std::vector<double>& u_ref, const SpatialOperator& op,
                      double strike);

// Least-squares slope of log(error) against log(1/m). Needs >= 4 pairs and
// positive errors.
double fit_order(const std::vector<std::pair<int, double>>& pairs);
// Median of pairwise slopes; robust to the occasional outlier peak.
double fit_order_robust(const std::vector<std::pair<int, double>>& pairs);
// Default fitting window: drops the two coarsest resolutions when more than
// four points are available.
std::vector<std::pair<int, double>> tail_window(std::vector<std::pair<int, double>> pairs);

struct MethodResult {
    std::string method;
    struct Point {
        int m = 0;
        int n_steps = 0;
        double error = 0.0;
        double seconds = 0.0;
        double avg_penalty_iters = 0.0;
        bool failed = false;
        std::string message;
    };
    std::vector<Point> points;
    double order_tail = 0.0;  // NaN when not fittable
    double order_full = 0.0;
    double order_robust = 0.0;
};

struct ErrorReport {
    std::string label;
    StepMode steps = StepMode::Constant;
    std::vector<MethodResult> methods;
};

struct RunOptions {
    std::string out_dir;   // errors.csv / orders.csv / errors.svg land here
    std::string cache_dir; // reference cache; defaults to out_dir + "/cache"
    int jobs = 1;
};

ErrorReport run_experiment(const ExperimentSpec& spec, const RunOptions& options);

void write_errors_csv(const ErrorReport& report, std::ostream& os);
void write_orders_csv(const ErrorReport& report, std::ostream& os);
ErrorReport read_errors_csv(std::istream& is, const std::string& label);

// Log-log temporal-error chart, one series per method, fitted order in the
// legend.
std::string render_plot(const ErrorReport& report);

// Lagrange-multiplier history lambda_n(s) for s in [0, 3K/2], n >= 1, as
// rows t,s,lambda. Returns the largest exported multiplier. 1D only;
// requires a multiplier-carrying method.
double export_multipliers(const ExperimentSpec& spec, const std::string& method,
                          int nu, std::ostream& os);

// Early exercise region at t = T: rows s1,s2,flag (2D) or s,flag (1D).
// Multiplier methods flag lambda_N > 0; penalty and explicit-payoff methods
// flag u - payoff <= 1e-8 K.
void export_exercise_region(const ExperimentSpec& spec, const std::string& method,
                            int nu, std::ostream& os);

// Final value surface of one run as rows s,value or s1,s2,value.
void export_price_surface(const ExperimentSpec& spec, const std::string& method,
                          int nu, std::ostream& os);

} // namespace pdcp

#endif
