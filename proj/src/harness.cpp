#include "pdcp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "pdcp/linsolve.hpp"
#include "pdcp/svg.hpp"

namespace pdcp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void run_tasks(int jobs, int n_tasks, const std::function<void(int)>& fn) {
    jobs = std::max(1, std::min(jobs, n_tasks));
    if (jobs == 1) {
        for (int i = 0; i < n_tasks; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

} // namespace

// ---------------------------------------------------------------------------
// spec parsing

void ExperimentSpec::validate() const {
    payoff.validate();
    fin.validate(payoff.is_2d());
    grid.validate();
    const double k = payoff.strike();
    if (std::abs(grid.strike - k) > 1e-12 * k)
        throw std::invalid_argument("spec: grid strike does not match the payoff");
    if (std::abs(0.5 * (grid.s_left + grid.s_right) - k) > 1e-12 * k)
        throw std::invalid_argument("spec: strike must be centered in [s_left, s_right]");
    if (methods.empty()) throw std::invalid_argument("spec: no methods");
    for (const auto& name : methods) MethodConfig::from_name(name);
    if (nu_list.empty()) throw std::invalid_argument("spec: no nu values");
    for (int nu : nu_list)
        if (nu < 1 || nu % 2 == 0)
            throw std::invalid_argument("spec: nu values must be odd and >= 1");
    if (ref_multiplier < 2) throw std::invalid_argument("spec: ref_multiplier too small");
}

std::string ExperimentSpec::canonical_key() const {
    std::ostringstream os;
    os << payoff_kind_name(payoff.kind) << "|k1=" << num(payoff.k1)
       << "|k2=" << num(payoff.k2) << "|r=" << num(fin.r) << "|s1=" << num(fin.sigma1)
       << "|s2=" << num(fin.sigma2) << "|rho=" << num(fin.rho)
       << "|T=" << num(fin.t_maturity) << "|d=" << num(grid.d)
       << "|sl=" << num(grid.s_left) << "|sr=" << num(grid.s_right)
       << "|sm=" << num(grid.s_max) << "|steps=" << step_mode_name(steps)
       << "|refx=" << ref_multiplier << "|damp=" << damping_substeps
       << "|large=" << num(penalty.large) << "|tol=" << num(penalty.tol);
    return os.str();
}

ExperimentSpec ExperimentSpec::from_json_text(const std::string& text) {
    const json j = json::parse(text);
    ExperimentSpec spec;

    const json& opt = j.at("option");
    const PayoffKind kind = payoff_kind_from_name(opt.at("type").get<std::string>());
    switch (kind) {
        case PayoffKind::Put1D:
            spec.payoff = Payoff::put1d(opt.at("strike").get<double>());
            break;
        case PayoffKind::MinPut2D:
            spec.payoff = Payoff::min_put2d(opt.at("strike").get<double>());
            break;
        case PayoffKind::AvgPut2D:
            spec.payoff = Payoff::avg_put2d(opt.at("strike").get<double>());
            break;
        case PayoffKind::Butterfly1D:
            spec.payoff =
                Payoff::butterfly1d(opt.at("k1").get<double>(), opt.at("k2").get<double>());
            break;
        case PayoffKind::MaxButterfly2D:
            spec.payoff = Payoff::max_butterfly2d(opt.at("k1").get<double>(),
                                                  opt.at("k2").get<double>());
            break;
    }

    const json& p = j.at("params");
    spec.fin.r = p.at("r").get<double>();
    if (p.contains("sigma1")) spec.fin.sigma1 = p.at("sigma1").get<double>();
    else spec.fin.sigma1 = p.at("sigma").get<double>();
    spec.fin.sigma2 = p.contains("sigma2") ? p.at("sigma2").get<double>() : spec.fin.sigma1;
    spec.fin.rho = p.contains("rho") ? p.at("rho").get<double>() : 0.0;
    spec.fin.t_maturity = p.at("T").get<double>();

    const double k = spec.payoff.strike();
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        spec.grid.d = g.at("d").get<double>();
        spec.grid.s_left = g.at("s_left").get<double>();
        spec.grid.s_right = g.at("s_right").get<double>();
        spec.grid.s_max = g.at("s_max").get<double>();
        spec.grid.strike = k;
    } else {
        spec.grid = MeshParams::standard_for_strike(k);
    }

    spec.methods = j.at("methods").get<std::vector<std::string>>();
    spec.nu_list = j.at("nu_list").get<std::vector<int>>();
    if (j.contains("steps"))
        spec.steps = step_mode_from_name(j.at("steps").get<std::string>());
    if (j.contains("ref_multiplier")) spec.ref_multiplier = j.at("ref_multiplier").get<int>();
    if (j.contains("damping_substeps"))
        spec.damping_substeps = j.at("damping_substeps").get<int>();

    spec.validate();
    return spec;
}

ExperimentSpec ExperimentSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return from_json_text(ss.str());
    } catch (const json::exception& e) {
        throw std::runtime_error("bad spec file '" + path + "': " + e.what());
    }
}

// ---------------------------------------------------------------------------
// discretization and reference

DiscreteProblem build_problem(const ExperimentSpec& spec, int nu) {
    DiscreteProblem prob;
    prob.nu = nu;
    Mesh1D mesh = build_mesh(spec.grid, nu);
    prob.m = mesh.m();
    if (spec.payoff.is_2d()) {
        Grid2D grid{mesh, mesh};
        prob.op = assemble_2d(grid, spec.fin, spec.payoff);
    } else {
        prob.op = assemble_1d(mesh, spec.fin, spec.payoff);
    }
    return prob;
}

namespace {

MethodConfig reference_config(const ExperimentSpec& spec) {
    MethodConfig cfg = MethodConfig::from_name("CN-P");
    cfg.penalty = spec.penalty;
    cfg.damping_substeps = spec.damping_substeps;
    return cfg;
}

bool load_reference(const std::string& bin_path, const std::string& key_path,
                    const std::string& key, std::vector<double>& out) {
    std::ifstream keyf(key_path);
    if (!keyf) return false;
    json meta;
    try {
        keyf >> meta;
    } catch (...) {
        return false;
    }
    if (!meta.contains("key") || meta["key"].get<std::string>() != key) return false;

    std::ifstream bin(bin_path, std::ios::binary);
    if (!bin) return false;
    std::uint64_t count = 0;
    bin.read(reinterpret_cast<char*>(&count), sizeof(count));
    if (!bin) return false;
    out.resize(count);
    bin.read(reinterpret_cast<char*>(out.data()),
             static_cast<std::streamsize>(count * sizeof(double)));
    return bool(bin);
}

void store_reference(const std::string& bin_path, const std::string& key_path,
                     const std::string& key, const std::vector<double>& ref) {
    std::ofstream bin(bin_path, std::ios::binary);
    const std::uint64_t count = ref.size();
    bin.write(reinterpret_cast<const char*>(&count), sizeof(count));
    bin.write(reinterpret_cast<const char*>(ref.data()),
              static_cast<std::streamsize>(count * sizeof(double)));
    json meta;
    meta["key"] = key;
    std::ofstream keyf(key_path);
    keyf << meta.dump(2) << "\n";
}

} // namespace

std::vector<double> compute_reference(const ExperimentSpec& spec,
                                      const DiscreteProblem& problem,
                                      const std::string& cache_dir) {
    const int n_ref = spec.ref_multiplier * problem.m;
    const std::string key = spec.canonical_key() + "|m=" + std::to_string(problem.m) +
                            "|nu=" + std::to_string(problem.nu) +
                            "|Nref=" + std::to_string(n_ref);

    std::string bin_path, key_path;
    if (!cache_dir.empty()) {
        fs::create_directories(cache_dir);
        const std::string stem = "ref_" + hex64(fnv1a(key));
        bin_path = (fs::path(cache_dir) / (stem + ".bin")).string();
        key_path = (fs::path(cache_dir) / (stem + ".json")).string();
        std::vector<double> cached;
        if (load_reference(bin_path, key_path, key, cached)) return cached;
    }

    const TimeGrid grid = make_time_grid(n_ref, spec.fin.t_maturity, spec.steps);
    RunResult res =
        run_method(reference_config(spec), problem.op, grid, problem.op.payoff_vec);

    if (!cache_dir.empty()) store_reference(bin_path, key_path, key, res.state.u_hat);
    return res.state.u_hat;
}

// ---------------------------------------------------------------------------
// error metric and order fitting

double temporal_error(const std::vector<double>& u_final,
                      const std::vector<double>& u_ref, const SpatialOperator& op,
                      double strike) {
    if (u_final.size() != u_ref.size() ||
        static_cast<int>(u_final.size()) != op.size())
        throw std::invalid_argument("temporal_error: length mismatch");
    const double lo = 0.5 * strike, hi = 1.5 * strike;
    auto inside = [&](double s) { return lo < s && s < hi; };

    double err = 0.0;
    bool any = false;
    if (!op.two_d) {
        for (int i = 0; i < op.n1(); ++i) {
            if (!inside(op.mesh1.points[i])) continue;
            any = true;
            err = std::max(err, std::abs(u_ref[i] - u_final[i]));
        }
    } else {
        for (int j = 0; j < op.n2(); ++j) {
            if (!inside(op.mesh2.points[j])) continue;
            for (int i = 0; i < op.n1(); ++i) {
                if (!inside(op.mesh1.points[i])) continue;
                any = true;
                const int l = op.index(i, j);
                err = std::max(err, std::abs(u_ref[l] - u_final[l]));
            }
        }
    }
    if (!any) throw std::invalid_argument("temporal_error: region of interest is empty");
    return err;
}

namespace {

void check_fit_input(const std::vector<std::pair<int, double>>& pairs) {
    if (pairs.size() < 4)
        throw std::invalid_argument("fit_order: need at least 4 points");
    for (const auto& [m, e] : pairs)
        if (!(e > 0.0))
            throw std::invalid_argument("fit_order: errors must be positive");
}

} // namespace

double fit_order(const std::vector<std::pair<int, double>>& pairs) {
    check_fit_input(pairs);
    // slope of log(e) against log(1/m)
    const int n = static_cast<int>(pairs.size());
    double sx = 0, sy = 0;
    for (const auto& [m, e] : pairs) {
        sx += -std::log(double(m));
        sy += std::log(e);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& [m, e] : pairs) {
        const double dx = -std::log(double(m)) - mx;
        sxy += dx * (std::log(e) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

double fit_order_robust(const std::vector<std::pair<int, double>>& pairs) {
    check_fit_input(pairs);
    std::vector<double> slopes;
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            if (pairs[a].first == pairs[b].first) continue;
            const double dx = -std::log(double(pairs[b].first)) +
                              std::log(double(pairs[a].first));
            slopes.push_back((std::log(pairs[b].second) - std::log(pairs[a].second)) / dx);
        }
    std::sort(slopes.begin(), slopes.end());
    const std::size_t n = slopes.size();
    return n % 2 == 1 ? slopes[n / 2] : 0.5 * (slopes[n / 2 - 1] + slopes[n / 2]);
}

std::vector<std::pair<int, double>> tail_window(std::vector<std::pair<int, double>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    const int drop = std::min<int>(2, static_cast<int>(pairs.size()) - 4);
    if (drop > 0) pairs.erase(pairs.begin(), pairs.begin() + drop);
    return pairs;
}

// ---------------------------------------------------------------------------
// experiment driver

ErrorReport run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
    spec.validate();
    const std::string cache_dir =
        !options.cache_dir.empty()
            ? options.cache_dir
            : (options.out_dir.empty() ? std::string()
                                       : (fs::path(options.out_dir) / "cache").string());

    const int n_res = static_cast<int>(spec.nu_list.size());
    std::vector<DiscreteProblem> problems(n_res);
    for (int i = 0; i < n_res; ++i) problems[i] = build_problem(spec, spec.nu_list[i]);

    // references first, shared by every method at the same resolution
    std::vector<std::vector<double>> references(n_res);
    std::vector<std::string> ref_errors(n_res);
    run_tasks(options.jobs, n_res, [&](int i) {
        try {
            references[i] = compute_reference(spec, problems[i], cache_dir);
        } catch (const std::exception& e) {
            ref_errors[i] = e.what();
        }
    });

    const int n_methods = static_cast<int>(spec.methods.size());
    std::vector<MethodResult> results(n_methods);
    for (int k = 0; k < n_methods; ++k) {
        results[k].method = spec.methods[k];
        results[k].points.resize(n_res);
    }

    run_tasks(options.jobs, n_methods * n_res, [&](int task) {
        const int k = task / n_res;
        const int i = task % n_res;
        const DiscreteProblem& prob = problems[i];
        MethodResult::Point& pt = results[k].points[i];
        pt.m = prob.m;
        pt.n_steps = prob.m;
        if (!ref_errors[i].empty()) {
            pt.failed = true;
            pt.message = "reference failed: " + ref_errors[i];
            return;
        }
        try {
            MethodConfig cfg = MethodConfig::from_name(spec.methods[k]);
            cfg.penalty = spec.penalty;
            cfg.damping_substeps = spec.damping_substeps;
            const TimeGrid grid = make_time_grid(prob.m, spec.fin.t_maturity, spec.steps);
            const auto t0 = std::chrono::steady_clock::now();
            RunResult res = run_method(cfg, prob.op, grid, prob.op.payoff_vec);
            const auto t1 = std::chrono::steady_clock::now();
            pt.seconds = std::chrono::duration<double>(t1 - t0).count();
            pt.avg_penalty_iters = res.avg_penalty_iters();
            pt.error = temporal_error(res.state.u_hat, references[i], prob.op,
                                      spec.payoff.strike());
        } catch (const std::exception& e) {
            pt.failed = true;
            pt.message = e.what();
        }
    });

    ErrorReport report;
    report.label = payoff_kind_name(spec.payoff.kind);
    report.steps = spec.steps;
    report.methods = std::move(results);

    for (auto& mr : report.methods) {
        std::vector<std::pair<int, double>> pairs;
        for (const auto& pt : mr.points)
            if (!pt.failed && pt.error > 0.0) pairs.emplace_back(pt.m, pt.error);
        const double nan = std::nan("");
        mr.order_tail = mr.order_full = mr.order_robust = nan;
        if (pairs.size() >= 4) {
            std::sort(pairs.begin(), pairs.end());
            mr.order_full = fit_order(pairs);
            mr.order_robust = fit_order_robust(pairs);
            const auto tail = tail_window(pairs);
            if (tail.size() >= 4) mr.order_tail = fit_order(tail);
        }
    }

    if (!options.out_dir.empty()) {
        fs::create_directories(options.out_dir);
        {
            std::ofstream os(fs::path(options.out_dir) / "errors.csv");
            write_errors_csv(report, os);
        }
        {
            std::ofstream os(fs::path(options.out_dir) / "orders.csv");
            write_orders_csv(report, os);
        }
        {
            std::ofstream os(fs::path(options.out_dir) / "errors.svg");
            os << render_plot(report);
        }
    }
    return report;
}

void write_errors_csv(const ErrorReport& report, std::ostream& os) {
    os << "method,m,N,error,seconds,avg_penalty_iters\n";
    char buf[256];
    for (const auto& mr : report.methods) {
        for (const auto& pt : mr.points) {
            if (pt.failed) {
                std::snprintf(buf, sizeof(buf), "%s,%d,%d,nan,nan,nan\n",
                              mr.method.c_str(), pt.m, pt.n_steps);
            } else {
                std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.17g,%.3f,%.6g\n",
                              mr.method.c_str(), pt.m, pt.n_steps, pt.error, pt.seconds,
                              pt.avg_penalty_iters);
            }
            os << buf;
        }
    }
}

void write_orders_csv(const ErrorReport& report, std::ostream& os) {
    os << "method,order_tail,order_full,order_robust\n";
    char buf[160];
    for (const auto& mr : report.methods) {
        std::snprintf(buf, sizeof(buf), "%s,%.6g,%.6g,%.6g\n", mr.method.c_str(),
                      mr.order_tail, mr.order_full, mr.order_robust);
        os << buf;
    }
}

ErrorReport read_errors_csv(std::istream& is, const std::string& label) {
    ErrorReport report;
    report.label = label;
    std::string line;
    if (!std::getline(is, line) || line.rfind("method,", 0) != 0)
        throw std::runtime_error("errors csv: missing header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string method, field;
        std::getline(ss, method, ',');
        MethodResult::Point pt;
        std::getline(ss, field, ',');
        pt.m = std::stoi(field);
        std::getline(ss, field, ',');
        pt.n_steps = std::stoi(field);
        std::getline(ss, field, ',');
        pt.error = std::strtod(field.c_str(), nullptr);
        pt.failed = std::isnan(pt.error);
        if (std::getline(ss, field, ',')) pt.seconds = std::strtod(field.c_str(), nullptr);
        if (std::getline(ss, field, ','))
            pt.avg_penalty_iters = std::strtod(field.c_str(), nullptr);
        auto it = std::find_if(report.methods.begin(), report.methods.end(),
                               [&](const MethodResult& mr) { return mr.method == method; });
        if (it == report.methods.end()) {
            report.methods.push_back(MethodResult{});
            it = std::prev(report.methods.end());
            it->method = method;
        }
        it->points.push_back(pt);
    }
    for (auto& mr : report.methods) {
        std::vector<std::pair<int, double>> pairs;
        for (const auto& pt : mr.points)
            if (!pt.failed && pt.error > 0.0) pairs.emplace_back(pt.m, pt.error);
        const double nan = std::nan("");
        mr.order_tail = mr.order_full = mr.order_robust = nan;
        if (pairs.size() >= 4) {
            std::sort(pairs.begin(), pairs.end());
            mr.order_full = fit_order(pairs);
            mr.order_robust = fit_order_robust(pairs);
            const auto tail = tail_window(pairs);
            if (tail.size() >= 4) mr.order_tail = fit_order(tail);
        }
    }
    return report;
}

std::string render_plot(const ErrorReport& report) {
    PlotSpec plot;
    plot.title = report.label + " (" + step_mode_name(report.steps) + " steps)";
    plot.x_label = "1/m";
    plot.y_label = "temporal error";
    for (const auto& mr : report.methods) {
        PlotSeries series;
        series.label = mr.method;
        if (std::isfinite(mr.order_tail)) {
            char buf[48];
            std::snprintf(buf, sizeof(buf), " (p=%.2f)", mr.order_tail);
            series.label += buf;
        }
        for (const auto& pt : mr.points)
            if (!pt.failed && pt.error > 0.0)
                series.points.emplace_back(1.0 / pt.m, pt.error);
        if (!series.points.empty()) plot.series.push_back(std::move(series));
    }
    if (plot.series.empty()) throw std::invalid_argument("render_plot: empty report");
    return render_loglog_svg(plot);
}

// ---------------------------------------------------------------------------
// exports

double export_multipliers(const ExperimentSpec& spec, const std::string& method,
                          int nu, std::ostream& os) {
    const MethodConfig cfg = [&] {
        MethodConfig c = MethodConfig::from_name(method);
        c.penalty = spec.penalty;
        c.damping_substeps = spec.damping_substeps;
        return c;
    }();
    if (!method_carries_multiplier(cfg.method))
        throw std::invalid_argument("export_multipliers: method '" + method +
                                    "' carries no multiplier");
    if (spec.payoff.is_2d())
        throw std::invalid_argument("export_multipliers: only 1D options supported");

    DiscreteProblem prob = build_problem(spec, nu);
    const double s_cap = 1.5 * spec.payoff.strike();
    const TimeGrid grid = make_time_grid(prob.m, spec.fin.t_maturity, spec.steps);

    os << "t,s,lambda\n";
    char buf[128];
    double max_lambda = 0.0;
    run_method(cfg, prob.op, grid, prob.op.payoff_vec,
               [&](int, double t, const StepperState& state) {
                   for (int i = 0; i < prob.op.n1(); ++i) {
                       const double s = prob.op.mesh1.points[i];
                       if (s > s_cap) break;
                       const double lam = state.lambda_hat[i];
                       max_lambda = std::max(max_lambda, lam);
                       std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", t, s, lam);
                       os << buf;
                   }
               });
    return max_lambda;
}

void export_exercise_region(const ExperimentSpec& spec, const std::string& method,
                            int nu, std::ostream& os) {
    MethodConfig cfg = MethodConfig::from_name(method);
    cfg.penalty = spec.penalty;
    cfg.damping_substeps = spec.damping_substeps;

    DiscreteProblem prob = build_problem(spec, nu);
    const TimeGrid grid = make_time_grid(prob.m, spec.fin.t_maturity, spec.steps);
    RunResult res = run_method(cfg, prob.op, grid, prob.op.payoff_vec);

    const bool use_lambda = method_carries_multiplier(cfg.method);
    const double value_tol = 1e-8 * spec.payoff.strike();
    auto flag = [&](int l) -> int {
        if (use_lambda) return res.state.lambda_hat[l] > 0.0 ? 1 : 0;
        return res.state.u_hat[l] - prob.op.payoff_vec[l] <= value_tol ? 1 : 0;
    };

    char buf[128];
    if (!prob.op.two_d) {
        os << "s,flag\n";
        for (int i = 0; i < prob.op.n1(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g,%d\n", prob.op.mesh1.points[i], flag(i));
            os << buf;
        }
    } else {
        os << "s1,s2,flag\n";
        for (int j = 0; j < prob.op.n2(); ++j)
            for (int i = 0; i < prob.op.n1(); ++i) {
                std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d\n",
                              prob.op.mesh1.points[i], prob.op.mesh2.points[j],
                              flag(prob.op.index(i, j)));
                os << buf;
            }
    }
}

void export_price_surface(const ExperimentSpec& spec, const std::string& method,
                          int nu, std::ostream& os) {
    MethodConfig cfg = MethodConfig::from_name(method);
    cfg.penalty = spec.penalty;
    cfg.damping_substeps = spec.damping_substeps;

    DiscreteProblem prob = build_problem(spec, nu);
    const TimeGrid grid = make_time_grid(prob.m, spec.fin.t_maturity, spec.steps);
    RunResult res = run_method(cfg, prob.op, grid, prob.op.payoff_vec);

    char buf[128];
    if (!prob.op.two_d) {
        os << "s,value\n";
        for (int i = 0; i < prob.op.n1(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", prob.op.mesh1.points[i],
                          res.state.u_hat[i]);
            os << buf;
        }
    } else {
        os << "s1,s2,value\n";
        for (int j = 0; j < prob.op.n2(); ++j)
            for (int i = 0; i < prob.op.n1(); ++i) {
                std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n",
                              prob.op.mesh1.points[i], prob.op.mesh2.points[j],
                              res.state.u_hat[prob.op.index(i, j)]);
                os << buf;
            }
    }
}

} // namespace pdcp
