#include "sdecert/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sdecert {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json violation_to_json(const Violation& v) {
    json j;
    json xs = json::array();
    for (Eigen::Index i = 0; i < v.x.size(); ++i) xs.push_back(v.x(i));
    j["x"] = std::move(xs);
    if (v.y.size() > 0) {
        json ys = json::array();
        for (Eigen::Index i = 0; i < v.y.size(); ++i) ys.push_back(v.y(i));
        j["y"] = std::move(ys);
    }
    j["t"] = v.t;
    j["lhs"] = v.lhs;
    j["rhs"] = v.rhs;
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

constexpr std::size_t kMaxSerializedViolations = 10;

json violations_to_json(const std::vector<Violation>& vs) {
    json arr = json::array();
    for (std::size_t i = 0; i < vs.size() && i < kMaxSerializedViolations; ++i)
        arr.push_back(violation_to_json(vs[i]));
    return arr;
}

} // namespace

json regularity_to_json(const RegularityReport& r) {
    json j;
    j["condition"] = r.condition;
    j["C"] = r.C;
    j["samples"] = r.samples;
    j["violation_count"] = r.violation_count;
    j["violations"] = violations_to_json(r.violations);
    j["passed"] = r.passed;
    return j;
}

json certificate_to_json(const CertificateReport& r) {
    json j;
    j["kind"] = r.kind;
    j["domain"] = r.domain;
    j["samples"] = r.samples;
    j["passed"] = r.passed;
    j["note"] = "verified on sampled domain";
    if (r.radius) j["radius"] = *r.radius;
    if (r.rate_bound) j["rate_bound"] = *r.rate_bound;
    if (r.stable) j["stable"] = *r.stable;
    json conds;
    for (const auto& [name, cond] : r.conditions) {
        conds[name] = {{"checked", cond.checked},
                       {"violation_count", cond.violation_count},
                       {"examples", violations_to_json(cond.examples)}};
    }
    j["conditions"] = std::move(conds);
    return j;
}

json estimate_to_json(const EstimateReport& r) {
    json j;
    j["name"] = r.name;
    j["trials"] = r.trials;
    j["successes"] = r.successes;
    j["p_hat"] = r.p_hat;
    j["lo"] = r.lo;
    j["hi"] = r.hi;
    j["diverged"] = r.diverged;
    json params;
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = std::move(params);
    return j;
}

json exponent_to_json(const ExponentReport& r) {
    json j;
    j["trials"] = r.trials;
    j["diverged"] = r.diverged;
    j["excluded_short_window"] = r.excluded_short_window;
    j["fitted"] = r.fitted;
    j["entered"] = r.entered;
    j["entered_fraction"] = r.entered_fraction;
    j["eps_floor"] = r.eps_floor;
    j["r"] = r.r;
    if (r.median_slope) j["median_slope"] = *r.median_slope;
    if (r.p90_slope) j["p90_slope"] = *r.p90_slope;
    if (r.mean_entry_time) j["mean_entry_time"] = *r.mean_entry_time;
    return j;
}

std::string estimate_csv(const EstimateReport& r) {
    std::ostringstream os;
    os << "name,trials,successes,p_hat,lo,hi,diverged";
    for (const auto& [k, v] : r.params) os << ',' << k;
    os << '\n';
    os << r.name << ',' << r.trials << ',' << r.successes << ','
       << format_double(r.p_hat) << ',' << format_double(r.lo) << ','
       << format_double(r.hi) << ',' << r.diverged;
    for (const auto& [k, v] : r.params) os << ',' << format_double(v);
    os << '\n';
    return os.str();
}

std::string exponent_csv(const ExponentReport& r) {
    std::ostringstream os;
    os << "name,trials,diverged,excluded_short_window,fitted,entered,"
          "entered_fraction,median_slope,p90_slope,mean_entry_time,r,eps_floor\n";
    os << "exponent," << r.trials << ',' << r.diverged << ','
       << r.excluded_short_window << ',' << r.fitted << ',' << r.entered << ','
       << format_double(r.entered_fraction) << ','
       << (r.median_slope ? format_double(*r.median_slope) : "") << ','
       << (r.p90_slope ? format_double(*r.p90_slope) : "") << ','
       << (r.mean_entry_time ? format_double(*r.mean_entry_time) : "") << ','
       << format_double(r.r) << ',' << format_double(r.eps_floor) << '\n';
    return os.str();
}

namespace {

class PhaseClock {
  public:
    explicit PhaseClock(std::vector<std::pair<std::string, double>>& sink)
        : sink_(sink) {}

    template <typename Fn>
    void phase(const std::string& name, Fn&& fn) {
        const auto start = std::chrono::steady_clock::now();
        try {
            fn();
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw std::runtime_error("phase '" + name + "': " + e.what());
        }
        const std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;
        sink_.emplace_back(name, elapsed.count());
    }

  private:
    std::vector<std::pair<std::string, double>>& sink_;
};

void write_file(const fs::path& path, const std::string& contents,
                std::vector<std::string>& written) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << contents;
    out.close();
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
    written.push_back(path.string());
}

} // namespace

RunResult run(const ExperimentConfig& cfg, int threads,
              const std::string& out_dir_override) {
    RunResult result;
    PhaseClock clock(result.phase_seconds);

    const SdeModel model = cfg.build_model();
    const LyapunovFunction V = cfg.build_lyapunov();
    const DomainSampler sampler = cfg.build_sampler();

    json reports;

    clock.phase("regularity", [&] {
        if (!cfg.regularity) return;
        const auto growth =
            check_linear_growth(model, cfg.regularity->linear_growth_C, sampler,
                                cfg.regularity->samples);
        const auto lips = check_lipschitz(model, cfg.regularity->lipschitz_C, sampler,
                                          cfg.regularity->samples);
        reports["regularity"] = {{"linear_growth", regularity_to_json(growth)},
                                 {"lipschitz", regularity_to_json(lips)}};
    });

    clock.phase("certificates", [&] {
        if (!cfg.exp_cert && !cfg.practical_cert) return;
        json c;
        if (cfg.exp_cert) {
            const auto rep = check_exp_certificate(V, model, cfg.exp_cert->cert,
                                                   sampler, cfg.exp_cert->samples);
            c["exp"] = certificate_to_json(rep);
            if (cfg.exp_cert->expect == Expectation::pass && !rep.passed)
                result.failed_expectations.push_back(
                    "certificates.exp expected pass but failed");
            if (cfg.exp_cert->expect == Expectation::fail && rep.passed)
                result.failed_expectations.push_back(
                    "certificates.exp expected fail but passed");
        }
        if (cfg.practical_cert) {
            const auto rep = check_practical_certificate(
                V, model, cfg.practical_cert->build(), sampler,
                cfg.practical_cert->samples, cfg.practical_cert->t_max);
            c["practical"] = certificate_to_json(rep);
            if (cfg.practical_cert->expect == Expectation::pass && !rep.passed)
                result.failed_expectations.push_back(
                    "certificates.practical expected pass but failed");
            if (cfg.practical_cert->expect == Expectation::fail && rep.passed)
                result.failed_expectations.push_back(
                    "certificates.practical expected fail but passed");
        }
        reports["certificates"] = std::move(c);
    });

    const bool need_ensemble = cfg.boundedness || cfg.ball_stability ||
                               cfg.attractivity || cfg.exponent ||
                               cfg.zero_crossing || cfg.paths_csv;
    PathEnsemble ensemble;
    clock.phase("simulate", [&] {
        if (!need_ensemble) return;
        ensemble = simulate_ensemble(model, cfg.x0, cfg.grid, cfg.trials, cfg.seed,
                                     cfg.scheme, threads);
        reports["ensemble"] = {{"trials", ensemble.trials},
                               {"diverged", ensemble.diverged_count()},
                               {"scheme", scheme_name(ensemble.scheme)}};
    });

    std::vector<EstimateReport> estimates;
    clock.phase("estimators", [&] {
        if (cfg.boundedness)
            estimates.push_back(estimate_boundedness(ensemble, cfg.boundedness->alpha,
                                                     cfg.boundedness->c));
        if (cfg.ball_stability)
            estimates.push_back(estimate_ball_stability(
                ensemble, cfg.ball_stability->k, cfg.ball_stability->r));
        if (cfg.attractivity)
            estimates.push_back(estimate_attractivity(
                ensemble, cfg.attractivity->k, cfg.attractivity->T, cfg.attractivity->c));
        if (cfg.zero_crossing)
            estimates.push_back(zero_crossing_fraction(ensemble, cfg.zero_crossing->tol));
        if (cfg.martingale) {
            // builtin integrand g = 1 (scalar)
            estimates.push_back(check_martingale_inequality(
                [](double) -> Eigen::VectorXd { return Eigen::VectorXd::Ones(1); },
                cfg.martingale->alpha,
                cfg.martingale->beta, cfg.martingale->T, cfg.martingale->trials,
                cfg.martingale->seed, cfg.martingale->dt, threads));
        }
        if (!estimates.empty()) {
            json est;
            for (const auto& rep : estimates) est[rep.name] = estimate_to_json(rep);
            reports["estimates"] = std::move(est);
        }
    });

    std::optional<ExponentReport> exponent;
    clock.phase("exponent", [&] {
        if (!cfg.exponent) return;
        exponent = estimate_exponent(ensemble, cfg.exponent->r, cfg.exponent->eps_floor);
        reports["exponent"] = exponent_to_json(*exponent);
    });

    result.summary["config"] = cfg.echo();
    result.summary["reports"] = std::move(reports);
    result.summary["seed"] = cfg.seed;
    result.summary["version"] = kVersion;

    clock.phase("write", [&] {
        const fs::path dir(out_dir_override.empty() ? cfg.out_dir : out_dir_override);
        fs::create_directories(dir);
        try {
            write_file(dir / "summary.json", result.summary.dump(2) + "\n",
                       result.files_written);
            for (const auto& rep : estimates)
                write_file(dir / (rep.name + ".csv"), estimate_csv(rep),
                           result.files_written);
            if (exponent)
                write_file(dir / "exponent.csv", exponent_csv(*exponent),
                           result.files_written);
            if (cfg.paths_csv) {
                std::ostringstream os;
                write_paths_csv(os, ensemble);
                write_file(dir / "paths.csv", os.str(), result.files_written);
            }
        } catch (...) {
            for (const auto& f : result.files_written) {
                std::error_code ec;
                fs::remove(f, ec);
            }
            result.files_written.clear();
            throw;
        }
    });

    result.expectations_ok = result.failed_expectations.empty();
    return result;
}

} // namespace sdecert
