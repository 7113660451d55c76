#include "sdecert/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace sdecert {

using nlohmann::json;

const char* expectation_name(Expectation e) {
    switch (e) {
        case Expectation::pass: return "pass";
        case Expectation::fail: return "fail";
        default: return "none";
    }
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

const json& member(const json& j, const std::string& path, const std::string& key) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, "missing required key '" + key + "'");
    return *it;
}

void check_keys(const json& j, const std::string& path,
                const std::set<std::string>& allowed) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) fail(join(path, key), "unknown key");
    }
}

double get_num(const json& j, const std::string& path, const std::string& key) {
    const json& v = member(j, path, key);
    if (!v.is_number()) fail(join(path, key), "expected a number");
    return v.get<double>();
}

double get_num_or(const json& j, const std::string& path, const std::string& key,
                  double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return get_num(j, path, key);
}

long get_int(const json& j, const std::string& path, const std::string& key) {
    const json& v = member(j, path, key);
    if (!v.is_number_integer()) fail(join(path, key), "expected an integer");
    return v.get<long>();
}

std::uint64_t get_seed(const json& j, const std::string& path, const std::string& key,
                       std::uint64_t fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) fail(join(path, key), "expected an integer seed");
    return v.get<std::uint64_t>();
}

std::string get_str(const json& j, const std::string& path, const std::string& key) {
    const json& v = member(j, path, key);
    if (!v.is_string()) fail(join(path, key), "expected a string");
    return v.get<std::string>();
}

bool get_bool_or(const json& j, const std::string& path, const std::string& key,
                 bool fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_boolean()) fail(join(path, key), "expected a boolean");
    return v.get<bool>();
}

Eigen::VectorXd get_vector(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) fail(path, "expected a nonempty array of numbers");
    Eigen::VectorXd out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) fail(path, "expected numbers only");
        out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
    }
    return out;
}

Eigen::MatrixXd get_matrix(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) fail(path, "expected a nonempty array of rows");
    const std::size_t rows = v.size();
    std::size_t cols = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        if (!v[i].is_array() || v[i].empty()) fail(path, "expected rows of numbers");
        if (i == 0) cols = v[i].size();
        if (v[i].size() != cols) fail(path, "ragged matrix rows");
    }
    Eigen::MatrixXd out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t jx = 0; jx < cols; ++jx) {
            if (!v[i][jx].is_number()) fail(path, "expected numbers only");
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(jx)) =
                v[i][jx].get<double>();
        }
    return out;
}

Expectation get_expect(const json& j, const std::string& path) {
    if (!j.contains("expect")) return Expectation::none;
    const std::string s = get_str(j, path, "expect");
    if (s == "pass") return Expectation::pass;
    if (s == "fail") return Expectation::fail;
    fail(join(path, "expect"), "expected \"pass\" or \"fail\"");
}

KFuncCfg parse_kfunc(const json& j, const std::string& path) {
    KFuncCfg cfg;
    cfg.family = get_str(j, path, "family");
    if (cfg.family == "power") {
        check_keys(j, path, {"family", "scale", "exponent"});
        cfg.scale = get_num_or(j, path, "scale", 1.0);
        cfg.exponent = get_num(j, path, "exponent");
        if (!(cfg.scale > 0.0)) fail(join(path, "scale"), "must be > 0");
        if (!(cfg.exponent > 0.0)) fail(join(path, "exponent"), "must be > 0");
    } else if (cfg.family == "zero") {
        check_keys(j, path, {"family"});
    } else {
        fail(join(path, "family"), "expected \"power\" or \"zero\"");
    }
    return cfg;
}

RhoCfg parse_rho(const json& j, const std::string& path) {
    RhoCfg cfg;
    cfg.family = get_str(j, path, "family");
    if (cfg.family == "exp_decay") {
        check_keys(j, path, {"family", "scale", "rate"});
        cfg.scale = get_num(j, path, "scale");
        cfg.rate = get_num(j, path, "rate");
        if (!(cfg.scale >= 0.0)) fail(join(path, "scale"), "must be >= 0");
        if (!(cfg.rate > 0.0)) fail(join(path, "rate"), "must be > 0");
    } else if (cfg.family == "constant") {
        check_keys(j, path, {"family", "value"});
        cfg.value = get_num(j, path, "value");
        if (!(cfg.value >= 0.0)) fail(join(path, "value"), "must be >= 0");
    } else {
        fail(join(path, "family"), "expected \"exp_decay\" or \"constant\"");
    }
    return cfg;
}

} // namespace

KFunction KFuncCfg::build() const {
    if (family == "zero") return k_zero();
    return k_power(scale, exponent);
}

std::function<double(double)> RhoCfg::build() const {
    if (family == "constant") {
        const double v = value;
        return [v](double) { return v; };
    }
    const double s = scale, r = rate;
    return [s, r](double t) { return s * std::exp(-r * t); };
}

std::string RhoCfg::label() const {
    std::ostringstream os;
    if (family == "constant")
        os << "constant " << value;
    else
        os << scale << "*exp(-" << rate << "*t)";
    return os.str();
}

PracticalCertificate PracticalCertCfg::build() const {
    PracticalCertificate cert;
    cert.mu1 = mu1.build();
    cert.mu2 = mu2.build();
    cert.mu3 = mu3.build();
    cert.rho = rho.build();
    cert.rho_label = rho.label();
    cert.M = M;
    return cert;
}

SdeModel ExperimentConfig::build_model() const {
    if (model_kind == "langevin") return make_langevin(alpha, beta);
    return affine.to_model("affine");
}

LyapunovFunction ExperimentConfig::build_lyapunov() const {
    return make_quadratic(Q, lyap_constant);
}

DomainSampler ExperimentConfig::build_sampler() const {
    return DomainSampler(static_cast<int>(x0.size()), r_min, r_max, t_min, t_max,
                         sampler_seed);
}

ExperimentConfig parse_config(const json& j) {
    ExperimentConfig cfg;
    const std::string root;
    check_keys(j, root,
               {"model", "lyapunov", "grid", "ensemble", "sampler", "regularity",
                "certificates", "estimators", "output"});

    // model
    {
        const json& m = member(j, root, "model");
        const std::string path = "model";
        if (m.contains("builtin")) {
            check_keys(m, path, {"builtin", "alpha", "beta"});
            const std::string builtin = get_str(m, path, "builtin");
            if (builtin != "langevin") fail(join(path, "builtin"), "unknown builtin model");
            cfg.model_kind = "langevin";
            cfg.alpha = get_num(m, path, "alpha");
            cfg.beta = get_num(m, path, "beta");
        } else if (m.contains("affine")) {
            check_keys(m, path, {"affine"});
            const json& aff = m.at("affine");
            const std::string apath = join(path, "affine");
            check_keys(aff, apath, {"A", "a", "B", "b"});
            cfg.model_kind = "affine";
            cfg.affine.A = get_matrix(member(aff, apath, "A"), join(apath, "A"));
            cfg.affine.a = get_vector(member(aff, apath, "a"), join(apath, "a"));
            const json& Bs = member(aff, apath, "B");
            const json& bs = member(aff, apath, "b");
            if (!Bs.is_array() || !bs.is_array() || Bs.size() != bs.size())
                fail(apath, "B and b must be arrays of equal length");
            for (std::size_t k = 0; k < Bs.size(); ++k) {
                cfg.affine.B.push_back(get_matrix(Bs[k], join(apath, "B")));
                cfg.affine.b.push_back(get_vector(bs[k], join(apath, "b")));
            }
            try {
                cfg.affine.validate();
            } catch (const std::exception& e) {
                fail(apath, e.what());
            }
        } else {
            fail(path, "expected either 'builtin' or 'affine'");
        }
    }

    // lyapunov
    {
        const json& l = member(j, root, "lyapunov");
        const std::string path = "lyapunov";
        check_keys(l, path, {"family", "Q", "constant"});
        const std::string family = get_str(l, path, "family");
        if (family != "quadratic") fail(join(path, "family"), "unknown Lyapunov family");
        cfg.Q = get_matrix(member(l, path, "Q"), join(path, "Q"));
        cfg.lyap_constant = get_num_or(l, path, "constant", 0.0);
        if (!cfg.Q.isApprox(cfg.Q.transpose(), 1e-12))
            fail(join(path, "Q"), "must be symmetric");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cfg.Q);
        if (es.eigenvalues().minCoeff() < -1e-12)
            fail(join(path, "Q"), "must be positive semidefinite");
        if (!(cfg.lyap_constant >= 0.0)) fail(join(path, "constant"), "must be >= 0");
    }

    const int d = cfg.model_kind == "langevin" ? 1 : cfg.affine.d();
    if (cfg.Q.rows() != d) fail("lyapunov.Q", "dimension differs from the model's d");

    // grid
    {
        const json& g = member(j, root, "grid");
        const std::string path = "grid";
        check_keys(g, path, {"t0", "dt", "n_steps"});
        cfg.grid.t0 = get_num_or(g, path, "t0", 0.0);
        cfg.grid.dt = get_num(g, path, "dt");
        cfg.grid.n_steps = static_cast<int>(get_int(g, path, "n_steps"));
        try {
            cfg.grid.validate();
        } catch (const std::exception& e) {
            fail(path, e.what());
        }
    }

    // ensemble
    {
        const json& e = member(j, root, "ensemble");
        const std::string path = "ensemble";
        check_keys(e, path, {"trials", "seed", "scheme", "x0"});
        cfg.trials = get_int(e, path, "trials");
        if (cfg.trials < 1) fail(join(path, "trials"), "must be >= 1");
        cfg.seed = get_seed(e, path, "seed", 0);
        cfg.x0 = get_vector(member(e, path, "x0"), join(path, "x0"));
        if (cfg.x0.size() != d) fail(join(path, "x0"), "length differs from the model's d");
        if (e.contains("scheme")) {
            try {
                cfg.scheme = parse_scheme(get_str(e, path, "scheme"));
            } catch (const std::exception& ex) {
                fail(join(path, "scheme"), ex.what());
            }
        }
    }

    // sampler
    {
        const json& s = member(j, root, "sampler");
        const std::string path = "sampler";
        check_keys(s, path, {"r_min", "r_max", "t_min", "t_max", "seed"});
        cfg.r_min = get_num(s, path, "r_min");
        cfg.r_max = get_num(s, path, "r_max");
        cfg.t_min = get_num_or(s, path, "t_min", 0.0);
        cfg.t_max = get_num_or(s, path, "t_max", 10.0);
        cfg.sampler_seed = get_seed(s, path, "seed", 0);
        try {
            cfg.build_sampler();
        } catch (const std::exception& e) {
            fail(path, e.what());
        }
    }

    // regularity (optional)
    if (j.contains("regularity")) {
        const json& r = j.at("regularity");
        const std::string path = "regularity";
        check_keys(r, path, {"linear_growth_C", "lipschitz_C", "samples"});
        RegularityCfg rc;
        rc.linear_growth_C = get_num(r, path, "linear_growth_C");
        rc.lipschitz_C = get_num(r, path, "lipschitz_C");
        rc.samples = get_int(r, path, "samples");
        if (!(rc.linear_growth_C > 0.0)) fail(join(path, "linear_growth_C"), "must be > 0");
        if (!(rc.lipschitz_C > 0.0)) fail(join(path, "lipschitz_C"), "must be > 0");
        if (rc.samples < 1) fail(join(path, "samples"), "must be >= 1");
        cfg.regularity = rc;
    }

    // certificates (optional)
    if (j.contains("certificates")) {
        const json& c = j.at("certificates");
        const std::string path = "certificates";
        check_keys(c, path, {"exp", "practical"});
        if (c.contains("exp")) {
            const json& e = c.at("exp");
            const std::string epath = join(path, "exp");
            check_keys(e, epath,
                       {"p", "c1", "c2", "c3", "rho", "gamma", "samples", "expect"});
            ExpCertCfg ec;
            ec.cert.p = static_cast<int>(get_int(e, epath, "p"));
            ec.cert.c1 = get_num(e, epath, "c1");
            ec.cert.c2 = get_num(e, epath, "c2");
            ec.cert.c3 = get_num(e, epath, "c3");
            ec.cert.rho = get_num(e, epath, "rho");
            ec.cert.gamma = get_num_or(e, epath, "gamma", 0.0);
            ec.samples = get_int(e, epath, "samples");
            ec.expect = get_expect(e, epath);
            if (ec.samples < 1) fail(join(epath, "samples"), "must be >= 1");
            try {
                ec.cert.validate();
            } catch (const std::exception& ex) {
                fail(epath, ex.what());
            }
            cfg.exp_cert = ec;
        }
        if (c.contains("practical")) {
            const json& p = c.at("practical");
            const std::string ppath = join(path, "practical");
            check_keys(p, ppath,
                       {"mu1", "mu2", "mu3", "rho", "M", "t_max", "samples", "expect"});
            PracticalCertCfg pc;
            pc.mu1 = parse_kfunc(member(p, ppath, "mu1"), join(ppath, "mu1"));
            pc.mu2 = parse_kfunc(member(p, ppath, "mu2"), join(ppath, "mu2"));
            pc.mu3 = parse_kfunc(member(p, ppath, "mu3"), join(ppath, "mu3"));
            pc.rho = parse_rho(member(p, ppath, "rho"), join(ppath, "rho"));
            pc.M = get_num(p, ppath, "M");
            pc.t_max = get_num(p, ppath, "t_max");
            pc.samples = get_int(p, ppath, "samples");
            pc.expect = get_expect(p, ppath);
            if (!(pc.M > 0.0)) fail(join(ppath, "M"), "must be > 0");
            if (!(pc.t_max > 0.0)) fail(join(ppath, "t_max"), "must be > 0");
            if (pc.samples < 1) fail(join(ppath, "samples"), "must be >= 1");
            if (pc.mu1.family == "zero") fail(join(ppath, "mu1"), "must be K-infinity");
            if (pc.mu2.family == "zero") fail(join(ppath, "mu2"), "must be K-infinity");
            cfg.practical_cert = pc;
        }
    }

    // estimators (optional)
    if (j.contains("estimators")) {
        const json& est = j.at("estimators");
        const std::string path = "estimators";
        check_keys(est, path,
                   {"boundedness", "ball_stability", "attractivity", "exponent",
                    "martingale", "zero_crossing"});
        const double x0_norm = cfg.x0.norm();
        const double horizon = cfg.grid.horizon() - cfg.grid.t0;
        if (est.contains("boundedness")) {
            const json& b = est.at("boundedness");
            const std::string bpath = join(path, "boundedness");
            check_keys(b, bpath, {"alpha", "c"});
            BoundednessCfg bc{get_num(b, bpath, "alpha"), get_num(b, bpath, "c")};
            if (x0_norm > bc.alpha) fail(join(bpath, "alpha"), "|x0| exceeds alpha");
            if (!(bc.c >= 0.0)) fail(join(bpath, "c"), "must be >= 0");
            cfg.boundedness = bc;
        }
        if (est.contains("ball_stability")) {
            const json& b = est.at("ball_stability");
            const std::string bpath = join(path, "ball_stability");
            check_keys(b, bpath, {"k", "r"});
            BallStabilityCfg bc{get_num(b, bpath, "k"), get_num(b, bpath, "r")};
            if (!(bc.k > bc.r)) fail(join(bpath, "k"), "must exceed r");
            cfg.ball_stability = bc;
        }
        if (est.contains("attractivity")) {
            const json& a = est.at("attractivity");
            const std::string apath = join(path, "attractivity");
            check_keys(a, apath, {"k", "T", "c"});
            AttractivityCfg ac{get_num(a, apath, "k"), get_num(a, apath, "T"),
                               get_num(a, apath, "c")};
            if (!(ac.T >= 0.0) || ac.T > horizon)
                fail(join(apath, "T"), "must lie within the grid horizon");
            if (!(x0_norm < ac.c)) fail(join(apath, "c"), "must exceed |x0|");
            cfg.attractivity = ac;
        }
        if (est.contains("exponent")) {
            const json& e = est.at("exponent");
            const std::string epath = join(path, "exponent");
            check_keys(e, epath, {"r", "eps_floor"});
            ExponentCfg ec;
            ec.r = get_num(e, epath, "r");
            ec.eps_floor = get_num_or(e, epath, "eps_floor", 1e-6 * ec.r);
            if (!(ec.r > 0.0)) fail(join(epath, "r"), "must be > 0");
            if (!(ec.eps_floor > 0.0)) fail(join(epath, "eps_floor"), "must be > 0");
            if (!(x0_norm > ec.r)) fail(join(epath, "r"), "|x0| must exceed r");
            cfg.exponent = ec;
        }
        if (est.contains("martingale")) {
            const json& mj = est.at("martingale");
            const std::string mpath = join(path, "martingale");
            check_keys(mj, mpath, {"alpha", "beta", "T", "dt", "trials", "seed"});
            MartingaleCfg mc;
            mc.alpha = get_num(mj, mpath, "alpha");
            mc.beta = get_num(mj, mpath, "beta");
            mc.T = get_num(mj, mpath, "T");
            mc.dt = get_num(mj, mpath, "dt");
            mc.trials = get_int(mj, mpath, "trials");
            mc.seed = get_seed(mj, mpath, "seed", cfg.seed + 1);
            if (!(mc.alpha > 0.0)) fail(join(mpath, "alpha"), "must be > 0");
            if (!(mc.beta > 0.0)) fail(join(mpath, "beta"), "must be > 0");
            if (!(mc.T > 0.0)) fail(join(mpath, "T"), "must be > 0");
            if (!(mc.dt > 0.0) || mc.dt > mc.T)
                fail(join(mpath, "dt"), "need 0 < dt <= T");
            if (mc.trials < 1) fail(join(mpath, "trials"), "must be >= 1");
            cfg.martingale = mc;
        }
        if (est.contains("zero_crossing")) {
            const json& z = est.at("zero_crossing");
            const std::string zpath = join(path, "zero_crossing");
            check_keys(z, zpath, {"tol"});
            ZeroCrossingCfg zc{get_num(z, zpath, "tol")};
            if (!(zc.tol >= 0.0)) fail(join(zpath, "tol"), "must be >= 0");
            cfg.zero_crossing = zc;
        }
    }

    // output
    if (j.contains("output")) {
        const json& o = j.at("output");
        const std::string path = "output";
        check_keys(o, path, {"dir", "paths_csv"});
        if (o.contains("dir")) cfg.out_dir = get_str(o, path, "dir");
        cfg.paths_csv = get_bool_or(o, path, "paths_csv", false);
        if (cfg.out_dir.empty()) fail(join(path, "dir"), "must be nonempty");
    }

    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("parse error in '" + path + "': " + e.what());
    }
    return parse_config(j);
}

namespace {

json kfunc_echo(const KFuncCfg& k) {
    if (k.family == "zero") return {{"family", "zero"}};
    return {{"family", "power"}, {"scale", k.scale}, {"exponent", k.exponent}};
}

json rho_echo(const RhoCfg& r) {
    if (r.family == "constant") return {{"family", "constant"}, {"value", r.value}};
    return {{"family", "exp_decay"}, {"scale", r.scale}, {"rate", r.rate}};
}

json matrix_echo(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index jx = 0; jx < m.cols(); ++jx) row.push_back(m(i, jx));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_echo(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

} // namespace

json ExperimentConfig::echo() const {
    json j;
    if (model_kind == "langevin") {
        j["model"] = {{"builtin", "langevin"}, {"alpha", alpha}, {"beta", beta}};
    } else {
        json Bs = json::array(), bs = json::array();
        for (const auto& B : affine.B) Bs.push_back(matrix_echo(B));
        for (const auto& b : affine.b) bs.push_back(vector_echo(b));
        j["model"] = {{"affine",
                       {{"A", matrix_echo(affine.A)},
                        {"a", vector_echo(affine.a)},
                        {"B", std::move(Bs)},
                        {"b", std::move(bs)}}}};
    }
    j["lyapunov"] = {{"family", "quadratic"},
                     {"Q", matrix_echo(Q)},
                     {"constant", lyap_constant}};
    j["grid"] = {{"t0", grid.t0}, {"dt", grid.dt}, {"n_steps", grid.n_steps}};
    j["ensemble"] = {{"trials", trials},
                     {"seed", seed},
                     {"scheme", scheme_name(scheme)},
                     {"x0", vector_echo(x0)}};
    j["sampler"] = {{"r_min", r_min},
                    {"r_max", r_max},
                    {"t_min", t_min},
                    {"t_max", t_max},
                    {"seed", sampler_seed}};
    if (regularity) {
        j["regularity"] = {{"linear_growth_C", regularity->linear_growth_C},
                           {"lipschitz_C", regularity->lipschitz_C},
                           {"samples", regularity->samples}};
    }
    if (exp_cert || practical_cert) {
        json c;
        if (exp_cert) {
            c["exp"] = {{"p", exp_cert->cert.p},     {"c1", exp_cert->cert.c1},
                        {"c2", exp_cert->cert.c2},   {"c3", exp_cert->cert.c3},
                        {"rho", exp_cert->cert.rho}, {"gamma", exp_cert->cert.gamma},
                        {"samples", exp_cert->samples},
                        {"expect", expectation_name(exp_cert->expect)}};
        }
        if (practical_cert) {
            c["practical"] = {{"mu1", kfunc_echo(practical_cert->mu1)},
                              {"mu2", kfunc_echo(practical_cert->mu2)},
                              {"mu3", kfunc_echo(practical_cert->mu3)},
                              {"rho", rho_echo(practical_cert->rho)},
                              {"M", practical_cert->M},
                              {"t_max", practical_cert->t_max},
                              {"samples", practical_cert->samples},
                              {"expect", expectation_name(practical_cert->expect)}};
        }
        j["certificates"] = std::move(c);
    }
    json est;
    if (boundedness)
        est["boundedness"] = {{"alpha", boundedness->alpha}, {"c", boundedness->c}};
    if (ball_stability)
        est["ball_stability"] = {{"k", ball_stability->k}, {"r", ball_stability->r}};
    if (attractivity)
        est["attractivity"] = {{"k", attractivity->k},
                               {"T", attractivity->T},
                               {"c", attractivity->c}};
    if (exponent)
        est["exponent"] = {{"r", exponent->r}, {"eps_floor", exponent->eps_floor}};
    if (martingale)
        est["martingale"] = {{"alpha", martingale->alpha}, {"beta", martingale->beta},
                             {"T", martingale->T},         {"dt", martingale->dt},
                             {"trials", martingale->trials},
                             {"seed", martingale->seed}};
    if (zero_crossing) est["zero_crossing"] = {{"tol", zero_crossing->tol}};
    if (!est.empty()) j["estimators"] = std::move(est);
    j["output"] = {{"dir", out_dir}, {"paths_csv", paths_csv}};
    return j;
}

json langevin_demo_config(double alpha, double beta, std::uint64_t seed) {
    const double rho = beta * beta + 1.0;
    const double r = std::sqrt(rho);
    json j;
    j["model"] = {{"builtin", "langevin"}, {"alpha", alpha}, {"beta", beta}};
    j["lyapunov"] = {{"family", "quadratic"}, {"Q", {{1.0}}}, {"constant", 0.0}};
    j["grid"] = {{"t0", 0.0}, {"dt", 0.001}, {"n_steps", 12000}};
    j["ensemble"] = {{"trials", 1000},
                     {"seed", seed},
                     {"scheme", "euler_maruyama"},
                     {"x0", {10.0 * r}}};
    j["sampler"] = {{"r_min", r + 0.1},
                    {"r_max", 10.0 * r},
                    {"t_min", 0.0},
                    {"t_max", 10.0},
                    {"seed", 7}};
    j["regularity"] = {{"linear_growth_C", std::max({std::abs(alpha), std::abs(beta), 1.0})},
                       {"lipschitz_C", std::max(std::abs(alpha), 1.0)},
                       {"samples", 500}};
    j["certificates"] = {{"exp",
                          {{"p", 2},
                           {"c1", 1.0},
                           {"c2", 2.0 * alpha},
                           {"c3", 0.0},
                           {"rho", rho},
                           {"gamma", 0.0},
                           {"samples", 10000},
                           {"expect", "pass"}}}};
    j["estimators"] = {{"attractivity", {{"k", 2.0 * r}, {"T", 6.0}, {"c", 11.0 * r}}},
                       {"exponent", {{"r", r}, {"eps_floor", 1e-6 * r}}},
                       {"ball_stability", {{"k", 12.0 * r}, {"r", r}}},
                       {"boundedness", {{"alpha", 10.0 * r}, {"c", 12.0 * r}}}};
    j["output"] = {{"dir", "langevin-demo-out"}, {"paths_csv", false}};
    return j;
}

} // namespace sdecert
