#include "mco/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "mco/joint_samplers.hpp"
#include "mco/kernels.hpp"
#include "mco/mco_engine.hpp"
#include "mco/order_diagnostics.hpp"
#include "mco/simplex.hpp"

namespace mco {

using nlohmann::json;

namespace {

// ---- parameter parsing ---------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

double to_real(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw ConfigError("not a number: " + s);
        return v;
    } catch (const std::logic_error&) {
        throw ConfigError("not a number: " + s);
    }
}

std::vector<double> real_list(const json& p, const std::string& key, std::vector<double> fallback) {
    if (!p.contains(key)) return fallback;
    const json& v = p.at(key);
    std::vector<double> out;
    if (v.is_array()) {
        for (const auto& x : v) {
            if (!x.is_number()) throw ConfigError("parameter " + key + " must be a list of numbers");
            out.push_back(x.get<double>());
        }
    } else if (v.is_number()) {
        out.push_back(v.get<double>());
    } else if (v.is_string()) {
        for (const auto& s : split(v.get<std::string>(), ',')) out.push_back(to_real(s));
    } else {
        throw ConfigError("parameter " + key + " must be a list");
    }
    if (out.empty()) throw ConfigError("parameter " + key + " must not be empty");
    return out;
}

double real_param(const json& p, const std::string& key, double fallback) {
    const auto v = real_list(p, key, {fallback});
    if (v.size() != 1) throw ConfigError("parameter " + key + " must be a single number");
    return v[0];
}

std::size_t count_of(double v, const std::string& key) {
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e12) throw ConfigError("parameter " + key + " must be a count");
    return static_cast<std::size_t>(v);
}

std::vector<std::size_t> count_list(const json& p, const std::string& key, std::vector<std::size_t> fallback) {
    if (!p.contains(key)) return fallback;
    std::vector<std::size_t> out;
    for (double v : real_list(p, key, {})) out.push_back(count_of(v, key));
    return out;
}

std::size_t count_param(const json& p, const std::string& key, std::size_t fallback) {
    return count_of(real_param(p, key, static_cast<double>(fallback)), key);
}

std::string string_param(const json& p, const std::string& key, const std::string& fallback) {
    if (!p.contains(key)) return fallback;
    if (!p.at(key).is_string()) throw ConfigError("parameter " + key + " must be a string");
    return p.at(key).get<std::string>();
}

std::size_t reps_of(const ExperimentConfig& c, std::size_t fallback, std::size_t minimum = 2) {
    const std::size_t r = c.reps.value_or(fallback);
    if (r < minimum) throw ConfigError("reps must be at least " + std::to_string(minimum));
    return r;
}

std::size_t samples_of(const ExperimentConfig& c, std::size_t fallback, std::size_t minimum) {
    const std::size_t s = c.samples.value_or(c.reps.value_or(fallback));
    if (s < minimum) throw ConfigError("samples must be at least " + std::to_string(minimum));
    return s;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---- experiments ---------------------------------------------------------

ResultTable sample_monotonicity(const ExperimentConfig& c) {
    const auto ks = count_list(c.params, "K", {1, 2, 4, 8, 16, 32, 64});
    const std::size_t reps = reps_of(c, 100000);
    const std::string kind = string_param(c.params, "sampler", "iid");
    SamplerFamily family;
    if (kind == "iid") {
        const ScalarModel m = parse_model(string_param(c.params, "model", "lognormal:0,1"));
        family = [m](std::size_t k) { return JointSampler::iid(m, k); };
    } else if (kind == "mixture") {
        std::vector<ScalarModel> comps;
        for (const auto& s : split(string_param(c.params, "components", "gamma:2,2|gamma:3,3"), '|'))
            comps.push_back(parse_model(s));
        const std::vector<double> probs(comps.size(), 1.0 / static_cast<double>(comps.size()));
        family = [comps, probs](std::size_t k) { return JointSampler::exchangeable_mixture(comps, probs, k); };
    } else {
        throw ConfigError("sampler must be iid or mixture");
    }
    for (auto k : ks)
        if (k == 0) throw ConfigError("K values must be >= 1");

    const auto rows = monotonicity_curve(family, ks, reps, RandomStream(c.seed));
    ResultTable t({"K", "mco", "mco_se", "log_mu", "gap", "gap_ci_halfwidth", "step_ok"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        bool ok = true;
        if (i > 0) {
            const auto& prev = rows[i - 1].mco;
            ok = r.mco.value >= prev.value - 3.0 * std::hypot(r.mco.std_error, prev.std_error);
        }
        t.add_row({static_cast<double>(r.k), r.mco.value, r.mco.std_error, r.gap.log_mu, r.gap.gap,
                   r.gap.gap_ci_halfwidth, yes_no(ok)});
    }
    t.plot = PlotSpec{"K", "mco", "mco_se", "", "", "", "L_K versus K"};
    return t;
}

ResultTable id_counterexample(const ExperimentConfig& c) {
    const auto atoms = real_list(c.params, "atoms", {1.0, 3.0});
    const auto probs =
        real_list(c.params, "probs", std::vector<double>(atoms.size(), 1.0 / static_cast<double>(atoms.size())));
    const ScalarModel m = ScalarModel::finite_support(atoms, probs);
    const std::size_t reps = reps_of(c, 100000);
    const auto [s2, s3] = exch_counterexample(m);
    const RandomStream root(c.seed);

    const double l2 = mco_exact_finite(s2, uniform(2));
    const double l3 = mco_exact_finite(s3, uniform(3));
    const McoEstimate e2 = mco_uniform(s2, 2, reps, root.split(2));
    const McoEstimate e3 = mco_uniform(s3, 3, reps, root.split(3));

    ResultTable t({"quantity", "K", "exact", "mco", "mco_se", "exchangeable"});
    t.add_row({std::string("L_K"), 2.0, l2, e2.value, e2.std_error, yes_no(is_exchangeable(s2))});
    t.add_row({std::string("L_K"), 3.0, l3, e3.value, e3.std_error, yes_no(is_exchangeable(s3))});
    t.add_row({std::string("L2_minus_L3"), std::string("2-3"), l2 - l3, e2.value - e3.value,
               std::hypot(e2.std_error, e3.std_error), std::string("")});
    t.plot = PlotSpec{"K", "exact", "", "", "quantity", "L_K", "Exact L_K for (x, y, x)"};
    return t;
}

ResultTable majorization(const ExperimentConfig& c) {
    const std::size_t k = count_param(c.params, "K", 4);
    const std::size_t steps = count_param(c.params, "steps", 6);
    const std::size_t draws = count_param(c.params, "draws", 20);
    const double conc = real_param(c.params, "concentration", 1.0);
    const ScalarModel m = parse_model(string_param(c.params, "model", "gamma:2,2"));
    const std::size_t reps = reps_of(c, 100000);
    if (k < 2) throw ConfigError("K must be >= 2");
    const JointSampler s = JointSampler::iid(m, k);
    const RandomStream root(c.seed);

    std::vector<std::pair<std::string, std::vector<SimplexVector>>> chains;
    chains.emplace_back("padded_uniform", padded_uniform_chain(k));
    chains.emplace_back("interpolation", interpolation_chain(k, steps));
    std::vector<SimplexVector> dir;
    for (std::size_t i = 0; i < draws; ++i) dir.push_back(sample_dirichlet(k, conc, root.split(1000000 + i)));
    chains.emplace_back("dirichlet", std::move(dir));

    ResultTable t({"chain", "index", "alpha", "mco", "mco_se", "uniform_minus_mco", "diff_se", "precedes_next",
                   "uniform_precedes"});
    const SimplexVector u = uniform(k);
    std::uint64_t config_index = 0;
    for (const auto& [name, chain] : chains) {
        for (std::size_t i = 0; i < chain.size(); ++i) {
            const PairedMco p = mco_paired(s, u, chain[i], reps, root.split(config_index++));
            const std::string next = i + 1 < chain.size() ? yes_no(precedes_m(chain[i], chain[i + 1])) : "";
            t.add_row({name, static_cast<double>(i), chain[i].to_string(), p.second.value, p.second.std_error,
                       p.difference.value, p.difference.std_error, next, yes_no(precedes_m(u, chain[i]))});
        }
    }
    t.plot = PlotSpec{"index", "mco", "mco_se", "chain", "", "", "L_alpha along majorization chains"};
    return t;
}

ResultTable negative_dependence(const ExperimentConfig& c) {
    const std::size_t k = count_param(c.params, "K", 2);
    const auto rhos = real_list(c.params, "rho", {-0.9, -0.5, 0.0, 0.5, 0.9});
    const ScalarModel m = parse_model(string_param(c.params, "model", "lognormal:0,1"));
    const std::size_t reps = reps_of(c, 100000);
    const RandomStream root(c.seed);
    const std::vector<double> log_u(k, -std::log(static_cast<double>(k)));

    ResultTable t({"sampler", "rho", "mco", "mco_se", "var_R", "var_R_se", "gap"});
    auto add = [&](const std::string& name, double rho, const JointSampler& s, const RandomStream& st) {
        const LogWeightMatrix w = sample_log_weights(s, st, reps);
        std::vector<double> log_r(reps), r(reps);
        for (std::size_t i = 0; i < reps; ++i) {
            log_r[i] = kernels::log_combination(w.row(i), log_u);
            r[i] = std::exp(log_r[i]);
        }
        const McoEstimate e = estimate_from_values(log_r);
        const VarianceReport v = variance_report(r);
        t.add_row({name, rho, e.value, e.std_error, v.variance, v.variance_se, gap(e, s).gap});
    };
    for (std::size_t i = 0; i < rhos.size(); ++i)
        add("copula", rhos[i], JointSampler::equicorrelated_copula(m, k, rhos[i]), root.split(i));
    if (k == 2) add("antithetic", -1.0, JointSampler::antithetic(m), root.split(1000));
    t.plot = PlotSpec{"rho", "mco", "mco_se", "", "sampler", "copula", "L_2 versus copula correlation"};
    return t;
}

ResultTable variance_heuristic(const ExperimentConfig& c) {
    const std::size_t pairs = count_param(c.params, "pairs", 200);
    const auto sig4 = real_list(c.params, "sigmas_failure", {1, 2, 3, 4});
    const auto sig2 = real_list(c.params, "sigmas_taylor", {0.1, 0.25, 0.5, 1, 1.5, 2});
    const double ig_shape = real_param(c.params, "ig_shape", 1.5);
    const double ig_scale = real_param(c.params, "ig_scale", 1.0);
    const RandomStream root(c.seed);

    ResultTable t({"section", "parameter", "quantity", "value"});
    const std::vector<std::string> families = {"gamma", "inverse_gamma", "lognormal"};
    for (std::size_t f = 0; f < families.size(); ++f) {
        std::size_t agree = 0;
        Engine eng = root.split(f).engine();
        for (std::size_t i = 0; i < pairs; ++i) {
            const auto [a, b] = random_equal_mean_pair(families[f], eng);
            agree += heuristic_equivalence_check(a, b).all_agree();
        }
        t.add_row({std::string("equal_mean_pairs"), families[f], std::string("pairs"), static_cast<double>(pairs)});
        t.add_row({std::string("equal_mean_pairs"), families[f], std::string("agree"), static_cast<double>(agree)});
    }

    const ScalarModel ig = ScalarModel::inverse_gamma(ig_shape, ig_scale);
    for (double s : sig4) {
        const ScalarModel ln = match_lognormal_to_invgamma(ig_shape, ig_scale, s);
        t.add_row({std::string("failure"), s, std::string("mean_ig"), mean(ig).value()});
        t.add_row({std::string("failure"), s, std::string("mean_ln"), mean(ln).value()});
        t.add_row({std::string("failure"), s, std::string("var_ig"), variance(ig).value()});
        t.add_row({std::string("failure"), s, std::string("var_ln"), variance(ln).value()});
        t.add_row({std::string("failure"), s, std::string("log_mean_diff"), (log_mean(ig) - log_mean(ln)).value()});
    }

    for (double s : sig2) {
        const ScalarModel ln = ScalarModel::lognormal(0.0, s);
        const double h = second_order_gap(ln);
        const double g = exact_gap(ln).value();
        t.add_row({std::string("second_order"), s, std::string("heuristic"), h});
        t.add_row({std::string("second_order"), s, std::string("true_gap"), g});
        t.add_row({std::string("second_order"), s, std::string("relative_error"), std::abs(h - g) / g});
    }
    t.plot = PlotSpec{"parameter", "value", "", "quantity", "section", "second_order",
                      "Second-order gap heuristic for LogNormal(0, sigma)"};
    return t;
}

ResultTable log_stable(const ExperimentConfig& c) {
    const double a = real_param(c.params, "stability", 0.5);
    const double mu = real_param(c.params, "mean", 1.0);
    const std::size_t n = samples_of(c, 1000000, 1000);
    const ScalarModel m = ScalarModel::log_stable(a, mu);
    const auto logs = sample_log(m, RandomStream(c.seed), n);

    const auto nd = static_cast<double>(n);
    double s = 0.0;
    for (double l : logs) s += std::exp(l);
    const double emp_mean = s / nd;
    double m2 = 0.0, m4 = 0.0;
    for (double l : logs) {
        const double d = std::exp(l) - emp_mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    const double emp_var = m2 / (nd - 1.0);
    const double var_se = std::sqrt(std::max(m4 / nd - (m2 / nd) * (m2 / nd), 0.0) / nd);

    ResultTable t({"quantity", "n", "closed_form", "empirical", "se"});
    t.add_row({std::string("mean"), nd, mean(m).value(), emp_mean, std::sqrt(emp_var / nd)});
    t.add_row({std::string("variance"), nd, variance(m).value(), emp_var, var_se});
    std::vector<std::size_t> checkpoints;
    for (std::size_t p = 1000; p <= n; p *= 10) checkpoints.push_back(p);
    if (checkpoints.back() != n) checkpoints.push_back(n);
    double run = 0.0, run2 = 0.0;
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        run += logs[i];
        run2 += logs[i] * logs[i];
        if (i + 1 == checkpoints[next]) {
            const auto ni = static_cast<double>(i + 1);
            const double lm = run / ni;
            const double sd = std::sqrt(std::max(run2 / ni - lm * lm, 0.0));
            t.add_row({std::string("running_log_mean"), ni, log_mean(m).value(), lm, sd / std::sqrt(ni)});
            ++next;
        }
    }
    t.plot = PlotSpec{"n", "empirical", "", "", "quantity", "running_log_mean", "Running mean of log R"};
    return t;
}

ResultTable khat(const ExperimentConfig& c) {
    const std::size_t obs = count_param(c.params, "observations", 50);
    const std::size_t s = samples_of(c, 10000, 25);
    const double narrow = real_param(c.params, "narrow", 0.25);
    const double dof = real_param(c.params, "dof", 3.0);
    if (obs == 0) throw ConfigError("observations must be >= 1");
    const LinearGaussianLVM model = default_linear_gaussian_instance();
    const RandomStream root(c.seed);
    const auto data = synthesize_dataset(model, obs, root.split(0));

    ResultTable t({"proposal", "observation", "khat", "tail_count", "constant_weights"});
    const std::vector<std::pair<std::string, ProposalFactory>> proposals = {
        {"gaussian_narrow",
         [&](const Eigen::VectorXd& x) { return ContinuousProposal(scaled_posterior_proposal(model, x, narrow)); }},
        {"student_t", [&](const Eigen::VectorXd& x) { return ContinuousProposal(matched_student_t(model, x, dof)); }},
    };
    for (std::size_t p = 0; p < proposals.size(); ++p) {
        const auto res = khat_per_observation(model, proposals[p].second, data, s, root.split(p + 1));
        std::vector<double> ks;
        for (std::size_t i = 0; i < res.size(); ++i) {
            ks.push_back(res[i].khat);
            t.add_row({proposals[p].first, static_cast<double>(i), res[i].khat,
                       static_cast<double>(res[i].tail_count), yes_no(res[i].constant_weights)});
        }
        t.add_row({proposals[p].first, std::string("median"), median(ks), static_cast<double>(res[0].tail_count),
                   std::string("")});
    }
    t.plot = PlotSpec{"observation", "khat", "", "proposal", "", "", "Pareto k-hat per observation"};
    return t;
}

ResultTable fdiv_monotonicity(const ExperimentConfig& c) {
    const std::size_t kmax = count_param(c.params, "kmax", 4);
    const std::string prop = string_param(c.params, "proposal", "prior");
    if (kmax < 1) throw ConfigError("kmax must be >= 1");

    DiscreteLVM model = default_discrete_instance();
    if (c.params.contains("prior") || c.params.contains("likelihood")) {
        const auto prior = real_list(c.params, "prior", {0.5, 0.3, 0.2});
        std::vector<std::vector<double>> lik;
        for (const auto& row : split(string_param(c.params, "likelihood", "0.9,0.1;0.4,0.6;0.15,0.85"), ';')) {
            std::vector<double> r;
            for (const auto& x : split(row, ',')) r.push_back(to_real(x));
            lik.push_back(std::move(r));
        }
        model = DiscreteLVM(prior, lik);
    }
    std::vector<CategoricalProposal> qs;
    for (std::size_t x = 0; x < model.observation_count(); ++x) {
        if (prop == "prior") {
            std::vector<double> p(model.latent_count());
            for (std::size_t z = 0; z < p.size(); ++z) p[z] = model.prior(z);
            qs.emplace_back(std::move(p));
        } else if (prop == "posterior") {
            qs.push_back(exact_posterior(model, x));
        } else {
            throw ConfigError("proposal must be prior or posterior");
        }
    }

    ResultTable t({"f", "K", "divergence", "strictly_decreasing"});
    for (FDivergence f : {FDivergence::kl, FDivergence::reverse_kl, FDivergence::squared_hellinger}) {
        double prev = 0.0;
        for (std::size_t k = 1; k <= kmax; ++k) {
            const double d = expected_f_divergence(model, qs, k, f);
            t.add_row({std::string(to_string(f)), static_cast<double>(k), d, k == 1 ? "" : yes_no(d < prev)});
            prev = d;
        }
    }
    t.plot = PlotSpec{"K", "divergence", "", "f", "", "", "Expected f-divergence versus K"};
    return t;
}

using Runner = std::function<ResultTable(const ExperimentConfig&)>;

const std::map<std::string, Runner>& registry() {
    static const std::map<std::string, Runner> r = {
        {"sample-monotonicity", sample_monotonicity}, {"id-counterexample", id_counterexample},
        {"majorization", majorization},               {"negative-dependence", negative_dependence},
        {"variance-heuristic", variance_heuristic},   {"log-stable", log_stable},
        {"khat", khat},                               {"fdiv-monotonicity", fdiv_monotonicity},
    };
    return r;
}

} // namespace

json ExperimentConfig::to_json() const {
    json j;
    j["experiment"] = name;
    j["seed"] = seed;
    if (reps) j["reps"] = *reps;
    if (samples) j["samples"] = *samples;
    j["params"] = params;
    j["plot"] = plot;
    return j;
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : registry()) v.push_back(k);
        return v;
    }();
    return names;
}

ResultTable run(const ExperimentConfig& config) {
    const auto& reg = registry();
    const auto it = reg.find(config.name);
    if (it == reg.end()) {
        std::string msg = "unknown experiment '" + config.name + "'; valid names:";
        for (const auto& n : experiment_names()) msg += " " + n;
        throw ConfigError(msg);
    }
    const auto start = std::chrono::steady_clock::now();
    ResultTable t = it->second(config);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    t.add_metadata("experiment", config.name);
    t.add_metadata("seed", std::to_string(config.seed));
    t.add_metadata("config", config.to_json().dump());
    t.add_metadata("library_version", kLibraryVersion);
    std::ostringstream os;
    os.precision(6);
    os << secs;
    t.add_metadata("wall_time_s", os.str());
    return t;
}

void emit(const ResultTable& table, const std::string& path, bool plot) {
    {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw IoError("cannot open " + path + " for writing");
        f << to_csv(table);
        if (!f) throw IoError("failed writing " + path);
    }
    if (!plot) return;
    const auto dot = path.find_last_of('.');
    const auto slash = path.find_last_of('/');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    const std::string svg_path = (has_ext ? path.substr(0, dot) : path) + ".svg";
    std::ofstream f(svg_path, std::ios::binary);
    if (!f) throw IoError("cannot open " + svg_path + " for writing");
    f << to_svg(table);
    if (!f) throw IoError("failed writing " + svg_path);
}

ScalarModel parse_model(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("model must look like family:params, got " + text);
    const std::string fam = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    try {
        if (fam == "finite") {
            const auto at = rest.find('@');
            std::vector<double> atoms, probs;
            for (const auto& s : split(rest.substr(0, at), ',')) atoms.push_back(to_real(s));
            if (at != std::string::npos)
                for (const auto& s : split(rest.substr(at + 1), ',')) probs.push_back(to_real(s));
            else
                probs.assign(atoms.size(), 1.0 / static_cast<double>(atoms.size()));
            return ScalarModel::finite_support(atoms, probs);
        }
        std::vector<double> p;
        for (const auto& s : split(rest, ',')) p.push_back(to_real(s));
        if (p.size() != 2) throw ConfigError("model " + fam + " takes two parameters");
        if (fam == "gamma") return ScalarModel::gamma(p[0], p[1]);
        if (fam == "inverse_gamma") return ScalarModel::inverse_gamma(p[0], p[1]);
        if (fam == "lognormal") return ScalarModel::lognormal(p[0], p[1]);
        if (fam == "log_stable") return ScalarModel::log_stable(p[0], p[1]);
    } catch (const PreconditionError& e) {
        throw ConfigError(std::string("invalid model parameters: ") + e.what());
    }
    throw ConfigError("unknown model family " + fam);
}

std::pair<ScalarModel, ScalarModel> random_equal_mean_pair(const std::string& family, Engine& eng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto in = [&](double lo, double hi) { return lo + (hi - lo) * u(eng); };
    if (family == "gamma") {
        const double shape = in(0.5, 10.0), rate = in(0.5, 10.0);
        const double a = in(0.5, 10.0);
        return {ScalarModel::gamma(shape, rate), ScalarModel::gamma(a, a * rate / shape)};
    }
    if (family == "inverse_gamma") {
        const double shape = in(2.1, 12.0), scale = in(0.5, 10.0);
        const double a = in(2.1, 12.0);
        return {ScalarModel::inverse_gamma(shape, scale), ScalarModel::inverse_gamma(a, scale * (a - 1.0) / (shape - 1.0))};
    }
    if (family == "lognormal") {
        const double mu = in(-2.0, 2.0), sigma = in(0.1, 2.0);
        const double s = in(0.1, 2.0);
        return {ScalarModel::lognormal(mu, sigma), ScalarModel::lognormal(mu + 0.5 * (sigma * sigma - s * s), s)};
    }
    throw ConfigError("unknown family " + family);
}

LinearGaussianLVM default_linear_gaussian_instance() {
    Eigen::MatrixXd a(3, 2);
    a << 1.0, 0.5, -0.3, 0.8, 0.6, -0.4;
    Eigen::VectorXd b(3);
    b << 0.1, -0.2, 0.3;
    return {a, b, 0.5};
}

DiscreteLVM default_discrete_instance() {
    return {{0.5, 0.3, 0.2}, {{0.9, 0.1}, {0.4, 0.6}, {0.15, 0.85}}};
}

} // namespace mco
