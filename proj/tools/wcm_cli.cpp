// wcm: weighted counts of quadratic-form solutions and their local-density
// predictions, exposed as one binary with per-pipeline subcommands.
//
// Exit codes: 0 success, 2 work-budget refusal, 3 infeasible geometry,
// 4 invalid input.

#include <CLI11.hpp>
#include <chrono>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "wcm/arcs.hpp"
#include "wcm/counter.hpp"
#include "wcm/errors.hpp"
#include "wcm/expsums.hpp"
#include "wcm/forms.hpp"
#include "wcm/localdens.hpp"
#include "wcm/realdens.hpp"
#include "wcm/report.hpp"
#include "wcm/weights.hpp"

namespace fs = std::filesystem;
using namespace wcm;

namespace {

constexpr const char* kSchemaVersion = "1";

struct CommonArgs {
    std::string weights = "unit";
    std::string config_path;
    std::string out_dir = ".";
    int threads = 0;
    bool timing = false;
    bool csv = false;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

QuadraticForm load_form(const std::string& spec) {
    if (spec.empty()) throw input_error("no form given (use --form FILE|JSON)");
    std::string text = spec;
    if (spec.find('{') == std::string::npos) text = slurp(spec);
    return QuadraticForm::from_json_text(text);
}

// "1,2,3" -> vector
std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw input_error("empty list: " + s);
    return out;
}

std::vector<i64> parse_grid_i(const std::string& s) {
    std::vector<i64> out;
    for (double v : parse_grid(s)) out.push_back(static_cast<i64>(v));
    return out;
}

void emit(const CommonArgs& common, const std::string& name, const JsonValue& report,
          const std::string& csv_text = "") {
    fs::create_directories(common.out_dir);
    fs::path base = fs::path(common.out_dir) / name;
    write_file((base.string() + ".json"), report.dump());
    if (common.csv && !csv_text.empty()) write_file(base.string() + ".csv", csv_text);
}

JsonValue report_head(const std::string& command) {
    JsonValue v = JsonValue::object();
    v.set("schema_version", kSchemaVersion);
    v.set("command", command);
    return v;
}

JsonValue complex_json(std::complex<double> z) {
    JsonValue v = JsonValue::object();
    v.set("re", z.real());
    v.set("im", z.imag());
    return v;
}

JsonValue vec_json(const std::vector<double>& xs) {
    JsonValue a = JsonValue::array();
    for (double x : xs) a.push(x);
    return a;
}

int run_check_conditions(const CommonArgs& common, i64 qmax, const std::string& q_list,
                         const std::string& x_grid) {
    auto model = WeightModel::parse_spec(common.weights);
    JsonValue rep = report_head("check-conditions");
    rep.set("weights", model.name());
    rep.set("qmax", qmax);

    bool all_ok = true;
    if (model.has_exact_kappa()) {
        auto audit = audit_kappa(model, qmax);
        all_ok = audit.normalization_ok && audit.condition_c_ok && audit.refinement_ok;
        JsonValue k = JsonValue::object();
        k.set("exact", audit.exact);
        k.set("normalization_ok", audit.normalization_ok);
        k.set("condition_c_ok", audit.condition_c_ok);
        k.set("refinement_ok", audit.refinement_ok);
        JsonValue consts = JsonValue::array();
        for (int c = 0; c < 3; ++c) {
            JsonValue row = JsonValue::object();
            row.set("c", c);
            row.set("constant", audit.k_constant[c]);
            row.set("argmax_q", audit.k_argmax[c]);
            consts.push(std::move(row));
        }
        k.set("near_uniformity", std::move(consts));
        k.set("fitted_c", audit.fitted_c);
        JsonValue fails = JsonValue::array();
        for (const auto& f : audit.failures) {
            JsonValue row = JsonValue::object();
            row.set("identity", f.identity);
            row.set("q", f.q);
            row.set("qp", f.qp);
            row.set("h", f.h);
            row.set("hp", f.hp);
            row.set("detail", f.detail);
            fails.push(std::move(row));
        }
        k.set("failures", std::move(fails));
        rep.set("kappa_audit", std::move(k));
    } else {
        rep.set("kappa_audit", "skipped: custom model without exact kappa table");
    }

    auto qs = parse_grid_i(q_list);
    auto Xs = parse_grid(x_grid);
    auto dist = audit_distribution(model, qs, Xs);
    JsonValue d = JsonValue::object();
    d.set("X_grid", vec_json(dist.X_grid));
    d.set("l2_ratio", vec_json(dist.l2_ratio));
    d.set("l2_fitted_c", dist.l2_fitted_c);
    JsonValue rows = JsonValue::array();
    for (const auto& r : dist.rows) {
        JsonValue row = JsonValue::object();
        row.set("q", r.q);
        row.set("discrepancy", vec_json(r.discrepancy));
        row.set("fitted_decay", r.fitted_decay);
        row.set("decreasing", r.decreasing);
        rows.push(std::move(row));
    }
    d.set("rows", std::move(rows));
    rep.set("distribution_audit", std::move(d));

    emit(common, "check-conditions", rep);
    std::cout << "check-conditions: " << (all_ok ? "all exact audits passed" : "FAILURES, see report")
              << "\n";
    return 0;
}

int run_singular_series(const CommonArgs& common, const std::string& form_spec, i64 P,
                        int prime_depth, double st_cap) {
    auto form = load_form(form_spec);
    auto model = WeightModel::parse_spec(common.weights);
    ExpSumOpts opts;
    opts.st_cap = st_cap;
    opts.threads = common.threads;
    auto ss = singular_series(form, model, P, prime_depth, opts);

    JsonValue rep = report_head("singular-series");
    rep.set("weights", model.name());
    rep.set("t", form.t);
    rep.set("P", ss.P);
    rep.set("prime_depth", ss.per_prime_depth);
    rep.set("r", ss.r);
    rep.set("r_warning", ss.r_warning);
    rep.set("S_P", ss.S_P);
    rep.set("tail_estimate", ss.tail_estimate);
    rep.set("C_fit", ss.C_fit);
    rep.set("euler_product", ss.euler_product);
    rep.set("im_tolerance", ss.im_tolerance);
    JsonValue rows = JsonValue::array();
    std::string csv = csv_line({"q", "re_B", "im_B", "route"});
    for (const auto& row : ss.per_q) {
        JsonValue r = JsonValue::object();
        r.set("q", row.q);
        r.set("B", complex_json(row.B));
        r.set("im_residual", row.im_residual);
        r.set("route", row.route);
        r.set("skipped", row.skipped);
        rows.push(std::move(r));
        csv += csv_line({std::to_string(row.q), format_double(row.B.real()),
                         format_double(row.B.imag()), row.route});
    }
    rep.set("per_q", std::move(rows));
    JsonValue primes = JsonValue::array();
    for (const auto& pr : ss.per_prime) {
        JsonValue r = JsonValue::object();
        r.set("p", pr.p);
        JsonValue partial = JsonValue::array();
        for (auto z : pr.partial) partial.push(complex_json(z));
        r.set("partial", std::move(partial));
        r.set("computed_depth", pr.computed_depth);
        primes.push(std::move(r));
    }
    rep.set("per_prime", std::move(primes));
    JsonValue skipped = JsonValue::array();
    for (i64 q : ss.skipped_q) skipped.push(q);
    rep.set("skipped_q", std::move(skipped));

    emit(common, "singular-series", rep, csv);
    std::cout << "S(P) = " << format_double(ss.S_P) << "  tail ~ "
              << format_double(ss.tail_estimate) << "\n";
    return ss.skipped_q.empty() ? 0 : 2;
}

int run_local_density(const CommonArgs& common, const std::string& form_spec, i64 p,
                      int mmax, double cap) {
    auto form = load_form(form_spec);
    auto model = WeightModel::parse_spec(common.weights);
    LocalDensityOpts opts;
    opts.enumeration_cap = cap;
    opts.expsum.threads = common.threads;
    auto seq = chi_p(form, model, p, mmax, opts);

    JsonValue rep = report_head("local-density");
    rep.set("weights", model.name());
    rep.set("p", seq.p);
    rep.set("t", form.t);
    rep.set("stabilized", seq.stabilized);
    rep.set("stabilization_depth", seq.stabilization_depth);
    JsonValue rows = JsonValue::array();
    for (const auto& r : seq.rows) {
        JsonValue row = JsonValue::object();
        row.set("m", r.m);
        row.set("M", r.M);
        row.set("pmM", r.pmM);
        row.set("B_partial", r.B_partial);
        row.set("discrepancy", r.discrepancy);
        row.set("method", r.method);
        row.set("budget_skipped", r.budget_skipped);
        rows.push(std::move(row));
    }
    rep.set("rows", std::move(rows));
    emit(common, "local-density", rep);
    bool any_skip = false;
    for (const auto& r : seq.rows) any_skip |= r.budget_skipped;
    std::cout << "local-density p=" << p << ": " << seq.rows.size() << " rows"
              << (seq.stabilized ? " (stabilized)" : "") << "\n";
    return any_skip ? 2 : 0;
}

int run_real_density(const CommonArgs& common, const std::string& form_spec, double X,
                     double eta, i64 samples, u64 seed, int smooth_order,
                     const std::string& center_spec) {
    auto form = load_form(form_spec);
    auto model = WeightModel::parse_spec(common.weights);

    std::vector<double> x0;
    if (!center_spec.empty()) {
        x0 = parse_grid(center_spec);
        if (static_cast<int>(x0.size()) != form.s)
            throw input_error("--center has wrong dimension");
    } else {
        x0 = find_positive_zero(form, PositiveZeroOpts{seed});
    }
    if (eta <= 0) eta = 0.1 * *std::min_element(x0.begin(), x0.end());
    BoxSpec box = build_box(form, form.t, X, eta, x0);
    SigmaOpts sopts;
    sopts.smooth_order = smooth_order;
    sopts.threads = common.threads;
    auto sig = sigma_infinity(form, model, box, X, samples, seed, sopts);

    JsonValue rep = report_head("real-density");
    rep.set("weights", model.name());
    rep.set("X", X);
    rep.set("eta", eta);
    rep.set("t0", box.t0);
    rep.set("x0", vec_json(box.x0));
    rep.set("xstar", vec_json(box.xstar));
    rep.set("gradient", vec_json(box.grad));
    rep.set("box_lo", vec_json(box.lo));
    rep.set("box_hi", vec_json(box.hi));
    auto est_json = [](const DensityEstimate& e) {
        JsonValue v = JsonValue::object();
        v.set("value", e.value);
        v.set("stderr", e.stderr_);
        v.set("method", e.method);
        v.set("samples", e.samples);
        v.set("seed", static_cast<long long>(e.seed));
        return v;
    };
    rep.set("slab", est_json(sig.slab));
    rep.set("coarea", est_json(sig.coarea));
    rep.set("epsilon", sig.epsilon);
    rep.set("consistent", sig.consistent);
    emit(common, "real-density", rep);
    std::cout << "sigma_infinity = " << format_double(sig.slab.value) << " +- "
              << format_double(sig.slab.stderr_) << " (slab), "
              << format_double(sig.coarea.value) << " (coarea)\n";
    return 0;
}

int run_count(const CommonArgs& common, const std::string& form_spec, double X,
              double cap) {
    auto form = load_form(form_spec);
    auto model = WeightModel::parse_spec(common.weights);
    CountOpts opts;
    opts.cap = cap;
    opts.threads = common.threads;
    auto res = brute_count(form, model, X, CountRegion::full_cube(), opts);

    JsonValue rep = report_head("count");
    rep.set("weights", model.name());
    rep.set("X", X);
    rep.set("t", form.t);
    rep.set("count", res.value);
    rep.set("exact", res.exact.str());
    rep.set("is_exact", res.is_exact);
    rep.set("prefix_tuples", res.prefix_tuples);
    std::string csv = csv_line({"X", "count"}) +
                      csv_line({format_double(X), format_double(res.value)});
    emit(common, "count", rep, csv);
    std::cout << "count = " << (res.is_exact ? res.exact.str() : format_double(res.value))
              << "\n";
    return 0;
}

int run_predict(const CommonArgs& common, const std::string& form_spec,
                const std::string& x_grid, PredictOpts opts) {
    auto form = load_form(form_spec);
    auto model = WeightModel::parse_spec(common.weights);
    auto grid = parse_grid(x_grid);
    opts.threads = common.threads;
    opts.expsum.threads = common.threads;
    opts.count.threads = common.threads;
    auto reports = predict_compare(form, model, grid, opts);

    JsonValue rep = report_head("predict");
    rep.set("weights", model.name());
    rep.set("P", opts.P);
    rep.set("samples", opts.samples);
    rep.set("seed", static_cast<long long>(opts.seed));
    rep.set("adaptive_t", opts.adaptive_t);
    JsonValue rows = JsonValue::array();
    std::string csv = csv_line({"X", "count", "main", "ratio"});
    for (const auto& r : reports) {
        JsonValue row = JsonValue::object();
        row.set("X", r.X);
        row.set("t", r.t);
        row.set("count", r.count);
        row.set("count_exact", r.count_exact);
        row.set("main_term", r.main_term);
        row.set("main_stderr", r.main_stderr);
        row.set("ratio", r.ratio);
        row.set("S_P", r.S_P);
        row.set("tail_estimate", r.tail_estimate);
        row.set("sigma_infinity", r.sigma_inf);
        row.set("sigma_stderr", r.sigma_stderr);
        row.set("sigma_coarea", r.sigma_coarea);
        row.set("A_X", r.A_X);
        row.set("smooth_order", r.smooth_order);
        row.set("eta", r.eta);
        row.set("box_center", vec_json(r.box_center));
        row.set("l1_satisfied", r.l1_satisfied);
        row.set("main_term_indistinguishable", r.main_term_indistinguishable);
        JsonValue warn = JsonValue::array();
        for (const auto& w : r.warnings) warn.push(w);
        row.set("warnings", std::move(warn));
        rows.push(std::move(row));
        csv += csv_line({format_double(r.X), format_double(r.count),
                         format_double(r.main_term), format_double(r.ratio)});
    }
    rep.set("rows", std::move(rows));
    emit(common, "predict", rep, csv);
    for (const auto& r : reports)
        std::cout << "X=" << r.X << "  count=" << r.count
                  << "  main=" << format_double(r.main_term)
                  << "  ratio=" << format_double(r.ratio) << "\n";
    return 0;
}

int run_weyl(const CommonArgs& common, const std::string& form_spec, double X,
             const std::string& alphas_spec, u64 seed, double s_alpha_cap) {
    auto form = load_form(form_spec);
    auto model = WeightModel::parse_spec(common.weights);

    std::vector<double> alphas;
    if (alphas_spec.empty()) throw input_error("--alphas FILE or --alphas COUNT required");
    if (alphas_spec.find_first_not_of("0123456789") == std::string::npos) {
        int count = std::stoi(alphas_spec);
        i64 P = std::max<i64>(2, static_cast<i64>(std::pow(std::log(X), 1.5)));
        alphas = minor_arc_samples(X, P, 4, count, seed);
    } else {
        std::string text = slurp(alphas_spec);
        for (auto& c : text)
            if (c == '\n' || c == ' ') c = ',';
        alphas = parse_grid(text);
    }

    ExpSumOpts opts;
    opts.s_alpha_cap = s_alpha_cap;
    opts.threads = common.threads;
    auto rep_data = weyl_check(form, model, X, alphas, opts);

    JsonValue rep = report_head("weyl");
    rep.set("weights", model.name());
    rep.set("X", X);
    rep.set("r", rep_data.r);
    rep.set("max_ratio", rep_data.max_ratio);
    JsonValue rows = JsonValue::array();
    std::string csv = csv_line({"alpha", "a", "q", "lambda", "abs_S", "rhs", "ratio"});
    for (const auto& r : rep_data.rows) {
        JsonValue row = JsonValue::object();
        row.set("alpha", r.alpha);
        row.set("a", r.a);
        row.set("q", r.q);
        row.set("lambda", r.lambda);
        row.set("abs_S", r.S_abs);
        row.set("rhs", r.rhs);
        row.set("ratio", r.ratio);
        row.set("budget_skipped", r.budget_skipped);
        rows.push(std::move(row));
        csv += csv_line({format_double(r.alpha), std::to_string(r.a),
                         std::to_string(r.q), format_double(r.lambda),
                         format_double(r.S_abs), format_double(r.rhs),
                         format_double(r.ratio)});
    }
    rep.set("rows", std::move(rows));
    emit(common, "weyl", rep, csv);
    std::cout << "weyl max ratio at X=" << X << ": "
              << format_double(rep_data.max_ratio) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted circle-method pipelines for quadratic forms"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonArgs common;
    std::string form_spec;
    app.add_option("--weights", common.weights,
                   "weight model: unit|primes|kfree:K|custom:PATH");
    app.add_option("--config", common.config_path, "JSON config (overrides flags)");
    app.add_option("--out", common.out_dir, "report output directory");
    app.add_option("--threads", common.threads, "worker threads (or WCL_THREADS)");
    app.add_flag("--csv", common.csv, "also write CSV tables");
    app.add_flag("--timing", common.timing, "include wall times in reports");

    auto* cc = app.add_subcommand("check-conditions", "audit kappa and distribution");
    i64 qmax = 50;
    std::string q_list = "2,3,4,5,6,8,9,12";
    std::string x_grid_cc = "1e4,1e5,1e6";
    cc->add_option("--qmax", qmax);
    cc->add_option("--q-list", q_list);
    cc->add_option("--X-grid", x_grid_cc);

    auto* ss = app.add_subcommand("singular-series", "B(q), truncation, local factors");
    i64 P = 30;
    int prime_depth = 4;
    double st_cap = 1e9;
    ss->add_option("--form", form_spec);
    ss->add_option("--P", P);
    ss->add_option("--prime-depth", prime_depth);
    ss->add_option("--st-cap", st_cap);

    auto* ld = app.add_subcommand("local-density", "p-adic density rows");
    i64 lp = 2;
    int mmax = 4;
    double ld_cap = 1e9;
    ld->add_option("--form", form_spec);
    ld->add_option("--p", lp);
    ld->add_option("--mmax", mmax);
    ld->add_option("--cap", ld_cap);

    auto* rd = app.add_subcommand("real-density", "sigma_infinity over the box");
    double X = 100.0, eta = 0.0;
    i64 samples = 200000;
    u64 seed = 1;
    int smooth_order = 1;
    std::string center;
    rd->add_option("--form", form_spec);
    rd->add_option("--X", X);
    rd->add_option("--eta", eta);
    rd->add_option("--samples", samples);
    rd->add_option("--seed", seed);
    rd->add_option("--smooth-order", smooth_order);
    rd->add_option("--center", center, "comma-separated base point (else solve f=0)");

    auto* ct = app.add_subcommand("count", "exact weighted count on the cube");
    double count_cap = 1e10;
    ct->add_option("--form", form_spec);
    ct->add_option("--X", X);
    ct->add_option("--cap", count_cap);

    auto* pd = app.add_subcommand("predict", "main term vs brute count over the box");
    std::string x_grid = "100";
    PredictOpts popts;
    bool adaptive_t = false;
    pd->add_option("--form", form_spec);
    pd->add_option("--X-grid", x_grid);
    pd->add_option("--P", popts.P);
    pd->add_option("--prime-depth", popts.prime_depth);
    pd->add_option("--eta", popts.eta);
    pd->add_option("--samples", popts.samples);
    pd->add_option("--seed", popts.seed);
    pd->add_option("--smooth-order", popts.smooth_order);
    pd->add_flag("--adaptive-t", adaptive_t,
                 "derive the target from the box center at each X");
    pd->add_option("--center", center);

    auto* wl = app.add_subcommand("weyl", "ratio |S(alpha)| / bound over samples");
    std::string alphas_spec;
    double s_alpha_cap = 1e10;
    wl->add_option("--form", form_spec);
    wl->add_option("--X", X);
    wl->add_option("--alphas", alphas_spec, "file with alphas, or a sample count");
    wl->add_option("--seed", seed);
    wl->add_option("--cap", s_alpha_cap);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 4; // malformed command lines are input errors
    }

    try {
        if (!common.config_path.empty()) {
            // the config file has the last word; flags override defaults only
            nlohmann::json cfg;
            try {
                cfg = nlohmann::json::parse(slurp(common.config_path));
            } catch (const input_error&) {
                throw;
            } catch (const std::exception& e) {
                throw input_error(std::string("config parse error: ") + e.what());
            }
            const std::vector<std::string> known = {
                "form", "weights", "out", "threads", "csv", "P", "prime_depth",
                "qmax", "q_list", "X_grid", "p", "mmax", "X", "eta", "samples",
                "seed", "smooth_order", "center", "alphas", "adaptive_t", "cap"};
            for (auto& [k, v] : cfg.items())
                if (std::find(known.begin(), known.end(), k) == known.end())
                    throw input_error("unknown config key: " + k);
            if (cfg.contains("form"))
                form_spec = cfg["form"].is_string() ? cfg["form"].get<std::string>()
                                                    : cfg["form"].dump();
            if (cfg.contains("weights")) common.weights = cfg["weights"];
            if (cfg.contains("out")) common.out_dir = cfg["out"];
            if (cfg.contains("threads")) common.threads = cfg["threads"];
            if (cfg.contains("csv")) common.csv = cfg["csv"];
            if (cfg.contains("P")) P = popts.P = cfg["P"];
            if (cfg.contains("prime_depth"))
                prime_depth = popts.prime_depth = cfg["prime_depth"];
            if (cfg.contains("qmax")) qmax = cfg["qmax"];
            if (cfg.contains("q_list")) q_list = cfg["q_list"];
            if (cfg.contains("X_grid")) {
                x_grid_cc = cfg["X_grid"].get<std::string>();
                x_grid = x_grid_cc;
            }
            if (cfg.contains("p")) lp = cfg["p"];
            if (cfg.contains("mmax")) mmax = cfg["mmax"];
            if (cfg.contains("X")) X = cfg["X"];
            if (cfg.contains("eta")) eta = popts.eta = cfg["eta"];
            if (cfg.contains("samples")) samples = popts.samples = cfg["samples"];
            if (cfg.contains("seed")) seed = popts.seed = cfg["seed"].get<u64>();
            if (cfg.contains("smooth_order"))
                smooth_order = popts.smooth_order = cfg["smooth_order"];
            if (cfg.contains("center")) center = cfg["center"];
            if (cfg.contains("alphas")) alphas_spec = cfg["alphas"];
            if (cfg.contains("adaptive_t")) adaptive_t = cfg["adaptive_t"];
        }

        if (app.got_subcommand(cc))
            return run_check_conditions(common, qmax, q_list, x_grid_cc);
        if (app.got_subcommand(ss))
            return run_singular_series(common, form_spec, P, prime_depth, st_cap);
        if (app.got_subcommand(ld))
            return run_local_density(common, form_spec, lp, mmax, ld_cap);
        if (app.got_subcommand(rd))
            return run_real_density(common, form_spec, X, eta, samples, seed,
                                    smooth_order, center);
        if (app.got_subcommand(ct)) return run_count(common, form_spec, X, count_cap);
        if (app.got_subcommand(pd)) {
            popts.adaptive_t = adaptive_t;
            if (!center.empty()) popts.center = parse_grid(center);
            popts.seed = seed;
            return run_predict(common, form_spec, x_grid, popts);
        }
        if (app.got_subcommand(wl))
            return run_weyl(common, form_spec, X, alphas_spec, seed, s_alpha_cap);
        throw input_error("no subcommand");
    } catch (const budget_error& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 2;
    } catch (const infeasibility_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const box_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const conditioning_error& e) {
        std::cerr << "conditioning: " << e.what() << "\n";
        return 3;
    } catch (const input_error& e) {
        std::cerr << "input: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
