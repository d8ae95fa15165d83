// Command-line front end: periodicity diagnostics, curve calibration, bond
// pricing, and path simulation for the constant- and sinusoidal-reversion
// short-rate models.  Every run writes a manifest.json capturing the command,
// inputs, explicit overrides, seed, timestamp, and tool version, so any
// output directory can be reproduced byte-for-byte.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include <ratecycle/ratecycle.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ratecycle;

namespace {

std::string iso_timestamp() {
    std::time_t t = 0;
    if (const char* e = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        const long long v = std::strtoll(e, &end, 10);
        if (end != e && *end == '\0' && v >= 0)
            t = static_cast<std::time_t>(v);
        else
            t = std::time(nullptr);
    } else {
        t = std::time(nullptr);
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json overrides_of(const CLI::App* cmd) {
    json j = json::object();
    for (const CLI::Option* o : cmd->get_options()) {
        // --out is where the report lands, not part of the result's identity;
        // recording it would make byte-identical reruns impossible
        if (o->count() == 0 || o->get_name() == "--help" || o->get_name() == "--out") continue;
        const auto& rs = o->results();
        if (rs.size() == 1)
            j[o->get_name()] = rs[0];
        else
            j[o->get_name()] = rs;
    }
    return j;
}

json make_manifest(const CLI::App* cmd, const std::string& input, std::uint64_t seed) {
    json m;
    m["command"] = cmd->get_name();
    m["input"] = input;
    m["overrides"] = overrides_of(cmd);
    m["seed"] = seed;
    m["timestamp"] = iso_timestamp();
    m["version"] = ratecycle::version;
    return m;
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string fmt(double v) { return csv::format_number(v); }

std::string bracket_list(const std::vector<double>& vs) {
    std::string s = "[";
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) s += ", ";
        s += fmt(vs[i]);
    }
    s += "]";
    return s;
}

std::map<std::string, double> parse_kv_list(const std::string& text) {
    std::map<std::string, double> kv;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("expected name=value in '" + item + "'");
        const std::string key = item.substr(0, eq);
        try {
            kv[key] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("unparseable number in '" + item + "'");
        }
        pos = comma + 1;
    }
    if (kv.empty()) throw std::invalid_argument("empty parameter list");
    return kv;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> vs;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        try {
            vs.push_back(std::stod(text.substr(pos, comma - pos)));
        } catch (const std::exception&) {
            throw std::invalid_argument("unparseable number list: '" + text + "'");
        }
        pos = comma + 1;
    }
    if (vs.empty()) throw std::invalid_argument("empty number list");
    return vs;
}

CsvLayout parse_layout(const std::string& date_col, const std::string& tenor_cols) {
    CsvLayout layout;
    layout.date_column = date_col;
    if (!tenor_cols.empty()) {
        layout.tenor_columns.clear();
        std::size_t pos = 0;
        while (pos < tenor_cols.size()) {
            std::size_t comma = tenor_cols.find(',', pos);
            if (comma == std::string::npos) comma = tenor_cols.size();
            const std::string item = tenor_cols.substr(pos, comma - pos);
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("expected years=COLUMN in '" + item + "'");
            layout.tenor_columns.emplace_back(std::stod(item.substr(0, eq)), item.substr(eq + 1));
            pos = comma + 1;
        }
    }
    return layout;
}

double require_kv(const std::map<std::string, double>& kv, const std::string& key,
                  const std::string& what) {
    auto it = kv.find(key);
    if (it == kv.end())
        throw std::invalid_argument(what + " is missing required parameter '" + key + "'");
    return it->second;
}

// Accepts either an inline "name=value,..." list or a path to a calibration
// JSON file produced by the calibrate subcommand.
json params_json_from_spec(const std::string& spec, const std::string& expect_model) {
    if (spec.find('=') != std::string::npos) {
        json j;
        for (const auto& [k, v] : parse_kv_list(spec)) j[k] = v;
        return j;
    }
    std::ifstream in(spec, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open parameter file: " + spec);
    json doc = json::parse(in, nullptr, true, true);
    if (doc.contains("model") && doc["model"].get<std::string>() != expect_model)
        throw std::invalid_argument("parameter file " + spec + " holds " +
                                    doc["model"].get<std::string>() + " parameters, expected " +
                                    expect_model);
    if (!doc.contains("params"))
        throw std::invalid_argument("parameter file " + spec + " has no 'params' object");
    return doc["params"];
}

hw::Params hw_params_from_spec(const std::string& spec) {
    const json j = params_json_from_spec(spec, "hw");
    auto need = [&](const char* k) -> double {
        if (!j.contains(k))
            throw std::invalid_argument(std::string("constant-model parameters need '") + k + "'");
        return j[k].get<double>();
    };
    hw::Params p{need("kappa"), need("theta"), need("sigma")};
    p.validate();
    return p;
}

sinhw::Params sinhw_params_from_spec(const std::string& spec) {
    const json j = params_json_from_spec(spec, "sin-hw");
    auto need = [&](const char* k) -> double {
        if (!j.contains(k))
            throw std::invalid_argument(std::string("sinusoidal-model parameters need '") + k + "'");
        return j[k].get<double>();
    };
    sinhw::Params p{need("kappa0"), need("amp"), need("omega"), need("theta"), need("sigma")};
    p.validate();
    return p;
}

struct CurveContext {
    std::optional<YieldHistory> history;
    std::optional<YieldCurve> curve;
};

CurveContext load_curve_context(const std::string& input, const CsvLayout& layout) {
    CurveContext ctx;
    if (input.empty()) return ctx;
    ctx.history = load_history(input, layout);
    ctx.curve = latest_curve(*ctx.history);
    return ctx;
}

double resolve_r0(const std::optional<double>& flag_r0, const CurveContext& ctx,
                  const char* why) {
    if (flag_r0) {
        if (!std::isfinite(*flag_r0)) throw std::invalid_argument("--r0 must be finite");
        return *flag_r0;
    }
    if (ctx.curve) return (*ctx.curve)[0].yield;
    throw std::invalid_argument(std::string(why) +
                                " needs an initial short rate: pass --r0 or --input");
}

// ---------------------------------------------------------------- periodicity

int run_periodicity(const CLI::App* cmd, const std::string& input, const std::string& out_dir,
                    const CsvLayout& layout, int k_peaks, int lags) {
    const YieldHistory history = load_history(input, layout);
    fs::create_directories(out_dir);
    const fs::path out(out_dir);

    csv::Writer periods(out / "periods.csv");
    periods.write_row({"tenor_years", "n_samples", "periods_samples", "periods_years_calendar",
                       "periods_years_trading"});
    csv::Writer lb_out(out / "ljungbox.csv");
    lb_out.write_row({"tenor_years", "n_samples", "lags", "statistic", "p_value"});

    for (double tenor : history.tenors()) {
        const std::vector<double> series = history.compact_series(tenor);
        const auto spectrum = spectral::magnitude_spectrum(spectral::detrend_mean(series));
        const auto report = spectral::period_report(tenor, spectrum, k_peaks);

        periods.write_row({fmt(tenor), std::to_string(series.size()),
                           bracket_list(report.periods_samples),
                           bracket_list(report.periods_years_calendar),
                           bracket_list(report.periods_years_trading)});

        const auto lb = spectral::ljung_box(series, lags);
        lb_out.write_row({fmt(tenor), std::to_string(series.size()), std::to_string(lb.lags),
                          fmt(lb.statistic), fmt(lb.p_value)});

        const std::string tag = fmt(tenor);
        csv::Writer spec_out(out / ("spectrum_" + tag + ".csv"));
        spec_out.write_row({"frequency_per_sample", "magnitude"});
        for (std::size_t i = 0; i < spectrum.frequencies.size(); ++i)
            spec_out.write_row({fmt(spectrum.frequencies[i]), fmt(spectrum.magnitudes[i])});
        spec_out.close();

        const auto rho = spectral::acf(series, lags);
        const double band = 1.96 / std::sqrt(static_cast<double>(series.size()));
        csv::Writer acf_out(out / ("acf_" + tag + ".csv"));
        acf_out.write_row({"lag", "acf", "confidence_band"});
        for (std::size_t k = 0; k < rho.size(); ++k)
            acf_out.write_row({std::to_string(k), fmt(rho[k]), fmt(band)});
        acf_out.close();
    }
    periods.close();
    lb_out.close();

    write_json(out / "manifest.json", make_manifest(cmd, input, 0));
    return 0;
}

// ------------------------------------------------------------------ calibrate

json params_to_json(const calib::CalibrationResult& r) {
    json p;
    if (r.kind == mc::ModelKind::Hw) {
        const auto& q = std::get<hw::Params>(r.params);
        p["kappa"] = q.kappa;
        p["theta"] = q.theta;
        p["sigma"] = q.sigma;
    } else {
        const auto& q = std::get<sinhw::Params>(r.params);
        p["kappa0"] = q.kappa0;
        p["amp"] = q.amp;
        p["omega"] = q.omega;
        p["theta"] = q.theta;
        p["sigma"] = q.sigma;
    }
    return p;
}

int run_calibrate(const CLI::App* cmd, const std::string& input, const std::string& out_dir,
                  const CsvLayout& layout, const std::string& model,
                  const std::string& x0_spec, double period_years, bool free_omega,
                  std::uint64_t seed, double dt, int n_paths, std::optional<double> flag_r0,
                  double xatol, int max_iter) {
    const CurveContext ctx = load_curve_context(input, layout);
    if (!ctx.curve) throw std::invalid_argument("calibrate needs --input");
    const YieldCurve& curve = *ctx.curve;

    calib::CalibrateOptions opts;
    opts.nm.xatol = xatol;
    opts.nm.max_iter = max_iter;
    opts.sim.dt = dt;
    opts.sim.n_paths = n_paths;
    opts.sim.seed = seed;
    if (flag_r0) opts.sim.r0 = *flag_r0;

    std::map<std::string, double> x0_kv;
    if (!x0_spec.empty()) x0_kv = parse_kv_list(x0_spec);
    auto x0_or = [&](const char* key, double fallback) {
        auto it = x0_kv.find(key);
        return it == x0_kv.end() ? fallback : it->second;
    };

    calib::CalibrationResult result;
    if (model == "hw") {
        const hw::Params x0{x0_or("kappa", 0.1), x0_or("theta", 0.03), x0_or("sigma", 0.01)};
        result = calib::calibrate_hw(curve, x0, opts);
    } else {
        const double omega_default = sinhw::omega_from_period_years(period_years);
        const sinhw::Params x0{x0_or("kappa0", 0.3), x0_or("amp", 0.2),
                               x0_or("omega", omega_default), x0_or("theta", 0.03),
                               x0_or("sigma", 0.01)};
        const std::optional<double> fix =
            free_omega ? std::nullopt : std::optional<double>(omega_default);
        result = calib::calibrate_sin_hw(curve, x0, fix, opts);
    }

    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    const json manifest = make_manifest(cmd, input, seed);

    json doc;
    doc["model"] = model;
    doc["params"] = params_to_json(result);
    doc["objective"] = result.objective;
    doc["rmse_yield"] = result.rmse;
    doc["rmse_yield_pct"] = result.rmse * 100.0;
    doc["iterations"] = result.iterations;
    doc["converged"] = result.converged;
    doc["curve_date"] = curve.as_of().to_string();
    doc["r0"] = std::isnan(opts.sim.r0) ? curve[0].yield : opts.sim.r0;
    if (model == "sin-hw") {
        doc["omega_mode"] = result.fixed_omega ? "fixed" : "free";
        if (!result.fixed_omega)
            doc["omega_note"] =
                "omega was searched freely; with a single curve the cycle frequency is weakly "
                "identified and the fitted value need not equal the spectral estimate";
        doc["sim"] = {{"dt", dt}, {"n_paths", n_paths}, {"seed", seed}};
    }
    json fit = json::array();
    for (const auto& f : result.per_tenor)
        fit.push_back({{"tenor_years", f.tenor_years},
                       {"observed_yield", f.observed_yield},
                       {"fitted_yield", f.fitted_yield},
                       {"yield_error", f.yield_error},
                       {"observed_price", f.observed_price},
                       {"model_price", f.model_price}});
    doc["fit"] = fit;
    doc["manifest"] = manifest;
    write_json(out / "calibration.json", doc);

    csv::Writer table(out / "fit_table.csv");
    table.write_row({"tenor_years", "observed_pct", "fitted_pct", "error_pct"});
    for (const auto& f : result.per_tenor)
        table.write_row({fmt(f.tenor_years), fmt(f.observed_yield * 100.0),
                         fmt(f.fitted_yield * 100.0), fmt(f.yield_error * 100.0)});
    table.close();

    write_json(out / "manifest.json", manifest);
    return 0;
}

// ---------------------------------------------------------------------- price

int run_price(const CLI::App* cmd, const std::string& input, const std::string& out_dir,
              const CsvLayout& layout, const std::string& hw_spec, const std::string& sin_spec,
              const std::string& maturities_spec, const std::string& method, std::uint64_t seed,
              double dt, int n_paths, std::optional<double> flag_r0) {
    if (hw_spec.empty() && sin_spec.empty())
        throw std::invalid_argument("price needs model parameters: --hw-params and/or --sin-hw-params");
    if (method == "analytic" && !sin_spec.empty())
        throw std::invalid_argument(
            "the sinusoidal-reversion model has no closed-form bond price; use --method mc "
            "(or all) for --sin-hw-params");

    const CurveContext ctx = load_curve_context(input, layout);
    std::vector<double> maturities;
    if (!maturities_spec.empty())
        maturities = parse_double_list(maturities_spec);
    else if (ctx.curve)
        maturities = ctx.curve->tenor_years();
    else
        throw std::invalid_argument("price needs --maturities or --input to choose maturities");
    for (double m : maturities)
        if (!(m > 0.0) || !std::isfinite(m))
            throw std::invalid_argument("maturities must be positive");

    std::optional<hw::Params> hw_params;
    if (!hw_spec.empty()) hw_params = hw_params_from_spec(hw_spec);
    std::optional<sinhw::Params> sin_params;
    if (!sin_spec.empty()) sin_params = sinhw_params_from_spec(sin_spec);

    mc::SimConfig cfg;
    cfg.dt = dt;
    cfg.n_paths = n_paths;
    cfg.seed = seed;
    cfg.r0 = resolve_r0(flag_r0, ctx, "pricing");
    cfg.validate();

    const bool want_analytic = hw_params && method != "mc";
    const bool want_mc_hw = hw_params && method != "analytic";
    const bool want_mc_sin = sin_params && method != "analytic";

    auto observed_at = [&](double m) -> std::optional<double> {
        if (!ctx.curve) return std::nullopt;
        for (const auto& pt : ctx.curve->points())
            if (std::abs(pt.tenor.years - m) < 1e-9) return std::exp(-pt.tenor.years * pt.yield);
        return std::nullopt;
    };

    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    mc::PriceCache cache;

    csv::Writer prices(out / "prices.csv");
    prices.write_row({"maturity_years", "observed", "analytical_hw", "mc_hw", "mc_sin_hw",
                      "error_mc_hw", "error_fit_hw", "error_fit_sin_hw"});
    for (double m : maturities) {
        const auto obs = observed_at(m);
        std::optional<double> analytic, mch, mcs;
        if (want_analytic) analytic = hw::bond_price(*hw_params, cfg.r0, m).price;
        if (want_mc_hw) mch = mc::mc_bond_price(*hw_params, cfg, m, &cache).price;
        if (want_mc_sin) mcs = mc::mc_bond_price(*sin_params, cfg, m, &cache).price;

        auto cell = [&](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
        std::optional<double> err_mc, err_fit_hw, err_fit_sin;
        if (analytic && mch) err_mc = *analytic - *mch;
        if (obs && analytic) err_fit_hw = *obs - *analytic;
        if (obs && mcs) err_fit_sin = *obs - *mcs;
        prices.write_row({fmt(m), cell(obs), cell(analytic), cell(mch), cell(mcs), cell(err_mc),
                          cell(err_fit_hw), cell(err_fit_sin)});
    }
    prices.close();

    write_json(out / "manifest.json", make_manifest(cmd, input, seed));
    return 0;
}

// ------------------------------------------------------------------- simulate

int run_simulate(const CLI::App* cmd, const std::string& input, const std::string& out_dir,
                 const CsvLayout& layout, const std::string& model, const std::string& hw_spec,
                 const std::string& sin_spec, double horizon, std::uint64_t seed, double dt,
                 int n_paths, std::optional<double> flag_r0) {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("--horizon must be a positive number of years");

    const CurveContext ctx = load_curve_context(input, layout);
    mc::SimConfig cfg;
    cfg.dt = dt;
    cfg.n_paths = n_paths;
    cfg.seed = seed;
    cfg.r0 = resolve_r0(flag_r0, ctx, "simulation");
    cfg.validate();

    mc::Drift drift;
    if (model == "hw") {
        if (hw_spec.empty())
            throw std::invalid_argument("simulate --model hw needs --hw-params");
        drift = mc::drift_of(hw_params_from_spec(hw_spec));
    } else {
        if (sin_spec.empty())
            throw std::invalid_argument("simulate --model sin-hw needs --sin-hw-params");
        drift = mc::drift_of(sinhw_params_from_spec(sin_spec));
    }

    const mc::PathMatrix paths = mc::simulate_paths(drift, cfg, horizon);

    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    const std::size_t n_times = paths.n_times();

    csv::Writer w(out / ("paths_" + model + ".csv"));
    std::vector<std::string> row;
    row.reserve(n_times + 1);
    row.push_back("time");
    for (double t : paths.times) row.push_back(fmt(t));
    w.write_row(row);

    long negative_points = 0;
    for (int i = 0; i < paths.n_paths; ++i) {
        row.clear();
        row.push_back("path_" + std::to_string(i));
        const double* r = paths.row(i);
        for (std::size_t j = 0; j < n_times; ++j) {
            row.push_back(fmt(r[j]));
            if (r[j] < 0.0) ++negative_points;
        }
        w.write_row(row);
    }

    row.clear();
    row.push_back("mean");
    for (std::size_t j = 0; j < n_times; ++j) {
        double s = 0.0;
        for (int i = 0; i < paths.n_paths; ++i) s += paths.at(i, j);
        row.push_back(fmt(s / static_cast<double>(paths.n_paths)));
    }
    w.write_row(row);

    row.assign(n_times + 1, std::string());
    row[0] = "negative_rate_points";
    row[1] = std::to_string(negative_points);
    w.write_row(row);
    w.close();

    write_json(out / "manifest.json", make_manifest(cmd, input, seed));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"short-rate cycle toolkit: spectral diagnostics, calibration, pricing, simulation"};
    app.require_subcommand(1);

    std::string input, out_dir, date_col = "DATE", tenor_cols;
    std::string model = "hw", x0_spec, hw_spec, sin_spec, maturities_spec, method = "all";
    std::uint64_t seed = 42;
    double dt = 0.05, period_years = 22.0, xatol = 1e-3, horizon = 0.0, r0_val = 0.0;
    int n_paths = 200, k_peaks = 3, lags = 30, max_iter = 0;
    bool free_omega = false;

    auto add_input = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--input", input, "FRED-style CSV of daily yields");
        if (required) opt->required();
        sub->add_option("--date-col", date_col, "date column name (default DATE)");
        sub->add_option("--tenor-cols", tenor_cols,
                        "tenor column map, e.g. '1=DGS1,2=DGS2' (default FRED DGS set)");
    };
    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", out_dir, "output directory")->required();
    };
    auto add_sim = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "Monte Carlo seed (default 42)");
        sub->add_option("--dt", dt, "time step in years (default 0.05)");
        sub->add_option("--paths", n_paths, "number of Monte Carlo paths");
        sub->add_option("--r0", r0_val,
                        "initial short rate, decimal (default: shortest-tenor yield of --input)");
    };

    auto* periodicity = app.add_subcommand(
        "periodicity", "spectral and autocorrelation diagnostics per tenor");
    add_input(periodicity, true);
    add_out(periodicity);
    periodicity->add_option("--k", k_peaks, "dominant peaks to report (default 3)");
    periodicity->add_option("--lags", lags, "autocorrelation lags (default 30)");

    auto* calibrate = app.add_subcommand("calibrate", "fit model parameters to the latest curve");
    add_input(calibrate, true);
    add_out(calibrate);
    calibrate->add_option("--model", model, "hw or sin-hw")
        ->check(CLI::IsMember({"hw", "sin-hw"}));
    calibrate->add_option("--x0", x0_spec, "starting point overrides, e.g. 'kappa=0.1,theta=0.03'");
    calibrate->add_option("--period-years", period_years,
                          "cycle period fixing omega = 2*pi/period (default 22)");
    calibrate->add_flag("--free-omega", free_omega, "search omega instead of fixing it");
    calibrate->add_option("--xatol", xatol, "simplex coordinate tolerance (default 1e-3)");
    calibrate->add_option("--max-iter", max_iter, "iteration cap (default 200 per dimension)");
    add_sim(calibrate);

    auto* price = app.add_subcommand("price", "zero-coupon bond prices for given parameters");
    add_input(price, false);
    add_out(price);
    price->add_option("--hw-params", hw_spec,
                      "constant-model parameters: 'kappa=..,theta=..,sigma=..' or calibration.json");
    price->add_option("--sin-hw-params", sin_spec,
                      "sinusoidal-model parameters: 'kappa0=..,amp=..,omega=..,theta=..,sigma=..' "
                      "or calibration.json");
    price->add_option("--maturities", maturities_spec,
                      "comma-separated maturities in years (default: curve tenors)");
    price->add_option("--method", method, "analytic, mc, or all (default all)")
        ->check(CLI::IsMember({"analytic", "mc", "all"}));
    add_sim(price);

    auto* simulate = app.add_subcommand("simulate", "write short-rate sample paths");
    add_input(simulate, false);
    add_out(simulate);
    simulate->add_option("--model", model, "hw or sin-hw")
        ->check(CLI::IsMember({"hw", "sin-hw"}));
    simulate->add_option("--hw-params", hw_spec, "constant-model parameters (inline or file)");
    simulate->add_option("--sin-hw-params", sin_spec,
                         "sinusoidal-model parameters (inline or file)");
    simulate->add_option("--horizon", horizon, "simulation horizon in years")->required();
    add_sim(simulate);

    CLI11_PARSE(app, argc, argv);

    try {
        const CsvLayout layout = parse_layout(date_col, tenor_cols);
        const CLI::App* active = periodicity->parsed()   ? periodicity
                                 : calibrate->parsed()   ? calibrate
                                 : price->parsed()       ? price
                                                         : simulate;
        std::optional<double> flag_r0;
        if (!periodicity->parsed() && active->count("--r0")) flag_r0 = r0_val;
        if (simulate->parsed() && simulate->count("--paths") == 0) n_paths = 100;
        if (periodicity->parsed())
            return run_periodicity(periodicity, input, out_dir, layout, k_peaks, lags);
        if (calibrate->parsed())
            return run_calibrate(calibrate, input, out_dir, layout, model, x0_spec, period_years,
                                 free_omega, seed, dt, n_paths, flag_r0, xatol, max_iter);
        if (price->parsed())
            return run_price(price, input, out_dir, layout, hw_spec, sin_spec, maturities_spec,
                             method, seed, dt, n_paths, flag_r0);
        if (simulate->parsed())
            return run_simulate(simulate, input, out_dir, layout, model, hw_spec, sin_spec,
                                horizon, seed, dt, n_paths, flag_r0);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
