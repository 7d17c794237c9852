// pegstab: stablecoin peg-stability toolkit CLI.
//
// Subcommands mirror the pipeline: stats/peg/adf/regress compute the
// descriptive and econometric tables from ingested market data; calibrate
// derives the simulation parameters; simulate runs the paired
// current-vs-hybrid Monte Carlo; sweep runs the sensitivity grids; report
// renders tables and SVG figures from whatever artifacts exist.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "pegstab/analysis.hpp"
#include "pegstab/config.hpp"
#include "pegstab/errors.hpp"
#include "pegstab/ingest.hpp"
#include "pegstab/manifest.hpp"
#include "pegstab/metrics.hpp"
#include "pegstab/report.hpp"
#include "pegstab/svg.hpp"

namespace fs = std::filesystem;
using namespace pegstab;

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string output_dir;  // overrides config when set
    std::optional<std::uint64_t> seed;
    int workers = 1;
    std::vector<std::string> coins;  // subset filter; empty = all configured
};

struct LoadedData {
    RunConfig config;
    std::string config_text;
    std::vector<CoinSeries> coins;
    std::vector<MacroSeries> macros;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

RunConfig apply_overrides(RunConfig cfg, const GlobalOptions& opt) {
    if (!opt.output_dir.empty()) cfg.output_dir = opt.output_dir;
    if (opt.seed) cfg.simulation.seed = *opt.seed;
    return cfg;
}

bool coin_selected(const GlobalOptions& opt, const std::string& coin) {
    if (opt.coins.empty()) return true;
    return std::find(opt.coins.begin(), opt.coins.end(), coin) != opt.coins.end();
}

LoadedData load_data(const GlobalOptions& opt, bool need_macros) {
    if (opt.config_path.empty())
        throw InputError("no config file given (use --config or PEGSTAB_CONFIG)");
    LoadedData data;
    data.config_text = slurp(opt.config_path);
    data.config = apply_overrides(parse_config(data.config_text, opt.config_path), opt);

    for (const auto& [coin, path] : data.config.coin_paths) {
        if (!coin_selected(opt, coin)) continue;
        data.coins.push_back(load_coin_csv(path, coin, data.config.header_aliases));
    }
    if (data.coins.empty()) throw InputError("no coin series selected");

    if (need_macros)
        for (const auto& [series, src] : data.config.macro_sources) {
            data.macros.push_back(load_macro_csv(src.path, series, src.frequency));
            for (const auto& warning : data.macros.back().warnings)
                std::cerr << "warning: " << series << ": " << warning << "\n";
        }
    return data;
}

fs::path ensure_output_dir(const RunConfig& cfg) {
    fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
}

void finish_manifest(RunManifest& manifest, const fs::path& dir, const std::string& name) {
    manifest.finished_at = utc_timestamp_now();
    write_file(dir / name, manifest.to_json());
}

// The Table-4 model: deviation on volume, market cap, and one-day lags of
// all three. Macro regressors are opt-in and excluded from the default.
OlsResult table4_regression(const AlignedPanel& panel, const std::string& coin,
                            bool include_macros, const std::vector<MacroSeries>& macros,
                            DesignMatrix* design_out = nullptr) {
    const LaggedSpec response{coin + "_peg_dev", 0};
    std::vector<LaggedSpec> regressors{{coin + "_total_volume", 0}, {coin + "_market_cap", 0},
                                       {coin + "_peg_dev", 1},      {coin + "_total_volume", 1},
                                       {coin + "_market_cap", 1}};
    if (include_macros)
        for (const auto& m : macros) regressors.push_back({m.series_id, 0});
    DesignMatrix design = build_lagged_design(panel, response, regressors, true);
    if (design_out) *design_out = design;
    return ols_fit(design);
}

AlignedPanel build_panel(const LoadedData& data) {
    const Date start = data.config.resolve_start(data.coins);
    const Date end = data.config.resolve_end(data.coins);
    AlignedPanel panel = align_panel(data.coins, data.macros, start, end);
    for (const auto& coin : data.coins) {
        const Eigen::VectorXd& price = panel.column(coin.coin_id + "_price");
        Eigen::VectorXd dev(price.size());
        for (Eigen::Index i = 0; i < price.size(); ++i)
            dev[i] = std::isnan(price[i]) ? price[i] : peg_deviation(price[i]);
        panel.add_column(coin.coin_id + "_peg_dev", std::move(dev));
    }
    return panel;
}

int cmd_stats(const GlobalOptions& opt) {
    LoadedData data = load_data(opt, false);
    const fs::path dir = ensure_output_dir(data.config);
    std::vector<report::CoinDescriptives> rows;
    for (const auto& coin : data.coins)
        rows.push_back({coin.coin_id, descriptive_stats(coin.prices()),
                        descriptive_stats(coin.market_caps()), descriptive_stats(coin.volumes())});
    const report::TextTable table = report::descriptive_table(rows);
    std::cout << table.render();
    write_file(dir / "table_descriptive.csv", table.to_csv());
    write_file(dir / "table_descriptive.txt", table.render());
    return 0;
}

int cmd_peg(const GlobalOptions& opt) {
    LoadedData data = load_data(opt, false);
    const fs::path dir = ensure_output_dir(data.config);
    std::vector<report::CoinPegRow> rows;
    std::vector<report::CoinVolatilityRow> vol_rows;
    for (const auto& coin : data.coins) {
        rows.push_back({coin.coin_id, peg_stats(coin, data.config.metrics.off_peg_tolerance,
                                                data.config.metrics.exact_peg_tolerance)});
        report::CoinVolatilityRow vr{coin.coin_id, {}};
        for (int window : data.config.metrics.volatility_windows)
            vr.mean_sigma_by_window.emplace_back(window,
                                                 rolling_volatility(coin, window).mean_sigma());
        vol_rows.push_back(std::move(vr));
    }
    const report::TextTable peg = report::peg_table(rows);
    const report::TextTable vol = report::volatility_table(vol_rows);
    std::cout << peg.render() << "\n" << vol.render();
    write_file(dir / "table_peg.csv", peg.to_csv());
    write_file(dir / "table_peg.txt", peg.render());
    write_file(dir / "table_volatility.csv", vol.to_csv());
    write_file(dir / "table_volatility.txt", vol.render());
    return 0;
}

int cmd_adf(const GlobalOptions& opt, int lags, const std::string& spec_name) {
    AdfSpec spec = AdfSpec::Constant;
    if (spec_name == "none") spec = AdfSpec::None;
    else if (spec_name == "constant") spec = AdfSpec::Constant;
    else if (spec_name == "trend") spec = AdfSpec::ConstantTrend;
    else throw InputError("adf: unknown spec '" + spec_name + "'");

    LoadedData data = load_data(opt, false);
    const fs::path dir = ensure_output_dir(data.config);
    std::vector<std::pair<std::string, AdfResult>> results;
    for (const auto& coin : data.coins)
        results.emplace_back(coin.coin_id, adf_test(coin.prices(), lags, spec));
    const report::TextTable table = report::adf_table(results);
    std::cout << table.render();
    write_file(dir / "table_adf.csv", table.to_csv());
    write_file(dir / "table_adf.txt", table.render());
    return 0;
}

int cmd_regress(const GlobalOptions& opt) {
    LoadedData data = load_data(opt, true);
    const fs::path dir = ensure_output_dir(data.config);
    const AlignedPanel panel = build_panel(data);
    std::vector<std::pair<std::string, OlsResult>> fits;
    for (const auto& coin : data.coins)
        fits.emplace_back(coin.coin_id,
                          table4_regression(panel, coin.coin_id,
                                            data.config.regression_include_macros, data.macros));
    const report::TextTable table = report::regression_table(fits);
    std::cout << table.render();
    write_file(dir / "table_regression.csv", table.to_csv());
    write_file(dir / "table_regression.txt", table.render());
    return 0;
}

int cmd_calibrate(const GlobalOptions& opt) {
    LoadedData data = load_data(opt, true);
    const fs::path dir = ensure_output_dir(data.config);
    if (data.config.failed_list_path.empty() || data.config.totals_path.empty())
        throw InputError("calibrate: config must name data.bank_failures.failed_list and .totals");
    const BankFailureTable failures =
        load_failures(data.config.failed_list_path, data.config.totals_path);
    const AlignedPanel panel = build_panel(data);

    RunManifest manifest;
    manifest.command = "calibrate";
    manifest.started_at = utc_timestamp_now();
    manifest.config_digest = digest_hex(data.config_text);
    manifest.seed = data.config.simulation.seed;

    std::map<std::string, ShockCalibration> calibrations;
    for (const auto& coin : data.coins) {
        const OlsResult fit = table4_regression(panel, coin.coin_id,
                                                data.config.regression_include_macros, data.macros);
        const bool svb_route = coin.coin_id == data.config.svb_coin;
        calibrations[coin.coin_id] = calibrate_coin(
            coin, fit, coin.coin_id + "_peg_dev (lag1)", coin.coin_id + "_total_volume",
            failures, svb_route, data.config.calibration);
    }

    const std::string cal_json = calibrations_to_json(calibrations);
    write_file(dir / "calibration.json", cal_json);
    manifest.calibration_digest = digest_hex(cal_json);
    manifest.outputs.push_back((dir / "calibration.json").string());
    finish_manifest(manifest, dir, "manifest_calibrate.json");

    for (const auto& [coin, cal] : calibrations)
        std::cout << coin << ": alpha=" << cal.alpha << " beta_sim=" << cal.beta_sim
                  << " gamma=" << cal.gamma << " p_base=" << cal.p_base
                  << " sigma_eps=" << cal.sigma_eps << "\n";
    return 0;
}

SimConfig sim_config_with_overrides(const RunConfig& cfg, std::optional<int> trials,
                                    std::optional<int> days, std::optional<double> multiplier,
                                    const std::vector<double>& fractions) {
    SimConfig sim = cfg.simulation;
    if (trials) sim.trials = *trials;
    if (days) sim.days = *days;
    if (multiplier) sim.extreme_multiplier = *multiplier;
    if (!fractions.empty()) {
        if (fractions.size() != 3)
            throw InputError("--fractions expects three values: f_beta f_gamma f_delta");
        sim.fractions = {fractions[0], fractions[1], fractions[2]};
    }
    return sim;
}

std::map<std::string, ShockCalibration> load_selected_calibrations(const GlobalOptions& opt,
                                                                   const RunConfig& cfg,
                                                                   std::string cal_path) {
    if (cal_path.empty()) cal_path = (fs::path(cfg.output_dir) / "calibration.json").string();
    auto all = load_calibrations(cal_path);
    std::map<std::string, ShockCalibration> selected;
    for (auto& [coin, cal] : all)
        if (coin_selected(opt, coin)) selected[coin] = std::move(cal);
    if (selected.empty()) throw InputError(cal_path + ": no selected coins in calibration file");
    return selected;
}

int cmd_simulate(const GlobalOptions& opt, const std::string& cal_path, std::optional<int> trials,
                 std::optional<int> days, std::optional<double> multiplier,
                 const std::vector<double>& fractions) {
    if (opt.config_path.empty())
        throw InputError("no config file given (use --config or PEGSTAB_CONFIG)");
    const std::string config_text = slurp(opt.config_path);
    const RunConfig cfg = apply_overrides(parse_config(config_text, opt.config_path), opt);
    const fs::path dir = ensure_output_dir(cfg);
    const SimConfig sim = sim_config_with_overrides(cfg, trials, days, multiplier, fractions);

    const auto calibrations = load_selected_calibrations(opt, cfg, cal_path);
    const std::string cal_digest = digest_hex(calibrations_to_json(calibrations));

    RunManifest manifest;
    manifest.command = "simulate";
    manifest.started_at = utc_timestamp_now();
    manifest.config_digest = digest_hex(config_text);
    manifest.calibration_digest = cal_digest;
    manifest.seed = sim.seed;
    manifest.notes.emplace_back("mean_reversion_term", "alpha*(1-P_t)");
    manifest.notes.emplace_back("shock_signs", "gamma<0 as calibrated; delta applied depressing");

    std::vector<PairedSummary> summaries;
    for (const auto& [coin, cal] : calibrations) {
        const std::vector<TrialPair> pairs = run_simulation(cal, sim, opt.workers);
        std::ostringstream csv_text;
        report::write_outcomes_csv(csv_text, pairs);
        const fs::path out_csv = dir / ("outcomes_" + coin + ".csv");
        write_file(out_csv, csv_text.str());
        manifest.outputs.push_back(out_csv.string());
        PairedSummary summary = summarize(pairs, cfg.improvement_epsilon);
        summary.coin_id = coin;
        summaries.push_back(std::move(summary));
    }
    write_file(dir / "simulation_summary.json", report::summary_to_json(summaries));
    manifest.outputs.push_back((dir / "simulation_summary.json").string());
    finish_manifest(manifest, dir, "manifest_simulate.json");

    std::cout << report::improvement_table(summaries).render();
    return 0;
}

int cmd_sweep(const GlobalOptions& opt, const std::string& cal_path, const std::string& parameter,
              std::optional<int> trials) {
    if (opt.config_path.empty())
        throw InputError("no config file given (use --config or PEGSTAB_CONFIG)");
    const std::string config_text = slurp(opt.config_path);
    const RunConfig cfg = apply_overrides(parse_config(config_text, opt.config_path), opt);
    const fs::path dir = ensure_output_dir(cfg);
    SimConfig sim = cfg.simulation;
    if (trials) sim.trials = *trials;

    // Per-sweep fixed fractions follow the sensitivity-analysis appendix:
    // the two held-fixed values are stated per sweep, not taken from the
    // baseline triple.
    HybridFractions fixed;
    if (parameter == "f_gamma") fixed = {0.5, 0.0, 0.2};
    else if (parameter == "f_beta") fixed = {0.0, 0.1, 0.2};
    else if (parameter == "f_delta") fixed = {0.5, 0.2, 0.0};
    else throw InputError("sweep: --param must be f_beta, f_gamma, or f_delta");

    const auto calibrations = load_selected_calibrations(opt, cfg, cal_path);

    RunManifest manifest;
    manifest.command = "sweep";
    manifest.started_at = utc_timestamp_now();
    manifest.config_digest = digest_hex(config_text);
    manifest.calibration_digest = digest_hex(calibrations_to_json(calibrations));
    manifest.seed = sim.seed;

    std::vector<std::pair<std::string, std::vector<SweepResult>>> per_coin;
    for (const auto& [coin, cal] : calibrations) {
        std::vector<SweepResult> results =
            sweep(cal, sim, parameter, default_sweep_grid(), fixed, cfg.sweep_m_values,
                  cfg.improvement_epsilon, opt.workers);
        std::ostringstream csv_text;
        report::write_sweep_csv(csv_text, results);
        const fs::path out_csv = dir / ("sweep_" + parameter + "_" + coin + ".csv");
        write_file(out_csv, csv_text.str());
        manifest.outputs.push_back(out_csv.string());
        per_coin.emplace_back(coin, std::move(results));
    }
    write_file(dir / ("sweep_" + parameter + ".json"), report::sweeps_to_json(per_coin));
    manifest.outputs.push_back((dir / ("sweep_" + parameter + ".json")).string());
    finish_manifest(manifest, dir, "manifest_sweep.json");
    std::cout << "sweep " << parameter << ": " << per_coin.size() << " coin(s), "
              << cfg.sweep_m_values.size() * default_sweep_grid().size()
              << " runs each\n";
    return 0;
}

int cmd_report(const GlobalOptions& opt) {
    LoadedData data = load_data(opt, true);
    const fs::path dir = ensure_output_dir(data.config);
    const AlignedPanel panel = build_panel(data);

    // Tables 2/3 analogs.
    std::vector<report::CoinPegRow> peg_rows;
    std::vector<report::CoinVolatilityRow> vol_rows;
    std::vector<svg::LineSeries> dev_series;
    const std::vector<std::string> palette{"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e"};
    for (size_t i = 0; i < data.coins.size(); ++i) {
        const CoinSeries& coin = data.coins[i];
        peg_rows.push_back({coin.coin_id, peg_stats(coin, data.config.metrics.off_peg_tolerance,
                                                    data.config.metrics.exact_peg_tolerance)});
        report::CoinVolatilityRow vr{coin.coin_id, {}};
        for (int window : data.config.metrics.volatility_windows)
            vr.mean_sigma_by_window.emplace_back(window,
                                                 rolling_volatility(coin, window).mean_sigma());
        vol_rows.push_back(std::move(vr));

        svg::LineSeries line;
        line.label = coin.coin_id;
        line.color = palette[i % palette.size()];
        for (const RawRow& row : coin.rows)
            line.points.emplace_back(static_cast<double>(row.date - panel.start()),
                                     peg_deviation(row.price));
        dev_series.push_back(std::move(line));
    }
    const report::TextTable peg = report::peg_table(peg_rows);
    const report::TextTable vol = report::volatility_table(vol_rows);
    write_file(dir / "table_peg.csv", peg.to_csv());
    write_file(dir / "table_peg.txt", peg.render());
    write_file(dir / "table_volatility.csv", vol.to_csv());
    write_file(dir / "table_volatility.txt", vol.render());
    std::cout << peg.render() << "\n" << vol.render() << "\n";

    // Table 4 analog.
    std::vector<std::pair<std::string, OlsResult>> fits;
    for (const auto& coin : data.coins)
        fits.emplace_back(coin.coin_id,
                          table4_regression(panel, coin.coin_id,
                                            data.config.regression_include_macros, data.macros));
    const report::TextTable reg = report::regression_table(fits);
    write_file(dir / "table_regression.csv", reg.to_csv());
    write_file(dir / "table_regression.txt", reg.render());
    std::cout << reg.render() << "\n";

    // Deviation time-series figure.
    write_file(dir / "fig_deviation.svg",
               svg::line_chart("Peg deviation over time", "deviation (fraction)", dev_series,
                               panel.start()));

    // Table 6 analog + improvement boxplot when simulation outcomes exist.
    std::vector<PairedSummary> summaries;
    std::vector<svg::BoxStats> boxes;
    for (const auto& coin : data.coins) {
        const fs::path outcomes = dir / ("outcomes_" + coin.coin_id + ".csv");
        if (!fs::exists(outcomes)) continue;
        std::ifstream in(outcomes);
        const std::vector<TrialPair> pairs = report::read_outcomes_csv(in, outcomes.string());
        PairedSummary summary = summarize(pairs, data.config.improvement_epsilon);
        summary.coin_id = coin.coin_id;
        summaries.push_back(summary);
        std::vector<double> pct;
        for (const TrialPair& pair : pairs) {
            const Improvement imp =
                percent_improvement(pair.current, pair.hybrid, data.config.improvement_epsilon);
            if (imp.peak_included) pct.push_back(imp.pct_peak);
        }
        if (!pct.empty()) boxes.push_back(svg::box_stats(coin.coin_id, std::move(pct)));
    }
    if (!summaries.empty()) {
        const report::TextTable imp = report::improvement_table(summaries);
        write_file(dir / "table_improvement.csv", imp.to_csv());
        write_file(dir / "table_improvement.txt", imp.render());
        std::cout << imp.render();
    } else {
        std::cerr << "warning: no simulation outcomes in " << dir
                  << "; run `pegstab simulate` for the improvement table and boxplot\n";
    }
    if (!boxes.empty())
        write_file(dir / "fig_improvement_box.svg",
                   svg::box_plot("Peak deviation reduction under hybrid design",
                                 "improvement (%)", boxes));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pegstab: stablecoin peg-stability toolkit"};
    app.require_subcommand(1);

    GlobalOptions opt;
    app.add_option("--config", opt.config_path, "Run configuration JSON")
        ->envname("PEGSTAB_CONFIG");
    app.add_option("--out", opt.output_dir, "Output directory (overrides config)");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "RNG seed (overrides config)");
    app.add_option("--workers", opt.workers, "Worker threads for simulation")
        ->check(CLI::PositiveNumber);
    app.add_option("--coins", opt.coins, "Restrict to these coin ids");

    auto* stats = app.add_subcommand("stats", "Descriptive statistics table");
    auto* peg = app.add_subcommand("peg", "Peg deviation and rolling-volatility tables");

    auto* adf = app.add_subcommand("adf", "Augmented Dickey-Fuller unit-root tests");
    int adf_lags = 1;
    std::string adf_spec = "constant";
    adf->add_option("--lags", adf_lags, "Lagged-difference order k");
    adf->add_option("--spec", adf_spec, "Deterministic terms: none|constant|trend");

    auto* regress = app.add_subcommand("regress", "Peg-deviation driver regressions");
    auto* calibrate = app.add_subcommand("calibrate", "Derive simulation parameters from data");

    auto* simulate = app.add_subcommand("simulate", "Paired current-vs-hybrid Monte Carlo");
    std::string cal_path;
    std::optional<int> trials, days;
    std::optional<double> multiplier;
    std::vector<double> fractions;
    simulate->add_option("--calibration", cal_path, "Calibration JSON (default <out>/calibration.json)");
    simulate->add_option("--trials", trials, "Trial count N");
    simulate->add_option("--days", days, "Horizon T in days");
    simulate->add_option("--multiplier", multiplier, "Extreme-day multiplier M");
    simulate->add_option("--fractions", fractions, "f_beta f_gamma f_delta")->expected(3);

    auto* sweep_cmd = app.add_subcommand("sweep", "One-dimensional sensitivity sweeps");
    std::string sweep_param = "f_gamma";
    std::string sweep_cal_path;
    std::optional<int> sweep_trials;
    sweep_cmd->add_option("--param", sweep_param, "f_beta|f_gamma|f_delta")->required();
    sweep_cmd->add_option("--calibration", sweep_cal_path,
                          "Calibration JSON (default <out>/calibration.json)");
    sweep_cmd->add_option("--trials", sweep_trials, "Trial count per grid point");

    auto* report_cmd = app.add_subcommand("report", "Render tables and SVG figures");

    try {
        app.parse(argc, argv);
        if (seed_opt->count() > 0) opt.seed = seed_value;
        if (stats->parsed()) return cmd_stats(opt);
        if (peg->parsed()) return cmd_peg(opt);
        if (adf->parsed()) return cmd_adf(opt, adf_lags, adf_spec);
        if (regress->parsed()) return cmd_regress(opt);
        if (calibrate->parsed()) return cmd_calibrate(opt);
        if (simulate->parsed())
            return cmd_simulate(opt, cal_path, trials, days, multiplier, fractions);
        if (sweep_cmd->parsed()) return cmd_sweep(opt, sweep_cal_path, sweep_param, sweep_trials);
        if (report_cmd->parsed()) return cmd_report(opt);
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const InputError& e) {
        std::cerr << "error: input: " << e.what() << "\n";
        return 2;
    } catch (const ComputeError& e) {
        std::cerr << "error: compute: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
}
