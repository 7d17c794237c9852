#include "pegstab/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "pegstab/errors.hpp"

namespace pegstab {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(origin + ": invalid JSON: " + e.what());
    }
}

std::vector<std::string> string_list(const json& j) {
    std::vector<std::string> out;
    for (const auto& item : j) out.push_back(item.get<std::string>());
    return out;
}

Frequency frequency_from(const std::string& name, const std::string& origin) {
    if (name == "daily") return Frequency::Daily;
    if (name == "monthly") return Frequency::Monthly;
    throw InputError(origin + ": frequency must be 'daily' or 'monthly', got '" + name + "'");
}

}  // namespace

Date RunConfig::resolve_start(const std::vector<CoinSeries>& coins) const {
    if (window_start) return *window_start;
    Date earliest = coins.front().rows.front().date;
    for (const auto& c : coins) earliest = std::min(earliest, c.rows.front().date);
    return earliest;
}

Date RunConfig::resolve_end(const std::vector<CoinSeries>& coins) const {
    if (window_end) return *window_end;
    Date latest = coins.front().rows.back().date;
    for (const auto& c : coins) latest = std::max(latest, c.rows.back().date);
    return latest;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
    const json root = parse_json(text, origin);
    RunConfig cfg;
    try {
        if (root.contains("data")) {
            const json& data = root["data"];
            if (data.contains("coins"))
                for (const auto& [coin, path] : data["coins"].items())
                    cfg.coin_paths[coin] = path.get<std::string>();
            if (data.contains("macros"))
                for (const auto& [series, src] : data["macros"].items()) {
                    MacroSource ms;
                    ms.path = src.at("path").get<std::string>();
                    ms.frequency =
                        frequency_from(src.value("frequency", std::string("monthly")), origin);
                    cfg.macro_sources[series] = ms;
                }
            if (data.contains("bank_failures")) {
                cfg.failed_list_path = data["bank_failures"].value("failed_list", std::string());
                cfg.totals_path = data["bank_failures"].value("totals", std::string());
            }
        }

        if (root.contains("window")) {
            const json& w = root["window"];
            if (w.contains("start") && !w["start"].is_null())
                cfg.window_start = Date::parse(w["start"].get<std::string>());
            if (w.contains("end") && !w["end"].is_null())
                cfg.window_end = Date::parse(w["end"].get<std::string>());
            if (cfg.window_start && cfg.window_end && *cfg.window_end < *cfg.window_start)
                throw InputError(origin + ": window end precedes start");
        }

        if (root.contains("header_aliases")) {
            const json& a = root["header_aliases"];
            if (a.contains("date")) cfg.header_aliases.date = string_list(a["date"]);
            if (a.contains("price")) cfg.header_aliases.price = string_list(a["price"]);
            if (a.contains("market_cap")) cfg.header_aliases.market_cap = string_list(a["market_cap"]);
            if (a.contains("total_volume"))
                cfg.header_aliases.total_volume = string_list(a["total_volume"]);
        }

        if (root.contains("metrics")) {
            const json& m = root["metrics"];
            cfg.metrics.off_peg_tolerance = m.value("off_peg_tolerance", cfg.metrics.off_peg_tolerance);
            cfg.metrics.exact_peg_tolerance =
                m.value("exact_peg_tolerance", cfg.metrics.exact_peg_tolerance);
            if (m.contains("volatility_windows")) {
                cfg.metrics.volatility_windows.clear();
                for (const auto& w : m["volatility_windows"])
                    cfg.metrics.volatility_windows.push_back(w.get<int>());
            }
        }

        if (root.contains("regression"))
            cfg.regression_include_macros = root["regression"].value("include_macros", false);

        if (root.contains("calibration")) {
            const json& c = root["calibration"];
            CalibrationOptions& opt = cfg.calibration;
            if (c.contains("svb_event_date"))
                opt.svb.event_date = Date::parse(c["svb_event_date"].get<std::string>());
            opt.svb.frozen_usd = c.value("svb_frozen_usd", opt.svb.frozen_usd);
            opt.svb.base_usd = c.value("svb_base_usd", opt.svb.base_usd);
            cfg.svb_coin = c.value("svb_coin", cfg.svb_coin);
            opt.generic_frozen_fraction =
                c.value("generic_frozen_fraction", opt.generic_frozen_fraction);
            opt.event_window_days = c.value("event_window_days", opt.event_window_days);
            opt.p_red = c.value("p_red", opt.p_red);
            opt.delta = c.value("delta", opt.delta);
            if (c.contains("alpha_override") && !c["alpha_override"].is_null())
                opt.alpha_override = c["alpha_override"].get<double>();
            if (c.contains("sigma_eps_override") && !c["sigma_eps_override"].is_null())
                opt.sigma_eps_override = c["sigma_eps_override"].get<double>();
            opt.store_mktcap_path = c.value("store_mktcap_path", opt.store_mktcap_path);
        }

        if (root.contains("simulation")) {
            const json& s = root["simulation"];
            SimConfig& sim = cfg.simulation;
            if (s.contains("days") && !s["days"].is_null()) {
                sim.days = s["days"].get<int>();
                cfg.simulation_days_explicit = true;
            }
            sim.trials = s.value("trials", sim.trials);
            sim.seed = s.value("seed", sim.seed);
            sim.extreme_multiplier = s.value("extreme_multiplier", sim.extreme_multiplier);
            sim.off_peg_tolerance = s.value("off_peg_tolerance", sim.off_peg_tolerance);
            if (s.contains("fractions")) {
                const json& f = s["fractions"];
                sim.fractions.f_beta = f.value("f_beta", sim.fractions.f_beta);
                sim.fractions.f_gamma = f.value("f_gamma", sim.fractions.f_gamma);
                sim.fractions.f_delta = f.value("f_delta", sim.fractions.f_delta);
            }
            if (s.contains("channels")) {
                const json& ch = s["channels"];
                sim.volume_enabled = ch.value("volume", sim.volume_enabled);
                sim.reserve_enabled = ch.value("reserve", sim.reserve_enabled);
                sim.redemption_enabled = ch.value("redemption", sim.redemption_enabled);
                sim.noise_enabled = ch.value("noise", sim.noise_enabled);
            }
            sim.price_floor = s.value("price_floor", sim.price_floor);
            if (s.contains("mktcap_mode")) {
                const auto mode = s["mktcap_mode"].get<std::string>();
                if (mode == "mean") sim.mktcap_mode = MktCapMode::Mean;
                else if (mode == "historical") sim.mktcap_mode = MktCapMode::Historical;
                else throw InputError(origin + ": mktcap_mode must be 'mean' or 'historical'");
            }
            if (s.contains("sweep_m_values")) {
                cfg.sweep_m_values.clear();
                for (const auto& m : s["sweep_m_values"])
                    cfg.sweep_m_values.push_back(m.get<double>());
            }
            cfg.improvement_epsilon = s.value("epsilon", cfg.improvement_epsilon);
        }

        cfg.output_dir = root.value("output_dir", cfg.output_dir);
    } catch (const json::exception& e) {
        throw InputError(origin + ": bad config value: " + e.what());
    }

    // When no explicit T is given but a window is, T spans the window.
    if (!cfg.simulation_days_explicit && cfg.window_start && cfg.window_end)
        cfg.simulation.days = *cfg.window_end - *cfg.window_start;
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path);
}

namespace {

json calibration_to_json(const ShockCalibration& cal) {
    json j{{"alpha", cal.alpha},
           {"beta_sim", cal.beta_sim},
           {"gamma", cal.gamma},
           {"delta", cal.delta},
           {"mu_ln_volume", cal.mu_ln_volume},
           {"sigma_ln_volume", cal.sigma_ln_volume},
           {"volume_mean", cal.volume_mean},
           {"volume_p95", cal.volume_p95},
           {"rho", cal.rho},
           {"p_base", cal.p_base},
           {"p_red", cal.p_red},
           {"sigma_eps", cal.sigma_eps},
           {"mktcap_mean", cal.mktcap_mean}};
    if (!cal.mktcap_path.empty()) j["mktcap_path"] = cal.mktcap_path;
    json prov = json::object();
    for (const auto& [field, origin] : cal.provenance) prov[field] = origin;
    j["provenance"] = prov;
    return j;
}

ShockCalibration calibration_from_json(const std::string& coin_id, const json& j,
                                       const std::string& origin) {
    ShockCalibration cal;
    cal.coin_id = coin_id;
    try {
        cal.alpha = j.at("alpha").get<double>();
        cal.beta_sim = j.at("beta_sim").get<double>();
        cal.gamma = j.at("gamma").get<double>();
        cal.delta = j.at("delta").get<double>();
        cal.mu_ln_volume = j.at("mu_ln_volume").get<double>();
        cal.sigma_ln_volume = j.at("sigma_ln_volume").get<double>();
        cal.volume_mean = j.at("volume_mean").get<double>();
        cal.volume_p95 = j.at("volume_p95").get<double>();
        cal.rho = j.value("rho", 0.0);
        cal.p_base = j.at("p_base").get<double>();
        cal.p_red = j.at("p_red").get<double>();
        cal.sigma_eps = j.at("sigma_eps").get<double>();
        cal.mktcap_mean = j.at("mktcap_mean").get<double>();
        if (j.contains("mktcap_path"))
            cal.mktcap_path = j["mktcap_path"].get<std::vector<double>>();
        if (j.contains("provenance"))
            for (const auto& [field, note] : j["provenance"].items())
                cal.provenance[field] = note.get<std::string>();
    } catch (const json::exception& e) {
        throw InputError(origin + ": calibration for '" + coin_id + "': " + e.what());
    }
    return cal;
}

}  // namespace

std::string calibrations_to_json(const std::map<std::string, ShockCalibration>& coins) {
    json root;
    root["coins"] = json::object();
    for (const auto& [coin, cal] : coins) root["coins"][coin] = calibration_to_json(cal);
    return root.dump(2) + "\n";
}

void save_calibrations(const std::string& path,
                       const std::map<std::string, ShockCalibration>& coins) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write calibration file: " + path);
    out << calibrations_to_json(coins);
}

std::map<std::string, ShockCalibration> load_calibrations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open calibration file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const json root = parse_json(buffer.str(), path);
    if (!root.contains("coins") || !root["coins"].is_object() || root["coins"].empty())
        throw InputError(path + ": calibration file has no coins");
    std::map<std::string, ShockCalibration> result;
    for (const auto& [coin, j] : root["coins"].items())
        result[coin] = calibration_from_json(coin, j, path);
    return result;
}

}  // namespace pegstab
