#include "pegstab/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pegstab/errors.hpp"

namespace pegstab {

void HybridFractions::validate() const {
    for (double f : {f_beta, f_gamma, f_delta})
        if (!(f >= 0.0 && f <= 1.0))
            throw InputError("hybrid fractions must lie in [0, 1]");
}

void ShockCalibration::validate() const {
    if (!(sigma_ln_volume > 0.0)) throw ComputeError("calibration: sigma_lnV must be > 0");
    if (!(p_base >= 0.0 && p_base <= 1.0)) throw ComputeError("calibration: p_base outside [0, 1]");
    if (!(p_red >= 0.0 && p_red <= 1.0)) throw ComputeError("calibration: p_red outside [0, 1]");
    if (!(sigma_eps >= 0.0)) throw ComputeError("calibration: sigma_eps must be >= 0");
    if (!(volume_mean > 0.0)) throw ComputeError("calibration: v_bar must be > 0");
    if (!(mktcap_mean > 0.0)) throw ComputeError("calibration: mean market cap must be > 0");
    if (volume_p95 < std::exp(mu_ln_volume))
        throw ComputeError("calibration: v95 below the lognormal median, quantiles inconsistent");
}

void ShockCalibration::note(const std::string& field, const std::string& origin) {
    provenance[field] = origin;
}

VolumeFit fit_volume_lognormal(const CoinSeries& series) {
    std::vector<double> positive;
    positive.reserve(series.rows.size());
    long excluded = 0;
    for (const RawRow& row : series.rows) {
        if (row.total_volume > 0.0)
            positive.push_back(row.total_volume);
        else
            ++excluded;
    }
    if (positive.size() < 30)
        throw InputError("fit_volume_lognormal: need >= 30 positive volumes, have " +
                         std::to_string(positive.size()));

    VolumeFit fit;
    fit.excluded_nonpositive = excluded;
    const auto n = static_cast<double>(positive.size());
    double sum = 0.0, ln_sum = 0.0;
    for (double v : positive) {
        sum += v;
        ln_sum += std::log(v);
    }
    fit.mean = sum / n;
    fit.mu_ln = ln_sum / n;
    double ss = 0.0;
    for (double v : positive) {
        const double d = std::log(v) - fit.mu_ln;
        ss += d * d;
    }
    fit.sigma_ln = std::sqrt(ss / n);
    if (!(fit.sigma_ln > 0.0))
        throw ComputeError("fit_volume_lognormal: degenerate fit (sigma = 0)");

    // Nearest-rank percentile: the ceil(0.95 n)-th smallest.
    std::sort(positive.begin(), positive.end());
    const auto rank = static_cast<size_t>(std::ceil(0.95 * n));
    fit.p95 = positive[std::max<size_t>(rank, 1) - 1];
    return fit;
}

std::pair<double, double> bank_failure_probability(const BankFailureTable& table) {
    const long total = table.total_institutions();
    if (total <= 0) throw InputError("bank_failure_probability: no institutions counted");
    const double rho = static_cast<double>(table.total_failures()) / static_cast<double>(total);
    if (rho >= 1.0) throw ComputeError("bank_failure_probability: rho >= 1");
    // 1 - (1 - rho)^(1/365), evaluated via log1p/expm1 to keep precision at
    // the tiny probabilities involved.
    const double p_base = -std::expm1(std::log1p(-rho) / 365.0);
    return {rho, p_base};
}

double event_window_drop(const CoinSeries& series, Date event_date, int window_days) {
    double min_price = std::numeric_limits<double>::infinity();
    for (const RawRow& row : series.rows)
        if (row.date >= event_date && row.date <= event_date + window_days)
            min_price = std::min(min_price, row.price);
    if (!std::isfinite(min_price))
        throw InputError("event_window_drop: no observations in [" + event_date.to_string() +
                         ", +" + std::to_string(window_days) + "d]");
    return min_price - 1.0;
}

double calibrate_gamma_usdc(const CoinSeries& series, const ShockCalibration& cal,
                            Date event_date, double frozen_usd, double base_usd) {
    if (!(base_usd > 0.0)) throw InputError("calibrate_gamma_usdc: base_usd must be > 0");
    const double frozen_fraction = frozen_usd / base_usd;
    if (!(frozen_fraction > 0.0)) throw InputError("calibrate_gamma_usdc: L must be > 0");
    const Eigen::Index at = series.find_date(event_date);
    if (at < 0)
        throw InputError("calibrate_gamma_usdc: event date " + event_date.to_string() +
                         " not present in series");
    if (!(cal.volume_mean > 0.0))
        throw InputError("calibrate_gamma_usdc: v_bar must be calibrated first");

    const double observed_drop = series.rows[static_cast<size_t>(at)].price - 1.0;
    const double event_volume = series.rows[static_cast<size_t>(at)].total_volume;
    const double volume_impact = cal.beta_sim * (event_volume / cal.volume_mean);
    return (observed_drop - volume_impact) / frozen_fraction;
}

double calibrate_gamma_generic(double assumed_frozen_fraction, double reference_drop) {
    if (!(assumed_frozen_fraction > 0.0))
        throw InputError("calibrate_gamma_generic: frozen fraction must be > 0");
    return reference_drop / assumed_frozen_fraction;
}

std::pair<double, double> derive_alpha_beta(const OlsResult& ols, const std::string& lag_dev_name,
                                            const std::string& volume_name, double v_bar) {
    const double phi = ols.coef(lag_dev_name).value;
    if (!(std::abs(phi) < 1.0))
        throw ComputeError("derive_alpha_beta: non-mean-reverting fit (|phi| >= 1, phi = " +
                           std::to_string(phi) + ")");
    const double b_vol = ols.coef(volume_name).value;
    return {1.0 - phi, b_vol * v_bar};
}

double estimate_noise(const CoinSeries& series, double alpha) {
    if (series.rows.size() < 100)
        throw InputError("estimate_noise: need >= 100 observations, have " +
                         std::to_string(series.rows.size()));
    // Residuals are only meaningful across consecutive days.
    std::vector<double> residuals;
    residuals.reserve(series.rows.size());
    for (size_t i = 0; i + 1 < series.rows.size(); ++i) {
        if (series.rows[i + 1].date - series.rows[i].date != 1) continue;
        const double p = series.rows[i].price;
        const double step = series.rows[i + 1].price - p;
        residuals.push_back(step - alpha * (1.0 - p));
    }
    if (residuals.size() < 100)
        throw InputError("estimate_noise: need >= 100 consecutive observations");

    double mean = 0.0;
    for (double r : residuals) mean += r;
    mean /= static_cast<double>(residuals.size());
    double ss = 0.0;
    for (double r : residuals) ss += (r - mean) * (r - mean);
    return std::sqrt(ss / static_cast<double>(residuals.size()));
}

ShockCalibration calibrate_coin(const CoinSeries& series, const OlsResult& table4_fit,
                                const std::string& lag_dev_name, const std::string& volume_name,
                                const BankFailureTable& failures, bool svb_route,
                                const CalibrationOptions& options) {
    ShockCalibration cal;
    cal.coin_id = series.coin_id;

    const VolumeFit vol = fit_volume_lognormal(series);
    cal.mu_ln_volume = vol.mu_ln;
    cal.sigma_ln_volume = vol.sigma_ln;
    cal.volume_mean = vol.mean;
    cal.volume_p95 = vol.p95;
    cal.note("mu_ln_volume", "mean of ln V over positive historical volumes");
    cal.note("sigma_ln_volume", "std of ln V over positive historical volumes");
    cal.note("volume_mean", "arithmetic mean of historical daily volume");
    cal.note("volume_p95", "nearest-rank 95th percentile of historical daily volume");

    const auto [rho, p_base] = bank_failure_probability(failures);
    cal.rho = rho;
    cal.p_base = p_base;
    cal.note("rho", "FDIC failures / total institutions, 2019-2025");
    cal.note("p_base", "1 - (1 - rho)^(1/365)");

    auto [alpha, beta_sim] = derive_alpha_beta(table4_fit, lag_dev_name, volume_name, vol.mean);
    if (options.alpha_override) {
        alpha = *options.alpha_override;
        cal.note("alpha", "configuration override");
    } else {
        cal.note("alpha", "1 - phi, phi = lagged-deviation OLS coefficient");
    }
    cal.alpha = alpha;
    cal.beta_sim = beta_sim;
    cal.note("beta_sim", "OLS volume coefficient scaled by mean volume");

    if (svb_route) {
        cal.gamma = calibrate_gamma_usdc(series, cal, options.svb.event_date,
                                         options.svb.frozen_usd, options.svb.base_usd);
        cal.note("gamma", "SVB event: (observed drop - volume impact) / frozen fraction");
    } else {
        const double drop =
            event_window_drop(series, options.svb.event_date, options.event_window_days);
        cal.gamma = calibrate_gamma_generic(options.generic_frozen_fraction, drop);
        cal.note("gamma", "assumed frozen fraction " + std::to_string(options.generic_frozen_fraction) +
                              "; event-window drop " + std::to_string(drop));
    }

    cal.delta = options.delta;
    cal.note("delta", "default redemption impact magnitude");
    cal.p_red = options.p_red;
    cal.note("p_red", "default daily mass-redemption probability");

    if (options.sigma_eps_override) {
        cal.sigma_eps = *options.sigma_eps_override;
        cal.note("sigma_eps", "configuration override");
    } else {
        cal.sigma_eps = estimate_noise(series, cal.alpha);
        cal.note("sigma_eps", "std of mean-reversion residuals over history");
    }

    Eigen::VectorXd caps = series.market_caps();
    cal.mktcap_mean = caps.mean();
    cal.note("mktcap_mean", "arithmetic mean of historical market cap");
    if (options.store_mktcap_path) {
        cal.mktcap_path.assign(caps.data(), caps.data() + caps.size());
        cal.note("mktcap_path", "historical market-cap path for replay");
    }

    cal.validate();
    return cal;
}

}  // namespace pegstab
