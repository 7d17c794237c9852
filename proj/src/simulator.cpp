#include "pegstab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "pegstab/errors.hpp"
#include "pegstab/rng.hpp"

namespace pegstab {

void SimConfig::validate() const {
    if (days < 1) throw InputError("simulation: days must be >= 1");
    if (trials < 1) throw InputError("simulation: trials must be >= 1");
    if (!(off_peg_tolerance > 0.0)) throw InputError("simulation: off-peg tolerance must be > 0");
    if (!(extreme_multiplier >= 1.0)) throw InputError("simulation: multiplier M must be >= 1");
    fractions.validate();
}

const char* regime_name(Regime regime) {
    return regime == Regime::Current ? "current" : "hybrid";
}

DailyShocks draw_daily_shocks(const ShockCalibration& cal, const SimConfig& cfg,
                              std::uint64_t trial, std::uint64_t day) {
    DailyShocks shocks;

    rng::SubStream volume(cfg.seed, trial, day, kChannelVolume);
    shocks.volume = volume.lognormal(cal.mu_ln_volume, cal.sigma_ln_volume);

    if (cfg.reserve_enabled) {
        // Extreme simulated-volume days carry amplified failure risk.
        const double p_fail = shocks.volume > cal.volume_p95
                                  ? std::min(1.0, cfg.extreme_multiplier * cal.p_base)
                                  : cal.p_base;
        rng::SubStream flag(cfg.seed, trial, day, kChannelFailureFlag);
        shocks.failure_occurred = flag.bernoulli(p_fail);
        if (shocks.failure_occurred) {
            rng::SubStream frozen(cfg.seed, trial, day, kChannelFrozenFraction);
            shocks.frozen_fraction = std::min(1.0, frozen.lognormal(-3.0, 0.5));
        }
    }

    if (cfg.redemption_enabled) {
        rng::SubStream flag(cfg.seed, trial, day, kChannelRedemptionFlag);
        shocks.redemption_occurred = flag.bernoulli(cal.p_red);
        if (shocks.redemption_occurred) {
            rng::SubStream size(cfg.seed, trial, day, kChannelRedemptionSize);
            shocks.redemption_usd = size.lognormal(std::log(0.05 * cal.mktcap_mean), 1.0);
        }
    }

    if (cfg.noise_enabled) {
        rng::SubStream noise(cfg.seed, trial, day, kChannelNoise);
        shocks.noise = noise.normal(0.0, cal.sigma_eps);
    }
    return shocks;
}

double step_price(double price, const DailyShocks& shocks, const EffectiveParams& params,
                  double mktcap, double volume_mean, double price_floor, int& clamped) {
    if (!(mktcap > 0.0)) throw ComputeError("step_price: market cap must be > 0");
    double delta_p = params.alpha * (1.0 - price);
    delta_p += params.beta * (shocks.volume / volume_mean);
    delta_p += params.gamma * shocks.frozen_fraction;
    delta_p -= params.delta * (shocks.redemption_usd / mktcap);
    delta_p += shocks.noise;
    double next = price + delta_p;
    if (!std::isfinite(next)) throw ComputeError("step_price: non-finite price");
    if (next < price_floor) {
        next = price_floor;
        ++clamped;
    }
    return next;
}

TrialOutcome outcome_metrics(const std::vector<double>& path, double tolerance, Regime regime) {
    if (path.empty()) throw InputError("outcome_metrics: empty path");
    TrialOutcome outcome;
    outcome.regime = regime;
    for (double p : path) {
        const double dev = std::abs(p - 1.0);
        outcome.peak_dev = std::max(outcome.peak_dev, dev);
        if (dev > tolerance) ++outcome.off_peg_days;
    }
    return outcome;
}

namespace {

struct RegimeState {
    double price = 1.0;
    double peak_dev = 0.0;
    int off_peg_days = 0;
    int clamped_days = 0;

    void observe(double tolerance) {
        const double dev = std::abs(price - 1.0);
        peak_dev = std::max(peak_dev, dev);
        if (dev > tolerance) ++off_peg_days;
    }

    TrialOutcome outcome(Regime regime) const {
        return {regime, peak_dev, off_peg_days, clamped_days};
    }
};

}  // namespace

TrialPair run_trial_pair(const ShockCalibration& cal, const SimConfig& cfg, int trial_index) {
    const EffectiveParams current{cal.alpha,
                                  cfg.volume_enabled ? cal.beta_sim : 0.0,
                                  cfg.reserve_enabled ? cal.gamma : 0.0,
                                  cfg.redemption_enabled ? cal.delta : 0.0};
    const EffectiveParams hybrid{current.alpha, cfg.fractions.f_beta * current.beta,
                                 cfg.fractions.f_gamma * current.gamma,
                                 cfg.fractions.f_delta * current.delta};

    RegimeState cur, hyb;
    cur.observe(cfg.off_peg_tolerance);  // P_0 = 1 counts toward the t = 0..T metrics
    hyb.observe(cfg.off_peg_tolerance);

    const bool replay_caps = cfg.mktcap_mode == MktCapMode::Historical && !cal.mktcap_path.empty();
    const auto trial = static_cast<std::uint64_t>(trial_index);
    try {
        for (int day = 0; day < cfg.days; ++day) {
            const DailyShocks shocks = draw_daily_shocks(cal, cfg, trial,
                                                         static_cast<std::uint64_t>(day));
            const double mktcap =
                replay_caps ? cal.mktcap_path[std::min<size_t>(static_cast<size_t>(day),
                                                               cal.mktcap_path.size() - 1)]
                            : cal.mktcap_mean;
            cur.price = step_price(cur.price, shocks, current, mktcap, cal.volume_mean,
                                   cfg.price_floor, cur.clamped_days);
            hyb.price = step_price(hyb.price, shocks, hybrid, mktcap, cal.volume_mean,
                                   cfg.price_floor, hyb.clamped_days);
            cur.observe(cfg.off_peg_tolerance);
            hyb.observe(cfg.off_peg_tolerance);
        }
    } catch (const ComputeError& e) {
        throw ComputeError("trial " + std::to_string(trial_index) + ": " + e.what());
    }
    return {cur.outcome(Regime::Current), hyb.outcome(Regime::Hybrid)};
}

std::vector<TrialPair> run_simulation(const ShockCalibration& cal, const SimConfig& cfg,
                                      int workers) {
    cfg.validate();
    cal.validate();
    std::vector<TrialPair> results(static_cast<size_t>(cfg.trials));
    if (workers < 1) workers = 1;
    workers = std::min(workers, cfg.trials);

    if (workers == 1) {
        for (int i = 0; i < cfg.trials; ++i) results[static_cast<size_t>(i)] = run_trial_pair(cal, cfg, i);
        return results;
    }

    // Trials are index-addressed and every draw is a pure function of
    // (seed, trial, day), so the partition cannot change the numbers.
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < cfg.trials; i += workers)
                    results[static_cast<size_t>(i)] = run_trial_pair(cal, cfg, i);
            } catch (...) {
                errors[static_cast<size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    return results;
}

}  // namespace pegstab
