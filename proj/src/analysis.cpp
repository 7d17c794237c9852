#include "pegstab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pegstab/errors.hpp"

namespace pegstab {

Improvement percent_improvement(const TrialOutcome& current, const TrialOutcome& hybrid,
                                double epsilon) {
    Improvement imp;
    if (current.peak_dev >= epsilon) {
        imp.peak_included = true;
        imp.pct_peak = 100.0 * (current.peak_dev - hybrid.peak_dev) / current.peak_dev;
    }
    if (current.off_peg_days > 0) {
        imp.off_included = true;
        imp.pct_off = 100.0 * static_cast<double>(current.off_peg_days - hybrid.off_peg_days) /
                      static_cast<double>(current.off_peg_days);
    }
    return imp;
}

namespace {

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

MeanSd mean_sample_sd(const std::vector<double>& xs) {
    MeanSd out;
    if (xs.empty()) return out;
    const auto n = static_cast<double>(xs.size());
    for (double x : xs) out.mean += x;
    out.mean /= n;
    if (xs.size() < 2) return out;
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.sd = std::sqrt(ss / (n - 1.0));
    return out;
}

}  // namespace

double percentile_nearest_rank(std::vector<double> values, double q) {
    if (values.empty()) throw InputError("percentile of empty sample");
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    auto rank = static_cast<size_t>(std::ceil(q * n));
    rank = std::clamp<size_t>(rank, 1, values.size());
    return values[rank - 1];
}

double median(std::vector<double> values) {
    if (values.empty()) throw InputError("median of empty sample");
    std::sort(values.begin(), values.end());
    const size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double paired_t_statistic(std::span<const double> differences) {
    if (differences.size() < 2) throw InputError("paired t needs >= 2 pairs");
    std::vector<double> xs(differences.begin(), differences.end());
    const MeanSd ms = mean_sample_sd(xs);
    if (ms.sd == 0.0) return ms.mean == 0.0 ? 0.0 : std::numeric_limits<double>::infinity() *
                                                        (ms.mean > 0 ? 1.0 : -1.0);
    return ms.mean / (ms.sd / std::sqrt(static_cast<double>(xs.size())));
}

PairedSummary summarize(std::span<const TrialPair> pairs, double epsilon) {
    if (pairs.empty()) throw InputError("summarize: no trials");
    PairedSummary s;
    s.trials = static_cast<long>(pairs.size());

    std::vector<double> pct_peak, pct_off;
    std::vector<double> peak_c, peak_h, off_c, off_h;
    peak_c.reserve(pairs.size());
    peak_h.reserve(pairs.size());
    off_c.reserve(pairs.size());
    off_h.reserve(pairs.size());
    for (const TrialPair& pair : pairs) {
        const Improvement imp = percent_improvement(pair.current, pair.hybrid, epsilon);
        if (imp.peak_included) pct_peak.push_back(imp.pct_peak);
        if (imp.off_included) pct_off.push_back(imp.pct_off);
        peak_c.push_back(pair.current.peak_dev);
        peak_h.push_back(pair.hybrid.peak_dev);
        off_c.push_back(pair.current.off_peg_days);
        off_h.push_back(pair.hybrid.off_peg_days);
    }
    s.included_peak = static_cast<long>(pct_peak.size());
    s.included_off = static_cast<long>(pct_off.size());

    const MeanSd peak_ms = mean_sample_sd(pct_peak);
    s.mean_pct_peak = peak_ms.mean;
    s.sd_pct_peak = peak_ms.sd;
    const MeanSd off_ms = mean_sample_sd(pct_off);
    s.mean_pct_off = off_ms.mean;
    s.sd_pct_off = off_ms.sd;

    const MeanSd pc = mean_sample_sd(peak_c);
    const MeanSd ph = mean_sample_sd(peak_h);
    const MeanSd oc = mean_sample_sd(off_c);
    const MeanSd oh = mean_sample_sd(off_h);
    s.mean_peak_current = pc.mean;
    s.mean_peak_hybrid = ph.mean;
    s.mean_off_current = oc.mean;
    s.mean_off_hybrid = oh.mean;
    s.p95_peak_current = percentile_nearest_rank(peak_c, 0.95);
    s.p95_peak_hybrid = percentile_nearest_rank(peak_h, 0.95);
    s.median_off_current = median(off_c);
    s.median_off_hybrid = median(off_h);
    return s;
}

std::vector<SweepResult> sweep(const ShockCalibration& cal, const SimConfig& cfg,
                               const std::string& parameter, const std::vector<double>& grid,
                               const HybridFractions& fixed, const std::vector<double>& m_values,
                               double epsilon, int workers) {
    double HybridFractions::*swept = nullptr;
    if (parameter == "f_beta") swept = &HybridFractions::f_beta;
    else if (parameter == "f_gamma") swept = &HybridFractions::f_gamma;
    else if (parameter == "f_delta") swept = &HybridFractions::f_delta;
    else throw InputError("sweep: unknown parameter '" + parameter + "'");

    for (double g : grid)
        if (!(g >= 0.0 && g <= 1.0)) throw InputError("sweep: grid values must lie in [0, 1]");
    if (!std::is_sorted(grid.begin(), grid.end()) ||
        std::adjacent_find(grid.begin(), grid.end()) != grid.end())
        throw InputError("sweep: grid must be strictly increasing");

    std::vector<SweepResult> results;
    results.reserve(m_values.size());
    for (double m : m_values) {
        SweepResult result;
        result.parameter = parameter;
        result.extreme_multiplier = m;
        result.fixed = fixed;
        result.points.reserve(grid.size());
        for (double value : grid) {
            SimConfig point_cfg = cfg;
            point_cfg.extreme_multiplier = m;
            point_cfg.fractions = fixed;
            point_cfg.fractions.*swept = value;
            const std::vector<TrialPair> pairs = run_simulation(cal, point_cfg, workers);
            SweepPoint point;
            point.fraction = value;
            point.summary = summarize(pairs, epsilon);
            point.summary.coin_id = cal.coin_id;
            result.points.push_back(std::move(point));
        }
        results.push_back(std::move(result));
    }
    return results;
}

bool RunEquilibrium::has(RunOutcome outcome) const {
    return std::find(equilibria.begin(), equilibria.end(), outcome) != equilibria.end();
}

RunEquilibrium dybvig_equilibria(double hold_value, double fire_sale_value, bool insured) {
    if (hold_value < 0.0 || fire_sale_value < 0.0)
        throw InputError("dybvig_equilibria: values must be >= 0");
    if (fire_sale_value > hold_value)
        throw InputError("dybvig_equilibria: fire-sale value cannot exceed hold value");

    RunEquilibrium eq;
    eq.hold_value = hold_value;
    eq.fire_sale_value = fire_sale_value;
    eq.insured = insured;
    if (insured) {
        eq.equilibria.push_back(RunOutcome::NoRun);
        return eq;
    }
    if (hold_value >= 1.0) eq.equilibria.push_back(RunOutcome::NoRun);
    if (fire_sale_value < 1.0) eq.equilibria.push_back(RunOutcome::Run);
    return eq;
}

}  // namespace pegstab
