#include "pegstab/econometrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pegstab/errors.hpp"

namespace pegstab {
namespace {

// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-14;
    constexpr double kTiny = 1e-300;

    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

double incbeta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

}  // namespace

double student_t_two_sided_p(double t, double nu) {
    if (!std::isfinite(t)) return 0.0;
    if (nu <= 0.0) return 1.0;
    // P(|T| > t) = I_{nu/(nu+t^2)}(nu/2, 1/2)
    return incbeta(nu / 2.0, 0.5, nu / (nu + t * t));
}

std::string significance_code(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "n.s.";
}

const CoefStat& OlsResult::coef(const std::string& name) const {
    for (const auto& c : coefficients)
        if (c.name == name) return c;
    throw ComputeError("no coefficient named '" + name + "'");
}

std::string LaggedSpec::display_name() const {
    return lag == 0 ? column : column + " (lag" + std::to_string(lag) + ")";
}

DesignMatrix build_lagged_design(const AlignedPanel& panel, const LaggedSpec& response,
                                 const std::vector<LaggedSpec>& regressors, bool intercept) {
    std::vector<LaggedSpec> all{response};
    all.insert(all.end(), regressors.begin(), regressors.end());
    int max_lag = 0;
    for (const auto& spec : all) {
        if (spec.lag < 0) throw InputError("build_lagged_design: negative lag");
        max_lag = std::max(max_lag, spec.lag);
    }

    const Eigen::Index n = panel.n_days();
    std::vector<const Eigen::VectorXd*> columns;
    columns.reserve(all.size());
    for (const auto& spec : all) columns.push_back(&panel.column(spec.column));

    std::vector<Eigen::Index> kept;
    for (Eigen::Index t = max_lag; t < n; ++t) {
        bool complete = true;
        for (size_t j = 0; j < all.size(); ++j)
            if (std::isnan((*columns[j])[t - all[j].lag])) {
                complete = false;
                break;
            }
        if (complete) kept.push_back(t);
    }
    if (kept.empty()) throw InputError("build_lagged_design: every row is masked out");

    DesignMatrix design;
    design.intercept = intercept;
    design.response_name = response.display_name();
    design.panel_rows = kept;
    const auto m = static_cast<Eigen::Index>(kept.size());
    const auto p = static_cast<Eigen::Index>(regressors.size()) + (intercept ? 1 : 0);
    design.y.resize(m);
    design.X.resize(m, p);
    if (intercept) {
        design.names.push_back("const");
        design.X.col(0).setOnes();
    }
    for (const auto& spec : regressors) design.names.push_back(spec.display_name());
    for (Eigen::Index r = 0; r < m; ++r) {
        const Eigen::Index t = kept[static_cast<size_t>(r)];
        design.y[r] = (*columns[0])[t - response.lag];
        for (size_t j = 0; j < regressors.size(); ++j)
            design.X(r, static_cast<Eigen::Index>(j) + (intercept ? 1 : 0)) =
                (*columns[j + 1])[t - regressors[j].lag];
    }
    return design;
}

OlsResult ols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                  const std::vector<std::string>& names) {
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();
    if (static_cast<Eigen::Index>(names.size()) != p)
        throw InputError("ols_fit: one name per regressor column required");
    if (y.size() != n) throw InputError("ols_fit: y and X row counts differ");
    if (n < p + 1) throw ComputeError("ols_fit: too few rows (" + std::to_string(n) + ") for " +
                                      std::to_string(p) + " regressors");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < p) {
        // Pivoting orders independent columns first; the remainder are the
        // (near-)collinear ones.
        const auto& perm = qr.colsPermutation().indices();
        std::string collinear;
        for (Eigen::Index i = qr.rank(); i < p; ++i) {
            if (!collinear.empty()) collinear += ", ";
            collinear += names[static_cast<size_t>(perm[i])];
        }
        throw ComputeError("ols_fit: rank-deficient design, collinear columns: " + collinear);
    }

    OlsResult result;
    result.n_obs = n;
    const Eigen::VectorXd beta = qr.solve(y);
    result.residuals = y - X * beta;

    const double rss = result.residuals.squaredNorm();
    const double dof = static_cast<double>(n - p);
    result.sigma2 = rss / dof;

    // Centered R^2 when an intercept-like column is present, uncentered otherwise.
    bool has_const = false;
    for (Eigen::Index j = 0; j < p; ++j)
        if ((X.col(j).array() == X(0, j)).all() && X(0, j) != 0.0) has_const = true;
    const double tss = has_const ? (y.array() - y.mean()).square().sum() : y.squaredNorm();
    result.r_squared = tss > 0.0 ? 1.0 - rss / tss : 1.0;

    const Eigen::MatrixXd xtx_inv =
        (X.transpose() * X).llt().solve(Eigen::MatrixXd::Identity(p, p));
    result.coefficients.reserve(static_cast<size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) {
        CoefStat c;
        c.name = names[static_cast<size_t>(j)];
        c.value = beta[j];
        c.std_error = std::sqrt(result.sigma2 * xtx_inv(j, j));
        c.t_stat = c.std_error > 0.0 ? c.value / c.std_error
                                     : (c.value == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        c.p_value = student_t_two_sided_p(c.t_stat, dof);
        c.significance = significance_code(c.p_value);
        result.coefficients.push_back(std::move(c));
    }
    return result;
}

OlsResult ols_fit(const DesignMatrix& design) {
    return ols_fit(design.y, design.X, design.names);
}

AdfResult adf_test(const Eigen::VectorXd& y, int lag_order, AdfSpec spec) {
    if (lag_order < 0) throw InputError("adf_test: negative lag order");
    const Eigen::Index n = y.size();
    if (n <= lag_order + 10)
        throw InputError("adf_test: series length " + std::to_string(n) +
                         " too short for lag order " + std::to_string(lag_order));

    // Rows usable after differencing and lagging: t = lag_order+1 .. n-1.
    const Eigen::Index m = n - 1 - lag_order;
    Eigen::VectorXd dy(m);
    const int n_det = spec == AdfSpec::None ? 0 : (spec == AdfSpec::Constant ? 1 : 2);
    Eigen::MatrixXd X(m, n_det + 1 + lag_order);
    std::vector<std::string> names;
    if (n_det >= 1) names.push_back("const");
    if (n_det == 2) names.push_back("trend");
    names.push_back("y.lag1");
    for (int i = 1; i <= lag_order; ++i) names.push_back("dy.lag" + std::to_string(i));

    for (Eigen::Index r = 0; r < m; ++r) {
        const Eigen::Index t = r + lag_order + 1;
        dy[r] = y[t] - y[t - 1];
        Eigen::Index col = 0;
        if (n_det >= 1) X(r, col++) = 1.0;
        if (n_det == 2) X(r, col++) = static_cast<double>(t);
        X(r, col++) = y[t - 1];
        for (int i = 1; i <= lag_order; ++i) X(r, col++) = y[t - i] - y[t - i - 1];
    }

    const OlsResult fit = ols_fit(dy, X, names);
    const CoefStat& gamma = fit.coef("y.lag1");

    AdfResult result;
    result.statistic = gamma.t_stat;
    result.gamma_coef = gamma.value;
    result.lag_order = lag_order;
    result.spec = spec;
    result.n_obs = m;
    // Asymptotic Dickey-Fuller critical values for the three deterministic specs.
    switch (spec) {
        case AdfSpec::None:
            result.crit_1 = -2.58; result.crit_5 = -1.95; result.crit_10 = -1.62;
            break;
        case AdfSpec::Constant:
            result.crit_1 = -3.43; result.crit_5 = -2.86; result.crit_10 = -2.57;
            break;
        case AdfSpec::ConstantTrend:
            result.crit_1 = -3.96; result.crit_5 = -3.41; result.crit_10 = -3.12;
            break;
    }
    result.reject_1 = result.statistic < result.crit_1;
    result.reject_5 = result.statistic < result.crit_5;
    result.reject_10 = result.statistic < result.crit_10;
    return result;
}

}  // namespace pegstab
