#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "pegstab/series.hpp"

namespace pegstab {

struct CoefStat {
    std::string name;
    double value = 0.0;
    double std_error = 0.0;
    double t_stat = 0.0;
    double p_value = 1.0;
    std::string significance;  // "***", "**", "*", or "n.s."
};

struct OlsResult {
    std::vector<CoefStat> coefficients;
    Eigen::VectorXd residuals;
    double r_squared = 0.0;
    double sigma2 = 0.0;  // RSS / (n - p)
    Eigen::Index n_obs = 0;

    const CoefStat& coef(const std::string& name) const;  // throws ComputeError
};

// Regressor columns (and response) after lagging and listwise deletion.
// When `intercept` is set, "const" is the first column of X.
struct DesignMatrix {
    std::vector<std::string> names;
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    std::string response_name;
    std::vector<Eigen::Index> panel_rows;  // source row per kept row
    bool intercept = true;
};

struct LaggedSpec {
    std::string column;
    int lag = 0;

    std::string display_name() const;
};

// Column `c` lagged by `l` at row t holds c[t - l]. Rows where any
// requested value (response included) is null are dropped listwise.
DesignMatrix build_lagged_design(const AlignedPanel& panel, const LaggedSpec& response,
                                 const std::vector<LaggedSpec>& regressors,
                                 bool intercept = true);

// Least squares through a Householder QR solve; standard errors from
// sigma2 * (X'X)^-1, two-sided p-values from t(n - p).
OlsResult ols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                  const std::vector<std::string>& names);
OlsResult ols_fit(const DesignMatrix& design);

std::string significance_code(double p_value);

// Two-sided p-value for a t statistic with nu degrees of freedom.
double student_t_two_sided_p(double t, double nu);

enum class AdfSpec { None, Constant, ConstantTrend };

struct AdfResult {
    double statistic = 0.0;   // t-ratio on the y_{t-1} coefficient
    double gamma_coef = 0.0;  // coefficient on y_{t-1}
    int lag_order = 0;
    AdfSpec spec = AdfSpec::Constant;
    double crit_1 = 0.0, crit_5 = 0.0, crit_10 = 0.0;
    bool reject_1 = false, reject_5 = false, reject_10 = false;
    Eigen::Index n_obs = 0;
};

// Regress dy_t on deterministic terms, y_{t-1}, and k lagged differences;
// compare the t-ratio of y_{t-1} against fixed asymptotic critical values.
AdfResult adf_test(const Eigen::VectorXd& y, int lag_order = 1,
                   AdfSpec spec = AdfSpec::Constant);

}  // namespace pegstab
