#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vopt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using IVec = Eigen::VectorXi;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scale-guarded relative difference: |a-b| / (1+|b|).
inline double rel_diff(double a, double b) {
    return std::abs(a - b) / (1.0 + std::abs(b));
}

inline bool all_finite(const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) return false;
    }
    return true;
}

/// Componentwise v <= w + slack.
inline bool leq_with_slack(const Vec& v, const Vec& w, double slack) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v[i] > w[i] + slack) return false;
    }
    return true;
}

} // namespace vopt
