#pragma once

#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include "growthlab/common.hpp"

namespace growthlab {

struct ExponentFit {
    double beta = 0.0;
    double r_squared = 1.0;
};

// Least-squares slope of ln v against ln n: summarizes v ~ n^beta growth.
inline ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 2) throw std::invalid_argument("fit_exponent: need at least 2 points");
    std::set<double> ns;
    for (const auto& [n, v] : pairs) {
        if (n <= 0 || v <= 0) throw std::invalid_argument("fit_exponent: points must be positive");
        ns.insert(n);
    }
    if (ns.size() != pairs.size()) throw std::invalid_argument("fit_exponent: repeated n value");

    const double m = static_cast<double>(pairs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [n, v] : pairs) {
        const double x = std::log(n), y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    ExponentFit fit;
    fit.beta = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - fit.beta * sx) / m;

    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / m;
    for (const auto& [n, v] : pairs) {
        const double x = std::log(n), y = std::log(v);
        ss_res += (y - intercept - fit.beta * x) * (y - intercept - fit.beta * x);
        ss_tot += (y - mean_y) * (y - mean_y);
    }
    fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

} // namespace growthlab
