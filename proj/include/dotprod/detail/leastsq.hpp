#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace dotprod::detail {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
};

/// Ordinary least squares through (x, y) pairs; residual is the RMS of the
/// vertical fit errors.
inline LineFit fit_line(const std::vector<std::pair<double, double>>& pts) {
    const auto n = static_cast<double>(pts.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    LineFit fit;
    const double denom = n * sxx - sx * sx;
    fit.slope = denom == 0 ? 0.0 : (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (const auto& [x, y] : pts) {
        const double e = y - (fit.slope * x + fit.intercept);
        ss += e * e;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

}  // namespace dotprod::detail
