#pragma once

#include <functional>

namespace msh {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
    bool converged = false;
};

/// Globally adaptive Gauss-Legendre quadrature on [a, b].
///
/// Each panel is integrated with a 16-point rule on the panel and on its
/// two halves; their difference is the panel error. The panel with the
/// largest error is bisected until the summed error is at most
/// max(abs_tol, rel_tol * |value|) or `max_panels` is reached.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-10,
                           double rel_tol = 1e-13, int max_panels = 1 << 14);

}  // namespace msh
