#pragma once

#include <functional>

namespace attlab {

/// Adaptive Simpson quadrature with Richardson correction; the local error
/// target halves at each bisection level.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 48);

}  // namespace attlab
