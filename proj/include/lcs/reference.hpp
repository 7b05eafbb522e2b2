#pragma once

#include <vector>

#include "lcs/extension.hpp"
#include "lcs/moser.hpp"

/// Plain serial versions of the OpenMP kernels, written independently of
/// them. Tests compare the two; the benchmark times them.
namespace lcs::reference {

/// sup over samples of |i*(d lambda - beta ^ lambda)| from the pulled jets.
double lagrangian_residual(const ParametricEmbedding& e, const std::vector<Point>& samples);

RadialField mollify(const RadialField& F, double kernel_steps);

double max_log_slope(const RadialField& F);

/// Time-1 images with a fixed RK4 step, no Richardson loop.
std::vector<Point> flow(const MoserProblem& P, const std::vector<Point>& seeds, double step);

/// sup d ln g(Z) over samples.
double radial_log_derivative_sup(const ScalarField& g, const std::vector<Point>& samples);

}  // namespace lcs::reference
