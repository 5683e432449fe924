#pragma once

#include <optional>
#include <vector>

#include "subfourier/states.hpp"

namespace subfourier {

/// Expectation values assembled from the pair kernels, natural units.
struct KernelMoments {
  double mean_x = 0.0;
  double mean_x2 = 0.0;
  double mean_k = 0.0;
  double mean_k2 = 0.0;
};

struct UncertaintyReport {
  double delta_x = 0.0;
  double delta_k = 0.0;
  double delta_p = 0.0;  ///< hbar * delta_k
  double product = 0.0;  ///< delta_x * delta_p
  double mean_x = 0.0;
  double mean_p = 0.0;
};

struct OrthogonalityResult {
  double delta_star = 0.0;
  double residual = 0.0;  ///< |O(delta_star)|
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::optional<double> ratio;  ///< delta_star / delta_k once attached

  bool subfourier() const noexcept { return ratio && *ratio < 1.0; }
};

struct ScanRow {
  double alpha_over_sigma = 0.0;
  double delta_x = 0.0;
  double delta_k = 0.0;
  std::optional<double> delta_star;  ///< empty when no orthogonal shift exists
  std::optional<double> ratio;
  double product = 0.0;
  bool subfourier = false;
};

/// Row-major nx * nk samples of W(x, k); value(i, j) sits at (x(i), k(j)).
struct WignerGrid {
  double x0 = 0.0, dx = 0.0;
  double k0 = 0.0, dk = 0.0;
  std::size_t nx = 0, nk = 0;
  std::vector<double> values;
  double max_imag_residue = 0.0;

  double x(std::size_t i) const noexcept { return x0 + static_cast<double>(i) * dx; }
  double k(std::size_t j) const noexcept { return k0 + static_cast<double>(j) * dk; }
  double value(std::size_t i, std::size_t j) const { return values[i * nk + j]; }
  double riemann_sum() const;
  std::vector<double> x_marginal() const;
  std::vector<double> k_marginal() const;
};

// All operations below require a normalized state (NotNormalized otherwise).

KernelMoments kernel_moments(const SuperpositionState& state);
double uncertainty_x(const SuperpositionState& state);
/// Throws NegativeVariance if the assembled variance is below -1e-12.
double uncertainty_k(const SuperpositionState& state);
UncertaintyReport uncertainty_report(const SuperpositionState& state);

/// O(dk) = <displace(state, 0, dk) | state>.
Complex overlap_response(const SuperpositionState& state, double delta_k);
/// O(dx, dk) = <displace(state, dx, dk) | state>.
Complex overlap_response_2d(const SuperpositionState& state, double delta_x, double delta_k);

/// Smallest delta in (0, k_max] with O(delta) = 0. Throws NoRoot when none
/// exists, InvalidRange when k_max <= 0.
OrthogonalityResult find_delta_star(const SuperpositionState& state, double k_max);

/// find_delta_star with ratio = delta_star / delta_k attached.
OrthogonalityResult subfourier_ratio(const SuperpositionState& state, double k_max);

/// k_max that is guaranteed to contain the first zero of a cat with this
/// alpha (the zero sits below pi / alpha).
double default_k_max(const SuperpositionState& state);

/// One row per alpha/sigma in a uniform grid over [ratio_min, ratio_max] for
/// cat(alpha, sigma, 0). Rows are evaluated concurrently and returned in
/// grid order. Throws InvalidRange for steps < 2 or a non-positive range.
std::vector<ScanRow> regime_scan(double ratio_min, double ratio_max, double sigma, int steps);
ScanRow scan_row(double alpha_over_sigma, double sigma);

/// W(x, k) = (1/pi) Int psi*(x + y) psi(x - y) exp(2 i k y) dy from the
/// pairwise closed form. Throws GridTooCoarse when the window misses the
/// state support or the spacing cannot resolve the interference terms.
WignerGrid wigner_grid(const SuperpositionState& state, double x_min, double x_max,
                       std::size_t nx, double k_min, double k_max, std::size_t nk);

/// Smallest window that wigner_grid accepts for this state.
struct PhaseSpaceWindow {
  double x_min, x_max, k_min, k_max;
};
PhaseSpaceWindow wigner_support(const SuperpositionState& state);

namespace detail {
/// O(delta) divided by the magnitude of its largest pair term, so that the
/// Gaussian envelope does not hide zeros at large delta.
Complex relative_overlap_response(const SuperpositionState& state, double delta_k);
}  // namespace detail

/// Closed forms for the even cat cat(alpha, sigma, k) with
/// eps = exp(-alpha^2 / (2 sigma^2)). Used as the reference the kernels and
/// the quadrature oracle are compared against.
namespace cat_closed_form {

double overlap_factor(double alpha, double sigma);
double norm_constant(double alpha, double sigma);
double delta_x(double alpha, double sigma);
/// Delta_k^2 = 1/(4 sigma^2) - alpha^2 eps / (4 sigma^4 (1 + eps)).
double delta_k(double alpha, double sigma);
double overlap(double alpha, double sigma, double delta);
/// arccos(-eps) / alpha; throws NoRoot for alpha == 0.
double delta_star(double alpha, double sigma);

/// Printed alternatives for the wavenumber variance. Each may be negative.
double variance_from_printed_second_moment(double alpha, double sigma);
double variance_from_printed_width(double alpha, double sigma);
double variance_kernel_form(double alpha, double sigma);
/// The printed uncertainty product (reported only, not trusted).
double printed_product(double alpha, double sigma, double hbar);

}  // namespace cat_closed_form

}  // namespace subfourier
