#pragma once

#include <functional>
#include <optional>

#include "subfourier/errors.hpp"
#include "subfourier/states.hpp"

// Numerical ground truth for the closed forms. Nothing in this header calls
// into the kernels; integrands are built from point evaluations only.
namespace subfourier::oracle {

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 48;
  /// Integration window [-half_width, half_width]. When unset, state-based
  /// operations use the extreme |center| + 10 sigma.
  std::optional<double> half_width;
  /// Panels the window is cut into before adaptation starts; state-based
  /// operations raise this so every panel is at most sigma wide.
  int initial_panels = 16;
};

struct QuadratureResult {
  Complex value;
  double error_bound = 0.0;
};

class MaxDepthExceeded : public Error {
 public:
  MaxDepthExceeded(QuadratureResult best)
      : Error(ErrorKind::MaxDepthExceeded, "quadrature subdivision limit reached"), best_(best) {}
  const QuadratureResult& best_estimate() const noexcept { return best_; }

 private:
  QuadratureResult best_;
};

using Integrand = std::function<Complex(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod on [lo, hi]. Stops once the
/// summed error estimate is below max(abs_tol, rel_tol |value|), or below
/// 50 ulp of the integral of |f| when the requested tolerance is tighter
/// than rounding allows.
QuadratureResult integrate(const Integrand& f, double lo, double hi, const QuadratureSpec& spec);

/// Same on [-half_width, half_width]; spec.half_width must be set.
QuadratureResult integrate(const Integrand& f, const QuadratureSpec& spec);

/// spec with half_width and panel count resolved for the given states.
QuadratureSpec resolve_for(const QuadratureSpec& spec, const SuperpositionState& a,
                           const SuperpositionState& b);

/// <a|b> by quadrature.
Complex numeric_overlap(const SuperpositionState& a, const SuperpositionState& b,
                        const QuadratureSpec& spec = {});

enum class Moment { One, X, X2, P, P2 };

/// <a| op |b> with p = -i d/dx; derivatives are analytic per component and
/// P2 is integrated as <p a | p b>. Natural units (hbar = 1).
Complex numeric_matrix_element(const SuperpositionState& a, const SuperpositionState& b,
                               Moment which, const QuadratureSpec& spec = {});

/// <psi| op |psi>, real part.
double numeric_moment(const SuperpositionState& state, Moment which,
                      const QuadratureSpec& spec = {});

/// sup_x |(x + d/dx) psi - lambda psi| / sup_x |psi| on a dense grid.
double eigen_residual(const SuperpositionState& state, Complex eigenvalue);

/// Residual of the displaced Gaussian exp(-(x - alpha)^2 / 2) with eigenvalue alpha.
double eigen_residual(double alpha);

struct FourierWidths {
  double delta_x = 0.0;
  double delta_k = 0.0;
  double product = 0.0;
};

/// Position width from |values|^2 and wavenumber width from the FFT of the
/// samples. Throws GridTooCoarse when the position density does not decay
/// at the window edges or the spectrum does not decay before Nyquist.
FourierWidths discrete_fourier_widths(const GridState& grid);

/// |psi~(k)|^2 with psi~(k) = (2 pi)^(-1/2) sum_n psi_n exp(-i k x_n) dx,
/// the discrete-time transform of the samples at an arbitrary wavenumber.
double momentum_density(const GridState& grid, double k);

}  // namespace subfourier::oracle
