#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace subfourier {

using Complex = std::complex<double>;

/// One Gaussian wavepacket c * exp(-(x - center)^2 / (4 sigma^2)) * exp(i carrier x).
/// The width is owned by the enclosing SuperpositionState.
struct GaussianComponent {
  double center = 0.0;
  double carrier = 0.0;
  Complex amplitude{1.0, 0.0};

  friend bool operator==(const GaussianComponent&, const GaussianComponent&) = default;
};

/// Superposition of equal-width Gaussian components.
///
/// Values are immutable once built: every operation below returns a new
/// state. The normalization constant is either unset (the state is the raw
/// component sum) or the N that makes <psi|psi> = 1.
class SuperpositionState {
 public:
  /// Throws NonPositiveSigma, NonFiniteParameter or EmptyState. Components
  /// with zero amplitude are dropped before the emptiness check.
  SuperpositionState(std::vector<GaussianComponent> components, double sigma,
                     double hbar = 1.0);

  const std::vector<GaussianComponent>& components() const noexcept { return components_; }
  double sigma() const noexcept { return sigma_; }
  double hbar() const noexcept { return hbar_; }
  std::optional<double> norm_constant() const noexcept { return norm_; }
  bool is_normalized() const noexcept { return norm_.has_value(); }

  /// N if normalized, 1 otherwise.
  double scale() const noexcept { return norm_.value_or(1.0); }

  double max_abs_center() const noexcept;
  double min_center() const noexcept;
  double max_center() const noexcept;
  double min_carrier() const noexcept;
  double max_carrier() const noexcept;

  SuperpositionState with_norm_constant(std::optional<double> norm) const;

 private:
  std::vector<GaussianComponent> components_;
  double sigma_;
  double hbar_;
  std::optional<double> norm_;
};

/// Uniformly sampled complex amplitudes, x_i = x0 + i * dx.
struct GridState {
  double x0 = 0.0;
  double dx = 0.0;
  std::vector<Complex> values;

  double x(std::size_t i) const noexcept { return x0 + static_cast<double>(i) * dx; }
  std::size_t size() const noexcept { return values.size(); }
};

// Constructors. The carrier parameter k enters as exp(-i k x).
SuperpositionState make_coherent(double alpha, double sigma, double k);
SuperpositionState make_cat(double alpha, double sigma, double k);
/// Four lobes at phase-space points (+-alpha, 0) and (0, +-alpha / (2 sigma^2)).
SuperpositionState make_compass(double alpha, double sigma);

/// Sets N from the Gram quadratic form. Idempotent. Throws DegenerateState
/// when the superposition is numerically null.
SuperpositionState normalize(const SuperpositionState& state);

/// Unitary phase-space displacement psi(x) -> exp(i dk x) psi(x - dx).
/// Centers move by delta_x, carriers by delta_k, and each amplitude picks up
/// exp(-i carrier delta_x) so the relative phases of components with
/// different carriers are preserved.
SuperpositionState displace(const SuperpositionState& state, double delta_x, double delta_k);

/// psi(x) -> sqrt(lambda) psi(lambda x): sigma and centers shrink by lambda,
/// carriers grow by lambda. N is rescaled so a normalized state stays so.
SuperpositionState squeeze(const SuperpositionState& state, double lambda);

Complex evaluate(const SuperpositionState& state, double x);

/// d psi / dx, taken analytically per component.
Complex evaluate_derivative(const SuperpositionState& state, double x);

/// Samples state on [-half_width, half_width]. The window is widened to
/// cover every center +- 10 sigma; throws GridTooCoarse if the resulting
/// spacing exceeds sigma / 4 or n < 16.
GridState to_grid(const SuperpositionState& state, double half_width, std::size_t n);

}  // namespace subfourier
