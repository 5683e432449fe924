#include "subfourier/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "subfourier/errors.hpp"
#include "subfourier/kernels.hpp"

namespace subfourier {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonPositiveSigma: return "NonPositiveSigma";
    case ErrorKind::NonPositiveAlpha: return "NonPositiveAlpha";
    case ErrorKind::NonPositiveLambda: return "NonPositiveLambda";
    case ErrorKind::NonFiniteParameter: return "NonFiniteParameter";
    case ErrorKind::EmptyState: return "EmptyState";
    case ErrorKind::DegenerateState: return "DegenerateState";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::CarrierMismatch: return "CarrierMismatch";
    case ErrorKind::NegativeVariance: return "NegativeVariance";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::InvalidRange: return "InvalidRange";
    case ErrorKind::MaxDepthExceeded: return "MaxDepthExceeded";
  }
  return "Unknown";
}

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteParameter, what);
}

void require_sigma(double sigma) {
  require_finite(sigma, "sigma");
  if (!(sigma > 0.0)) throw Error(ErrorKind::NonPositiveSigma, "sigma must be > 0");
}

}  // namespace

SuperpositionState::SuperpositionState(std::vector<GaussianComponent> components, double sigma,
                                       double hbar)
    : sigma_(sigma), hbar_(hbar) {
  require_sigma(sigma);
  require_finite(hbar, "hbar");
  if (!(hbar > 0.0)) throw Error(ErrorKind::NonFiniteParameter, "hbar must be > 0");
  components_.reserve(components.size());
  for (const auto& c : components) {
    require_finite(c.center, "component center");
    require_finite(c.carrier, "component carrier");
    require_finite(c.amplitude.real(), "component amplitude");
    require_finite(c.amplitude.imag(), "component amplitude");
    if (c.amplitude != Complex{}) components_.push_back(c);
  }
  if (components_.empty()) throw Error(ErrorKind::EmptyState, "no non-zero components");
}

double SuperpositionState::max_abs_center() const noexcept {
  double m = 0.0;
  for (const auto& c : components_) m = std::max(m, std::abs(c.center));
  return m;
}

double SuperpositionState::min_center() const noexcept {
  return std::ranges::min(components_, {}, &GaussianComponent::center).center;
}

double SuperpositionState::max_center() const noexcept {
  return std::ranges::max(components_, {}, &GaussianComponent::center).center;
}

double SuperpositionState::min_carrier() const noexcept {
  return std::ranges::min(components_, {}, &GaussianComponent::carrier).carrier;
}

double SuperpositionState::max_carrier() const noexcept {
  return std::ranges::max(components_, {}, &GaussianComponent::carrier).carrier;
}

SuperpositionState SuperpositionState::with_norm_constant(std::optional<double> norm) const {
  SuperpositionState copy = *this;
  copy.norm_ = norm;
  return copy;
}

SuperpositionState make_coherent(double alpha, double sigma, double k) {
  require_sigma(sigma);
  return SuperpositionState({{alpha, -k, 1.0}}, sigma);
}

SuperpositionState make_cat(double alpha, double sigma, double k) {
  require_sigma(sigma);
  return SuperpositionState({{alpha, -k, 1.0}, {-alpha, -k, 1.0}}, sigma);
}

SuperpositionState make_compass(double alpha, double sigma) {
  require_sigma(sigma);
  require_finite(alpha, "alpha");
  if (!(alpha > 0.0)) throw Error(ErrorKind::NonPositiveAlpha, "compass alpha must be > 0");
  const double kappa = alpha / (2.0 * sigma * sigma);
  return SuperpositionState(
      {{alpha, 0.0, 1.0}, {-alpha, 0.0, 1.0}, {0.0, kappa, 1.0}, {0.0, -kappa, 1.0}}, sigma);
}

SuperpositionState normalize(const SuperpositionState& state) {
  const HermitianMatrix g = gram_matrix(state);
  std::vector<Complex> c;
  c.reserve(state.components().size());
  double diagonal = 0.0;
  for (std::size_t i = 0; i < state.components().size(); ++i) {
    c.push_back(state.components()[i].amplitude);
    diagonal += std::norm(c.back()) * g(i, i).real();
  }
  const double form = g.quadratic_form(c).real();
  if (!(form > 1e-14 * diagonal)) {
    throw Error(ErrorKind::DegenerateState, "Gram quadratic form is not positive");
  }
  return state.with_norm_constant(1.0 / std::sqrt(form));
}

SuperpositionState displace(const SuperpositionState& state, double delta_x, double delta_k) {
  std::vector<GaussianComponent> moved = state.components();
  for (auto& c : moved) {
    if (delta_x != 0.0) c.amplitude *= detail::unit_phase(-c.carrier * delta_x);
    c.center += delta_x;
    c.carrier += delta_k;
  }
  return SuperpositionState(std::move(moved), state.sigma(), state.hbar())
      .with_norm_constant(state.norm_constant());
}

SuperpositionState squeeze(const SuperpositionState& state, double lambda) {
  if (!std::isfinite(lambda) || !(lambda > 0.0)) {
    throw Error(ErrorKind::NonPositiveLambda, "squeeze factor must be > 0");
  }
  if (lambda == 1.0) return state;
  std::vector<GaussianComponent> scaled = state.components();
  for (auto& c : scaled) {
    c.center /= lambda;
    c.carrier *= lambda;
  }
  std::optional<double> norm = state.norm_constant();
  if (norm) *norm *= std::sqrt(lambda);
  return SuperpositionState(std::move(scaled), state.sigma() / lambda, state.hbar())
      .with_norm_constant(norm);
}

Complex evaluate(const SuperpositionState& state, double x) {
  const double inv = 1.0 / (4.0 * state.sigma() * state.sigma());
  Complex acc{};
  for (const auto& c : state.components()) {
    const double u = x - c.center;
    acc += c.amplitude * std::exp(-u * u * inv) * detail::unit_phase(c.carrier * x);
  }
  return state.scale() * acc;
}

Complex evaluate_derivative(const SuperpositionState& state, double x) {
  const double s2 = state.sigma() * state.sigma();
  const double inv = 1.0 / (4.0 * s2);
  Complex acc{};
  for (const auto& c : state.components()) {
    const double u = x - c.center;
    const Complex slope(-u / (2.0 * s2), c.carrier);
    acc += c.amplitude * slope * std::exp(-u * u * inv) * detail::unit_phase(c.carrier * x);
  }
  return state.scale() * acc;
}

GridState to_grid(const SuperpositionState& state, double half_width, std::size_t n) {
  if (n < 16) throw Error(ErrorKind::GridTooCoarse, "grid needs at least 16 samples");
  const double needed = state.max_abs_center() + 10.0 * state.sigma();
  const double hw = std::max(std::abs(half_width), needed);
  GridState grid;
  grid.x0 = -hw;
  grid.dx = 2.0 * hw / static_cast<double>(n - 1);
  if (grid.dx > 0.25 * state.sigma()) {
    throw Error(ErrorKind::GridTooCoarse,
                "spacing " + std::to_string(grid.dx) + " exceeds sigma/4; raise n to at least " +
                    std::to_string(static_cast<std::size_t>(std::ceil(8.0 * hw / state.sigma())) + 1));
  }
  grid.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) grid.values[i] = evaluate(state, grid.x(i));
  return grid;
}

}  // namespace subfourier
