#include "subfourier/oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace subfourier::oracle {

namespace {

// Kronrod 15-point abscissae and weights; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  int depth;
  Complex value;
  double error;
  double magnitude;  // Kronrod estimate of the integral of |f|

  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel apply_rule(const Integrand& f, double lo, double hi, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const Complex center = f(mid);
  Complex kronrod = kKronrodWeights[7] * center;
  Complex gauss = kGaussWeights[3] * center;
  double magnitude = kKronrodWeights[7] * std::abs(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const Complex left = f(mid - dx);
    const Complex right = f(mid + dx);
    kronrod += kKronrodWeights[j] * (left + right);
    magnitude += kKronrodWeights[j] * (std::abs(left) + std::abs(right));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (left + right);
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, depth, kronrod, std::abs(kronrod - gauss), magnitude * std::abs(half)};
}

double state_extent(const SuperpositionState& s) { return s.max_abs_center() + 10.0 * s.sigma(); }

}  // namespace

QuadratureResult integrate(const Integrand& f, double lo, double hi, const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) || spec.max_depth < 8) {
    throw std::invalid_argument("QuadratureSpec: tolerances must be > 0 and max_depth >= 8");
  }
  const int panels = std::max(1, spec.initial_panels);
  std::priority_queue<Panel> queue;
  Complex total{};
  double error = 0.0;
  double magnitude = 0.0;
  const double width = (hi - lo) / panels;
  for (int i = 0; i < panels; ++i) {
    const double a = lo + i * width;
    const double b = (i + 1 == panels) ? hi : a + width;
    Panel p = apply_rule(f, a, b, 0);
    total += p.value;
    error += p.error;
    magnitude += p.magnitude;
    queue.push(p);
  }
  // Tolerances below the rounding floor of the summed integrand are unreachable.
  constexpr double kRoundoffUlps = 50.0 * std::numeric_limits<double>::epsilon();
  auto target = [&] {
    return std::max({spec.abs_tol, spec.rel_tol * std::abs(total), kRoundoffUlps * magnitude});
  };
  while (error > target()) {
    Panel worst = queue.top();
    if (worst.depth >= spec.max_depth) throw MaxDepthExceeded({total, error});
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    Panel left = apply_rule(f, worst.lo, mid, worst.depth + 1);
    Panel right = apply_rule(f, mid, worst.hi, worst.depth + 1);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    magnitude += left.magnitude + right.magnitude - worst.magnitude;
    queue.push(left);
    queue.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  Complex resummed{};
  double bound = 0.0;
  while (!queue.empty()) {
    resummed += queue.top().value;
    bound += queue.top().error;
    queue.pop();
  }
  return {resummed, bound};
}

QuadratureResult integrate(const Integrand& f, const QuadratureSpec& spec) {
  if (!spec.half_width) throw std::invalid_argument("integrate: half_width is unset");
  return integrate(f, -*spec.half_width, *spec.half_width, spec);
}

QuadratureSpec resolve_for(const QuadratureSpec& spec, const SuperpositionState& a,
                           const SuperpositionState& b) {
  QuadratureSpec out = spec;
  if (!out.half_width) out.half_width = std::max(state_extent(a), state_extent(b));
  const double sigma = std::min(a.sigma(), b.sigma());
  const int needed = static_cast<int>(std::ceil(2.0 * *out.half_width / sigma));
  out.initial_panels = std::max(out.initial_panels, needed);
  return out;
}

Complex numeric_overlap(const SuperpositionState& a, const SuperpositionState& b,
                        const QuadratureSpec& spec) {
  return numeric_matrix_element(a, b, Moment::One, spec);
}

Complex numeric_matrix_element(const SuperpositionState& a, const SuperpositionState& b,
                               Moment which, const QuadratureSpec& spec) {
  const QuadratureSpec s = resolve_for(spec, a, b);
  const Complex minus_i(0.0, -1.0);
  Integrand f;
  switch (which) {
    case Moment::One:
      f = [&](double x) { return std::conj(evaluate(a, x)) * evaluate(b, x); };
      break;
    case Moment::X:
      f = [&](double x) { return x * std::conj(evaluate(a, x)) * evaluate(b, x); };
      break;
    case Moment::X2:
      f = [&](double x) { return x * x * std::conj(evaluate(a, x)) * evaluate(b, x); };
      break;
    case Moment::P:
      f = [&](double x) { return std::conj(evaluate(a, x)) * minus_i * evaluate_derivative(b, x); };
      break;
    case Moment::P2:
      f = [&](double x) {
        return std::conj(evaluate_derivative(a, x)) * evaluate_derivative(b, x);
      };
      break;
  }
  return integrate(f, s).value;
}

double numeric_moment(const SuperpositionState& state, Moment which, const QuadratureSpec& spec) {
  return numeric_matrix_element(state, state, which, spec).real();
}

double eigen_residual(const SuperpositionState& state, Complex eigenvalue) {
  const double lo = state.min_center() - 10.0 * state.sigma();
  const double hi = state.max_center() + 10.0 * state.sigma();
  constexpr int kSamples = 8001;
  double worst = 0.0;
  double peak = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = lo + (hi - lo) * i / (kSamples - 1);
    const Complex psi = evaluate(state, x);
    const Complex lowered = x * psi + evaluate_derivative(state, x);
    worst = std::max(worst, std::abs(lowered - eigenvalue * psi));
    peak = std::max(peak, std::abs(psi));
  }
  return worst / peak;
}

double eigen_residual(double alpha) {
  return eigen_residual(make_coherent(alpha, 1.0 / std::numbers::sqrt2, 0.0), alpha);
}

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Complex> forward_fft(const std::vector<Complex>& in) {
  const int n = static_cast<int>(in.size());
  std::vector<Complex> work(in);
  std::vector<Complex> out(in.size());
  auto* src = reinterpret_cast<fftw_complex*>(work.data());
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, src, dst, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

struct Spread {
  double mean;
  double width;
};

Spread weighted_spread(const std::vector<double>& coord, const std::vector<double>& weight) {
  double w0 = 0.0, w1 = 0.0;
  for (std::size_t i = 0; i < coord.size(); ++i) {
    w0 += weight[i];
    w1 += weight[i] * coord[i];
  }
  const double mean = w1 / w0;
  double w2 = 0.0;
  for (std::size_t i = 0; i < coord.size(); ++i) {
    const double d = coord[i] - mean;
    w2 += weight[i] * d * d;
  }
  return {mean, std::sqrt(w2 / w0)};
}

}  // namespace

FourierWidths discrete_fourier_widths(const GridState& grid) {
  const std::size_t n = grid.size();
  if (n < 16 || !(grid.dx > 0.0)) throw Error(ErrorKind::GridTooCoarse, "grid needs >= 16 samples");

  std::vector<double> xs(n), density(n);
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = grid.x(i);
    density[i] = std::norm(grid.values[i]);
    peak = std::max(peak, std::abs(grid.values[i]));
  }
  const double edge = std::max(std::abs(grid.values.front()), std::abs(grid.values.back()));
  if (edge >= 1e-10 * peak) {
    throw Error(ErrorKind::GridTooCoarse, "state does not decay inside the grid window");
  }

  const std::vector<Complex> spectrum = forward_fft(grid.values);
  std::vector<double> ks(n), power(n);
  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * grid.dx);
  double power_peak = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const auto signed_m = static_cast<double>(m < (n + 1) / 2 ? static_cast<long>(m)
                                                              : static_cast<long>(m) - static_cast<long>(n));
    ks[m] = signed_m * dk;
    power[m] = std::norm(spectrum[m]);
    power_peak = std::max(power_peak, power[m]);
  }
  // The bins adjacent to Nyquist must be empty or the spectrum is aliased.
  const std::size_t nyquist = n / 2;
  const double edge_power = std::max({power[nyquist], power[nyquist - 1], power[(nyquist + 1) % n]});
  if (edge_power >= 1e-20 * power_peak) {
    throw Error(ErrorKind::GridTooCoarse, "spectrum reaches the Nyquist wavenumber; refine dx");
  }

  const Spread x = weighted_spread(xs, density);
  const Spread k = weighted_spread(ks, power);
  return {x.width, k.width, x.width * k.width};
}

double momentum_density(const GridState& grid, double k) {
  Complex acc{};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double theta = std::remainder(-k * grid.x(i), 2.0 * std::numbers::pi);
    acc += grid.values[i] * Complex(std::cos(theta), std::sin(theta));
  }
  acc *= grid.dx / std::sqrt(2.0 * std::numbers::pi);
  return std::norm(acc);
}

}  // namespace subfourier::oracle
