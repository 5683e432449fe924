#include "subfourier/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <thread>

#include "subfourier/errors.hpp"
#include "subfourier/kernels.hpp"

namespace subfourier {

namespace {

void require_normalized(const SuperpositionState& state) {
  if (!state.is_normalized()) throw Error(ErrorKind::NotNormalized, "normalize() the state first");
}

// Sum over pairs of conj(c_i) c_j kernel(i, j), times N^2.
template <typename Kernel>
Complex contract(const SuperpositionState& state, Kernel&& kernel) {
  const auto& comps = state.components();
  Complex acc{};
  for (const auto& a : comps) {
    for (const auto& b : comps) {
      acc += std::conj(a.amplitude) * b.amplitude * kernel(pair_key(a, b, state.sigma()));
    }
  }
  const double n = state.scale();
  return n * n * acc;
}

double checked_sqrt(double variance, const char* what) {
  if (variance < -1e-12) {
    throw Error(ErrorKind::NegativeVariance, std::string(what) + " variance " + std::to_string(variance));
  }
  return std::sqrt(std::max(variance, 0.0));
}

}  // namespace

KernelMoments kernel_moments(const SuperpositionState& state) {
  require_normalized(state);
  KernelMoments m;
  m.mean_x = contract(state, [](const PairKey& k) { return pair_x_moment_general(k, 1); }).real();
  m.mean_x2 = contract(state, [](const PairKey& k) { return pair_x_moment_general(k, 2); }).real();
  m.mean_k = contract(state, [](const PairKey& k) { return pair_p_moment(k, 1); }).real();
  m.mean_k2 = contract(state, [](const PairKey& k) { return pair_p_moment(k, 2); }).real();
  return m;
}

double uncertainty_x(const SuperpositionState& state) {
  const KernelMoments m = kernel_moments(state);
  return checked_sqrt(m.mean_x2 - m.mean_x * m.mean_x, "position");
}

double uncertainty_k(const SuperpositionState& state) {
  const KernelMoments m = kernel_moments(state);
  return checked_sqrt(m.mean_k2 - m.mean_k * m.mean_k, "wavenumber");
}

UncertaintyReport uncertainty_report(const SuperpositionState& state) {
  const KernelMoments m = kernel_moments(state);
  UncertaintyReport r;
  r.delta_x = checked_sqrt(m.mean_x2 - m.mean_x * m.mean_x, "position");
  r.delta_k = checked_sqrt(m.mean_k2 - m.mean_k * m.mean_k, "wavenumber");
  r.delta_p = state.hbar() * r.delta_k;
  r.product = r.delta_x * r.delta_p;
  r.mean_x = m.mean_x;
  r.mean_p = state.hbar() * m.mean_k;
  return r;
}

Complex overlap_response_2d(const SuperpositionState& state, double delta_x, double delta_k) {
  require_normalized(state);
  const SuperpositionState moved = displace(state, delta_x, delta_k);
  const auto& bra = moved.components();
  const auto& ket = state.components();
  Complex acc{};
  for (const auto& a : bra) {
    for (const auto& b : ket) {
      acc += std::conj(a.amplitude) * b.amplitude * pair_overlap(pair_key(a, b, state.sigma()));
    }
  }
  const double n = state.scale();
  return n * n * acc;
}

Complex overlap_response(const SuperpositionState& state, double delta_k) {
  return overlap_response_2d(state, 0.0, delta_k);
}

namespace detail {

Complex relative_overlap_response(const SuperpositionState& state, double delta_k) {
  const auto& comps = state.components();
  const double s = state.sigma();
  const double s2 = s * s;
  struct Term {
    double log_magnitude;
    Complex phase;
  };
  std::vector<Term> terms;
  terms.reserve(comps.size() * comps.size());
  double largest = -std::numeric_limits<double>::infinity();
  for (const auto& a : comps) {
    for (const auto& b : comps) {
      const double sep = a.center - b.center;
      const double dk = b.carrier - (a.carrier + delta_k);
      const double m = 0.5 * (a.center + b.center);
      const Complex weight = std::conj(a.amplitude) * b.amplitude;
      const double log_mag =
          std::log(std::abs(weight)) - sep * sep / (8.0 * s2) - 0.5 * s2 * dk * dk;
      terms.push_back({log_mag, weight / std::abs(weight) * unit_phase(dk * m)});
      largest = std::max(largest, log_mag);
    }
  }
  Complex acc{};
  for (const auto& t : terms) acc += std::exp(t.log_magnitude - largest) * t.phase;
  return acc;
}

}  // namespace detail

namespace {

double scan_step(const SuperpositionState& state) {
  const double a = state.max_abs_center();
  const double by_width = 1.0 / (8.0 * state.sigma());
  return a > 0.0 ? std::min(std::numbers::pi / (8.0 * a), by_width) : by_width;
}

double bisect_real_root(const SuperpositionState& state, double lo, double hi, double f_lo) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = detail::relative_overlap_response(state, mid).real();
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section minimum of |R|^2 on [lo, hi].
double minimize_magnitude(const SuperpositionState& state, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double d) { return std::norm(detail::relative_overlap_response(state, d)); };
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int iter = 0; iter < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi;
       ++iter) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

OrthogonalityResult find_delta_star(const SuperpositionState& state, double k_max) {
  require_normalized(state);
  if (!std::isfinite(k_max) || !(k_max > 0.0)) {
    throw Error(ErrorKind::InvalidRange, "k_max must be a positive finite number");
  }
  const double h = scan_step(state);
  const auto intervals = static_cast<std::size_t>(std::ceil(k_max / h));
  std::vector<double> deltas(intervals + 1);
  std::vector<Complex> response(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    deltas[i] = std::min(static_cast<double>(i) * h, k_max);
    response[i] = detail::relative_overlap_response(state, deltas[i]);
  }

  auto is_real = [](Complex r) { return std::abs(r.imag()) <= 1e-12 * std::max(1.0, std::abs(r)); };
  auto finish = [&](double root, double lo, double hi) {
    OrthogonalityResult out;
    out.delta_star = root;
    out.residual = std::abs(overlap_response(state, root));
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    return out;
  };

  for (std::size_t i = 1; i <= intervals; ++i) {
    const Complex lo = response[i - 1];
    const Complex hi = response[i];
    if (is_real(lo) && is_real(hi)) {
      if (hi.real() == 0.0) return finish(deltas[i], deltas[i - 1], deltas[i]);
      if ((lo.real() < 0.0) != (hi.real() < 0.0)) {
        const double root = bisect_real_root(state, deltas[i - 1], deltas[i], lo.real());
        // A sign flip of the real part is only a zero if the response stays real.
        if (std::abs(detail::relative_overlap_response(state, root)) < 1e-10) {
          return finish(root, deltas[i - 1], deltas[i]);
        }
      }
    }
    // Complex responses may touch zero without crossing the real axis.
    if (i >= 2) {
      const double prev = std::norm(response[i - 2]);
      const double here = std::norm(response[i - 1]);
      const double next = std::norm(hi);
      if (here <= prev && here <= next) {
        const double d = minimize_magnitude(state, deltas[i - 2], deltas[i]);
        if (std::norm(detail::relative_overlap_response(state, d)) < 1e-20) {
          return finish(d, deltas[i - 2], deltas[i]);
        }
      }
    }
  }
  throw Error(ErrorKind::NoRoot, "no orthogonal shift in (0, " + std::to_string(k_max) + "]");
}

OrthogonalityResult subfourier_ratio(const SuperpositionState& state, double k_max) {
  OrthogonalityResult r = find_delta_star(state, k_max);
  r.ratio = r.delta_star / uncertainty_k(state);
  return r;
}

double default_k_max(const SuperpositionState& state) {
  const double a = state.max_abs_center();
  const double by_width = 8.0 / state.sigma();
  return a > 0.0 ? std::max(4.0 * std::numbers::pi / a, by_width) : by_width;
}

ScanRow scan_row(double alpha_over_sigma, double sigma) {
  const SuperpositionState state = normalize(make_cat(alpha_over_sigma * sigma, sigma, 0.0));
  const UncertaintyReport report = uncertainty_report(state);
  ScanRow row;
  row.alpha_over_sigma = alpha_over_sigma;
  row.delta_x = report.delta_x;
  row.delta_k = report.delta_k;
  row.product = report.product;
  try {
    const OrthogonalityResult root = find_delta_star(state, default_k_max(state));
    row.delta_star = root.delta_star;
    row.ratio = root.delta_star / report.delta_k;
    row.subfourier = *row.ratio < 1.0;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoRoot) throw;
  }
  return row;
}

std::vector<ScanRow> regime_scan(double ratio_min, double ratio_max, double sigma, int steps) {
  if (steps < 2 || !std::isfinite(ratio_min) || !std::isfinite(ratio_max) || !(ratio_min > 0.0) ||
      !(ratio_max > ratio_min)) {
    throw Error(ErrorKind::InvalidRange, "need 0 < min < max and steps >= 2");
  }
  if (!(sigma > 0.0)) throw Error(ErrorKind::NonPositiveSigma, "sigma must be > 0");

  const auto n = static_cast<std::size_t>(steps);
  std::vector<ScanRow> rows(n);
  auto point = [&](std::size_t i) {
    return ratio_min + (ratio_max - ratio_min) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, n);
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) rows[i] = scan_row(point(i), sigma);
    }));
  }
  for (auto& j : jobs) j.get();
  return rows;
}

namespace cat_closed_form {

double overlap_factor(double alpha, double sigma) {
  return std::exp(-alpha * alpha / (2.0 * sigma * sigma));
}

double norm_constant(double alpha, double sigma) {
  const double eps = overlap_factor(alpha, sigma);
  return 1.0 / std::sqrt(2.0 * std::sqrt(2.0 * std::numbers::pi) * sigma * (1.0 + eps));
}

double delta_x(double alpha, double sigma) {
  const double eps = overlap_factor(alpha, sigma);
  return std::sqrt(sigma * sigma + alpha * alpha / (1.0 + eps));
}

double variance_kernel_form(double alpha, double sigma) {
  const double eps = overlap_factor(alpha, sigma);
  const double s2 = sigma * sigma;
  return 1.0 / (4.0 * s2) - alpha * alpha * eps / (4.0 * s2 * s2 * (1.0 + eps));
}

double delta_k(double alpha, double sigma) { return std::sqrt(variance_kernel_form(alpha, sigma)); }

double overlap(double alpha, double sigma, double delta) {
  const double eps = overlap_factor(alpha, sigma);
  return std::exp(-0.5 * sigma * sigma * delta * delta) * (std::cos(alpha * delta) + eps) /
         (1.0 + eps);
}

double delta_star(double alpha, double sigma) {
  if (alpha == 0.0) throw Error(ErrorKind::NoRoot, "single Gaussian has no orthogonal shift");
  return std::acos(-overlap_factor(alpha, sigma)) / std::abs(alpha);
}

double variance_from_printed_second_moment(double alpha, double sigma) {
  // <p^2> = k^2 + 1/(2 s^2) - alpha^2 eps / (4 s^2 (1 + eps)), minus <p>^2 = k^2.
  const double eps = overlap_factor(alpha, sigma);
  const double s2 = sigma * sigma;
  return 1.0 / (2.0 * s2) - alpha * alpha * eps / (4.0 * s2 * (1.0 + eps));
}

double variance_from_printed_width(double alpha, double sigma) {
  const double eps = overlap_factor(alpha, sigma);
  const double s2 = sigma * sigma;
  return 1.0 / (4.0 * s2) - alpha * alpha / (4.0 * s2 * s2 * (1.0 + eps));
}

double printed_product(double alpha, double sigma, double hbar) {
  // hbar / (2 s^2 (1 + E)) sqrt(s^4 (1 + E)^2 - alpha^4) with E = exp(+alpha^2 / 2 s^2),
  // rewritten so E never overflows.
  const double s2 = sigma * sigma;
  const double inv_one_plus_e = overlap_factor(alpha, sigma) / (1.0 + overlap_factor(alpha, sigma));
  const double a4 = alpha * alpha * alpha * alpha;
  const double radicand = s2 * s2 - a4 * inv_one_plus_e * inv_one_plus_e;
  return hbar / (2.0 * s2) * std::sqrt(radicand);
}

}  // namespace cat_closed_form

}  // namespace subfourier
