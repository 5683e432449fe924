#include <algorithm>
#include <cmath>
#include <numbers>

#include "subfourier/analysis.hpp"
#include "subfourier/errors.hpp"
#include "subfourier/kernels.hpp"

namespace subfourier {

double WignerGrid::riemann_sum() const {
  double acc = 0.0;
  for (double w : values) acc += w;
  return acc * dx * dk;
}

std::vector<double> WignerGrid::x_marginal() const {
  std::vector<double> out(nx, 0.0);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < nk; ++j) out[i] += value(i, j);
    out[i] *= dk;
  }
  return out;
}

std::vector<double> WignerGrid::k_marginal() const {
  std::vector<double> out(nk, 0.0);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < nk; ++j) out[j] += value(i, j);
  for (double& v : out) v *= dx;
  return out;
}

PhaseSpaceWindow wigner_support(const SuperpositionState& state) {
  const double s = state.sigma();
  return {state.min_center() - 8.0 * s, state.max_center() + 8.0 * s,
          state.min_carrier() - 4.0 / s, state.max_carrier() + 4.0 / s};
}

namespace {

std::size_t samples_for(double span, double step) {
  return static_cast<std::size_t>(std::ceil(span / step)) + 1;
}

}  // namespace

WignerGrid wigner_grid(const SuperpositionState& state, double x_min, double x_max,
                       std::size_t nx, double k_min, double k_max, std::size_t nk) {
  if (!state.is_normalized()) throw Error(ErrorKind::NotNormalized, "normalize() the state first");
  if (nx < 2 || nk < 2 || !(x_max > x_min) || !(k_max > k_min)) {
    throw Error(ErrorKind::GridTooCoarse, "need nx, nk >= 2 and increasing ranges");
  }
  const double s = state.sigma();
  const PhaseSpaceWindow support = wigner_support(state);
  const double slack = 1e-9 * std::max(1.0, s);
  if (x_min > support.x_min + slack || x_max < support.x_max - slack ||
      k_min > support.k_min + slack / (s * s) || k_max < support.k_max - slack / (s * s)) {
    throw Error(ErrorKind::GridTooCoarse,
                "window misses the state support; use at least --xmin " +
                    std::to_string(support.x_min) + " --xmax " + std::to_string(support.x_max) +
                    " --kmin " + std::to_string(support.k_min) + " --kmax " +
                    std::to_string(support.k_max));
  }

  const double carrier_spread = state.max_carrier() - state.min_carrier();
  const double center_spread = state.max_center() - state.min_center();
  double max_dx = s / 4.0;
  if (carrier_spread > 0.0) max_dx = std::min(max_dx, std::numbers::pi / (4.0 * carrier_spread));
  double max_dk = 1.0 / (8.0 * s);
  if (center_spread > 0.0) max_dk = std::min(max_dk, std::numbers::pi / (4.0 * center_spread));

  WignerGrid w;
  w.nx = nx;
  w.nk = nk;
  w.x0 = x_min;
  w.k0 = k_min;
  w.dx = (x_max - x_min) / static_cast<double>(nx - 1);
  w.dk = (k_max - k_min) / static_cast<double>(nk - 1);
  if (w.dx > max_dx || w.dk > max_dk) {
    throw Error(ErrorKind::GridTooCoarse,
                "spacing cannot resolve the interference terms; use at least --nx " +
                    std::to_string(samples_for(x_max - x_min, max_dx)) + " --nk " +
                    std::to_string(samples_for(k_max - k_min, max_dk)));
  }

  // Each component pair contributes a separable term A(x) B(k):
  //   A(x) = exp(-(x - m)^2 / 2s^2) exp(i x (q_j - q_i))
  //   B(k) = exp(-2 s^2 (k - Q)^2) exp(-i (a_j - a_i)(k - Q))
  // with m, Q the mean center and carrier of the pair.
  const auto& comps = state.components();
  const double n = state.scale();
  const double prefactor = n * n * std::sqrt(2.0 * std::numbers::pi) * s / std::numbers::pi;
  std::vector<Complex> acc(nx * nk);
  std::vector<Complex> ax(nx), bk(nk);
  for (const auto& ci : comps) {
    for (const auto& cj : comps) {
      const double m = 0.5 * (ci.center + cj.center);
      const double q = 0.5 * (ci.carrier + cj.carrier);
      const Complex weight = prefactor * std::conj(ci.amplitude) * cj.amplitude;
      for (std::size_t i = 0; i < nx; ++i) {
        const double u = w.x(i) - m;
        ax[i] = std::exp(-u * u / (2.0 * s * s)) *
                detail::unit_phase(w.x(i) * (cj.carrier - ci.carrier));
      }
      for (std::size_t j = 0; j < nk; ++j) {
        const double v = w.k(j) - q;
        bk[j] = weight * std::exp(-2.0 * s * s * v * v) *
                detail::unit_phase(-(cj.center - ci.center) * v);
      }
      for (std::size_t i = 0; i < nx; ++i) {
        Complex* row = acc.data() + i * nk;
        for (std::size_t j = 0; j < nk; ++j) row[j] += ax[i] * bk[j];
      }
    }
  }
  w.values.resize(nx * nk);
  for (std::size_t idx = 0; idx < acc.size(); ++idx) {
    w.values[idx] = acc[idx].real();
    w.max_imag_residue = std::max(w.max_imag_residue, std::abs(acc[idx].imag()));
  }
  return w;
}

}  // namespace subfourier
