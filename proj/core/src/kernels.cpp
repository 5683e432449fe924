#include "subfourier/kernels.hpp"

#include <cmath>
#include <numbers>

#include "subfourier/errors.hpp"

namespace subfourier {

namespace detail {

Complex unit_phase(double theta) {
  const double reduced = std::remainder(theta, 2.0 * std::numbers::pi);
  return {std::cos(reduced), std::sin(reduced)};
}

}  // namespace detail

namespace {

// Product Gaussian g_a g_b = exp(-(a-b)^2 / 8s^2) exp(-(x-m)^2 / 2s^2).
struct ProductGaussian {
  double mean;
  Complex complex_mean;
  Complex zeroth;
};

ProductGaussian product_gaussian(const PairKey& key) {
  const double s = key.sigma;
  const double s2 = s * s;
  const double m = 0.5 * (key.center_a + key.center_b);
  const double sep = key.center_a - key.center_b;
  const double dk = key.carrier_b - key.carrier_a;
  const double magnitude = std::sqrt(2.0 * std::numbers::pi) * s *
                           std::exp(-sep * sep / (8.0 * s2) - 0.5 * s2 * dk * dk);
  return {m, Complex(m, s2 * dk), magnitude * detail::unit_phase(dk * m)};
}

}  // namespace

PairKey pair_key(const GaussianComponent& a, const GaussianComponent& b, double sigma) {
  return {a.center, b.center, a.carrier, b.carrier, sigma};
}

Complex pair_overlap(const PairKey& key) { return product_gaussian(key).zeroth; }

Complex pair_x_moment_general(const PairKey& key, int order) {
  const ProductGaussian g = product_gaussian(key);
  const Complex mu = g.complex_mean;
  switch (order) {
    case 0:
      return g.zeroth;
    case 1:
      return mu * g.zeroth;
    case 2:
      return (key.sigma * key.sigma + mu * mu) * g.zeroth;
    default:
      throw std::invalid_argument("pair_x_moment: order must be 0, 1 or 2");
  }
}

Complex pair_x_moment(const PairKey& key, int order) {
  if (key.carrier_a != key.carrier_b) {
    throw Error(ErrorKind::CarrierMismatch,
                "x-moment kernels require equal carriers; use pair_x_moment_general");
  }
  return pair_x_moment_general(key, order);
}

Complex pair_p_moment(const PairKey& key, int order) {
  // (-i d/dx) [g_b e^{i q_b x}] = (q_b + i (x - b) / 2s^2) g_b e^{i q_b x}
  const double inv = 1.0 / (2.0 * key.sigma * key.sigma);
  const Complex i(0.0, 1.0);
  const Complex x0 = pair_x_moment_general(key, 0);
  const Complex x1 = pair_x_moment_general(key, 1);
  const double qa = key.carrier_a;
  const double qb = key.carrier_b;
  const double a = key.center_a;
  const double b = key.center_b;
  if (order == 1) {
    return qb * x0 + i * inv * (x1 - b * x0);
  }
  if (order == 2) {
    // <p psi_a | p psi_b>; the bra factor is conj(q_a + i (x - a) inv).
    const Complex x2 = pair_x_moment_general(key, 2);
    const Complex bra_ket_linear = i * inv * (qa * (x1 - b * x0) - qb * (x1 - a * x0));
    const Complex quadratic = inv * inv * (x2 - (a + b) * x1 + a * b * x0);
    return qa * qb * x0 + bra_ket_linear + quadratic;
  }
  throw std::invalid_argument("pair_p_moment: order must be 1 or 2");
}

Complex HermitianMatrix::quadratic_form(const std::vector<Complex>& c) const {
  Complex acc{};
  for (std::size_t i = 0; i < n_; ++i) {
    Complex row{};
    for (std::size_t j = 0; j < n_; ++j) row += (*this)(i, j) * c[j];
    acc += std::conj(c[i]) * row;
  }
  return acc;
}

double HermitianMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

HermitianMatrix gram_matrix(const SuperpositionState& state) {
  const auto& comps = state.components();
  HermitianMatrix g(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    g(i, i) = pair_overlap(pair_key(comps[i], comps[i], state.sigma()));
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      g(i, j) = pair_overlap(pair_key(comps[i], comps[j], state.sigma()));
      g(j, i) = std::conj(g(i, j));
    }
  }
  return g;
}

}  // namespace subfourier
