#pragma once

#include <complex>
#include <vector>

#include "subfourier/states.hpp"

namespace subfourier {

/// Parameters of one pair of components entering a bilinear integral
/// <g_a exp(i carrier_a x) | ... | g_b exp(i carrier_b x)>.
struct PairKey {
  double center_a = 0.0;
  double center_b = 0.0;
  double carrier_a = 0.0;
  double carrier_b = 0.0;
  double sigma = 1.0;
};

PairKey pair_key(const GaussianComponent& a, const GaussianComponent& b, double sigma);

/// Dense Hermitian matrix, row-major.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  /// conj(c)^T M c
  Complex quadratic_form(const std::vector<Complex>& c) const;
  double hermiticity_defect() const;

 private:
  std::size_t n_;
  std::vector<Complex> data_;
};

// All kernels return unnormalized integrals; state normalization is applied
// once, by the caller.

/// Integral of g_a g_b exp(i (carrier_b - carrier_a) x) over the real line.
Complex pair_overlap(const PairKey& key);

/// Integral of g_a g_b x^order at matched carriers (order 0, 1 or 2).
/// Throws CarrierMismatch when the carriers differ.
Complex pair_x_moment(const PairKey& key, int order);

/// Same integral for arbitrary carriers. The carrier difference moves the
/// product Gaussian's mean into the complex plane, m + i sigma^2 (k_b - k_a).
Complex pair_x_moment_general(const PairKey& key, int order);

/// Matrix element <a| (-i d/dx)^order |b> for order 1 or 2, assembled from the
/// x-moment kernels with the analytic component derivative.
Complex pair_p_moment(const PairKey& key, int order);

HermitianMatrix gram_matrix(const SuperpositionState& state);

namespace detail {
/// exp(i theta) with theta reduced to [-pi, pi] first.
Complex unit_phase(double theta);
}  // namespace detail

}  // namespace subfourier
