#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

#include "subfourier/subfourier.hpp"

namespace subfourier::cli {

namespace {

constexpr double kPi = std::numbers::pi;

double scaled_error(Complex closed, Complex numeric, double floor) {
  return std::abs(closed - numeric) / std::max(std::abs(numeric), floor);
}

CheckResult upper(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, false, value <= threshold};
}

CheckResult lower(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, true, value > threshold};
}

SuperpositionState single(double center, double carrier, double sigma) {
  return SuperpositionState({{center, carrier, 1.0}}, sigma);
}

class Suite {
 public:
  explicit Suite(const VerifyOptions& o) : opts_(o), rng_(o.seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  Complex perturb(Complex v) const { return v * (1.0 + opts_.kernel_perturbation); }
  double perturb(double v) const { return v * (1.0 + opts_.kernel_perturbation); }

  void run(VerifyReport& report) {
    kernels(report);
    normalization(report);
    widths(report);
    overlap(report);
    eigenstate(report);
    fourier(report);
    heisenberg(report);
  }

 private:
  void kernels(VerifyReport& report) {
    double worst_overlap = 0.0, worst_x = 0.0, worst_p = 0.0;
    oracle::QuadratureSpec tight;
    tight.abs_tol = 1e-15;
    tight.rel_tol = 1e-13;
    for (int trial = 0; trial < 200; ++trial) {
      const double s = uniform(0.3, 3.0);
      const PairKey key{uniform(-5, 5) * s, uniform(-5, 5) * s, uniform(-5, 5) / s,
                        uniform(-5, 5) / s, s};
      const auto a = single(key.center_a, key.carrier_a, s);
      const auto b = single(key.center_b, key.carrier_b, s);
      // 1e-3 floor: relative 1e-9 becomes absolute 1e-12 near zeros.
      auto err = [&](Complex closed, oracle::Moment m) {
        return scaled_error(perturb(closed), oracle::numeric_matrix_element(a, b, m, tight), 1e-3);
      };
      worst_overlap = std::max(worst_overlap, err(pair_overlap(key), oracle::Moment::One));
      worst_x = std::max({worst_x, err(pair_x_moment_general(key, 1), oracle::Moment::X),
                          err(pair_x_moment_general(key, 2), oracle::Moment::X2)});
      worst_p = std::max({worst_p, err(pair_p_moment(key, 1), oracle::Moment::P),
                          err(pair_p_moment(key, 2), oracle::Moment::P2)});
    }
    report.checks.push_back(upper("kernel pair_overlap vs quadrature (200 keys)", worst_overlap, 1e-9));
    report.checks.push_back(upper("kernel x-moments vs quadrature (200 keys)", worst_x, 1e-9));
    report.checks.push_back(upper("kernel p-moments vs quadrature (200 keys)", worst_p, 1e-9));
  }

  void normalization(VerifyReport& report) {
    double worst_formula = 0.0;
    const double s = 1.0 / std::numbers::sqrt2;
    for (int i = 0; i < 20; ++i) {
      const double alpha = 4.0 * i / 19.0;
      const double n = *normalize(make_cat(alpha, s, 0.0)).norm_constant();
      const double closed = std::pow(kPi, -0.25) / std::sqrt(2.0 * (1.0 + std::exp(-alpha * alpha)));
      worst_formula = std::max(worst_formula, std::abs(perturb(n) - closed) / closed);
    }
    report.checks.push_back(upper("cat N closed form at sigma = 1/sqrt(2)", worst_formula, 1e-12));

    double worst_norm = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double sigma = uniform(0.3, 3.0);
      const auto st = normalize(make_cat(uniform(0.0, 6.0) * sigma, sigma, uniform(-4, 4)));
      const double n = *st.norm_constant();
      const double q = oracle::numeric_moment(st.with_norm_constant(std::nullopt), oracle::Moment::One);
      worst_norm = std::max(worst_norm, std::abs(perturb(n) * std::sqrt(q) - 1.0));
    }
    report.checks.push_back(upper("Gram N vs quadrature norm (50 cats)", worst_norm, 1e-8));
  }

  void widths(VerifyReport& report) {
    double worst_dx = 0.0, worst_dk = 0.0, worst_closed_dk = 0.0;
    const std::vector<double> ratios = {0.0, 0.5, 1.0, 2.0, 4.0, 8.0};
    std::vector<bool> survives(3, true);
    for (double sigma : {1.0, 0.7}) {
      for (double r : ratios) {
        const double alpha = r * sigma;
        const auto st = normalize(make_cat(alpha, sigma, 0.0));
        const double x1 = oracle::numeric_moment(st, oracle::Moment::X);
        const double x2 = oracle::numeric_moment(st, oracle::Moment::X2);
        const double p1 = oracle::numeric_moment(st, oracle::Moment::P);
        const double p2 = oracle::numeric_moment(st, oracle::Moment::P2);
        const double q_dx = std::sqrt(x2 - x1 * x1);
        const double q_dk = std::sqrt(p2 - p1 * p1);
        worst_dx = std::max(worst_dx, std::abs(perturb(cat_closed_form::delta_x(alpha, sigma)) - q_dx) / q_dx);
        worst_dk = std::max(worst_dk, std::abs(perturb(uncertainty_k(st)) - q_dk) / q_dk);

        auto width = [](double v) { return v >= 0.0 ? std::sqrt(v) : std::nan(""); };
        DeltaKComparison row;
        row.alpha_over_sigma = r;
        row.sigma = sigma;
        row.quadrature = q_dk;
        row.kernel_form = perturb(width(cat_closed_form::variance_kernel_form(alpha, sigma)));
        row.printed_second_moment = width(cat_closed_form::variance_from_printed_second_moment(alpha, sigma));
        row.printed_width = width(cat_closed_form::variance_from_printed_width(alpha, sigma));
        row.printed_product = cat_closed_form::printed_product(alpha, sigma, 1.0);
        row.kernel_product = uncertainty_report(st).product;
        worst_closed_dk = std::max(worst_closed_dk, std::abs(row.kernel_form - q_dk) / q_dk);
        const double variants[3] = {row.kernel_form, row.printed_second_moment, row.printed_width};
        for (int v = 0; v < 3; ++v) {
          // NaN compares false, so a negative printed variance never survives.
          if (!(std::abs(variants[v] - q_dk) <= 1e-8 * q_dk)) survives[v] = false;
        }
        report.delta_k_table.push_back(row);
      }
    }
    report.checks.push_back(upper("Delta x closed form vs quadrature", worst_dx, 1e-9));
    report.checks.push_back(upper("Delta k kernel assembly vs quadrature", worst_dk, 1e-8));
    report.checks.push_back(upper("Delta k closed form vs quadrature", worst_closed_dk, 1e-8));
    const char* names[3] = {"kernel-assembled", "printed <p^2> line", "printed Delta p line"};
    for (int v = 0; v < 3; ++v)
      if (survives[v]) report.surviving_variants.emplace_back(names[v]);
    const bool only_kernel = report.surviving_variants.size() == 1 && survives[0];
    report.checks.push_back({"Delta p adjudication: exactly one variant survives",
                             static_cast<double>(report.surviving_variants.size()), 1.0, false,
                             only_kernel});
  }

  void overlap(VerifyReport& report) {
    double worst = 0.0, worst_zero = 0.0, worst_residual = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double sigma = uniform(0.3, 3.0);
      const double alpha = uniform(0.0, 6.0) * sigma;
      const double delta = uniform(0.0, 3.0) / sigma;
      const auto st = normalize(make_cat(alpha, sigma, 0.0));
      const Complex numeric = oracle::numeric_overlap(displace(st, 0.0, delta), st);
      worst = std::max(worst, scaled_error(perturb(cat_closed_form::overlap(alpha, sigma, delta)), numeric, 1e-4));

      if (alpha > 0.05 * sigma) {
        const OrthogonalityResult root = find_delta_star(st, default_k_max(st));
        const double eps = cat_closed_form::overlap_factor(alpha, sigma);
        worst_zero = std::max(worst_zero, std::abs(std::cos(alpha * root.delta_star) + eps));
        worst_residual = std::max(
            worst_residual, std::abs(oracle::numeric_overlap(displace(st, 0.0, root.delta_star), st)));
      }
    }
    report.checks.push_back(upper("overlap O(delta) closed form vs quadrature (50 cats)", worst, 1e-8));
    report.checks.push_back(upper("zero condition |cos(alpha delta*) + eps|", worst_zero, 1e-10));
    report.checks.push_back(upper("quadrature overlap at delta*", worst_residual, 1e-10));
  }

  void eigenstate(VerifyReport& report) {
    double worst = 0.0;
    for (double alpha : {0.0, 0.7, 2.5, 5.0}) worst = std::max(worst, oracle::eigen_residual(alpha));
    report.checks.push_back(upper("coherent state eigen residual", worst, 1e-12));
    const auto cat = make_cat(2.5, 1.0 / std::numbers::sqrt2, 0.0);
    report.checks.push_back(lower("cat state is not an eigenstate", oracle::eigen_residual(cat, 2.5), 0.1));
  }

  void fourier(VerifyReport& report) {
    const std::vector<SuperpositionState> states = {
        make_coherent(0, 1, 0),   make_cat(2, 1, 0),    make_cat(1, 0.5, 2),
        make_cat(3, 1, -1),       make_compass(2, 1),   make_compass(4, 1),
        make_coherent(1.5, 0.8, 1), squeeze(make_cat(2, 1, 0), 2.0), make_cat(0.5, 1, 0),
        make_cat(4, 1, 0)};
    double worst = 0.0;
    for (const auto& raw : states) {
      const auto st = normalize(raw);
      const auto w = oracle::discrete_fourier_widths(to_grid(st, 0.0, 4096));
      worst = std::max({worst, std::abs(perturb(uncertainty_x(st)) - w.delta_x) / w.delta_x,
                        std::abs(perturb(uncertainty_k(st)) - w.delta_k) / w.delta_k});
    }
    report.checks.push_back(upper("grid/FFT widths vs closed forms (10 states)", worst, 1e-6));
  }

  void heisenberg(VerifyReport& report) {
    double floor = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
      const double sigma = uniform(0.3, 3.0);
      const double alpha = uniform(0.05, 6.0) * sigma;
      SuperpositionState st = [&] {
        switch (i % 3) {
          case 0: return make_coherent(alpha, sigma, uniform(-4, 4));
          case 1: return make_cat(alpha, sigma, uniform(-4, 4));
          default: return make_compass(alpha, sigma);
        }
      }();
      if (i % 2 == 1) st = squeeze(st, uniform(0.3, 3.0));
      floor = std::min(floor, uncertainty_report(normalize(st)).product);
    }
    report.checks.push_back(lower("Heisenberg floor min(Delta x Delta p) - 1/2", floor - 0.5, -1e-12));
  }

  VerifyOptions opts_;
  std::mt19937_64 rng_;
};

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport run_verification(const VerifyOptions& options) {
  VerifyReport report;
  Suite(options).run(report);
  return report;
}

void print_verification(const VerifyReport& report, std::ostream& out) {
  for (const auto& c : report.checks) {
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << format_number(c.value)
        << (c.lower_bound ? " > " : " <= ") << format_number(c.threshold) << '\n';
  }
  out << "\nDelta k three-way comparison (natural units, k = 0)\n";
  out << "alpha/sigma  sigma  quadrature  kernel-assembled  printed<p^2>  printedDeltap"
         "  product(kernel)  product(printed)\n";
  for (const auto& r : report.delta_k_table) {
    char line[256];
    std::snprintf(line, sizeof line, "%11.3g %6.3g %11.8f %17.8f %13.8f %14.8f %16.8f %17.8f\n",
                  r.alpha_over_sigma, r.sigma, r.quadrature, r.kernel_form,
                  r.printed_second_moment, r.printed_width, r.kernel_product, r.printed_product);
    out << line;
  }
  out << "surviving variant(s):";
  if (report.surviving_variants.empty()) out << " none";
  for (const auto& v : report.surviving_variants) out << ' ' << v << ';';
  out << "\nverdict: " << (report.all_passed() ? "all checks passed" : "verification FAILED") << '\n';
}

}  // namespace subfourier::cli
