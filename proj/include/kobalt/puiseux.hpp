#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "kobalt/errors.hpp"
#include "kobalt/types.hpp"

// Fractional-power fitting.  A function that is real-analytic in t^(1/K) on
// [0, eps) is detected by least-squares fits of sum_j a_j t^(j/K) for
// increasing K; the smallest branch index whose residual clears a relative
// tolerance wins.

namespace kobalt {

template <typename Scalar = double>
struct PuiseuxFit {
  int branch_index = 1;                 // K
  std::vector<Scalar> coefficients;     // a_0 .. a_M, model sum a_j t^(j/K)
  Scalar residual = Scalar(0);          // max |model - data| over the grid
  Scalar epsilon = Scalar(0);           // right endpoint of the fitted interval
  bool within_tolerance = false;        // false means fit failure; best K kept
};

/// Geometric grid eps * rho^k, k = n-1 .. 0, returned ascending.  Resolves
/// fractional powers near 0 far better than a uniform grid.
template <typename Scalar = double>
RealVector<Scalar> geometric_grid(Scalar eps, Scalar rho = Scalar(0.8), int n = 40) {
  if (!(eps > Scalar(0)) || !(rho > Scalar(0)) || !(rho < Scalar(1)) || n < 2)
    throw InvalidInput("geometric_grid: need eps > 0, 0 < rho < 1, n >= 2");
  RealVector<Scalar> ts(n);
  for (int i = 0; i < n; ++i) ts(i) = eps * std::pow(rho, Scalar(n - 1 - i));
  return ts;
}

namespace detail {

// Least-squares fit of sum_{j<=M} a_j (t/t_max)^(j/K); returns scaled
// coefficients and the max residual on the grid.
template <typename Scalar>
Scalar puiseux_residual(const RealVector<Scalar>& ts, const RealVector<Scalar>& ys,
                        int K, int M, RealVector<Scalar>& scaled_coeffs) {
  const Index n = ts.size();
  const Scalar tmax = ts(n - 1);
  RealMatrix<Scalar> design(n, M + 1);
  for (Index i = 0; i < n; ++i) {
    const Scalar u = ts(i) / tmax;
    for (int j = 0; j <= M; ++j)
      design(i, j) = (j == 0) ? Scalar(1) : std::pow(u, Scalar(j) / Scalar(K));
  }
  Eigen::JacobiSVD<RealMatrix<Scalar>> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  scaled_coeffs = svd.solve(ys);
  return (design * scaled_coeffs - ys).template lpNorm<Eigen::Infinity>();
}

}  // namespace detail

/// Scans K = 1 .. K_max and returns the smallest branch index whose max
/// residual falls below rel_tol relative to the data's dynamic range.  When
/// no K qualifies the best attempt is returned with within_tolerance false.
template <typename Scalar>
PuiseuxFit<Scalar> fit_puiseux(const RealVector<Scalar>& ts, const RealVector<Scalar>& values,
                               int K_max = 6, int M = 6, Scalar rel_tol = Scalar(1e-8)) {
  const Index n = ts.size();
  if (n != values.size() || n < M + 2)
    throw InvalidInput("fit_puiseux: need matching grids with more points than coefficients");
  for (Index i = 0; i + 1 < n; ++i)
    if (!(ts(i) < ts(i + 1)) || !(ts(i) >= Scalar(0)))
      throw InvalidInput("fit_puiseux: grid must be nonnegative and strictly increasing");
  if (!values.allFinite()) throw InvalidInput("fit_puiseux: non-finite values");
  if (K_max < 1 || M < 1) throw InvalidInput("fit_puiseux: K_max and M must be positive");

  const Scalar max_abs = values.cwiseAbs().maxCoeff();
  const Scalar range = values.maxCoeff() - values.minCoeff();
  const Scalar tol = std::max(rel_tol * range,
                              Scalar(64) * std::numeric_limits<Scalar>::epsilon() * max_abs);
  const Scalar tmax = ts(n - 1);

  PuiseuxFit<Scalar> best;
  best.residual = std::numeric_limits<Scalar>::infinity();
  best.epsilon = tmax;

  for (int K = 1; K <= K_max; ++K) {
    RealVector<Scalar> scaled;
    const Scalar res = detail::puiseux_residual(ts, values, K, M, scaled);
    if (res < best.residual) {
      best.branch_index = K;
      best.residual = res;
      best.coefficients.resize(M + 1);
      for (int j = 0; j <= M; ++j)
        best.coefficients[j] = scaled(j) / std::pow(tmax, Scalar(j) / Scalar(K));
    }
    if (res <= tol) {
      best.within_tolerance = true;
      return best;
    }
  }
  best.within_tolerance = false;
  return best;
}

/// Symmetric two-sided samples of f around t = 0.
template <typename Scalar = double>
struct TwoSidedSamples {
  RealVector<Scalar> ts;       // positive, strictly increasing
  RealVector<Scalar> f_plus;   // f(+t)
  RealVector<Scalar> f_minus;  // f(-t)
  Scalar f_zero = Scalar(0);
};

enum class GaugeVerdict { Flat, PowerLike, LogLike, Inconclusive };

inline const char* to_string(GaugeVerdict v) {
  switch (v) {
    case GaugeVerdict::Flat: return "flat";
    case GaugeVerdict::PowerLike: return "power-like";
    case GaugeVerdict::LogLike: return "log-like";
    case GaugeVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

template <typename Scalar = double>
struct SmoothnessReport {
  /// Fitted coefficient of 1/t growth in the second-difference modulus
  /// omega(t) = |f(t) - 2 f(0) + f(-t)| / t^2; zero when omega stays bounded.
  Scalar c2_defect_estimate = Scalar(0);
  /// Smallest odd power of |t| with a detectable coefficient in the even
  /// part of f; empty when none shows up.
  std::optional<int> kink_order;
  struct GaugeComparison {
    Scalar power_residual = Scalar(0);
    int power_branch = 1;        // exponent 1/power_branch used by the power model
    Scalar log_residual = Scalar(0);
    GaugeVerdict verdict = GaugeVerdict::Inconclusive;
  } gauge_comparison;
};

namespace detail {

// LSQ fit of y ~ b0 + b1 * x; returns (b0, b1, max residual).
template <typename Scalar>
void line_fit(const RealVector<Scalar>& x, const RealVector<Scalar>& y,
              Scalar& b0, Scalar& b1, Scalar& max_res) {
  RealMatrix<Scalar> design(x.size(), 2);
  design.col(0).setOnes();
  design.col(1) = x;
  Eigen::JacobiSVD<RealMatrix<Scalar>> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  RealVector<Scalar> b = svd.solve(y);
  b0 = b(0);
  b1 = b(1);
  max_res = (design * b - y).template lpNorm<Eigen::Infinity>();
}

}  // namespace detail

/// Advisory smoothness classification at t = 0 from two-sided samples.
/// Reports fitted behavior only; it proves nothing.
template <typename Scalar>
SmoothnessReport<Scalar> classify_smoothness(const TwoSidedSamples<Scalar>& s,
                                             int K_max = 6, int M = 6) {
  const Index n = s.ts.size();
  if (n < 8) throw InsufficientData("classify_smoothness: need at least 8 sample pairs");
  if (s.f_plus.size() != n || s.f_minus.size() != n)
    throw InvalidInput("classify_smoothness: ragged sample arrays");
  for (Index i = 0; i < n; ++i)
    if (!(s.ts(i) > Scalar(0)) || (i + 1 < n && !(s.ts(i) < s.ts(i + 1))))
      throw InvalidInput("classify_smoothness: ts must be positive and strictly increasing");

  SmoothnessReport<Scalar> report;

  RealVector<Scalar> omega(n), inv_t(n);
  for (Index i = 0; i < n; ++i) {
    omega(i) = std::abs(s.f_plus(i) - Scalar(2) * s.f_zero + s.f_minus(i)) / (s.ts(i) * s.ts(i));
    inv_t(i) = Scalar(1) / s.ts(i);
  }

  // 1/t growth of omega; negative slopes mean omega converges.
  {
    Scalar b0, b1, res;
    detail::line_fit(inv_t, omega, b0, b1, res);
    report.c2_defect_estimate = std::max(Scalar(0), b1);
  }

  // Kink scan: the even part as a function of |t| is fit by a polynomial;
  // odd-index coefficients flag |t|^j terms.
  {
    RealVector<Scalar> even(n);
    for (Index i = 0; i < n; ++i) even(i) = (s.f_plus(i) + s.f_minus(i)) / Scalar(2);
    const Scalar tmax = s.ts(n - 1);
    const int deg = std::min<int>(M, static_cast<int>(n) - 2);
    RealMatrix<Scalar> design(n, deg + 1);
    for (Index i = 0; i < n; ++i) {
      const Scalar u = s.ts(i) / tmax;
      design(i, 0) = Scalar(1);
      for (int j = 1; j <= deg; ++j) design(i, j) = design(i, j - 1) * u;
    }
    Eigen::JacobiSVD<RealMatrix<Scalar>> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector<Scalar> coeffs = svd.solve(even);
    const Scalar scale = std::max(even.maxCoeff() - even.minCoeff(),
                                  Scalar(16) * std::numeric_limits<Scalar>::epsilon() *
                                      std::max(Scalar(1), even.cwiseAbs().maxCoeff()));
    for (int j = 1; j <= deg; j += 2) {
      if (std::abs(coeffs(j)) > Scalar(1e-6) * scale) {
        report.kink_order = j;
        break;
      }
    }
  }

  // Gauge comparison on omega: power decay C + b t^(1/K) against the
  // logarithmic gauge C + b / log(1/t).
  {
    const Scalar omega_range = omega.maxCoeff() - omega.minCoeff();
    const Scalar omega_floor = Scalar(64) * std::numeric_limits<Scalar>::epsilon() *
                               std::max(Scalar(1), omega.cwiseAbs().maxCoeff());
    auto& gc = report.gauge_comparison;
    if (omega_range <= omega_floor) {
      gc.verdict = GaugeVerdict::Flat;
    } else {
      Scalar best_power = std::numeric_limits<Scalar>::infinity();
      int best_K = 1;
      for (int K = 1; K <= K_max; ++K) {
        RealVector<Scalar> x(n);
        for (Index i = 0; i < n; ++i) x(i) = std::pow(s.ts(i), Scalar(1) / Scalar(K));
        Scalar b0, b1, res;
        detail::line_fit(x, omega, b0, b1, res);
        if (res < best_power) {
          best_power = res;
          best_K = K;
        }
      }
      Scalar log_res = std::numeric_limits<Scalar>::infinity();
      if (s.ts(n - 1) < Scalar(1)) {  // 1/log(1/t) is usable only for t < 1
        RealVector<Scalar> xlog(n);
        for (Index i = 0; i < n; ++i) xlog(i) = Scalar(1) / std::log(Scalar(1) / s.ts(i));
        Scalar b0, b1;
        detail::line_fit(xlog, omega, b0, b1, log_res);
      }

      gc.power_residual = best_power;
      gc.power_branch = best_K;
      gc.log_residual = log_res;
      if (best_power * Scalar(2) < log_res)
        gc.verdict = GaugeVerdict::PowerLike;
      else if (log_res * Scalar(2) < best_power)
        gc.verdict = GaugeVerdict::LogLike;
      else
        gc.verdict = GaugeVerdict::Inconclusive;
    }
  }

  return report;
}

}  // namespace kobalt
