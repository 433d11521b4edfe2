#include "cosmoharvest/oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace cosmoharvest::oracles {

  namespace {

    constexpr double pi     = std::numbers::pi;
    constexpr double c_pref = 1.0 / (16.0 * pi * pi * pi);

    template <class F> double panel_sum(F const &f, double kmax, double panel) {
      using boost::math::quadrature::gauss_kronrod;
      double sum = 0.0, comp = 0.0;
      for (double lo = 0.0; lo < kmax; lo += panel) {
        double const hi = std::min(lo + panel, kmax);
        double const v  = gauss_kronrod<double, 61>::integrate(f, lo, hi, 12, 1e-15);
        // Kahan: panel contributions alternate in sign
        double const y = v - comp;
        double const t = sum + y;
        comp           = (t - sum) - y;
        sum            = t;
      }
      return sum;
    }

    std::vector<double> trapezoid_nodes(double lo, double hi, double step, std::vector<double> &weights) {
      auto const          n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
      double const        h = (hi - lo) / static_cast<double>(n);
      std::vector<double> x(n + 1);
      weights.assign(n + 1, h);
      for (std::size_t i = 0; i <= n; ++i) x[i] = lo + h * static_cast<double>(i);
      weights.front() = weights.back() = 0.5 * h;
      return x;
    }

    Complex pick(Complex k, KernelPart part) {
      switch (part) {
        case KernelPart::full: return k;
        case KernelPart::plus: return {k.real(), 0.0};
        case KernelPart::minus: return {0.0, k.imag()};
      }
      return k;
    }

  } // namespace

  Complex radial_kernel(double delta_eta, double d, double sigma) {
    double const kmax   = std::sqrt(2.0 * 25.0 * std::log(10.0)) / sigma;
    double const freq   = d + std::abs(delta_eta);
    double const panel  = std::min(kmax, std::max(0.25 / sigma, 4.0 * pi / std::max(freq, 1e-300)));
    auto const   gauss  = [sigma](double k) { return std::exp(-0.5 * k * k * sigma * sigma); };

    if (d == 0.0) {
      double const re = panel_sum([&](double k) { return k * gauss(k) * std::cos(k * delta_eta); }, kmax, panel);
      double const im = panel_sum([&](double k) { return -k * gauss(k) * std::sin(k * delta_eta); }, kmax, panel);
      return 4.0 * pi * Complex(re, im);
    }
    double const re = panel_sum([&](double k) { return std::sin(k * d) * gauss(k) * std::cos(k * delta_eta); }, kmax, panel);
    double const im = panel_sum([&](double k) { return -std::sin(k * d) * gauss(k) * std::sin(k * delta_eta); }, kmax, panel);
    return (4.0 * pi / d) * Complex(re, im);
  }

  Complex grid_correlation(DetectorPair const &pair, CosmologyModel const &model, double step, KernelPart part,
                           double truncation_width) {
    DetectorParams const &a = pair.a;
    DetectorParams const &b = pair.b;
    double const          w = std::max(a.width, b.width) * truncation_width;
    double const          lo = std::min(a.center, b.center) - w;
    double const          hi = std::max(a.center, b.center) + w;
    double const          d  = pair.separation();
    double const          h  = model.rate();

    std::vector<double> wt;
    auto const          x = trapezoid_nodes(lo, hi, step, wt);
    std::size_t const   n = x.size();

    std::vector<double> eta(n), sa(n), sb(n), ca(n), cb(n);
    for (std::size_t i = 0; i < n; ++i) {
      eta[i] = conformal_time(model, x[i]);
      sa[i]  = width_at(a, model, x[i]);
      sb[i]  = width_at(b, model, x[i]);
      ca[i]  = switching(a, x[i]) * std::exp(-h * x[i]);
      cb[i]  = switching(b, x[i]) * std::exp(-h * x[i]);
    }

    Complex sum{};
    for (std::size_t i = 0; i < n; ++i) {
      Complex row{};
      for (std::size_t j = 0; j < n; ++j) {
        double const env = ca[i] * cb[j];
        if (env == 0.0) continue;
        KernelInputs const in{eta[i] - eta[j], d, std::hypot(sa[i], sb[j])};
        Complex            k = pick(kernel_cross(in), part);
        if (x[i] < x[j]) k = std::conj(k);
        double const ph = a.gap * x[i] + b.gap * x[j];
        row += wt[j] * env * Complex(std::cos(ph), std::sin(ph)) * k;
      }
      sum += wt[i] * row;
    }
    return -c_pref * pair.coupling * pair.coupling * sum;
  }

  double grid_local(DetectorParams const &det, CosmologyModel const &model, double step, double truncation_width) {
    double const lo = det.center - truncation_width * det.width;
    double const hi = det.center + truncation_width * det.width;
    double const h  = model.rate();

    std::vector<double> wt;
    auto const          x = trapezoid_nodes(lo, hi, step, wt);
    std::size_t const   n = x.size();

    std::vector<double> eta(n), s(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
      eta[i] = conformal_time(model, x[i]);
      s[i]   = width_at(det, model, x[i]);
      c[i]   = switching(det, x[i]) * std::exp(-h * x[i]);
    }

    Complex sum{};
    for (std::size_t i = 0; i < n; ++i) {
      Complex row{};
      for (std::size_t j = 0; j < n; ++j) {
        Complex const k  = kernel_self(eta[i] - eta[j], std::hypot(s[i], s[j]));
        double const  ph = -det.gap * (x[i] - x[j]);
        row += wt[j] * c[i] * c[j] * Complex(std::cos(ph), std::sin(ph)) * k;
      }
      sum += wt[i] * row;
    }
    return c_pref * sum.real();
  }

} // namespace cosmoharvest::oracles
