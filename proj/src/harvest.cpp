#include "cosmoharvest/harvest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cosmoharvest {

  namespace {

    using quadrature::Integrand2D;
    using quadrature::Window;

    // 1 / (2 (2 pi)^3)
    constexpr double prefactor = 1.0 / (16.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi);

    double gaussian_exponent(DetectorParams const &det, double t) {
      double const u = (t - det.center) / det.width;
      return u * u;
    }

    Estimate to_estimate(quadrature::Result const &r, Complex scale = 1.0) {
      return {r.value * scale, r.error * std::abs(scale), r.status};
    }

    Estimate scaled(Estimate e, double coupling) {
      double const l2 = coupling * coupling;
      e.value *= l2;
      e.error *= l2;
      return e;
    }

    Integrand2D local_integrand(DetectorParams const &di, DetectorParams const &dj, double d, bool self,
                                CosmologyModel const &model) {
      double const h = model.rate();
      Integrand2D  in;
      in.f = [di, dj, d, self, model, h](double t, double t2) -> Complex {
        double const eta = conformal_interval(model, t, t2);
        double const sig = sigma_pair(di, dj, model, t, t2);
        Complex const k  = self ? kernel_self(eta, sig) : smeared_kernel({eta, d, sig});
        double const env = prefactor * std::exp(-h * (t + t2) - gaussian_exponent(di, t) - gaussian_exponent(dj, t2));
        double const ph  = -(di.gap * t - dj.gap * t2);
        return env * Complex(std::cos(ph), std::sin(ph)) * k;
      };
      in.t_window  = Window::around(di.center, di.width);
      in.t2_window = Window::around(dj.center, dj.width);
      in.frequency = std::max(std::abs(di.gap), std::abs(dj.gap));
      in.s_breaks  = {sigma_pair(di, dj, model, di.center, dj.center)};
      return in;
    }

    // Symmetrised integrand of M over t' <= t:
    // e^{i(Wa t + Wb t')} chi_a(t) chi_b(t') K_ab(t,t') + e^{i(Wa t' + Wb t)} chi_a(t') chi_b(t) K_ba(t,t')
    Integrand2D correlation_integrand(DetectorPair const &pair, CosmologyModel const &model, KernelPart part,
                                      double scale) {
      DetectorParams const a = pair.a, b = pair.b;
      double const         d = pair.separation();
      double const         h = model.rate();
      Integrand2D          in;
      in.f = [a, b, d, h, model, part, scale](double t, double t2) -> Complex {
        double const eta    = conformal_interval(model, t, t2);
        double const wa_t   = width_at(a, model, t), wa_t2 = width_at(a, model, t2);
        double const wb_t   = width_at(b, model, t), wb_t2 = width_at(b, model, t2);
        double const sig_ab = std::hypot(wa_t, wb_t2);
        double const sig_ba = std::hypot(wb_t, wa_t2);
        Complex const k_ab  = smeared_kernel({eta, d, sig_ab}, part);
        Complex const k_ba  = (sig_ba == sig_ab) ? k_ab : smeared_kernel({eta, d, sig_ba}, part);

        double const base = -h * (t + t2);
        double const e1   = std::exp(base - gaussian_exponent(a, t) - gaussian_exponent(b, t2));
        double const e2   = std::exp(base - gaussian_exponent(a, t2) - gaussian_exponent(b, t));
        double const p1   = a.gap * t + b.gap * t2;
        double const p2   = a.gap * t2 + b.gap * t;
        Complex const w   = e1 * Complex(std::cos(p1), std::sin(p1)) * k_ab + e2 * Complex(std::cos(p2), std::sin(p2)) * k_ba;
        return -prefactor * scale * w;
      };
      double const width = std::max(a.width, b.width);
      in.t_window        = Window::hull(a.center, b.center, width);
      in.t2_window       = in.t_window;
      in.frequency       = std::max(std::abs(a.gap), std::abs(b.gap));
      in.s_breaks        = {sigma_pair(a, b, model, a.center, b.center)};
      return in;
    }

    Estimate unit_local(DetectorPair const &pair, LocalWhich which, CosmologyModel const &model,
                        QuadratureConfig const &cfg) {
      switch (which) {
        case LocalWhich::A:
        case LocalWhich::B: {
          DetectorParams const &det = which == LocalWhich::A ? pair.a : pair.b;
          // f(t', t) = conj f(t, t'), so the square is twice the real part over t' <= t
          Integrand2D in = local_integrand(det, det, 0.0, true, model);
          in.f           = [g = std::move(in.f)](double t, double t2) { return Complex(g(t, t2).real(), 0.0); };
          auto const r   = quadrature::integrate_ordered(in, cfg);
          return {Complex(2.0 * r.value.real(), 0.0), 2.0 * r.error, r.status};
        }
        case LocalWhich::AB: {
          double const d    = pair.separation();
          auto const   r    = quadrature::integrate_square(local_integrand(pair.a, pair.b, d, d == 0.0, model), cfg);
          return to_estimate(r);
        }
      }
      throw std::invalid_argument("unknown local term");
    }

    Estimate unit_correlation(DetectorPair const &pair, CosmologyModel const &model, QuadratureConfig const &cfg,
                              KernelPart part) {
      return to_estimate(quadrature::integrate_ordered(correlation_integrand(pair, model, part, 1.0), cfg));
    }

    void check(DetectorPair const &pair, QuadratureConfig const &cfg) {
      pair.validate();
      cfg.validate();
    }

  } // namespace

  Estimate local_term(DetectorPair const &pair, LocalWhich which, CosmologyModel const &model,
                      QuadratureConfig const &cfg) {
    check(pair, cfg);
    return scaled(unit_local(pair, which, model, cfg), pair.coupling);
  }

  Estimate correlation_M(DetectorPair const &pair, CosmologyModel const &model, QuadratureConfig const &cfg) {
    check(pair, cfg);
    return scaled(unit_correlation(pair, model, cfg, KernelPart::full), pair.coupling);
  }

  Estimate correlation_M_minus(DetectorPair const &pair, CosmologyModel const &model, QuadratureConfig const &cfg) {
    check(pair, cfg);
    return scaled(unit_correlation(pair, model, cfg, KernelPart::minus), pair.coupling);
  }

  Estimate correlation_M_plus(DetectorPair const &pair, CosmologyModel const &model, QuadratureConfig const &cfg) {
    check(pair, cfg);
    return scaled(unit_correlation(pair, model, cfg, KernelPart::plus), pair.coupling);
  }

  Estimate correlation_M_plus_square(DetectorPair const &pair, CosmologyModel const &model,
                                     QuadratureConfig const &cfg) {
    check(pair, cfg);
    auto const r = quadrature::integrate_square(correlation_integrand(pair, model, KernelPart::plus, 0.5), cfg);
    return scaled(to_estimate(r), pair.coupling);
  }

  double negativity_v(double L_aa, double L_bb, Complex M) {
    return std::hypot(std::abs(M), 0.5 * (L_aa - L_bb)) - 0.5 * (L_aa + L_bb);
  }

  double negativity_from_parts(double L_aa, double L_bb, Complex M) {
    return std::max(0.0, negativity_v(L_aa, L_bb, M));
  }

  std::optional<double> relative_phase(Complex M_plus, Complex M_minus) {
    if (M_plus == Complex{} || M_minus == Complex{}) return std::nullopt;
    double phi = std::arg(M_plus) - std::arg(M_minus);
    if (phi <= -std::numbers::pi) phi += 2.0 * std::numbers::pi;
    if (phi > std::numbers::pi) phi -= 2.0 * std::numbers::pi;
    return phi;
  }

  HarvestResult assemble(HarvestParts const &parts, double coupling) {
    HarvestResult r;
    double const  l2 = coupling * coupling;

    double const laa = parts.L_aa.value.real();
    double const lbb = parts.L_bb.value.real();
    r.L_aa           = l2 * laa;
    r.L_bb           = l2 * lbb;
    r.M              = l2 * parts.M.value;
    r.M_plus         = l2 * parts.M_plus.value;
    r.M_minus        = l2 * parts.M_minus.value;
    r.N              = l2 * negativity_from_parts(laa, lbb, parts.M.value);
    r.N_plus         = l2 * negativity_from_parts(laa, lbb, parts.M_plus.value);
    r.N_minus        = l2 * negativity_from_parts(laa, lbb, parts.M_minus.value);
    // from the unscaled parts so the phase is exactly coupling independent
    if (l2 != 0.0) r.phi = relative_phase(parts.M_plus.value, parts.M_minus.value);
    if (parts.L_ab) r.L_ab = l2 * parts.L_ab->value;

    r.errors = {l2 * parts.L_aa.error, l2 * parts.L_bb.error, l2 * parts.M.error, l2 * parts.M_plus.error,
                l2 * parts.M_minus.error};
    auto note = [&r](Estimate const &e, char const *name) {
      if (!e.ok()) r.failures.push_back(std::string(name) + ":" + std::string(quadrature::to_string(e.status)));
    };
    note(parts.L_aa, "L_aa");
    note(parts.L_bb, "L_bb");
    note(parts.M, "M");
    note(parts.M_plus, "M_plus");
    note(parts.M_minus, "M_minus");
    if (parts.L_ab) note(*parts.L_ab, "L_ab");
    return r;
  }

  HarvestResult evaluate(DetectorPair const &pair, CosmologyModel const &model, QuadratureConfig const &cfg,
                         EvaluateOptions const &opts) {
    check(pair, cfg);
    HarvestParts parts;
    parts.L_aa    = unit_local(pair, LocalWhich::A, model, cfg);
    parts.L_bb    = unit_local(pair, LocalWhich::B, model, cfg);
    parts.M       = unit_correlation(pair, model, cfg, KernelPart::full);
    parts.M_plus  = unit_correlation(pair, model, cfg, KernelPart::plus);
    parts.M_minus = unit_correlation(pair, model, cfg, KernelPart::minus);
    if (opts.with_L_ab) parts.L_ab = unit_local(pair, LocalWhich::AB, model, cfg);
    return assemble(parts, pair.coupling);
  }

  DensityMatrix density_matrix(HarvestResult const &r) {
    if (!r.L_ab) throw std::invalid_argument("density_matrix needs L_ab; evaluate with with_L_ab = true");
    Complex const lab = *r.L_ab;
    DensityMatrix rho{};
    rho[0][0] = 1.0 - (r.L_aa + r.L_bb);
    rho[0][3] = std::conj(r.M);
    rho[1][1] = r.L_bb;
    rho[1][2] = std::conj(lab);
    rho[2][1] = lab;
    rho[2][2] = r.L_aa;
    rho[3][0] = r.M;
    return rho;
  }

  Complex trace(DensityMatrix const &rho) { return rho[0][0] + (rho[1][1] + rho[2][2]) + rho[3][3]; }

  DensityMatrix partial_transpose(DensityMatrix const &rho) {
    // index = 2 * a + b; transpose the a indices
    DensityMatrix out{};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int b2 = 0; b2 < 2; ++b2) out[2 * a2 + b][2 * a + b2] = rho[2 * a + b][2 * a2 + b2];
    return out;
  }

} // namespace cosmoharvest
