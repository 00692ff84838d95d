#include "qtk/bounds/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace qtk::bounds {

StructuralConstants structural(const SpectralData& spectral, const StepPotential& pot, double K,
                               StripeMode mode) {
  if (K <= 0) throw std::invalid_argument("structural: K > 0");
  StructuralConstants sc;
  sc.K = K;
  sc.R_V = pot.r_v();
  sc.K_tilde = 6.0 * pot.norm_l1();
  sc.q = 1.0 / (2.0 * pot.norm_l1()) + 6.0 * pot.r_v();

  for (double e : spectral.bound) sc.inv_eta += 1.0 / e;
  for (double ka : spectral.virtual_states) sc.inv_kappa += 1.0 / ka;

  if (spectral.resonances.empty())
    throw std::invalid_argument("structural: no resonances enumerated");
  // beta0 is the first resonance's width; the 1/s bound assumes it is minimal
  // over the stripe, which we can only check on the enumerated prefix.
  sc.alpha = spectral.resonances.front().first;
  sc.beta0 = spectral.resonances.front().second;
  sc.beta0_min_on_prefix = true;
  for (const auto& [al, be] : spectral.resonances) {
    sc.alpha = std::min(sc.alpha, al);
    if (be < sc.beta0) sc.beta0_min_on_prefix = false;
  }

  // nu_K: smallest nu with alpha_n >= 2K for all n >= nu (over the prefix)
  sc.nu_K = 0;
  for (std::size_t n = 0; n < spectral.resonances.size(); ++n)
    if (spectral.resonances[n].first < 2.0 * K) sc.nu_K = static_cast<int>(n) + 1;
  if (spectral.search_region.re_hi < 2.0 * K)
    throw std::invalid_argument("structural: spectral data does not cover Re <= 2K");

  double inv_sk = sc.inv_eta + sc.inv_kappa;
  for (int n = 0; n < sc.nu_K; ++n) inv_sk += 1.0 / spectral.resonances[n].second;
  sc.s_K = (inv_sk == 0.0) ? 1.0 : 1.0 / inv_sk;

  if (mode == StripeMode::enumerate) {
    if (spectral.search_region.re_hi < 2.0 * sc.K_tilde)
      throw std::invalid_argument(
          "structural: stripe Re <= 2 K~ not covered; use bound mode");
    int nu_t = 0;
    for (std::size_t n = 0; n < spectral.resonances.size(); ++n)
      if (spectral.resonances[n].first < 2.0 * sc.K_tilde) nu_t = static_cast<int>(n) + 1;
    sc.nu_K_tilde = nu_t;
    double inv_s = sc.inv_eta + sc.inv_kappa;
    for (int n = 0; n < nu_t; ++n) inv_s += 1.0 / spectral.resonances[n].second;
    sc.inv_s = (inv_s == 0.0) ? 1.0 : inv_s;
  } else {
    const auto tail = jost::verify_stripe_tail(pot, sc.K_tilde);
    if (!tail.ok)
      throw std::runtime_error(
          "structural: stripe-tail re-certification failed (zeros outside the ball?)");
    sc.nu_K_tilde = jost::zero_count_bound(pot, std::pow(2.0, 1.5) * sc.K_tilde);
    sc.nu_tilde_is_bound = true;
    sc.inv_s = sc.nu_K_tilde / sc.beta0;
  }
  sc.s = 1.0 / sc.inv_s;

  sc.r0 = jost::scattering_quantities(pot, &spectral).r0;
  return sc;
}

SBoundConstants smatrix_constants(const StructuralConstants& sc) {
  SBoundConstants c{};
  const double rv = sc.R_V, r0 = sc.r0, a = sc.alpha;
  const double sk = sc.s_K, s = sc.s, q = sc.q;

  c.c1k = 2.0 * (1.0 + sk * (rv + r0));
  c.c2k = 4.0 * (3.0 + 2.0 * sk * sk * (r0 / a + (rv + r0) * (rv + r0)));
  c.c3k = 4.0 * (15.0 + 6.0 * sk * (rv + r0) + 12.0 * sk * sk * r0 / a +
                 sk * sk * sk *
                     (7.0 * r0 / a + 12.0 * (r0 / a) * (rv + r0) +
                      8.0 * std::pow(rv + r0, 3)));

  c.c1 = 2.0 * (1.0 + s * (3.0 * rv + r0));
  c.c2 = 4.0 * (3.0 + 2.0 * s * s * (r0 / a + std::pow(3.0 * rv + r0, 2) + rv * q));
  c.c3 = 4.0 * (15.0 + 6.0 * s * (rv + r0) + 12.0 * s * s * r0 / a +
                s * s * s *
                    (7.0 * r0 / a + 12.0 * (r0 / a) * (rv + r0) +
                     8.0 * std::pow(3.0 * rv + r0, 3) + 18.0 * rv * q * q));
  return c;
}

ZTables z_tables(const StructuralConstants& sc, const SBoundConstants& cs, double R,
                 double eta0) {
  if (R < sc.R_V) throw std::invalid_argument("z_tables: R >= R_V required");
  ZTables z;
  z.R = R;
  auto fill = [R](double (&t)[3][4], double sk, double C1, double C2, double C3) {
    t[0][0] = 0.5 * (2.0 * R * sk + C1);
    t[0][1] = 1.0;
    t[1][0] = 0.25 * (2.0 * R * R * sk * sk + 2.0 * R * C1 * sk + C2);
    t[1][1] = 0.5 * (2.0 * R * sk + C1);
    t[1][2] = 1.0;
    t[2][0] = (2.0 * std::pow(R * sk, 3) + 3.0 * R * R * sk * sk * C1 + 3.0 * R * sk * C2 + C3) / 6.0;
    t[2][1] = 0.5 * (2.0 * R * R * sk * sk + 2.0 * R * sk * C1 + C2);
    t[2][2] = 2.0 * R * sk + C1;
    t[2][3] = 2.0;
  };
  fill(z.ac_k, sc.s_K, cs.c1k, cs.c2k, cs.c3k);
  fill(z.ac, sc.s, cs.c1, cs.c2, cs.c3);
  for (int n = 0; n < 3; ++n) {
    z.ac_k_sum[n] = 0.0;
    z.ac_sum[n] = 0.0;
    for (int m = 0; m <= n + 1; ++m) {
      z.ac_k_sum[n] += z.ac_k[n][m];
      z.ac_sum[n] += z.ac[n][m];
    }
  }
  auto fill_e = [R, eta0](double (&t)[3], double sk, double C1, double C2) {
    const double rt2 = std::sqrt(2.0);
    t[0] = rt2;
    t[1] = (2.0 * sk + (2.0 * R * sk + C1) * eta0) / rt2;
    t[2] = (C2 * eta0 * eta0 + 2.0 * eta0 * sk * (C1 + R * sk) * (R * eta0 + 1.0) +
            4.0 * sk * sk) /
           rt2;
  };
  fill_e(z.e_k, sc.s_K, cs.c1k, cs.c2k);
  fill_e(z.e, sc.s, cs.c1, cs.c2);
  return z;
}

}  // namespace qtk::bounds
