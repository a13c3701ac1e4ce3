#pragma once

namespace lfdrkit {

double normal_pdf(double z);
double normal_cdf(double z);
/// Upper tail 1 - Phi(z), accurate for large z.
double normal_sf(double z);
/// Phi^{-1}(p) for p in (0, 1) (Wichura's AS 241, about 1e-16 relative).
/// Returns -inf / +inf at 0 / 1.
double normal_quantile(double p);

/// Upper tail of the standard Laplace law: e^{-t}/2 for t >= 0, 1 - e^{t}/2 otherwise.
double laplace_sf(double t);
/// Inverse of laplace_sf on (0, 1).
double laplace_sf_inverse(double p);

}  // namespace lfdrkit
