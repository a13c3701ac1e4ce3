#pragma once

#include <span>
#include <vector>

namespace lfdrkit {

/// theta / (theta + (1 - theta) f). Returns 1 when theta = 1; throws
/// Indeterminate for the 0/0 case theta = 0, f = 0.
double lfdr_estimate(double theta_hat, double f_hat_at_x);

/// Running means of lFDR values already ordered by increasing p-value.
/// Throws EmptyInput.
std::vector<double> fdr_from_lfdr(std::span<const double> lfdr_sorted_by_p);

/// Cumulative FDR for unsorted input: stable-sorts by p-value, takes running
/// means, and maps the result back to input order.
std::vector<double> fdr_in_input_order(std::span<const double> p_values, std::span<const double> lfdr);

}  // namespace lfdrkit
