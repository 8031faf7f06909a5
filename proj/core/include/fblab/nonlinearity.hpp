#pragma once

#include <utility>
#include <vector>

namespace fblab {

enum class PhiKind { identity, power_cap, table };

/// The monotone nondecreasing, coercive nonlinearity applied to the
/// perimeter. power_cap: t^gamma on [0,1], 1 on [1, k_o], then linear growth
/// with coercive_slope.
struct NonlinearityProfile {
    PhiKind kind = PhiKind::identity;
    double gamma = 1.0;
    double k_o = 8.0;
    double coercive_slope = 1.0;
    std::vector<std::pair<double, double>> table;  // sorted (t, phi) knots
};

NonlinearityProfile make_identity_profile();
NonlinearityProfile make_power_cap_profile(double gamma, double k_o, double coercive_slope = 1.0);
NonlinearityProfile make_table_profile(std::vector<std::pair<double, double>> knots);

struct PhiEval {
    double value = 0.0;
    double derivative = 0.0;  // right derivative at knots
};

PhiEval phi_eval(const NonlinearityProfile& p, double t);

/// Lipschitz constant of phi on [0, Q] (max(gamma, slope, 1-ish) for
/// power_cap per the cap construction, sup of segment slopes for tables).
double phi_lipschitz_bound(const NonlinearityProfile& p, double q);

/// Essential lower bound of phi' on [0, Q].
double phi_derivative_floor(const NonlinearityProfile& p, double q);

}  // namespace fblab
