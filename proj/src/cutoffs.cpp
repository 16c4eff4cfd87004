#include "fraccat/cutoffs.hpp"

#include <cmath>

namespace fraccat {

double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double smoothstep_d1(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return 30.0 * t * t * (1.0 - t) * (1.0 - t);
}

double smoothstep_d2(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
}

double CutoffPair::eta(double t) const { return 1.0 - smoothstep(t - 1.0); }
double CutoffPair::eta_d1(double t) const { return -smoothstep_d1(t - 1.0); }
double CutoffPair::eta_d2(double t) const { return -smoothstep_d2(t - 1.0); }

double CutoffPair::chi(double t) const { return smoothstep(t); }
double CutoffPair::chi_d1(double t) const { return smoothstep_d1(t); }
double CutoffPair::chi_d2(double t) const { return smoothstep_d2(t); }

double CutoffPair::zeta(double z, double R_zeta) const { return eta(std::fabs(z) / R_zeta); }

} // namespace fraccat
