#pragma once

namespace fraccat {

/// Quintic smoothstep: 0 for t<=0, 1 for t>=1, C^2 across both ends.
double smoothstep(double t);
double smoothstep_d1(double t);
double smoothstep_d2(double t);

/// The two cut-offs of the construction.
///   eta: 1 on (-inf,1], 0 on [2,inf)
///   chi: 0 on (-inf,0], 1 on [1,inf)
struct CutoffPair {
    double eta(double t) const;
    double eta_d1(double t) const;
    double eta_d2(double t) const;
    double chi(double t) const;
    double chi_d1(double t) const;
    double chi_d2(double t) const;

    /// Compactly supported even weight used in the layer projections:
    /// zeta(z) = eta(|z|/R_zeta); equals 1 for |z| <= R_zeta, 0 for |z| >= 2 R_zeta.
    double zeta(double z, double R_zeta) const;
};

} // namespace fraccat
