#include "fraccat/sampled.hpp"

#include <stdexcept>

namespace fraccat {

std::vector<double> graded_symmetric_grid(double Z, int n, double p) {
    if (n < 5 || n % 2 == 0)
        throw std::invalid_argument("graded_symmetric_grid: n must be odd and >= 5");
    if (!(Z > 0.0 && p >= 1.0))
        throw std::invalid_argument("graded_symmetric_grid: need Z > 0, p >= 1");
    std::vector<double> z(n);
    const int m = (n - 1) / 2;
    for (int k = -m; k <= m; ++k) {
        const double t = static_cast<double>(k) / m;
        z[k + m] = Z * (t < 0 ? -std::pow(-t, p) : std::pow(t, p));
    }
    z[m] = 0.0;
    return z;
}

std::vector<double> geometric_grid(double a, double b, int n, double ratio_hint) {
    if (!(b > a && a > 0.0) || n < 2)
        throw std::invalid_argument("geometric_grid: need 0 < a < b, n >= 2");
    (void)ratio_hint;
    std::vector<double> g(n);
    const double q = std::log(b / a) / (n - 1);
    for (int i = 0; i < n; ++i) g[i] = a * std::exp(q * i);
    g.front() = a;
    g.back() = b;
    return g;
}

} // namespace fraccat
