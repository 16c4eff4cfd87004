#pragma once

#include <array>
#include <cstddef>

namespace fraccat {

// Gauss-Legendre nodes/weights on [-1,1].
struct GaussRule {
    const double* x;
    const double* w;
    int n;
};

namespace detail {
inline constexpr std::array<double, 2> gl4_x = {0.3399810435848563, 0.8611363115940526};
inline constexpr std::array<double, 2> gl4_w = {0.6521451548625461, 0.3478548451374538};
inline constexpr std::array<double, 3> gl6_x = {0.2386191860831969, 0.6612093864662645,
                                                0.9324695142031521};
inline constexpr std::array<double, 3> gl6_w = {0.4679139345726910, 0.3607615730481386,
                                                0.1713244923791704};
inline constexpr std::array<double, 5> gl10_x = {0.1488743389816312, 0.4333953941292472,
                                                 0.6794095682990244, 0.8650633666889845,
                                                 0.9739065285171717};
inline constexpr std::array<double, 5> gl10_w = {0.2955242247147529, 0.2692667193099963,
                                                 0.2190863625159820, 0.1494513491505806,
                                                 0.0666713443086881};
} // namespace detail

/// Integrate f over [a,b] with a symmetric Gauss-Legendre rule (4/6/10 points).
template <int N, class F>
double gauss_panel(F&& f, double a, double b) {
    static_assert(N == 4 || N == 6 || N == 10);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double acc = 0.0;
    auto add = [&](const auto& xs, const auto& ws) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            acc += ws[i] * (f(c + h * xs[i]) + f(c - h * xs[i]));
    };
    if constexpr (N == 4) add(detail::gl4_x, detail::gl4_w);
    if constexpr (N == 6) add(detail::gl6_x, detail::gl6_w);
    if constexpr (N == 10) add(detail::gl10_x, detail::gl10_w);
    return acc * h;
}

} // namespace fraccat
