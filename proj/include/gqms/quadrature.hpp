// quadrature.hpp — Globally adaptive Gauss-Kronrod (7/15) integration for
// scalar and Eigen-valued integrands

#pragma once

#include <array>
#include <cmath>
#include <queue>
#include <tuple>
#include <type_traits>

#include <Eigen/Dense>

#include "gqms/errors.hpp"

namespace gqms::quadrature {

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    int max_intervals = 20000;
    // The interval is first cut into this many equal pieces.
    int initial_intervals = 1;
};

template <typename T>
struct Result {
    T value;
    double error = 0.0;
    int intervals = 0;
};

namespace detail {

inline double norm_of(double x) { return std::abs(x); }

template <typename Derived>
double norm_of(const Eigen::MatrixBase<Derived>& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights at kronrod_nodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Piece {
    double a;
    double b;
    T value;
    double error;
    bool operator<(const Piece& other) const { return error < other.error; }
};

template <typename F>
auto gauss_kronrod(F& f, double a, double b)
{
    using T = std::decay_t<decltype(f(a))>;
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const T fc = f(center);
    T kronrod = kronrod_weights[7] * fc;
    T gauss = gauss_weights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kronrod_nodes[i];
        const T sum = f(center - dx) + f(center + dx);
        kronrod = kronrod + kronrod_weights[i] * sum;
        if (i % 2 == 1) {
            gauss = gauss + gauss_weights[i / 2] * sum;
        }
    }
    T value = half * kronrod;
    const double error = norm_of(value - T(half * gauss));
    return Piece<T>{a, b, std::move(value), error};
}

} // namespace detail

// Integrate f over [a, b]; the error target is max(abs_tol, rel_tol * |I|)
// in the max-entry norm. Throws NumericalError when the interval budget runs
// out first.
template <typename F>
auto integrate(F&& f, double a, double b, const Options& opts = {})
{
    using T = std::decay_t<decltype(f(a))>;
    using Piece = detail::Piece<T>;

    std::priority_queue<Piece> heap;
    const int n0 = std::max(1, opts.initial_intervals);
    const double width = (b - a) / n0;
    for (int i = 0; i < n0; ++i) {
        const double lo = a + i * width;
        const double hi = (i + 1 == n0) ? b : lo + width;
        heap.push(detail::gauss_kronrod(f, lo, hi));
    }

    auto totals = [&heap]() {
        auto copy = heap;
        T value = copy.top().value;
        double error = copy.top().error;
        copy.pop();
        while (!copy.empty()) {
            value = value + copy.top().value;
            error += copy.top().error;
            copy.pop();
        }
        return std::pair<T, double>(value, error);
    };

    auto [value, error] = totals();
    int count = static_cast<int>(heap.size());
    while (error > std::max(opts.abs_tol, opts.rel_tol * detail::norm_of(value))) {
        if (count >= opts.max_intervals) {
            throw NumericalError("adaptive quadrature exhausted its interval budget", error);
        }
        Piece worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Piece left = detail::gauss_kronrod(f, worst.a, mid);
        Piece right = detail::gauss_kronrod(f, mid, worst.b);
        value = value - worst.value + left.value + right.value;
        error += left.error + right.error - worst.error;
        heap.push(std::move(left));
        heap.push(std::move(right));
        ++count;
        // Running sums drift; refresh them from scratch now and then.
        if (count % 64 == 0) {
            std::tie(value, error) = totals();
        }
    }
    std::tie(value, error) = totals();
    return Result<T>{value, error, count};
}

} // namespace gqms::quadrature
