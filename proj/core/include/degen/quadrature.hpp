#ifndef DEGEN_QUADRATURE_HPP
#define DEGEN_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace degen::quad
{

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    std::size_t max_intervals = 2000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

namespace detail
{

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21 abscissae).
inline constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452, 0.930157491355708226001207180059508,
    0.865063366688984510732096688423493, 0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784, 0.294392862701460198131126603103866,
    0.148874338981631210884826001129720, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390, 0.054755896574351996031381300244580,
    0.075039674810919952767043140916190, 0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208707149408, 0.134709217311473325928054001771707, 0.142775938577060080797094273138717,
    0.147739104901338491374841515972068, 0.149445554002916905664936468389821};
// Gauss weights at the odd-indexed Kronrod abscissae.
inline constexpr std::array<double, 5> wg = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                                             0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                                             0.295524224714752870173892994651338};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    friend bool operator<(const Segment &x, const Segment &y)
    {
        return x.error < y.error;
    }
};

// Error estimate follows QUADPACK qk21: |K - G| rescaled by the variation of f
// over the segment, with a round-off floor.
template <typename F>
Segment gk21(F &f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    std::array<double, 10> lo{};
    std::array<double, 10> hi{};
    double kronrod = fc * wgk[10];
    double gauss = 0.0;
    double resabs = std::abs(fc) * wgk[10];
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * xgk[j];
        lo[j] = f(center - dx);
        hi[j] = f(center + dx);
        const double sum = lo[j] + hi[j];
        kronrod += wgk[j] * sum;
        resabs += wgk[j] * (std::abs(lo[j]) + std::abs(hi[j]));
        if (j % 2 == 1) {
            gauss += wg[j / 2] * sum;
        }
    }
    const double mean = 0.5 * kronrod;
    double resasc = wgk[10] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 10; ++j) {
        resasc += wgk[j] * (std::abs(lo[j] - mean) + std::abs(hi[j] - mean));
    }
    const double scale = std::abs(half);
    resabs *= scale;
    resasc *= scale;
    double err = std::abs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * resabs, err);
    }
    return {a, b, kronrod * half, err};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (21 point) integration of f over [a, b].
///
/// The interval is first split at any breakpoints inside (a, b); afterwards the
/// segment with the largest error estimate is bisected until the summed error is
/// below max(abs_tol, rel_tol |I|) or max_intervals is reached. Integrable endpoint
/// and interior singularities (log, kinks) are handled by the bisection alone.
template <typename F>
Result integrate(F &&f, double a, double b, const Options &opt = {}, std::span<const double> breakpoints = {})
{
    Result out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::vector<double> cuts{a};
    for (double p : breakpoints) {
        if (p > std::min(a, b) && p < std::max(a, b)) {
            cuts.push_back(p);
        }
    }
    cuts.push_back(b);
    if (a < b) {
        std::sort(cuts.begin() + 1, cuts.end() - 1);
    } else {
        std::sort(cuts.begin() + 1, cuts.end() - 1, std::greater<>());
    }

    std::priority_queue<detail::Segment> heap;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i] == cuts[i + 1]) {
            continue;
        }
        const auto s = detail::gk21(f, cuts[i], cuts[i + 1]);
        out.evaluations += 21;
        total += s.value;
        total_err += s.error;
        heap.push(s);
    }

    // Summing the error estimates of many tiny segments accumulates rounding; stop
    // refining once the worst segment is at round-off level.
    constexpr double eps = std::numeric_limits<double>::epsilon();
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) && heap.size() < opt.max_intervals) {
        const auto worst = heap.top();
        if (worst.error <= 50.0 * eps * std::abs(worst.value) || std::abs(worst.b - worst.a) < 1e-15 * (1.0 + std::abs(worst.a))) {
            break;
        }
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const auto left = detail::gk21(f, worst.a, mid);
        const auto right = detail::gk21(f, mid, worst.b);
        out.evaluations += 42;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to avoid drift from the incremental updates.
    total = 0.0;
    total_err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        total_err += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.error = total_err;
    out.converged = total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total))
                    || total_err <= 1e3 * eps * std::max(1.0, std::abs(total));
    return out;
}

// splitmix64 step; used to derive independent per-sample seeds from one master seed.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter)
{
    return splitmix64(master ^ splitmix64(counter + 0x632be59bd9b4e019ULL));
}

} // namespace degen::quad

#endif
