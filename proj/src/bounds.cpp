#include "hypfill/bounds.hpp"
#include "hypfill/errors.hpp"
#include "hypfill/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

namespace hypfill {

double collar_half_width(double l) {
    if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("collar_half_width: length must be positive");
    return std::asinh(1.0 / std::sinh(l / 2)) - 0.5 * std::log(2.0);
}

FBounds f_bounds_check(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("f_bounds_check: x must be positive");
    FBounds b{std::log(1.0 / x), collar_half_width(x), x > 0.5 ? 2.0 : 3.0 * std::log(1.0 / x)};
    if (!(b.lower <= b.value && b.value <= b.upper))
        throw InvariantViolation("f_bounds_check: sandwich fails");
    return b;
}

void validate(const SurfaceSummary& s) {
    if (s.genus < 2) throw InputError("genus must be at least 2");
    if (s.short_lengths.size() > static_cast<size_t>(3 * s.genus - 3))
        throw InputError("more than 3g-3 short geodesics");
    for (double l : s.short_lengths) {
        if (!(l > 0.0 && l < 1.0)) throw InputError("short geodesic lengths must lie in (0, 1)");
    }
}

double r_value(const SurfaceSummary& s) {
    for (double l : s.short_lengths) {
        if (!(l > 0.0 && l < 1.0)) throw InputError("short geodesic lengths must lie in (0, 1)");
    }
    double r = 0.0;
    for (double l : s.short_lengths) r += std::log(1.0 / l);
    return r;
}

double exact_min(double g) {
    if (!(g >= 2)) throw InputError("exact_min: genus must be at least 2");
    double n = 8 * g - 4;
    return n * std::acosh(std::sqrt(2.0) * std::cos(kPi / n));
}

long long exact_min_threshold(long long g_max) {
    long long g0 = g_max + 1;
    for (long long g = g_max; g >= 2; --g) {
        if (exact_min(static_cast<double>(g)) > 7.0 * g)
            g0 = g;
        else
            break;
    }
    return g0;
}

BoundReport genus_bounds(const SurfaceSummary& s) {
    validate(s);
    static const long long threshold = exact_min_threshold(10000);
    BoundReport b;
    b.genus = s.genus;
    b.r = r_value(s);
    double g = s.genus;
    b.lower = kPi * (g - 1) + b.r;
    b.lower_large_g = 3.5 * g + b.r;
    b.large_g_threshold = threshold;
    b.large_g_applicable = s.genus >= threshold;
    b.upper = 300 * g + 12 * b.r;
    b.exact_min = exact_min(g);
    b.asymptotic_ratio = b.exact_min / g;
    if (!(b.lower < b.upper)) throw InvariantViolation("genus_bounds: lower >= upper");
    return b;
}

nlohmann::json bound_report_to_json(const BoundReport& b) {
    return {{"genus", b.genus},
            {"R", b.r},
            {"lower", b.lower},
            {"lower_large_g", b.lower_large_g},
            {"large_g_applicable", b.large_g_applicable},
            {"large_g_threshold", b.large_g_threshold},
            {"upper", b.upper},
            {"exact_min", b.exact_min},
            {"asymptotic_ratio", b.asymptotic_ratio}};
}

PowerMeans power_means(const std::vector<double>& a, double p) {
    if (a.empty() || !(p > 0)) throw InputError("power_means: need a nonempty tuple and p > 0");
    double sum = 0.0, mx = 0.0, sp = 0.0;
    for (double x : a) {
        if (!(x > 0)) throw InputError("power_means: entries must be positive");
        sum += x;
        mx = std::max(mx, x);
        sp += std::pow(x, p);
    }
    return {std::pow(sum / a.size(), p), std::pow(mx, p), sp};
}

} // namespace hypfill
