#pragma once

#include <json.hpp>
#include <vector>

namespace hypfill {

// f(x) = asinh(1/sinh(x/2)) - log(2)/2, half-width of the collar about a geodesic of length x.
double collar_half_width(double l);

struct FBounds {
    double lower;
    double value;
    double upper;
};
FBounds f_bounds_check(double x);

struct SurfaceSummary {
    int genus = 2;
    std::vector<double> short_lengths; // closed geodesics shorter than 1
};

void validate(const SurfaceSummary& s);
double r_value(const SurfaceSummary& s);

// (8g-4) acosh(sqrt(2) cos(pi/(8g-4)))
double exact_min(double g);
// Smallest g0 with exact_min(g) > 7g for every g in [g0, g_max].
long long exact_min_threshold(long long g_max);

struct BoundReport {
    int genus = 0;
    double r = 0.0;
    double lower = 0.0;          // pi(g-1) + R
    double lower_large_g = 0.0;  // 3.5 g + R
    bool large_g_applicable = false;
    long long large_g_threshold = 0;
    double upper = 0.0;          // 300 g + 12 R
    double exact_min = 0.0;
    double asymptotic_ratio = 0.0; // exact_min / g
};

BoundReport genus_bounds(const SurfaceSummary& s);
nlohmann::json bound_report_to_json(const BoundReport& b);

// ((sum a)/n)^p, (max a)^p and sum a^p for positive a
struct PowerMeans {
    double mean_pow;
    double max_pow;
    double sum_pow;
};
PowerMeans power_means(const std::vector<double>& a, double p);

} // namespace hypfill
