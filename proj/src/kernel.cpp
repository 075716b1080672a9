#include "perfhom/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "perfhom/errors.hpp"
#include "perfhom/quadrature.hpp"

namespace perfhom {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double unit_sphere_measure(int dim) {
    switch (dim) {
        case 1:
            return 2.0;
        case 2:
            return 2.0 * std::numbers::pi;
        case 3:
            return 4.0 * std::numbers::pi;
        default:
            throw config_error("dimension must be 1, 2, or 3");
    }
}

double StaircaseKernel::value(double t) const {
    if (t < 0.0) return 0.0;
    int count = 0;
    for (double r : radii) {
        if (r > 0.0 && t <= r) ++count;
    }
    return weight * static_cast<double>(count);
}

RadialKernel RadialKernel::make_indicator(double s, int dim) {
    if (!(s > 0.0)) throw config_error("indicator kernel radius s must be positive");
    unit_sphere_measure(dim);  // validates dim
    RadialKernel k;
    k.profile_ = Profile::indicator;
    k.dim_ = dim;
    k.s_ = s;
    k.finalize();
    return k;
}

RadialKernel RadialKernel::make_exponential(double lambda, int dim) {
    if (!(lambda > 0.0)) throw config_error("exponential kernel rate lambda must be positive");
    unit_sphere_measure(dim);
    RadialKernel k;
    k.profile_ = Profile::exponential;
    k.dim_ = dim;
    k.lambda_ = lambda;
    k.finalize();
    return k;
}

RadialKernel RadialKernel::make_tabulated(std::vector<double> breakpoints,
                                          std::vector<double> values, int dim) {
    unit_sphere_measure(dim);
    if (breakpoints.size() != values.size())
        throw config_error("tabulated kernel: breakpoint and value lists differ in length");
    if (breakpoints.empty()) throw config_error("tabulated kernel: empty profile");
    double prev_b = 0.0;
    double prev_v = kInf;
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i] > prev_b))
            throw config_error("tabulated kernel: breakpoints must be strictly increasing and > 0");
        if (!(values[i] >= 0.0)) throw config_error("tabulated kernel: values must be nonnegative");
        if (values[i] > prev_v)
            throw config_error("tabulated kernel: profile must be nonincreasing");
        prev_b = breakpoints[i];
        prev_v = values[i];
    }
    RadialKernel k;
    k.profile_ = Profile::tabulated;
    k.dim_ = dim;
    k.tab_b_ = std::move(breakpoints);
    k.tab_v_ = std::move(values);
    k.finalize();
    return k;
}

RadialKernel RadialKernel::tabulated_from_csv(const std::string& path, int dim) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open kernel profile file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw config_error("empty kernel profile file: " + path);
    auto strip = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
    };
    if (strip(line) != "t,phi0")
        throw config_error("kernel profile file must start with header `t,phi0`: " + path);
    std::vector<double> ts, vs;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip(line);
        if (line.empty()) continue;
        std::istringstream row(line);
        double t = 0.0, v = 0.0;
        char comma = 0;
        if (!(row >> t >> comma >> v) || comma != ',')
            throw config_error("malformed row " + std::to_string(lineno) + " in " + path);
        ts.push_back(t);
        vs.push_back(v);
    }
    if (ts.empty()) throw config_error("kernel profile file has no data rows: " + path);
    // A sample at t = 0 pins phi0(0) but contributes no interval of its own.
    if (ts.front() == 0.0) {
        if (ts.size() == 1) throw config_error("kernel profile needs a breakpoint t > 0: " + path);
        ts.erase(ts.begin());
        vs.erase(vs.begin());
    }
    return make_tabulated(std::move(ts), std::move(vs), dim);
}

RadialKernel RadialKernel::from_staircase(const StaircaseKernel& stair, int dim) {
    std::vector<double> pos;
    for (double r : stair.radii) {
        if (r > 0.0) pos.push_back(r);
    }
    if (pos.empty()) {
        // Identically-zero staircase; represent as a zero-valued step.
        return make_tabulated({1.0}, {0.0}, dim);
    }
    std::sort(pos.begin(), pos.end());
    std::vector<double> breakpoints, values;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        if (i + 1 < pos.size() && pos[i + 1] == pos[i]) continue;
        breakpoints.push_back(pos[i]);
        const auto at_least =
            pos.end() - std::lower_bound(pos.begin(), pos.end(), pos[i]);  // #{r >= b}
        values.push_back(stair.weight * static_cast<double>(at_least));
    }
    return make_tabulated(std::move(breakpoints), std::move(values), dim);
}

bool RadialKernel::compact_support() const { return support_ < kInf; }

double RadialKernel::value(double t) const {
    if (t < 0.0) return 0.0;
    switch (profile_) {
        case Profile::indicator:
            return t <= s_ ? 1.0 : 0.0;
        case Profile::exponential:
            return std::exp(-lambda_ * t);
        case Profile::tabulated: {
            if (t == 0.0) return tab_v_.front();
            auto it = std::lower_bound(tab_b_.begin(), tab_b_.end(), t);  // first b >= t
            if (it == tab_b_.end()) return 0.0;
            return tab_v_[static_cast<std::size_t>(it - tab_b_.begin())];
        }
    }
    return 0.0;
}

double RadialKernel::evaluate(const Vec& xi) const { return value(norm(xi, dim_)); }

double RadialKernel::radial_moment(double lo, int power) const {
    if (lo < 0.0) lo = 0.0;
    auto integrand = [this, power](double t) { return value(t) * std::pow(t, power); };
    switch (profile_) {
        case Profile::indicator: {
            if (lo >= s_) return 0.0;
            // Integrand is a monomial on [lo, s]; one adaptive call is exact.
            return integrate(integrand, lo, s_, 1e-10);
        }
        case Profile::exponential:
            return integrate_to_infinity(integrand, lo, 1e-10);
        case Profile::tabulated: {
            double total = 0.0;
            double a = lo;
            for (std::size_t j = 0; j < tab_b_.size(); ++j) {
                const double b = tab_b_[j];
                if (b <= a) continue;
                if (tab_v_[j] != 0.0) total += integrate(integrand, a, b, 1e-10);
                a = b;
            }
            return total;
        }
    }
    return 0.0;
}

void RadialKernel::finalize() {
    switch (profile_) {
        case Profile::indicator:
            support_ = s_;
            break;
        case Profile::exponential:
            support_ = kInf;
            break;
        case Profile::tabulated: {
            support_ = 0.0;
            for (std::size_t j = tab_b_.size(); j-- > 0;) {
                if (tab_v_[j] > 0.0) {
                    support_ = tab_b_[j];
                    break;
                }
            }
            break;
        }
    }
    const double sigma = unit_sphere_measure(dim_);
    c_phi_ = sigma / static_cast<double>(dim_) * radial_moment(0.0, dim_ + 1);
    if (!std::isfinite(c_phi_))
        throw convergence_error("kernel second moment did not converge");
}

double RadialKernel::mass() const {
    return unit_sphere_measure(dim_) * radial_moment(0.0, dim_ - 1);
}

double RadialKernel::tail_second_moment(double R) const {
    return unit_sphere_measure(dim_) * radial_moment(R, dim_ + 1);
}

double RadialKernel::superlevel_radius(double c) const {
    if (!(c > 0.0)) throw config_error("superlevel threshold must be positive");
    switch (profile_) {
        case Profile::indicator:
            return c <= 1.0 ? s_ : 0.0;
        case Profile::exponential:
            return c >= 1.0 ? 0.0 : -std::log(c) / lambda_;
        case Profile::tabulated: {
            double best = 0.0;
            for (std::size_t j = 0; j < tab_b_.size(); ++j) {
                if (tab_v_[j] >= c) best = tab_b_[j];
            }
            return best;
        }
    }
    return 0.0;
}

double RadialKernel::truncation_radius(double tol_tail) const {
    if (compact_support()) return support_;
    const double target = tol_tail * second_moment();
    double hi = 1.0;
    int guard = 0;
    while (tail_second_moment(hi) > target) {
        hi *= 2.0;
        if (++guard > 60) throw convergence_error("kernel tail does not decay below tolerance");
    }
    double lo = hi * 0.5;
    if (hi == 1.0) lo = 0.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (tail_second_moment(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

StaircaseKernel RadialKernel::staircase(int n, bool upper) const {
    if (n < 1) throw config_error("staircase level n must be >= 1");
    if (upper && !compact_support())
        throw config_error("upper staircase bound requires a compactly supported kernel");
    StaircaseKernel stair;
    stair.level = n;
    stair.weight = std::ldexp(1.0, -n);  // 2^{-n}
    stair.upper = upper;
    const int count = n * (1 << n) + 1;  // k = 0 .. n*2^n
    stair.radii.reserve(static_cast<std::size_t>(count) + (upper ? 1 : 0));
    if (upper) stair.radii.push_back(support_);
    for (int k = 0; k < count; ++k) {
        const double threshold = static_cast<double>(k + 1) * stair.weight;
        stair.radii.push_back(superlevel_radius(threshold));
    }
    return stair;
}

}  // namespace perfhom
