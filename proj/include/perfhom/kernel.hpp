#pragma once

#include <string>
#include <vector>

#include "perfhom/vec.hpp"

namespace perfhom {

/// Simple-function approximation of a radial profile: a weighted sum of
/// indicator slabs, value(t) = weight * #{k : 0 < t <= radii[k]}.
/// Produced by RadialKernel::staircase; `radii` is nonincreasing.
struct StaircaseKernel {
    int level = 1;              ///< refinement parameter n
    double weight = 0.5;        ///< 2^{-n}
    std::vector<double> radii;  ///< slab radii, nonincreasing; zeros mean empty slabs
    bool upper = false;         ///< true when a full-support slab was prepended

    /// phi_n(t): weight times the number of slabs whose closed interval [0, r]
    /// contains t. Zero-radius slabs are empty and never contribute.
    double value(double t) const;
};

/// A nonnegative radial convolution kernel phi(xi) = phi0(|xi|) with a
/// nonincreasing profile phi0, fixed ambient dimension, and exact or
/// quadrature-backed radial moments.
///
/// Profiles use closed support conventions: the indicator profile is 1 on the
/// closed interval [0, s], and tabulated profiles are right-closed step
/// functions (value v_j on (b_{j-1}, b_j], with phi0(0) = v_1).
class RadialKernel {
  public:
    enum class Profile { indicator, exponential, tabulated };

    /// phi0 = 1 on [0, s], 0 beyond. Requires s > 0.
    static RadialKernel make_indicator(double s, int dim);

    /// phi0(t) = exp(-lambda t). Requires lambda > 0. Unbounded support.
    static RadialKernel make_exponential(double lambda, int dim);

    /// Step profile from breakpoints 0 < b_1 < ... < b_J and nonincreasing
    /// nonnegative values v_1 >= ... >= v_J: phi0 = v_j on (b_{j-1}, b_j]
    /// (b_0 = 0), 0 beyond b_J.
    static RadialKernel make_tabulated(std::vector<double> breakpoints, std::vector<double> values,
                                       int dim);

    /// Reads a CSV file with header `t,phi0` and strictly increasing t; each
    /// row (t_i, v_i) fixes phi0(t_i) = v_i, extended left-constant down to
    /// the previous breakpoint.
    static RadialKernel tabulated_from_csv(const std::string& path, int dim);

    /// Exact reconstruction of a staircase as a tabulated kernel.
    static RadialKernel from_staircase(const StaircaseKernel& stair, int dim);

    Profile profile() const { return profile_; }
    int dimension() const { return dim_; }
    bool compact_support() const;
    /// s for indicator, +infinity for exponential, last positive-value
    /// breakpoint for tabulated profiles.
    double support_radius() const { return support_; }

    /// The radial profile phi0(t) for t >= 0.
    double value(double t) const;
    /// phi(xi) = phi0(|xi|) in the kernel's dimension.
    double evaluate(const Vec& xi) const;

    /// C_phi = (1/d) * integral of phi(xi) |xi|^2 over R^d,
    /// computed as (sigma_{d-1}/d) * integral of phi0(t) t^{d+1} dt.
    /// Cached at construction; relative quadrature error <= 1e-8.
    double c_phi() const { return c_phi_; }

    /// Integral of phi(xi) |xi|^2 over R^d; equals dimension * c_phi.
    double second_moment() const { return static_cast<double>(dim_) * c_phi_; }

    /// Integral of phi over R^d (finite for every supported profile).
    double mass() const;

    /// Integral of phi(xi) |xi|^2 over {|xi| > R}. Nonincreasing in R;
    /// equals second_moment() at R = 0.
    double tail_second_moment(double R) const;

    /// sup{t >= 0 : phi0(t) >= c} for c > 0, with sup of the empty set = 0.
    double superlevel_radius(double c) const;

    /// Radius R at which the neglected tail is certifiably small:
    /// tail_second_moment(R) <= tol_tail * second_moment(). Returns the
    /// support radius for compactly supported kernels.
    double truncation_radius(double tol_tail = 1e-6) const;

    /// Simple-function approximation at level n: slab radii
    /// r_k = superlevel_radius((k+1) 2^{-n}) for k = 0..n*2^n, weight 2^{-n}.
    /// The lower variant satisfies value <= phi0 pointwise; the upper variant
    /// (compact support only) prepends one full-support slab so that
    /// phi0 <= value <= phi0 + 2^{-n}.
    StaircaseKernel staircase(int n, bool upper = false) const;

  private:
    RadialKernel() = default;
    void finalize();  // computes support_ and c_phi_, validates moments

    /// sigma-free radial moment: integral over (lo, support) of phi0(t) t^power.
    double radial_moment(double lo, int power) const;

    Profile profile_ = Profile::indicator;
    int dim_ = 2;
    double s_ = 1.0;       // indicator radius
    double lambda_ = 1.0;  // exponential rate
    std::vector<double> tab_b_, tab_v_;
    double support_ = 1.0;
    double c_phi_ = 0.0;
};

/// Surface measure of the unit sphere S^{d-1}: 2, 2*pi, 4*pi for d = 1, 2, 3.
double unit_sphere_measure(int dim);

}  // namespace perfhom
