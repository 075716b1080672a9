#pragma once

#include <cstddef>
#include <vector>

#include "perfhom/geometry.hpp"
#include "perfhom/grid.hpp"
#include "perfhom/kernel.hpp"

namespace perfhom {

/// Evaluator of the nonlocal energy
///   F(u) = eps^{-(d+2)} * sum over masked node pairs within the cutoff of
///          phi((x-y)/eps) (u(x)-u(y))^2 h^{2d},
/// with a cell-list fast path. Pair inclusion uses the closed cutoff
/// |x - y| <= cutoff_radius(); unbounded kernels are truncated at a radius
/// whose neglected tail is certified below tol_tail * second_moment.
class EnergyContext {
  public:
    EnergyContext(RadialKernel kernel, PerforatedSet set, Grid grid, double delta, double epsilon,
                  double tol_tail = 1e-6, int threads = 1);

    const RadialKernel& kernel() const { return kernel_; }
    const PerforatedSet& set() const { return set_; }
    const Grid& grid() const { return grid_; }
    double delta() const { return delta_; }
    double epsilon() const { return epsilon_; }
    int threads() const { return threads_; }
    void set_threads(int threads) { threads_ = threads < 1 ? 1 : threads; }

    /// Physical pair cutoff: eps * support for compact kernels, else the
    /// certified truncation radius scaled by eps.
    double cutoff_radius() const { return cutoff_; }

    /// Certified bound on the kernel tail neglected by the cutoff
    /// (integral of phi |xi|^2 beyond the cutoff in kernel coordinates);
    /// exactly 0 for compactly supported kernels.
    double truncation_tail() const { return truncation_tail_; }

    /// The full energy F(u).
    double evaluate(const GridFunction& u) const;

    /// Localized energy F(u, A): the x-point restricted to the box A, the
    /// y-point free. Additive over disjoint A and equal to evaluate(u) at
    /// A = Omega.
    double evaluate_localized(const GridFunction& u, const Box& A) const;

    /// Independent O(N^2) reference: plain double loop over masked nodes in
    /// flat order. Refuses instances larger than `cap` masked nodes.
    double oracle_evaluate(const GridFunction& u, std::size_t cap = 4096) const;

  private:
    void check_compatible(const GridFunction& u) const;
    template <typename PairTerm>
    double pair_sum(const GridFunction& u, PairTerm&& term) const;

    RadialKernel kernel_;
    PerforatedSet set_;
    Grid grid_;
    double delta_;
    double epsilon_;
    double cutoff_;
    double truncation_tail_;
    int threads_;

    // Cell lists over masked nodes: bins of side >= cutoff tiling the box.
    std::array<int, 3> nbins_{1, 1, 1};
    std::array<double, 3> bin_size_{1.0, 1.0, 1.0};
    std::vector<std::vector<std::size_t>> bins_;
    std::size_t bin_flat(const std::array<int, 3>& b) const;
};

}  // namespace perfhom
