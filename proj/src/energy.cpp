#include "perfhom/energy.hpp"

#include <algorithm>
#include <cmath>

#include "perfhom/errors.hpp"
#include "perfhom/parallel.hpp"

namespace perfhom {

EnergyContext::EnergyContext(RadialKernel kernel, PerforatedSet set, Grid grid, double delta,
                             double epsilon, double tol_tail, int threads)
    : kernel_(std::move(kernel)),
      set_(std::move(set)),
      grid_(std::move(grid)),
      delta_(delta),
      epsilon_(epsilon),
      threads_(threads < 1 ? 1 : threads) {
    if (!(delta_ > 0.0) || !(epsilon_ > 0.0))
        throw config_error("energy: delta and epsilon must be positive");
    if (kernel_.dimension() != grid_.dimension() || set_.dimension() != grid_.dimension())
        throw config_error("energy: kernel, geometry, and grid dimensions must agree");
    if (grid_.spacing() > epsilon_)
        throw config_error("energy: grid spacing h exceeds epsilon; the kernel is unresolved");
    validate_resolution(grid_, set_.shape(), delta_);

    if (kernel_.compact_support()) {
        cutoff_ = epsilon_ * kernel_.support_radius();
        truncation_tail_ = 0.0;
    } else {
        if (!(tol_tail > 0.0)) throw config_error("energy: tol_tail must be positive");
        const double r = kernel_.truncation_radius(tol_tail);
        cutoff_ = epsilon_ * r;
        truncation_tail_ = kernel_.tail_second_moment(r);
    }

    // Bins tile the box with side >= cutoff so neighbors span one bin step.
    int total_bins = 1;
    for (int i = 0; i < grid_.dimension(); ++i) {
        const double side = grid_.box().side(i);
        int n = static_cast<int>(std::floor(side / cutoff_));
        n = std::max(1, n);
        nbins_[static_cast<std::size_t>(i)] = n;
        bin_size_[static_cast<std::size_t>(i)] = side / static_cast<double>(n);
        total_bins *= n;
    }
    bins_.assign(static_cast<std::size_t>(total_bins), {});
    for (std::size_t flat = 0; flat < grid_.node_count(); ++flat) {
        const LatticeVec idx = grid_.unflatten(flat);
        std::array<int, 3> b{0, 0, 0};
        for (int i = 0; i < grid_.dimension(); ++i) {
            const double offset =
                (static_cast<double>(idx[static_cast<std::size_t>(i)]) + 0.5) * grid_.spacing();
            int bi = static_cast<int>(std::floor(offset / bin_size_[static_cast<std::size_t>(i)]));
            b[static_cast<std::size_t>(i)] =
                std::clamp(bi, 0, nbins_[static_cast<std::size_t>(i)] - 1);
        }
        bins_[bin_flat(b)].push_back(flat);
    }
}

std::size_t EnergyContext::bin_flat(const std::array<int, 3>& b) const {
    std::size_t flat = 0;
    for (int i = grid_.dimension() - 1; i >= 0; --i) {
        flat = flat * static_cast<std::size_t>(nbins_[static_cast<std::size_t>(i)]) +
               static_cast<std::size_t>(b[static_cast<std::size_t>(i)]);
    }
    return flat;
}

void EnergyContext::check_compatible(const GridFunction& u) const {
    if (!(u.grid == grid_)) throw config_error("energy: grid function lives on a different grid");
    if (u.values.size() != grid_.node_count() || u.mask.size() != grid_.node_count())
        throw config_error("energy: grid function storage size mismatch");
}

/// Shared unordered-pair traversal. `term(i, j, weight, dist)` is called once
/// per masked unordered pair within the closed cutoff, with the kernel weight
/// phi((x-y)/eps) already evaluated. Per-outer-bin partial sums are combined
/// in bin order, so results do not depend on the thread count.
template <typename PairTerm>
double EnergyContext::pair_sum(const GridFunction& u, PairTerm&& term) const {
    const int d = grid_.dimension();
    const double h = grid_.spacing();
    const double r2_cut = cutoff_ * cutoff_;
    const std::size_t nb = bins_.size();
    std::vector<double> partial(nb, 0.0);
    std::vector<LatticeVec> coords(grid_.node_count());
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = grid_.unflatten(i);

    auto bin_coords = [this, d](std::size_t flat) {
        std::array<int, 3> b{0, 0, 0};
        for (int i = 0; i < d; ++i) {
            const int n = nbins_[static_cast<std::size_t>(i)];
            b[static_cast<std::size_t>(i)] = static_cast<int>(flat % static_cast<std::size_t>(n));
            flat /= static_cast<std::size_t>(n);
        }
        return b;
    };

    parallel_for(nb, threads_, [&](std::size_t outer) {
        const auto& nodes_a = bins_[outer];
        if (nodes_a.empty()) return;
        const std::array<int, 3> bc = bin_coords(outer);
        double acc = 0.0;
        std::array<int, 3> nb_idx{0, 0, 0};
        const int lo2 = d >= 2 ? -1 : 0, hi2 = d >= 2 ? 1 : 0;
        const int lo3 = d >= 3 ? -1 : 0, hi3 = d >= 3 ? 1 : 0;
        for (int o1 = -1; o1 <= 1; ++o1) {
            for (int o2 = lo2; o2 <= hi2; ++o2) {
                for (int o3 = lo3; o3 <= hi3; ++o3) {
                    nb_idx[0] = bc[0] + o1;
                    nb_idx[1] = bc[1] + o2;
                    nb_idx[2] = bc[2] + o3;
                    bool ok = true;
                    for (int i = 0; i < d; ++i) {
                        if (nb_idx[static_cast<std::size_t>(i)] < 0 ||
                            nb_idx[static_cast<std::size_t>(i)] >=
                                nbins_[static_cast<std::size_t>(i)])
                            ok = false;
                    }
                    if (!ok) continue;
                    const std::size_t other = bin_flat(nb_idx);
                    if (other < outer) continue;  // unordered bin pairs once
                    const auto& nodes_b = bins_[other];
                    for (std::size_t ia = 0; ia < nodes_a.size(); ++ia) {
                        const std::size_t i = nodes_a[ia];
                        if (!u.masked(i)) continue;
                        const LatticeVec& gi = coords[i];
                        const std::size_t jb_start = other == outer ? ia + 1 : 0;
                        for (std::size_t jb = jb_start; jb < nodes_b.size(); ++jb) {
                            const std::size_t j = nodes_b[jb];
                            if (!u.masked(j)) continue;
                            const LatticeVec& gj = coords[j];
                            double dist2 = 0.0;
                            for (int c = 0; c < d; ++c) {
                                const double dc =
                                    h * static_cast<double>(gi[static_cast<std::size_t>(c)] -
                                                            gj[static_cast<std::size_t>(c)]);
                                dist2 += dc * dc;
                            }
                            if (dist2 > r2_cut) continue;
                            const double dist = std::sqrt(dist2);
                            const double w = kernel_.value(dist / epsilon_);
                            if (w == 0.0) continue;
                            acc += term(i, j, w);
                        }
                    }
                }
            }
        }
        partial[outer] = acc;
    });

    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

double EnergyContext::evaluate(const GridFunction& u) const {
    check_compatible(u);
    const int d = grid_.dimension();
    const double sum = pair_sum(u, [&u](std::size_t i, std::size_t j, double w) {
        const double diff = u.values[i] - u.values[j];
        return 2.0 * w * diff * diff;
    });
    const double h2d = std::pow(grid_.cell_measure(), 2.0);
    return sum * h2d / std::pow(epsilon_, static_cast<double>(d + 2));
}

double EnergyContext::evaluate_localized(const GridFunction& u, const Box& A) const {
    check_compatible(u);
    const int d = grid_.dimension();
    // Precompute membership of each node in A once.
    std::vector<unsigned char> in_a(grid_.node_count());
    for (std::size_t i = 0; i < grid_.node_count(); ++i)
        in_a[i] = A.contains(grid_.node(i)) ? 1 : 0;
    const double sum = pair_sum(u, [&u, &in_a](std::size_t i, std::size_t j, double w) {
        const double factor = static_cast<double>(in_a[i]) + static_cast<double>(in_a[j]);
        if (factor == 0.0) return 0.0;
        const double diff = u.values[i] - u.values[j];
        return factor * w * diff * diff;
    });
    const double h2d = std::pow(grid_.cell_measure(), 2.0);
    return sum * h2d / std::pow(epsilon_, static_cast<double>(d + 2));
}

double EnergyContext::oracle_evaluate(const GridFunction& u, std::size_t cap) const {
    check_compatible(u);
    std::vector<std::size_t> nodes;
    for (std::size_t i = 0; i < grid_.node_count(); ++i) {
        if (u.masked(i)) nodes.push_back(i);
    }
    if (nodes.size() > cap)
        throw config_error("energy oracle: masked node count exceeds the oracle cap");
    const int d = grid_.dimension();
    const double h = grid_.spacing();
    const double r2_cut = cutoff_ * cutoff_;
    double sum = 0.0;
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        const LatticeVec gi = grid_.unflatten(nodes[a]);
        for (std::size_t b = a + 1; b < nodes.size(); ++b) {
            const LatticeVec gj = grid_.unflatten(nodes[b]);
            double dist2 = 0.0;
            for (int c = 0; c < d; ++c) {
                const double dc = h * static_cast<double>(gi[static_cast<std::size_t>(c)] -
                                                          gj[static_cast<std::size_t>(c)]);
                dist2 += dc * dc;
            }
            if (dist2 > r2_cut) continue;
            const double w = kernel_.value(std::sqrt(dist2) / epsilon_);
            const double diff = u.values[nodes[a]] - u.values[nodes[b]];
            sum += 2.0 * w * diff * diff;
        }
    }
    const double h2d = std::pow(grid_.cell_measure(), 2.0);
    return sum * h2d / std::pow(epsilon_, static_cast<double>(d + 2));
}

}  // namespace perfhom
