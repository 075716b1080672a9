#include "perfhom/interpolate.hpp"

#include <cmath>

#include "perfhom/errors.hpp"

namespace perfhom {

namespace {

std::array<int, 3> key_of(const LatticeVec& k) { return {k[0], k[1], k[2]}; }

/// Integer cell ranges [klo, khi] per axis whose cells could be retained.
struct IndexRange {
    LatticeVec lo{0, 0, 0};
    LatticeVec hi{0, 0, 0};
};

}  // namespace

bool LatticeAverages::has(const LatticeVec& k) const { return lookup_.count(key_of(k)) != 0; }

double LatticeAverages::value(const LatticeVec& k) const {
    auto it = lookup_.find(key_of(k));
    if (it == lookup_.end()) throw config_error("lattice averages: index not retained");
    return values_[it->second];
}

void LatticeAverages::insert(const LatticeVec& k, double v) {
    lookup_[key_of(k)] = indices_.size();
    indices_.push_back(k);
    values_.push_back(v);
}

LatticeAverages inclusion_averages(const GridFunction& u, const PerforatedSet& set, double delta) {
    if (!(delta > 0.0)) throw config_error("inclusion averages: delta must be positive");
    const Grid& grid = u.grid;
    const int d = grid.dimension();
    const Box kbox = set.shape().bounding_box();
    const Box& omega = grid.box();

    // Retained inclusions: delta*(k + bounding box of K) inside omega.
    IndexRange range;
    for (int i = 0; i < d; ++i) {
        range.lo[static_cast<std::size_t>(i)] =
            static_cast<int>(std::ceil(omega.lo[i] / delta - kbox.lo[i] - 1e-12));
        range.hi[static_cast<std::size_t>(i)] =
            static_cast<int>(std::floor(omega.hi[i] / delta - kbox.hi[i] + 1e-12));
    }

    std::map<std::array<int, 3>, std::pair<double, std::size_t>> acc;
    const int lo2 = d >= 2 ? range.lo[1] : 0, hi2 = d >= 2 ? range.hi[1] : 0;
    const int lo3 = d >= 3 ? range.lo[2] : 0, hi3 = d >= 3 ? range.hi[2] : 0;
    for (int k1 = range.lo[0]; k1 <= range.hi[0]; ++k1) {
        for (int k2 = lo2; k2 <= hi2; ++k2) {
            for (int k3 = lo3; k3 <= hi3; ++k3) {
                acc[{k1, k2, k3}] = {0.0, 0};
            }
        }
    }

    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        if (!u.masked(i)) continue;
        const Vec x = grid.node(i);
        std::array<int, 3> k{0, 0, 0};
        for (int c = 0; c < d; ++c) {
            k[static_cast<std::size_t>(c)] =
                static_cast<int>(std::floor(x[c] / delta + 0.5));  // nearest center
        }
        auto it = acc.find(k);
        if (it == acc.end()) continue;  // inclusion not fully inside omega
        it->second.first += u.values[i];
        it->second.second += 1;
    }

    LatticeAverages avgs(LatticeAverages::Kind::inclusion, delta, d);
    for (const auto& [k, sum_count] : acc) {
        if (sum_count.second == 0)
            throw config_error(
                "inclusion averages: an inclusion inside the domain contains no masked node; "
                "refine the grid");
        avgs.insert(LatticeVec{k[0], k[1], k[2]},
                    sum_count.first / static_cast<double>(sum_count.second));
    }
    return avgs;
}

LatticeAverages coarse_averages(const GridFunction& u, const PerforatedSet& set, double delta,
                                double epsilon) {
    if (!(delta > 0.0) || !(epsilon > 0.0))
        throw config_error("coarse averages: delta and epsilon must be positive");
    if (epsilon < 2.0 * delta)
        throw config_error("coarse averages: epsilon must be at least 2*delta");
    (void)set;  // the membership information is already in u's mask
    const Grid& grid = u.grid;
    const int d = grid.dimension();
    const Box& omega = grid.box();

    IndexRange range;
    for (int i = 0; i < d; ++i) {
        range.lo[static_cast<std::size_t>(i)] =
            static_cast<int>(std::ceil(omega.lo[i] / epsilon - 1e-12));
        range.hi[static_cast<std::size_t>(i)] =
            static_cast<int>(std::floor(omega.hi[i] / epsilon + 1e-12)) - 1;
    }

    std::map<std::array<int, 3>, std::pair<double, std::size_t>> acc;
    const int lo2 = d >= 2 ? range.lo[1] : 0, hi2 = d >= 2 ? range.hi[1] : 0;
    const int lo3 = d >= 3 ? range.lo[2] : 0, hi3 = d >= 3 ? range.hi[2] : 0;
    for (int k1 = range.lo[0]; k1 <= range.hi[0]; ++k1) {
        for (int k2 = lo2; k2 <= hi2; ++k2) {
            for (int k3 = lo3; k3 <= hi3; ++k3) {
                acc[{k1, k2, k3}] = {0.0, 0};
            }
        }
    }

    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        if (!u.masked(i)) continue;
        const Vec x = grid.node(i);
        std::array<int, 3> k{0, 0, 0};
        for (int c = 0; c < d; ++c) {
            k[static_cast<std::size_t>(c)] = static_cast<int>(std::floor(x[c] / epsilon));
        }
        auto it = acc.find(k);
        if (it == acc.end()) continue;
        it->second.first += u.values[i];
        it->second.second += 1;
    }

    LatticeAverages avgs(LatticeAverages::Kind::coarse, epsilon, d);
    for (const auto& [k, sum_count] : acc) {
        if (sum_count.second == 0)
            throw config_error("coarse averages: an epsilon-cell contains no masked node");
        avgs.insert(LatticeVec{k[0], k[1], k[2]},
                    sum_count.first / static_cast<double>(sum_count.second));
    }
    return avgs;
}

GridFunction piecewise_constant(const LatticeAverages& avgs, const Grid& grid) {
    GridFunction out;
    out.grid = grid;
    out.values.assign(grid.node_count(), 0.0);
    out.mask.assign(grid.node_count(), 0);
    const int d = grid.dimension();
    const double s = avgs.scale();
    const bool centered = avgs.kind() == LatticeAverages::Kind::inclusion;
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        const Vec x = grid.node(i);
        LatticeVec k{0, 0, 0};
        for (int c = 0; c < d; ++c) {
            const double y = x[c] / s + (centered ? 0.5 : 0.0);
            k[static_cast<std::size_t>(c)] = static_cast<int>(std::floor(y));
        }
        if (!avgs.has(k)) continue;
        out.values[i] = avgs.value(k);
        out.mask[i] = 1;
    }
    return out;
}

GridFunction kuhn_affine(const LatticeAverages& avgs, const Grid& grid) {
    const int d = grid.dimension();
    if (d > 2) throw config_error("affine interpolation is implemented for dimensions 1 and 2");
    GridFunction out;
    out.grid = grid;
    out.values.assign(grid.node_count(), 0.0);
    out.mask.assign(grid.node_count(), 0);
    const double s = avgs.scale();
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        const Vec x = grid.node(i);
        LatticeVec k{0, 0, 0};
        Vec local;  // position within the lattice square, in [0, 1)
        for (int c = 0; c < d; ++c) {
            const double y = x[c] / s;
            const double f = std::floor(y);
            k[static_cast<std::size_t>(c)] = static_cast<int>(f);
            local[c] = y - f;
        }
        if (d == 1) {
            const LatticeVec k1{k[0] + 1, 0, 0};
            if (!avgs.has(k) || !avgs.has(k1)) continue;
            const double v0 = avgs.value(k), v1 = avgs.value(k1);
            out.values[i] = v0 + local[0] * (v1 - v0);
            out.mask[i] = 1;
        } else {
            const LatticeVec k10{k[0] + 1, k[1], 0};
            const LatticeVec k01{k[0], k[1] + 1, 0};
            const LatticeVec k11{k[0] + 1, k[1] + 1, 0};
            if (!avgs.has(k) || !avgs.has(k10) || !avgs.has(k01) || !avgs.has(k11)) continue;
            const double v00 = avgs.value(k), v10 = avgs.value(k10);
            const double v01 = avgs.value(k01), v11 = avgs.value(k11);
            // Triangles split along the diagonal from k to k+(1,1).
            double v;
            if (local[0] >= local[1]) {
                v = v00 + local[0] * (v10 - v00) + local[1] * (v11 - v10);
            } else {
                v = v00 + local[1] * (v01 - v00) + local[0] * (v11 - v01);
            }
            out.values[i] = v;
            out.mask[i] = 1;
        }
    }
    return out;
}

double discrete_dirichlet(const LatticeAverages& avgs) {
    const double s = avgs.scale();
    const int d = avgs.dimension();
    const double cell = std::pow(s, static_cast<double>(d));
    double total = 0.0;
    // indices() is sorted by construction (map order), so the bond
    // enumeration and summation order are deterministic.
    for (std::size_t i = 0; i < avgs.size(); ++i) {
        const LatticeVec& k = avgs.indices()[i];
        const double v = avgs.values()[i];
        for (int axis = 0; axis < d; ++axis) {
            LatticeVec n = k;
            n[static_cast<std::size_t>(axis)] += 1;
            if (!avgs.has(n)) continue;
            const double diff = (v - avgs.value(n)) / s;
            total += cell * diff * diff;
        }
    }
    return total;
}

}  // namespace perfhom
