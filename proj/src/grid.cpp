#include "perfhom/grid.hpp"

#include <cmath>

#include "perfhom/errors.hpp"

namespace perfhom {

Grid::Grid(const Box& box, double h) : box_(box), h_(h) {
    if (box.dim < 1 || box.dim > kMaxDim) throw config_error("grid: dimension must be 1, 2, or 3");
    if (!(h > 0.0)) throw config_error("grid: spacing h must be positive");
    total_ = 1;
    for (int i = 0; i < box.dim; ++i) {
        const double ratio = box.side(i) / h;
        const double rounded = std::round(ratio);
        if (!(ratio > 0.0) || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
            throw config_error("grid: box side must be a positive integer multiple of h");
        n_[static_cast<std::size_t>(i)] = static_cast<int>(rounded);
        total_ *= static_cast<std::size_t>(n_[static_cast<std::size_t>(i)]);
    }
}

double Grid::cell_measure() const {
    double m = 1.0;
    for (int i = 0; i < dimension(); ++i) m *= h_;
    return m;
}

Vec Grid::node(const LatticeVec& idx) const {
    Vec p;
    for (int i = 0; i < dimension(); ++i) {
        p[i] = box_.lo[i] + (static_cast<double>(idx[static_cast<std::size_t>(i)]) + 0.5) * h_;
    }
    return p;
}

std::size_t Grid::flatten(const LatticeVec& idx) const {
    std::size_t flat = 0;
    for (int i = dimension() - 1; i >= 0; --i) {
        flat = flat * static_cast<std::size_t>(n_[static_cast<std::size_t>(i)]) +
               static_cast<std::size_t>(idx[static_cast<std::size_t>(i)]);
    }
    return flat;
}

LatticeVec Grid::unflatten(std::size_t flat) const {
    LatticeVec idx{0, 0, 0};
    for (int i = 0; i < dimension(); ++i) {
        const std::size_t n = static_cast<std::size_t>(n_[static_cast<std::size_t>(i)]);
        idx[static_cast<std::size_t>(i)] = static_cast<int>(flat % n);
        flat /= n;
    }
    return idx;
}

bool Grid::operator==(const Grid& other) const {
    if (box_.dim != other.box_.dim || h_ != other.h_) return false;
    for (int i = 0; i < box_.dim; ++i) {
        if (box_.lo[i] != other.box_.lo[i] || box_.hi[i] != other.box_.hi[i]) return false;
    }
    return true;
}

std::size_t GridFunction::masked_count() const {
    std::size_t count = 0;
    for (unsigned char m : mask) count += m != 0 ? 1 : 0;
    return count;
}

GridFunction sample(const Grid& grid, const std::function<double(const Vec&)>& f,
                    const PerforatedSet& set, double delta) {
    GridFunction u;
    u.grid = grid;
    u.values.resize(grid.node_count());
    u.mask.resize(grid.node_count());
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        const Vec x = grid.node(i);
        u.values[i] = f(x);
        u.mask[i] = set.contains(x, delta) ? 1 : 0;
    }
    return u;
}

GridFunction sample_unmasked(const Grid& grid, const std::function<double(const Vec&)>& f) {
    GridFunction u;
    u.grid = grid;
    u.values.resize(grid.node_count());
    u.mask.assign(grid.node_count(), 1);
    for (std::size_t i = 0; i < grid.node_count(); ++i) u.values[i] = f(grid.node(i));
    return u;
}

double masked_l2_distance(const GridFunction& u, const GridFunction& v, const Box& region) {
    if (!(u.grid == v.grid)) throw config_error("masked_l2_distance: grid mismatch");
    const double w = u.grid.cell_measure();
    double sum = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        if (!u.masked(i) || !v.masked(i)) continue;
        if (!region.contains(u.grid.node(i))) continue;
        const double d = u.values[i] - v.values[i];
        sum += d * d * w;
    }
    return std::sqrt(sum);
}

double masked_l2_norm(const GridFunction& u, const Box& region) {
    const double w = u.grid.cell_measure();
    double sum = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        if (!u.masked(i)) continue;
        if (!region.contains(u.grid.node(i))) continue;
        sum += u.values[i] * u.values[i] * w;
    }
    return std::sqrt(sum);
}

void validate_resolution(const Grid& grid, const InclusionShape& shape, double delta) {
    const double limit = delta * shape.min_axis_extent() / 4.0;
    if (grid.spacing() > limit * (1.0 + 1e-12))
        throw config_error(
            "grid: spacing h exceeds delta * (min inclusion extent)/4; the inclusion geometry "
            "would be under-resolved");
}

}  // namespace perfhom
