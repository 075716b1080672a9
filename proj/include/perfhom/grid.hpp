#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "perfhom/geometry.hpp"
#include "perfhom/vec.hpp"

namespace perfhom {

/// Uniform cell-centered lattice over an axis-aligned box: nodes sit at
/// lo + (i + 1/2) h and carry quadrature weight h^d. The box sides must be
/// integer multiples of h.
class Grid {
  public:
    Grid() = default;
    Grid(const Box& box, double h);

    const Box& box() const { return box_; }
    double spacing() const { return h_; }
    int dimension() const { return box_.dim; }
    int nodes_along(int axis) const { return n_[static_cast<std::size_t>(axis)]; }
    std::size_t node_count() const { return total_; }

    double cell_measure() const;

    Vec node(const LatticeVec& idx) const;
    Vec node(std::size_t flat) const { return node(unflatten(flat)); }

    std::size_t flatten(const LatticeVec& idx) const;
    LatticeVec unflatten(std::size_t flat) const;

    bool operator==(const Grid& other) const;

  private:
    Box box_{};
    double h_ = 1.0;
    std::array<int, 3> n_{1, 1, 1};
    std::size_t total_ = 1;
};

/// Values on a grid plus the membership mask of the perforated domain.
/// Interpolants that live on all of Omega simply carry an all-true mask.
struct GridFunction {
    Grid grid;
    std::vector<double> values;
    std::vector<unsigned char> mask;

    double& at(const LatticeVec& idx) { return values[grid.flatten(idx)]; }
    double at(const LatticeVec& idx) const { return values[grid.flatten(idx)]; }
    bool masked(std::size_t flat) const { return mask[flat] != 0; }
    std::size_t masked_count() const;
};

/// Samples f at every node; the mask records membership in Omega intersect
/// delta E.
GridFunction sample(const Grid& grid, const std::function<double(const Vec&)>& f,
                    const PerforatedSet& set, double delta);

/// Samples f with an all-true mask (no perforation).
GridFunction sample_unmasked(const Grid& grid, const std::function<double(const Vec&)>& f);

/// sqrt( sum over nodes masked in both functions and lying in `region` of
/// (u - v)^2 h^d ). Throws on grid mismatch.
double masked_l2_distance(const GridFunction& u, const GridFunction& v, const Box& region);

/// L2 norm of u over the masked nodes in `region`.
double masked_l2_norm(const GridFunction& u, const Box& region);

/// Enforces the resolution rule h <= delta * (smallest full axis extent of
/// K) / 4, i.e. at least four nodes across the narrowest inclusion axis.
void validate_resolution(const Grid& grid, const InclusionShape& shape, double delta);

}  // namespace perfhom
