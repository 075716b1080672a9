#pragma once

#include <map>
#include <vector>

#include "perfhom/grid.hpp"

namespace perfhom {

/// Cell-indexed averages of a grid function: per-inclusion averages at the
/// fine scale delta (indices k label the inclusion centered at delta*k) or
/// mesoscale averages over epsilon-cells (indices k label the corner cell
/// epsilon*(k + [0,1)^d)). Only cells fully inside the domain are retained.
class LatticeAverages {
  public:
    enum class Kind { inclusion, coarse };

    LatticeAverages(Kind kind, double scale, int dim) : kind_(kind), scale_(scale), dim_(dim) {}

    Kind kind() const { return kind_; }
    double scale() const { return scale_; }
    int dimension() const { return dim_; }
    const std::vector<LatticeVec>& indices() const { return indices_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return indices_.size(); }

    bool has(const LatticeVec& k) const;
    double value(const LatticeVec& k) const;

    void insert(const LatticeVec& k, double v);

  private:
    Kind kind_;
    double scale_;
    int dim_;
    std::vector<LatticeVec> indices_;
    std::vector<double> values_;
    std::map<std::array<int, 3>, std::size_t> lookup_;
};

/// Mean of the masked node values over each inclusion delta*(k+K) that lies
/// entirely inside the grid box. Exact on constants. Throws if a retained
/// inclusion contains no masked node (resolution too coarse).
LatticeAverages inclusion_averages(const GridFunction& u, const PerforatedSet& set, double delta);

/// Mean of the masked node values over each epsilon-cell fully inside the
/// grid box. Requires epsilon >= 2*delta so cells straddle the
/// microstructure. Throws on an epsilon-cell with no masked node.
LatticeAverages coarse_averages(const GridFunction& u, const PerforatedSet& set, double delta,
                                double epsilon);

/// Piecewise-constant interpolant on the given grid: each node takes the
/// value of the cell containing it (centered cells for inclusion averages,
/// corner cells for coarse averages). Nodes in unretained cells get mask 0.
GridFunction piecewise_constant(const LatticeAverages& avgs, const Grid& grid);

/// Piecewise-affine interpolant with vertex values at the lattice points
/// scale*k: linear in d=1; in d=2 each lattice square is split into two
/// triangles along its main diagonal. Nodes in squares with a missing vertex
/// get mask 0. Dimensions above 2 are unsupported.
GridFunction kuhn_affine(const LatticeAverages& avgs, const Grid& grid);

/// Sum over unordered nearest-neighbor index pairs of
/// scale^d ((v_k - v_{k'}) / scale)^2.
double discrete_dirichlet(const LatticeAverages& avgs);

}  // namespace perfhom
