#pragma once

#include <string>
#include <vector>

#include "perfhom/vec.hpp"

namespace perfhom {

/// The inclusion K occupying part of the centered unit cell [-1/2, 1/2)^d.
/// Balls and ellipses are exact closed-form shapes strictly inside the cell;
/// masks are boolean rasters (and may fill the whole cell, the discrete
/// stand-in for an unperforated medium).
class InclusionShape {
  public:
    enum class Kind { ball, ellipse, mask };

    /// Ball of radius c centered at the origin; requires 0 < c < 1/2.
    static InclusionShape ball(double c, int dim);

    /// Axis-aligned ellipse with semi-axes c_i, each in (0, 1/2);
    /// dimension is the number of axes given (1 to 3).
    static InclusionShape ellipse(const std::vector<double>& semi_axes);

    /// Raster of m cells per axis over the unit cell, row-major with the
    /// first index fastest (cells[i2*m + i1] for d=2); nonzero = inside K.
    /// The true region must be nonempty and face-connected. d in {1, 2}.
    static InclusionShape mask(int m, std::vector<unsigned char> cells, int dim);

    /// Loads a PGM image (binary P5 or ASCII P2), square, nonzero = inside K.
    /// Rows of the image are stored bottom-to-top so that the first image row
    /// is the top of the cell.
    static InclusionShape mask_from_pgm(const std::string& path);

    Kind kind() const { return kind_; }
    int dimension() const { return dim_; }

    /// Membership of a point in centered cell coordinates z in [-1/2, 1/2)^d.
    bool contains_centered(const Vec& z) const;

    /// |K|: exact for ball/ellipse, cell-count measure for masks.
    double measure() const;

    /// Smallest full extent of K along a coordinate axis (2c for a ball).
    double min_axis_extent() const;

    /// Centered bounding box of K.
    Box bounding_box() const;

    /// dist(K, K + k) for a nonzero integer translation k. Closed form for
    /// balls; convex projection (certified 1e-6) for ellipses; for masks, a
    /// lower bound from cell-center clouds minus one cell diagonal, clamped
    /// at zero.
    double distance_to_translate(const LatticeVec& k) const;

    /// Spatial resolution metadata for masks (0 for exact shapes).
    int mask_resolution() const { return m_; }

    const std::vector<double>& semi_axes() const { return axes_; }

  private:
    InclusionShape() = default;
    void build_mask_metadata();

    Kind kind_ = Kind::ball;
    int dim_ = 2;
    std::vector<double> axes_;            // ball: one entry; ellipse: d entries
    int m_ = 0;                           // mask resolution
    std::vector<unsigned char> cells_;    // mask raster
    std::vector<Vec> boundary_centers_;   // centers of mask cells on the true-region boundary
    Box bbox_{};                          // centered bounding box
};

}  // namespace perfhom
