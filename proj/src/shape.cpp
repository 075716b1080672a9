#include "perfhom/shape.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "perfhom/errors.hpp"
#include "perfhom/unionfind.hpp"

namespace perfhom {

namespace {

constexpr double kPi = std::numbers::pi;

/// Euclidean distance from point p to the closed axis-aligned ellipse with
/// semi-axes a (all positive), 0 if p lies inside. The boundary projection
/// multiplier is found by bisection; the result is accurate to ~1e-12.
double distance_to_ellipse(const Vec& p, const std::vector<double>& a, int dim) {
    double level = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double r = p[i] / a[i];
        level += r * r;
    }
    if (level <= 1.0) return 0.0;

    auto constraint = [&](double mu) {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) {
            const double t = a[i] * p[i] / (a[i] * a[i] + mu);
            s += t * t;
        }
        return s;
    };
    double amax = 0.0, pnorm2 = 0.0;
    for (int i = 0; i < dim; ++i) {
        amax = std::max(amax, a[i]);
        pnorm2 += p[i] * p[i];
    }
    double lo = 0.0;
    double hi = amax * (std::sqrt(pnorm2) + amax);
    while (constraint(hi) > 1.0) hi *= 2.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (constraint(mid) > 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double mu = 0.5 * (lo + hi);
    double d2 = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double yi = a[i] * a[i] * p[i] / (a[i] * a[i] + mu);
        d2 += (p[i] - yi) * (p[i] - yi);
    }
    return std::sqrt(d2);
}

}  // namespace

InclusionShape InclusionShape::ball(double c, int dim) {
    if (dim < 1 || dim > kMaxDim) throw config_error("ball: dimension must be 1, 2, or 3");
    if (!(c > 0.0 && c < 0.5))
        throw config_error("ball: radius c must satisfy 0 < c < 1/2 (inclusion inside one cell)");
    InclusionShape s;
    s.kind_ = Kind::ball;
    s.dim_ = dim;
    s.axes_.assign(static_cast<std::size_t>(dim), c);
    s.bbox_.dim = dim;
    for (int i = 0; i < dim; ++i) {
        s.bbox_.lo[i] = -c;
        s.bbox_.hi[i] = c;
    }
    return s;
}

InclusionShape InclusionShape::ellipse(const std::vector<double>& semi_axes) {
    const int dim = static_cast<int>(semi_axes.size());
    if (dim < 1 || dim > kMaxDim) throw config_error("ellipse: need 1 to 3 semi-axes");
    for (double c : semi_axes) {
        if (!(c > 0.0 && c < 0.5))
            throw config_error("ellipse: each semi-axis must satisfy 0 < c < 1/2");
    }
    InclusionShape s;
    s.kind_ = Kind::ellipse;
    s.dim_ = dim;
    s.axes_ = semi_axes;
    s.bbox_.dim = dim;
    for (int i = 0; i < dim; ++i) {
        s.bbox_.lo[i] = -semi_axes[static_cast<std::size_t>(i)];
        s.bbox_.hi[i] = semi_axes[static_cast<std::size_t>(i)];
    }
    return s;
}

InclusionShape InclusionShape::mask(int m, std::vector<unsigned char> cells, int dim) {
    if (dim < 1 || dim > 2) throw config_error("mask: dimension must be 1 or 2");
    if (m < 1) throw config_error("mask: resolution must be positive");
    std::size_t expected = static_cast<std::size_t>(m);
    if (dim == 2) expected *= static_cast<std::size_t>(m);
    if (cells.size() != expected)
        throw config_error("mask: cell count does not match resolution");
    InclusionShape s;
    s.kind_ = Kind::mask;
    s.dim_ = dim;
    s.m_ = m;
    s.cells_ = std::move(cells);
    s.build_mask_metadata();
    return s;
}

InclusionShape InclusionShape::mask_from_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open mask image: " + path);
    std::string magic;
    in >> magic;
    if (magic != "P5" && magic != "P2")
        throw config_error("mask image must be PGM (P5 or P2): " + path);
    auto next_token = [&in, &path]() {
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return tok;
        }
        throw config_error("truncated PGM header: " + path);
    };
    const int w = std::stoi(next_token());
    const int h = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (w != h) throw config_error("mask image must be square: " + path);
    if (w < 1) throw config_error("mask image is empty: " + path);
    if (maxval < 1 || maxval > 255)
        throw config_error("mask image must have maxval in [1, 255]: " + path);
    const int m = w;
    std::vector<unsigned char> raster(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    if (magic == "P5") {
        in.get();  // single whitespace byte after maxval
        std::vector<char> buf(raster.size());
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (in.gcount() != static_cast<std::streamsize>(buf.size()))
            throw config_error("truncated PGM pixel data: " + path);
        for (std::size_t i = 0; i < raster.size(); ++i)
            raster[i] = buf[i] != 0 ? 1 : 0;
    } else {
        for (std::size_t i = 0; i < raster.size(); ++i) {
            int v = 0;
            if (!(in >> v)) throw config_error("truncated PGM pixel data: " + path);
            raster[i] = v != 0 ? 1 : 0;
        }
    }
    // Image row 0 is the top of the cell; store rows bottom-to-top.
    std::vector<unsigned char> cells(raster.size());
    for (int row = 0; row < m; ++row) {
        for (int col = 0; col < m; ++col) {
            const int i2 = m - 1 - row;
            cells[static_cast<std::size_t>(i2) * static_cast<std::size_t>(m) +
                  static_cast<std::size_t>(col)] =
                raster[static_cast<std::size_t>(row) * static_cast<std::size_t>(m) +
                       static_cast<std::size_t>(col)];
        }
    }
    return mask(m, std::move(cells), 2);
}

void InclusionShape::build_mask_metadata() {
    const int m = m_;
    const double h = 1.0 / static_cast<double>(m);
    auto at = [this, m](int i1, int i2) -> bool {
        if (i1 < 0 || i1 >= m || i2 < 0 || i2 >= m) return false;
        const std::size_t idx = dim_ == 1 ? static_cast<std::size_t>(i1)
                                          : static_cast<std::size_t>(i2) * static_cast<std::size_t>(m) +
                                                static_cast<std::size_t>(i1);
        return cells_[idx] != 0;
    };
    const int rows = dim_ == 1 ? 1 : m;

    // Connectivity under face adjacency.
    DisjointSets uf(cells_.size());
    std::size_t true_count = 0;
    std::size_t first_true = 0;
    for (int i2 = 0; i2 < rows; ++i2) {
        for (int i1 = 0; i1 < m; ++i1) {
            if (!at(i1, i2)) continue;
            const std::size_t idx = static_cast<std::size_t>(i2) * static_cast<std::size_t>(m) +
                                    static_cast<std::size_t>(i1);
            if (true_count == 0) first_true = idx;
            ++true_count;
            if (at(i1 + 1, i2))
                uf.unite(idx, idx + 1);
            if (dim_ == 2 && at(i1, i2 + 1))
                uf.unite(idx, idx + static_cast<std::size_t>(m));
        }
    }
    if (true_count == 0) throw config_error("mask: true region is empty");
    for (int i2 = 0; i2 < rows; ++i2) {
        for (int i1 = 0; i1 < m; ++i1) {
            if (!at(i1, i2)) continue;
            const std::size_t idx = static_cast<std::size_t>(i2) * static_cast<std::size_t>(m) +
                                    static_cast<std::size_t>(i1);
            if (!uf.same(idx, first_true))
                throw config_error("mask: true region must be a single face-connected component");
        }
    }

    // Bounding box and boundary-cell centers.
    int lo1 = m, hi1 = -1, lo2 = m, hi2 = -1;
    boundary_centers_.clear();
    for (int i2 = 0; i2 < rows; ++i2) {
        for (int i1 = 0; i1 < m; ++i1) {
            if (!at(i1, i2)) continue;
            lo1 = std::min(lo1, i1);
            hi1 = std::max(hi1, i1);
            lo2 = std::min(lo2, i2);
            hi2 = std::max(hi2, i2);
            const bool boundary = !at(i1 - 1, i2) || !at(i1 + 1, i2) ||
                                  (dim_ == 2 && (!at(i1, i2 - 1) || !at(i1, i2 + 1)));
            if (boundary) {
                Vec c;
                c[0] = (static_cast<double>(i1) + 0.5) * h - 0.5;
                if (dim_ == 2) c[1] = (static_cast<double>(i2) + 0.5) * h - 0.5;
                boundary_centers_.push_back(c);
            }
        }
    }
    bbox_.dim = dim_;
    bbox_.lo[0] = static_cast<double>(lo1) * h - 0.5;
    bbox_.hi[0] = static_cast<double>(hi1 + 1) * h - 0.5;
    if (dim_ == 2) {
        bbox_.lo[1] = static_cast<double>(lo2) * h - 0.5;
        bbox_.hi[1] = static_cast<double>(hi2 + 1) * h - 0.5;
    }
}

bool InclusionShape::contains_centered(const Vec& z) const {
    switch (kind_) {
        case Kind::ball: {
            const double c = axes_[0];
            return norm2(z, dim_) <= c * c;
        }
        case Kind::ellipse: {
            double level = 0.0;
            for (int i = 0; i < dim_; ++i) {
                const double r = z[i] / axes_[static_cast<std::size_t>(i)];
                level += r * r;
            }
            return level <= 1.0;
        }
        case Kind::mask: {
            const int m = m_;
            auto cell_index = [m](double coord) {
                int i = static_cast<int>(std::floor((coord + 0.5) * static_cast<double>(m)));
                return std::clamp(i, 0, m - 1);
            };
            const int i1 = cell_index(z[0]);
            const std::size_t idx =
                dim_ == 1 ? static_cast<std::size_t>(i1)
                          : static_cast<std::size_t>(cell_index(z[1])) * static_cast<std::size_t>(m) +
                                static_cast<std::size_t>(i1);
            return cells_[idx] != 0;
        }
    }
    return false;
}

double InclusionShape::measure() const {
    switch (kind_) {
        case Kind::ball:
        case Kind::ellipse: {
            double prod = 1.0;
            for (double c : axes_) prod *= c;
            switch (dim_) {
                case 1:
                    return 2.0 * prod;
                case 2:
                    return kPi * prod;
                default:
                    return 4.0 / 3.0 * kPi * prod;
            }
        }
        case Kind::mask: {
            std::size_t count = 0;
            for (unsigned char c : cells_) count += c != 0 ? 1 : 0;
            double cell = 1.0 / static_cast<double>(m_);
            if (dim_ == 2) cell /= static_cast<double>(m_);
            return static_cast<double>(count) * cell;
        }
    }
    return 0.0;
}

double InclusionShape::min_axis_extent() const {
    double extent = std::numeric_limits<double>::infinity();
    for (int i = 0; i < dim_; ++i) extent = std::min(extent, bbox_.side(i));
    return extent;
}

Box InclusionShape::bounding_box() const { return bbox_; }

double InclusionShape::distance_to_translate(const LatticeVec& k) const {
    bool zero = true;
    for (int i = 0; i < dim_; ++i) zero = zero && k[static_cast<std::size_t>(i)] == 0;
    if (zero) throw config_error("distance_to_translate: translation must be nonzero");
    Vec kv;
    for (int i = 0; i < dim_; ++i) kv[i] = static_cast<double>(k[static_cast<std::size_t>(i)]);
    switch (kind_) {
        case Kind::ball:
            return std::max(0.0, norm(kv, dim_) - 2.0 * axes_[0]);
        case Kind::ellipse: {
            // dist(K, K+k) = dist(k, K - K) and K - K is the ellipse with
            // doubled semi-axes (K is convex and centrally symmetric).
            std::vector<double> doubled(axes_);
            for (double& a : doubled) a *= 2.0;
            return distance_to_ellipse(kv, doubled, dim_);
        }
        case Kind::mask: {
            double best = std::numeric_limits<double>::infinity();
            for (const Vec& a : boundary_centers_) {
                for (const Vec& b : boundary_centers_) {
                    const Vec shifted = b + kv;
                    best = std::min(best, norm(a - shifted, dim_));
                }
            }
            const double diag = std::sqrt(static_cast<double>(dim_)) / static_cast<double>(m_);
            return std::max(0.0, best - diag);
        }
    }
    return 0.0;
}

}  // namespace perfhom
