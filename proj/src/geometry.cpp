#include "perfhom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "perfhom/errors.hpp"
#include "perfhom/unionfind.hpp"

namespace perfhom {

namespace {

/// Hermite-style integer triangularization: returns the absolute determinant
/// of the lattice generated by the rows (0 when rank-deficient). Entries stay
/// small for the |k|_inf <= window translations used here.
long long lattice_determinant(std::vector<std::array<long long, 3>> rows, int dim) {
    long long det = 1;
    int row_start = 0;
    for (int col = 0; col < dim; ++col) {
        // Euclidean elimination in this column among rows >= row_start.
        while (true) {
            int pivot = -1;
            long long best = 0;
            for (int r = row_start; r < static_cast<int>(rows.size()); ++r) {
                const long long v = std::llabs(rows[static_cast<std::size_t>(r)][
                    static_cast<std::size_t>(col)]);
                if (v != 0 && (pivot < 0 || v < best)) {
                    pivot = r;
                    best = v;
                }
            }
            if (pivot < 0) return 0;  // rank deficient
            std::swap(rows[static_cast<std::size_t>(row_start)],
                      rows[static_cast<std::size_t>(pivot)]);
            const long long p = rows[static_cast<std::size_t>(row_start)][
                static_cast<std::size_t>(col)];
            bool all_zero = true;
            for (int r = row_start + 1; r < static_cast<int>(rows.size()); ++r) {
                long long& v = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
                if (v == 0) continue;
                const long long q = v / p;
                for (int c = 0; c < dim; ++c) {
                    rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                        q * rows[static_cast<std::size_t>(row_start)][static_cast<std::size_t>(c)];
                }
                if (v != 0) all_zero = false;
            }
            if (all_zero) break;
        }
        det *= std::llabs(rows[static_cast<std::size_t>(row_start)][static_cast<std::size_t>(col)]);
        ++row_start;
    }
    return det;
}

}  // namespace

bool lattice_spans(const std::vector<LatticeVec>& generators, int dim,
                   std::optional<long long>* index_out) {
    std::vector<std::array<long long, 3>> rows;
    rows.reserve(generators.size());
    for (const LatticeVec& g : generators) {
        std::array<long long, 3> row{0, 0, 0};
        for (int i = 0; i < dim; ++i) row[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(i)];
        rows.push_back(row);
    }
    const long long det = rows.empty() ? 0 : lattice_determinant(std::move(rows), dim);
    if (index_out) {
        if (det == 0) {
            *index_out = std::nullopt;
        } else {
            *index_out = det;
        }
    }
    return det == 1;
}

PerforatedSet::PerforatedSet(InclusionShape shape)
    : shape_(std::move(shape)), dim_(shape_.dimension()) {}

bool PerforatedSet::contains(const Vec& x, double delta) const {
    if (!(delta > 0.0)) throw config_error("contains: delta must be positive");
    Vec z;
    for (int i = 0; i < dim_; ++i) {
        const double y = x[i] / delta;
        z[i] = y - std::floor(y + 0.5);  // centered fractional part in [-1/2, 1/2)
    }
    return shape_.contains_centered(z);
}

double PerforatedSet::inclusion_distance(const LatticeVec& k) const {
    return shape_.distance_to_translate(k);
}

std::vector<std::pair<LatticeVec, double>> PerforatedSet::translate_distances(int window) const {
    std::vector<std::pair<LatticeVec, double>> result;
    const int w = window;
    LatticeVec k{0, 0, 0};
    const int lo2 = dim_ >= 2 ? -w : 0, hi2 = dim_ >= 2 ? w : 0;
    const int lo3 = dim_ >= 3 ? -w : 0, hi3 = dim_ >= 3 ? w : 0;
    for (int k1 = -w; k1 <= w; ++k1) {
        for (int k2 = lo2; k2 <= hi2; ++k2) {
            for (int k3 = lo3; k3 <= hi3; ++k3) {
                if (k1 == 0 && k2 == 0 && k3 == 0) continue;
                k[0] = k1;
                k[1] = k2;
                k[2] = k3;
                result.emplace_back(k, shape_.distance_to_translate(k));
            }
        }
    }
    return result;
}

double PerforatedSet::compute_D0(int window) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [k, d] : translate_distances(window)) best = std::min(best, d);
    return best;
}

double PerforatedSet::compute_D(int window) const {
    const auto dists = translate_distances(window);
    auto spans_at = [&](double r) {
        std::vector<LatticeVec> open;
        for (const auto& [k, d] : dists) {
            if (d < r) open.push_back(k);
        }
        return lattice_spans(open, dim_);
    };
    double lo = 0.0, hi = 4.0;
    if (!spans_at(hi))
        throw convergence_error("connectivity threshold exceeds the translation search window");
    while (hi - lo > 1e-7) {
        const double mid = 0.5 * (lo + hi);
        if (spans_at(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

ConnectivityReport PerforatedSet::components(double delta, double epsilon,
                                            const Box& omega) const {
    if (!(delta > 0.0) || !(epsilon > 0.0))
        throw config_error("components: delta and epsilon must be positive");
    ConnectivityReport report;
    report.delta = delta;
    report.epsilon = epsilon;

    // Inclusions delta*(k+K) meeting omega, found by scanning the index box.
    const Box kbox = shape_.bounding_box();
    LatticeVec klo{0, 0, 0}, khi{0, 0, 0};
    for (int i = 0; i < dim_; ++i) {
        klo[static_cast<std::size_t>(i)] =
            static_cast<int>(std::floor(omega.lo[i] / delta - kbox.hi[i])) - 1;
        khi[static_cast<std::size_t>(i)] =
            static_cast<int>(std::ceil(omega.hi[i] / delta - kbox.lo[i])) + 1;
    }
    auto meets_omega = [&](const LatticeVec& k) {
        // Exact for balls/ellipses via the clamped nearest point; bounding-box
        // test for masks.
        Vec nearest;
        for (int i = 0; i < dim_; ++i) {
            const double center = delta * static_cast<double>(k[static_cast<std::size_t>(i)]);
            const double lo_i = center + delta * kbox.lo[i];
            const double hi_i = center + delta * kbox.hi[i];
            if (hi_i < omega.lo[i] || lo_i > omega.hi[i]) return false;
            nearest[i] = std::clamp(center, omega.lo[i], omega.hi[i]);
        }
        if (shape_.kind() == InclusionShape::Kind::mask) return true;
        // Scaled membership of the clamped point in the inclusion at k.
        double level = 0.0;
        for (int i = 0; i < dim_; ++i) {
            const double z = (nearest[i] / delta - static_cast<double>(k[static_cast<std::size_t>(i)])) /
                             shape_.semi_axes()[static_cast<std::size_t>(i)];
            level += z * z;
        }
        return level <= 1.0;
    };
    const int lo2 = dim_ >= 2 ? klo[1] : 0, hi2 = dim_ >= 2 ? khi[1] : 0;
    std::map<std::array<int, 3>, std::size_t> position;
    for (int k1 = klo[0]; k1 <= khi[0]; ++k1) {
        for (int k2 = lo2; k2 <= hi2; ++k2) {
            LatticeVec k{k1, k2, 0};
            if (!meets_omega(k)) continue;
            position[{k1, k2, 0}] = report.indices.size();
            report.indices.push_back(k);
        }
    }

    // Translations whose fattened inclusions touch: dist(K, K+j) < eps/delta.
    const double ratio = epsilon / delta;
    const int window = std::max(2, static_cast<int>(std::ceil(ratio)) + 1);
    std::vector<LatticeVec> open;
    for (const auto& [j, d] : translate_distances(window)) {
        if (d < ratio) open.push_back(j);
    }
    report.generator_translations = open;
    lattice_spans(open, dim_, &report.components_per_period);

    DisjointSets uf(report.indices.size());
    for (std::size_t a = 0; a < report.indices.size(); ++a) {
        for (const LatticeVec& j : open) {
            std::array<int, 3> key{report.indices[a][0] + j[0], report.indices[a][1] + j[1], 0};
            auto it = position.find(key);
            if (it != position.end()) uf.unite(a, it->second);
        }
    }
    report.component_of = uf.compress_labels();
    report.component_count = uf.component_count();
    return report;
}

}  // namespace perfhom
