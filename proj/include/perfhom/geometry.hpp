#pragma once

#include <optional>
#include <vector>

#include "perfhom/shape.hpp"
#include "perfhom/vec.hpp"

namespace perfhom {

/// Connectivity structure of the fattened inclusions delta*(k+K) + B_{eps/2}
/// inside a window omega: which inclusions are present, how they group into
/// components, and which lattice translations open edges.
struct ConnectivityReport {
    double delta = 0.0;
    double epsilon = 0.0;
    /// Inclusions delta*(k+K) meeting omega, lexicographically ordered.
    std::vector<LatticeVec> indices;
    /// Component label per index, numbered by first appearance.
    std::vector<int> component_of;
    /// Number of components among the inclusions inside omega.
    int component_count = 0;
    /// Components per period of the infinite geometry: the index of the
    /// subgroup generated by the open translations (nullopt when the subgroup
    /// has infinite index, e.g. no edges or stripe patterns).
    std::optional<long long> components_per_period;
    /// Nonzero translations k with dist(K, K+k) < epsilon/delta.
    std::vector<LatticeVec> generator_translations;
};

/// The 1-periodic perforated set E = K + Z^d.
class PerforatedSet {
  public:
    PerforatedSet(InclusionShape shape);

    const InclusionShape& shape() const { return shape_; }
    int dimension() const { return dim_; }

    /// Membership of x in the delta-scaled set: x/delta reduced to the
    /// centered unit cell lies in K. Exactly 1-periodic in x/delta.
    bool contains(const Vec& x, double delta) const;

    /// dist(K, K + k), k != 0.
    double inclusion_distance(const LatticeVec& k) const;

    /// D0 = min over nonzero translations of dist(K, K+k), searched over
    /// |k|_inf <= window (default 2, sufficient for single-cell inclusions).
    double compute_D0(int window = 2) const;

    /// D = inf{r : the fattened set E + B_{r/2} is connected}, computed by
    /// bisection of the spanning predicate on the translation graph;
    /// absolute accuracy 1e-6.
    double compute_D(int window = 2) const;

    /// Components of the fattened delta-scale geometry restricted to omega.
    ConnectivityReport components(double delta, double epsilon, const Box& omega) const;

  private:
    /// All nonzero translations with |k|_inf <= window and their distances.
    std::vector<std::pair<LatticeVec, double>> translate_distances(int window) const;

    InclusionShape shape_;
    int dim_;
};

/// True when the given integer vectors generate Z^d as a group; `index_out`
/// (optional) receives the subgroup index (nullopt for infinite index).
bool lattice_spans(const std::vector<LatticeVec>& generators, int dim,
                   std::optional<long long>* index_out = nullptr);

}  // namespace perfhom
