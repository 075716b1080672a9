#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace perfhom {

inline constexpr int kMaxDim = 3;

/// Small fixed-capacity point/vector in R^d, d <= 3. The active dimension is
/// tracked by whoever owns the object (grid, shape, kernel); unused slots are 0.
struct Vec {
    std::array<double, kMaxDim> x{0.0, 0.0, 0.0};

    double& operator[](int i) { return x[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
};

using LatticeVec = std::array<int, kMaxDim>;

inline Vec operator-(const Vec& a, const Vec& b) {
    return {{a.x[0] - b.x[0], a.x[1] - b.x[1], a.x[2] - b.x[2]}};
}

inline Vec operator+(const Vec& a, const Vec& b) {
    return {{a.x[0] + b.x[0], a.x[1] + b.x[1], a.x[2] + b.x[2]}};
}

inline Vec operator*(double s, const Vec& a) {
    return {{s * a.x[0], s * a.x[1], s * a.x[2]}};
}

inline double dot(const Vec& a, const Vec& b, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a, int dim) { return dot(a, a, dim); }

inline double norm(const Vec& a, int dim) { return std::sqrt(norm2(a, dim)); }

/// Axis-aligned box [lo, hi). Used for domains and interior comparison windows.
struct Box {
    Vec lo, hi;
    int dim = 2;

    double side(int i) const { return hi[i] - lo[i]; }

    double measure() const {
        double m = 1.0;
        for (int i = 0; i < dim; ++i) m *= side(i);
        return m;
    }

    bool contains(const Vec& p) const {
        for (int i = 0; i < dim; ++i)
            if (p[i] < lo[i] || p[i] >= hi[i]) return false;
        return true;
    }

    /// Box shrunk by `margin` on every face. Callers must keep it nonempty.
    Box shrunk(double margin) const {
        Box b = *this;
        for (int i = 0; i < dim; ++i) {
            b.lo[i] += margin;
            b.hi[i] -= margin;
        }
        return b;
    }
};

inline Box unit_box(int dim) {
    Box b;
    b.dim = dim;
    for (int i = 0; i < dim; ++i) {
        b.lo[i] = 0.0;
        b.hi[i] = 1.0;
    }
    return b;
}

}  // namespace perfhom
