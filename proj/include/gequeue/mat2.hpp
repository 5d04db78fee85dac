#ifndef GEQUEUE_MAT2_HPP
#define GEQUEUE_MAT2_HPP

#include <array>
#include <cmath>
#include <cstddef>

#include "gequeue/errors.hpp"

namespace gequeue {

// Minimal fixed-size linear algebra for the two-phase chain. Vectors are
// row vectors throughout, matching the convention pi' = pi * T.
struct Vec2 {
    std::array<double, 2> v{0.0, 0.0};

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    double sum() const { return v[0] + v[1]; }

    Vec2 operator+(const Vec2& o) const { return {v[0] + o.v[0], v[1] + o.v[1]}; }
    Vec2 operator-(const Vec2& o) const { return {v[0] - o.v[0], v[1] - o.v[1]}; }
    Vec2 operator*(double s) const { return {v[0] * s, v[1] * s}; }

    Vec2() = default;
    Vec2(double a, double b) : v{a, b} {}
};

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

struct Mat2 {
    // m[row][col]
    std::array<std::array<double, 2>, 2> m{{{0.0, 0.0}, {0.0, 0.0}}};

    static Mat2 identity() { return Mat2{{{{1.0, 0.0}, {0.0, 1.0}}}}; }
    static Mat2 zero() { return Mat2{}; }

    double& operator()(std::size_t r, std::size_t c) { return m[r][c]; }
    double operator()(std::size_t r, std::size_t c) const { return m[r][c]; }

    Mat2 operator+(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
        return r;
    }
    Mat2 operator-(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
        return r;
    }
    Mat2 operator*(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
        return r;
    }
    Mat2 operator*(double s) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][j] * s;
        return r;
    }

    double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    Vec2 row_sums() const { return {m[0][0] + m[0][1], m[1][0] + m[1][1]}; }

    double max_abs() const {
        double r = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r = std::max(r, std::abs(m[i][j]));
        return r;
    }
};

// row vector times matrix
inline Vec2 operator*(const Vec2& v, const Mat2& m) {
    return {v[0] * m(0, 0) + v[1] * m(1, 0), v[0] * m(0, 1) + v[1] * m(1, 1)};
}

inline Mat2 inverse(const Mat2& m, const char* name) {
    const double d = m.det();
    if (!std::isfinite(d) || std::abs(d) < 1e-150) throw SingularMatrixError(name);
    const double s = 1.0 / d;
    Mat2 r;
    r(0, 0) = m(1, 1) * s;
    r(0, 1) = -m(0, 1) * s;
    r(1, 0) = -m(1, 0) * s;
    r(1, 1) = m(0, 0) * s;
    return r;
}

inline Mat2 matrix_power(Mat2 base, unsigned long n) {
    Mat2 acc = Mat2::identity();
    while (n > 0) {
        if (n & 1ul) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

// Spectral radius of an entrywise nonnegative 2x2 matrix. The discriminant
// (a-d)^2 + 4bc is nonnegative, so both eigenvalues are real and the larger
// one is the Perron root.
inline double spectral_radius_nonneg(const Mat2& m) {
    const double tr = m(0, 0) + m(1, 1);
    const double disc = (m(0, 0) - m(1, 1)) * (m(0, 0) - m(1, 1)) + 4.0 * m(0, 1) * m(1, 0);
    return 0.5 * (tr + std::sqrt(std::max(disc, 0.0)));
}

}  // namespace gequeue

#endif
