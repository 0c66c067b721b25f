#pragma once

#include <cmath>

namespace epic {

/// 3D vector in meters (or m/s when used as velocity).
struct Vec3 {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    constexpr double norm2() const { return x * x + y * y + z * z; }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

/// Axis-aligned box; min corner is the origin by convention of the mission volume.
struct AaBox {
    Vec3 lo{0.0, 0.0, 0.0};
    Vec3 hi{0.0, 0.0, 0.0};

    constexpr bool contains(const Vec3& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z &&
               p.z <= hi.z;
    }
    constexpr bool empty() const { return hi.x <= lo.x || hi.y <= lo.y || hi.z <= lo.z; }
};

inline constexpr double clamp_scalar(double v, double lo, double hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

/// Componentwise clamp of a point into a box.
inline constexpr Vec3 clamp_to_box(const Vec3& p, const AaBox& box) {
    return {clamp_scalar(p.x, box.lo.x, box.hi.x), clamp_scalar(p.y, box.lo.y, box.hi.y),
            clamp_scalar(p.z, box.lo.z, box.hi.z)};
}

}  // namespace epic
