#pragma once

// Quaternions, dual numbers and dual quaternions, plus the action of
// non-zero-real-norm dual quaternions on R^3 as Euclidean displacements.
//
// Conventions: h = p + eps*q, conj(h) = conj(p) + eps*conj(q), and
//   x  ->  (p x conj(p) + p conj(q) - q conj(p)) / N(p).
// A monic linear motion polynomial t - h is parametrized by t = tan(phi/2).

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <algorithm>
#include <array>
#include <cmath>
#include <iosfwd>
#include <variant>

namespace mofa {

inline constexpr double kDefaultTolerance = 1e-9;

using Vec3 = Eigen::Vector3d;

struct Quaternion {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
    constexpr explicit Quaternion(double s) : w(s) {}

    static Quaternion pure(const Vec3& v) { return {0.0, v.x(), v.y(), v.z()}; }

    constexpr double scalar() const { return w; }
    Vec3 vec() const { return {x, y, z}; }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
    /// N(q) = q conj(q), the squared Euclidean length.
    constexpr double norm() const { return w * w + x * x + y * y + z * z; }
    double length() const { return std::sqrt(norm()); }
    constexpr double max_abs() const
    {
        double m = w < 0 ? -w : w;
        for (double c : {x, y, z}) m = std::max(m, c < 0 ? -c : c);
        return m;
    }
    constexpr std::array<double, 4> coords() const { return {w, x, y, z}; }

    Quaternion inverse() const;

    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
    constexpr Quaternion& operator+=(const Quaternion& o)
    {
        w += o.w; x += o.x; y += o.y; z += o.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o)
    {
        w -= o.w; x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }
    constexpr Quaternion& operator*=(double s)
    {
        w *= s; x *= s; y *= s; z *= s;
        return *this;
    }
    constexpr bool operator==(const Quaternion&) const = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= 1.0 / s; }

/// Hamilton product, i^2 = j^2 = k^2 = ijk = -1.
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b)
{
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

/// Euclidean inner product of the coefficient 4-vectors, scalar(a conj(b)).
constexpr double dot(const Quaternion& a, const Quaternion& b)
{
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

namespace quat {
inline constexpr Quaternion one{1, 0, 0, 0};
inline constexpr Quaternion i{0, 1, 0, 0};
inline constexpr Quaternion j{0, 0, 1, 0};
inline constexpr Quaternion k{0, 0, 0, 1};
}  // namespace quat

struct DualNumber {
    double re = 0.0, du = 0.0;

    constexpr bool operator==(const DualNumber&) const = default;
};

constexpr DualNumber operator*(const DualNumber& a, const DualNumber& b)
{
    return {a.re * b.re, a.re * b.du + a.du * b.re};
}
constexpr DualNumber operator+(const DualNumber& a, const DualNumber& b) { return {a.re + b.re, a.du + b.du}; }

struct DualQuaternion {
    Quaternion primal;
    Quaternion dual;

    constexpr DualQuaternion() = default;
    constexpr DualQuaternion(const Quaternion& p, const Quaternion& q) : primal(p), dual(q) {}
    constexpr DualQuaternion(const Quaternion& p) : primal(p) {}  // NOLINT(implicit)
    constexpr explicit DualQuaternion(double s) : primal(s) {}

    /// Build from [pw,px,py,pz,qw,qx,qy,qz].
    static constexpr DualQuaternion from_array(const std::array<double, 8>& a)
    {
        return {{a[0], a[1], a[2], a[3]}, {a[4], a[5], a[6], a[7]}};
    }
    constexpr std::array<double, 8> to_array() const
    {
        return {primal.w, primal.x, primal.y, primal.z, dual.w, dual.x, dual.y, dual.z};
    }

    constexpr DualQuaternion conj() const { return {primal.conj(), dual.conj()}; }
    bool invertible(double tol = 0.0) const { return primal.length() > tol; }
    DualQuaternion inverse() const;
    constexpr double max_abs() const { return std::max(primal.max_abs(), dual.max_abs()); }

    constexpr DualQuaternion operator-() const { return {-primal, -dual}; }
    constexpr DualQuaternion& operator+=(const DualQuaternion& o)
    {
        primal += o.primal; dual += o.dual;
        return *this;
    }
    constexpr DualQuaternion& operator-=(const DualQuaternion& o)
    {
        primal -= o.primal; dual -= o.dual;
        return *this;
    }
    constexpr DualQuaternion& operator*=(double s)
    {
        primal *= s; dual *= s;
        return *this;
    }
    constexpr bool operator==(const DualQuaternion&) const = default;
};

constexpr DualQuaternion operator+(DualQuaternion a, const DualQuaternion& b) { return a += b; }
constexpr DualQuaternion operator-(DualQuaternion a, const DualQuaternion& b) { return a -= b; }
constexpr DualQuaternion operator*(DualQuaternion a, double s) { return a *= s; }
constexpr DualQuaternion operator*(double s, DualQuaternion a) { return a *= s; }

/// (p1 + eps q1)(p2 + eps q2) = p1 p2 + eps (p1 q2 + q1 p2).
constexpr DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b)
{
    return {a.primal * b.primal, a.primal * b.dual + a.dual * b.primal};
}

inline constexpr Quaternion quat_mul(const Quaternion& a, const Quaternion& b) { return a * b; }
inline constexpr DualQuaternion dq_mul(const DualQuaternion& a, const DualQuaternion& b) { return a * b; }

/// N(h) = h conj(h) = N(p) + eps (p conj(q) + q conj(p)); the dual part is the Study defect.
constexpr DualNumber dq_norm(const DualQuaternion& h)
{
    return {h.primal.norm(), 2.0 * dot(h.primal, h.dual)};
}

constexpr double study_defect(const DualQuaternion& h) { return 2.0 * dot(h.primal, h.dual); }

/// Componentwise distance, max norm.
double max_abs_diff(const DualQuaternion& a, const DualQuaternion& b);

/// Displacement of x by h; throws NotInGroup unless N(h) is a non-zero real.
Vec3 act_on_point(const DualQuaternion& h, const Vec3& x, double tol = kDefaultTolerance);

/// h = rotation(unit) followed by translation t, i.e. x -> R x + t.
DualQuaternion make_displacement(const Quaternion& rotation, const Vec3& translation);
DualQuaternion make_translation(const Vec3& translation);

struct RotationAxis {
    Vec3 direction;  // unit
    Vec3 moment;     // direction . moment == 0

    /// Point of the axis closest to the origin.
    Vec3 point() const { return direction.cross(moment); }
};

struct TranslationDirection {
    Vec3 direction;  // unit
};

using Generator = std::variant<RotationAxis, TranslationDirection>;

inline bool is_rotation(const Generator& g) { return std::holds_alternative<RotationAxis>(g); }

/// Kinematic type of the linear motion polynomial t - h.
Generator classify_generator(const DualQuaternion& h, double tol = kDefaultTolerance);

/// Generator h with t - h a rotation about the given (not necessarily unit) direction through point,
/// with norm polynomial t^2 - 2 s t + s^2 + |direction|^2.
DualQuaternion rotation_generator(const Vec3& direction, const Vec3& point, double s = 0.0);

/// A point of SE(3) as a normalized representative on the Study quadric.
struct Pose {
    DualQuaternion rep;
};

/// Unit primal part, largest-magnitude primal coefficient positive.
Pose normalize_pose(const DualQuaternion& h, double tol = kDefaultTolerance);

/// Projective distance between poses (sign-insensitive max-norm distance of normalized representatives).
double pose_distance(const DualQuaternion& a, const DualQuaternion& b);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);
std::ostream& operator<<(std::ostream& os, const DualQuaternion& h);

}  // namespace mofa
