#include "mofa/dual_quaternion.hpp"

#include "mofa/error.hpp"

#include <ostream>

namespace mofa {

Quaternion Quaternion::inverse() const
{
    const double n = norm();
    if (n == 0.0) throw Error(ErrorKind::DivisionByZero, "inverse of zero quaternion");
    return conj() / n;
}

DualQuaternion DualQuaternion::inverse() const
{
    // (p + eps q)^-1 = p^-1 - eps p^-1 q p^-1
    const Quaternion pi = primal.inverse();
    return {pi, -(pi * dual * pi)};
}

double max_abs_diff(const DualQuaternion& a, const DualQuaternion& b) { return (a - b).max_abs(); }

Vec3 act_on_point(const DualQuaternion& h, const Vec3& x, double tol)
{
    const auto& p = h.primal;
    const auto& q = h.dual;
    const double np = p.norm();
    const double scale = np + q.norm();
    if (np <= tol * std::max(1.0, scale))
        throw Error(ErrorKind::NotInGroup, "primal part vanishes");
    if (std::abs(study_defect(h)) > tol * std::max(1.0, scale))
        throw Error(ErrorKind::NotInGroup, "norm has non-zero dual part");
    const Quaternion r = p * Quaternion::pure(x) * p.conj() + p * q.conj() - q * p.conj();
    return r.vec() / np;
}

DualQuaternion make_displacement(const Quaternion& rotation, const Vec3& translation)
{
    return {rotation, -0.5 * (Quaternion::pure(translation) * rotation)};
}

DualQuaternion make_translation(const Vec3& translation) { return make_displacement(quat::one, translation); }

Generator classify_generator(const DualQuaternion& h, double tol)
{
    const double scale = std::max(1.0, h.max_abs());
    if (std::abs(h.dual.w) > tol * scale)
        throw Error(ErrorKind::NotLinearMotion, "t - h has a non-real norm (scalar dual part)");
    if (std::abs(study_defect(h)) > tol * scale * scale)
        throw Error(ErrorKind::NotLinearMotion, "t - h has a non-real norm (Study defect)");
    const Vec3 pv = h.primal.vec();
    const Vec3 qv = h.dual.vec();
    const double len = pv.norm();
    if (len > tol * scale) {
        const Vec3 d = pv / len;
        Vec3 m = -qv / len;
        m -= d.dot(m) * d;  // enforce the Pluecker condition exactly
        return RotationAxis{d, m};
    }
    const double tlen = qv.norm();
    if (tlen <= tol * scale)
        throw Error(ErrorKind::NotLinearMotion, "t - h parametrizes the identity");
    return TranslationDirection{qv / tlen};
}

DualQuaternion rotation_generator(const Vec3& direction, const Vec3& point, double s)
{
    // Conjugating t - d by the translation to `point` gives d - eps (point x d).
    return {Quaternion(s, direction.x(), direction.y(), direction.z()), -Quaternion::pure(point.cross(direction))};
}

Pose normalize_pose(const DualQuaternion& h, double tol)
{
    const double np = h.primal.norm();
    if (np <= tol * tol * std::max(1.0, h.dual.norm()))
        throw Error(ErrorKind::ExceptionalPoint, "primal part is zero");
    DualQuaternion r = h * (1.0 / std::sqrt(np));
    if (std::abs(study_defect(r)) > tol * std::max(1.0, r.dual.length()))
        throw Error(ErrorKind::NotOnStudyQuadric, "Study condition violated");
    const auto c = r.primal.coords();
    double best = c[0];
    for (double v : c)
        if (std::abs(v) > std::abs(best)) best = v;
    if (best < 0) r = -r;
    return Pose{r};
}

double pose_distance(const DualQuaternion& a, const DualQuaternion& b)
{
    auto unit = [](const DualQuaternion& h) { return h * (1.0 / h.primal.length()); };
    const DualQuaternion ua = unit(a), ub = unit(b);
    return std::min(max_abs_diff(ua, ub), max_abs_diff(ua, -ub));
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q)
{
    return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
}

std::ostream& operator<<(std::ostream& os, const DualQuaternion& h)
{
    return os << h.primal << " + eps" << h.dual;
}

}  // namespace mofa
