#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <cmath>

namespace proxyplan {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

inline Mat3 skew(const Vec3& v) {
    Mat3 m;
    m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
    return m;
}

inline Mat3 rotation_exp(const Vec3& phi) {
    const double theta = phi.norm();
    if (theta < 1e-12) {
        return Mat3::Identity() + skew(phi);
    }
    return Eigen::AngleAxisd(theta, phi / theta).toRotationMatrix();
}

/// Rigid transform across one beam segment of arc length `h` carrying a
/// constant curvature vector (ky, kz) expressed in the proximal frame
/// (tangent along local +x, no torsion component).
///
/// Integrates R'(s) = R [w]x, p'(s) = R e_x in closed form, so node
/// placements are exact for piecewise-constant curvature: a uniformly
/// curved beam reproduces the continuous circular arc regardless of the
/// node count.
struct SegmentTransform {
    Mat3 rotation;     // proximal -> distal frame
    Vec3 translation;  // distal origin in the proximal frame
};

inline SegmentTransform segment_transform(double ky, double kz, double h) {
    const Vec3 w(0.0, ky, kz);
    const double wn = w.norm();
    const double theta = wn * h;

    SegmentTransform out;
    const Mat3 wx = skew(w);
    if (theta < 1e-8) {
        // series expansion of the integrated exponential
        out.rotation = Mat3::Identity() + h * wx + 0.5 * h * h * wx * wx;
        const Mat3 V = h * Mat3::Identity() + 0.5 * h * h * wx + (h * h * h / 6.0) * wx * wx;
        out.translation = V * Vec3::UnitX();
        return out;
    }
    out.rotation = Eigen::AngleAxisd(theta, w / wn).toRotationMatrix();
    const Mat3 V = h * Mat3::Identity() + ((1.0 - std::cos(theta)) / (wn * wn)) * wx +
                   ((h - std::sin(theta) / wn) / (wn * wn)) * wx * wx;
    out.translation = V * Vec3::UnitX();
    return out;
}

struct Frame {
    Vec3 p = Vec3::Zero();
    Mat3 R = Mat3::Identity();

    Vec3 apply(const Vec3& local) const { return p + R * local; }
    Frame compose(const SegmentTransform& seg) const {
        return Frame{p + R * seg.translation, R * seg.rotation};
    }
};

inline double clampd(double v, double lo, double hi) { return std::max(lo, std::min(hi, v)); }

}  // namespace proxyplan
