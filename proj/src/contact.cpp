#include "proxyplan/contact.hpp"

namespace proxyplan {

namespace {

inline double plane_gap(const Vec3& p, const GroundPlane& ground) {
    return ground.normal.dot(p - ground.point);
}

}  // namespace

Vec3 plane_contact_force(const Vec3& p, const GroundPlane& ground, const ContactParams& params,
                         const StickAnchor& anchor, double friction, ContactRecord* record) {
    const double gap = plane_gap(p, ground);
    if (gap >= 0.0) return Vec3::Zero();

    const double pen = -gap;
    const double N = params.normal_stiffness * pen;
    Vec3 f = N * ground.normal;

    Vec3 ft = Vec3::Zero();
    if (anchor.active && friction > 0.0) {
        Vec3 d = p - anchor.point;
        d -= ground.normal.dot(d) * ground.normal;
        ft = -params.tangent_stiffness * d;
        const double cap = friction * N;
        if (ft.norm() > cap && ft.norm() > 1e-16) ft *= cap / ft.norm();
        f += ft;
    }
    if (record) {
        record->feature = -1;
        record->normal = ground.normal;
        record->penetration = pen;
        record->normal_force = N;
        record->tangent_force = ft;
    }
    return f;
}

double plane_contact_energy(const Vec3& p, const GroundPlane& ground, const ContactParams& params,
                            const StickAnchor& anchor) {
    const double gap = plane_gap(p, ground);
    if (gap >= 0.0) return 0.0;
    double e = 0.5 * params.normal_stiffness * gap * gap;
    if (anchor.active) {
        Vec3 d = p - anchor.point;
        d -= ground.normal.dot(d) * ground.normal;
        e += 0.5 * params.tangent_stiffness * d.squaredNorm();
    }
    return e;
}

void update_plane_anchor(StickAnchor& anchor, const Vec3& p, const GroundPlane& ground,
                         const ContactParams& params, double friction) {
    const double gap = plane_gap(p, ground);
    if (gap >= 0.0 || friction <= 0.0) {
        anchor.active = false;
        return;
    }
    const Vec3 foot = p - gap * ground.normal;  // projection onto the plane
    if (!anchor.active) {
        anchor.active = true;
        anchor.point = foot;
        return;
    }
    const double N = params.normal_stiffness * (-gap);
    Vec3 d = foot - anchor.point;
    d -= ground.normal.dot(d) * ground.normal;
    const double cap = friction * N / params.tangent_stiffness;  // max stretch inside the cone
    if (d.norm() > cap) {
        anchor.point = foot - (cap / d.norm()) * d;  // slide: keep |f_t| = mu N
    }
}

Vec3 box_contact_force(const Vec3& p, const Vec3& box_center, const Vec3& half_extents,
                       const ContactParams& params, ContactRecord* record) {
    const Vec3 d = p - box_center;
    for (int a = 0; a < 3; ++a) {
        if (std::abs(d[a]) >= half_extents[a]) return Vec3::Zero();
    }
    // inside: push out through the closest face
    int axis = 0;
    double pen = half_extents[0] - std::abs(d[0]);
    for (int a = 1; a < 3; ++a) {
        const double pa = half_extents[a] - std::abs(d[a]);
        if (pa < pen) {
            pen = pa;
            axis = a;
        }
    }
    Vec3 normal = Vec3::Zero();
    normal[axis] = d[axis] >= 0.0 ? 1.0 : -1.0;
    const double N = params.normal_stiffness * pen;
    if (record) {
        record->normal = normal;
        record->penetration = pen;
        record->normal_force = N;
        record->tangent_force = Vec3::Zero();
    }
    return N * normal;
}

double box_contact_energy(const Vec3& p, const Vec3& box_center, const Vec3& half_extents,
                          const ContactParams& params) {
    const Vec3 d = p - box_center;
    double pen = std::numeric_limits<double>::max();
    for (int a = 0; a < 3; ++a) {
        const double pa = half_extents[a] - std::abs(d[a]);
        if (pa <= 0.0) return 0.0;
        pen = std::min(pen, pa);
    }
    return 0.5 * params.normal_stiffness * pen * pen;
}

void integrate_object(ObjectState& obj, const RigidObjectSpec& spec, const GroundPlane& ground,
                      const Vec3& applied_force, double friction, double dt) {
    // planar gliding: remove the normal component, keep the body on the plane
    Vec3 f = applied_force - ground.normal.dot(applied_force) * ground.normal;
    const double push_down = std::max(0.0, -ground.normal.dot(applied_force));
    const double N = spec.mass * 9.81 + push_down;

    const double drag = friction > 0.0 ? 8.0 : 2.0;  // light drag so free glide settles
    Vec3 v = obj.velocity;

    if (friction > 0.0) {
        const double v_eps = 1e-5;
        if (v.norm() < v_eps && f.norm() <= friction * N) {
            obj.velocity = Vec3::Zero();
            return;
        }
        const Vec3 dir = v.norm() > v_eps ? (v / v.norm()).eval() : (f / std::max(f.norm(), 1e-16)).eval();
        f -= friction * N * dir;
    }

    v += dt * (f / spec.mass - drag * v);
    v -= ground.normal.dot(v) * ground.normal;

    // kinetic friction must not reverse the sliding direction within a step
    if (friction > 0.0 && obj.velocity.norm() > 1e-5 && v.dot(obj.velocity) < 0.0 &&
        applied_force.norm() < friction * N) {
        v = Vec3::Zero();
    }

    obj.velocity = v;
    obj.position += dt * v;

    // pin the vertical coordinate: resting height on the plane
    const double rest = ground.normal.dot(Vec3(0, spec.half_extents.y(), 0));
    const double height = ground.normal.dot(obj.position - ground.point);
    obj.position += (rest - height) * ground.normal;
}

}  // namespace proxyplan
