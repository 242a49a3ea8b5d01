#pragma once

#include "proxyplan/math.hpp"
#include "proxyplan/scene.hpp"

#include <vector>

namespace proxyplan {

/// Tangential stick anchor for one contact point. While the contact force
/// stays inside the Coulomb cone the anchor holds the point in place; when
/// the cone is exceeded the anchor is dragged so that |f_t| = mu * N
/// (sliding). Cleared when the contact separates.
struct StickAnchor {
    bool active = false;
    Vec3 point = Vec3::Zero();
};

struct ContactRecord {
    int vertex = -1;       // surface vertex index (-1 for an object body contact)
    int feature = -1;      // -1 ground, otherwise rigid object index
    Vec3 normal = Vec3::UnitY();
    double penetration = 0.0;
    double normal_force = 0.0;
    Vec3 tangent_force = Vec3::Zero();
};

struct ContactParams {
    double normal_stiffness = 2e4;   // N/m per contact point
    double tangent_stiffness = 1e4;  // N/m anchor spring
    double tolerance = 1e-4;         // m, admissible post-step penetration
};

/// Penalty energy + force of one point against the ground plane with a stick
/// anchor. Returns the force on the point; fills an optional record.
Vec3 plane_contact_force(const Vec3& p, const GroundPlane& ground, const ContactParams& params,
                         const StickAnchor& anchor, double friction, ContactRecord* record);

double plane_contact_energy(const Vec3& p, const GroundPlane& ground, const ContactParams& params,
                            const StickAnchor& anchor);

/// Advances the anchor after an accepted solver step: activates on first
/// penetration, clears on separation, projects onto the friction cone
/// (|f_t| <= mu * N) when sliding.
void update_plane_anchor(StickAnchor& anchor, const Vec3& p, const GroundPlane& ground,
                         const ContactParams& params, double friction);

/// Frictionless penalty of a point against an axis-aligned box (the box
/// rotation is locked to identity; objects glide without spinning).
/// Returns the force on the point; the reaction on the box is the negation.
Vec3 box_contact_force(const Vec3& p, const Vec3& box_center, const Vec3& half_extents,
                       const ContactParams& params, ContactRecord* record);

double box_contact_energy(const Vec3& p, const Vec3& box_center, const Vec3& half_extents,
                          const ContactParams& params);

/// Rigid object gliding on the ground plane: planar velocity state with the
/// vertical coordinate pinned to the plane.
struct ObjectState {
    Vec3 position = Vec3::Zero();
    Quat rotation = Quat::Identity();
    Vec3 velocity = Vec3::Zero();  // in-plane
};

/// Integrates one object by dt under an applied force. Ground friction uses
/// a kinetic Coulomb law with a static stick clamp near zero velocity;
/// friction == 0 gives free gliding (with light drag so motion settles).
void integrate_object(ObjectState& obj, const RigidObjectSpec& spec, const GroundPlane& ground,
                      const Vec3& applied_force, double friction, double dt);

}  // namespace proxyplan
