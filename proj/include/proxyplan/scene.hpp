#pragma once

#include "proxyplan/error.hpp"
#include "proxyplan/math.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace proxyplan {

// ---------------------------------------------------------------------------
// Skeleton
// ---------------------------------------------------------------------------

struct BeamAttachment {
    bool world_base = true;     // attached to the skeleton root frame
    std::string parent_id;      // parent beam id when !world_base
    double arc_offset = 0.0;    // arc position on the parent [0, L_parent]
};

enum class BaseMode { Fixed, Floating };

struct BeamSpec {
    std::string id;
    double length = 0.0;            // L_b, m
    double stiffness = 0.0;         // S_b, N*m^2 bending rigidity
    double mass = 0.0;              // M_b, kg, uniform along the beam
    double max_precurvature = 0.0;  // alpha_b^max, rad/m; 0 for passive beams
    int bending_dofs = 0;           // actuated bending channels: 0 passive, 1 or 2
    int node_count = 5;             // >= 2

    BeamAttachment parent;
    Vec3 base_translation = Vec3::Zero();  // in parent attachment frame (or root frame)
    Quat base_rotation = Quat::Identity(); // beam local frame relative to parent frame

    // Bending plane for 1-DoF beams: unit axis in the beam's local cross
    // section (y-z) plane; curvature is applied about this axis.
    Vec3 bend_axis = Vec3::UnitZ();

    // Root-attached beams only: how the skeleton base pose behaves.
    BaseMode base_mode = BaseMode::Fixed;
    std::array<bool, 3> base_translation_actuated = {false, false, false};
    bool base_rotation_actuated = false;

    bool passive() const { return bending_dofs == 0; }
    int segment_count() const { return node_count - 1; }
    double segment_length() const { return length / segment_count(); }
};

struct MarkerId {
    std::string beam_id;
    int node_index = 0;
};

struct SkeletonSpec {
    std::vector<BeamSpec> beams;
    std::vector<MarkerId> marker_ids;

    int beam_index(const std::string& id) const;
    const BeamSpec& beam(const std::string& id) const;

    /// Throws ScenarioError on invariant violations: non-positive lengths,
    /// cyclic attachments, actuated beams with zero curvature bound, or
    /// dangling free extremities (see validate_extremities).
    void validate(const std::vector<std::string>& terminal_ends = {}) const;
};

// ---------------------------------------------------------------------------
// Surface and mapping
// ---------------------------------------------------------------------------

struct SurfaceMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;

    void validate() const;
};

SurfaceMesh load_off(const std::string& path);
void save_off(const SurfaceMesh& mesh, const std::string& path);

/// Fixed rest-pose attachment of one surface vertex to a beam segment.
/// The vertex is reconstructed as
///   p = w0 * (P_i + R_i r0) + w1 * (P_{i+1} + R_{i+1} r1)
/// where r0, r1 are offsets expressed in the rest frames of the bracketing
/// nodes. Weights are the barycentric coordinates of the vertex projection
/// along the segment and sum to 1.
struct VertexAttachment {
    int beam = 0;
    int segment = 0;  // bracketing nodes (segment, segment + 1)
    double w0 = 1.0;
    double w1 = 0.0;
    Vec3 offset0 = Vec3::Zero();
    Vec3 offset1 = Vec3::Zero();
};

struct BarycentricMapping {
    std::vector<VertexAttachment> vertices;
};

// ---------------------------------------------------------------------------
// Environment
// ---------------------------------------------------------------------------

struct GroundPlane {
    Vec3 point = Vec3::Zero();
    Vec3 normal = Vec3::UnitY();
    double friction = 0.8;
};

struct RigidObjectSpec {
    std::string id;
    Vec3 half_extents = Vec3::Zero();
    double mass = 0.0;
    double friction = 0.3;       // against the ground
    Vec3 initial_position = Vec3::Zero();
    Quat initial_rotation = Quat::Identity();
};

struct GoalRegion {
    // axis-aligned rectangle on the ground plane, x/z extents
    double x_min = 0.0, x_max = 0.0;
    double z_min = 0.0, z_max = 0.0;
};

struct EnvironmentSpec {
    GroundPlane ground;
    std::vector<RigidObjectSpec> rigid_objects;
    Vec3 goal = Vec3::Zero();
    GoalRegion goal_region;
    bool proxy_object_ground_friction = false;  // frictionless glide in the proxy by default

    void validate() const;
};

// ---------------------------------------------------------------------------
// Actuation
// ---------------------------------------------------------------------------

enum class ActuationKind { Pneumatic, Cable };

struct PressureChannel {
    std::string beam_id;   // actuated proxy beam this channel maps to
    double max_value = 1.0;
    std::string region;    // faithful-model cavity region tag
};

struct CableChannel {
    std::string beam_id;
    double max_value = 0.01;  // max pull displacement, m
    Vec3 offset = Vec3::Zero();  // routing offset in the rod cross section
    double arc_begin = 0.0;      // routed span along the robot axis
    double arc_end = 0.0;
};

struct ActuationModel {
    ActuationKind kind = ActuationKind::Pneumatic;
    std::vector<PressureChannel> pressures;
    std::vector<CableChannel> cables;

    // actuated base translation (present when a root beam declares one)
    bool base_translation = false;
    int base_axis = 0;
    double base_min = 0.0, base_max = 0.0;

    int channel_count() const {
        int n = kind == ActuationKind::Pneumatic ? static_cast<int>(pressures.size())
                                                 : static_cast<int>(cables.size());
        return n + (base_translation ? 1 : 0);
    }
};

// ---------------------------------------------------------------------------
// Faithful-model description (lattice + actuation constants)
// ---------------------------------------------------------------------------

struct LatticeBox {
    Vec3 lo = Vec3::Zero();
    Vec3 hi = Vec3::Zero();
    std::string region;  // actuation region tag, empty for plain volume
};

struct FaithfulSpec {
    std::vector<LatticeBox> boxes;
    double voxel = 0.01;          // lattice pitch, m
    double total_mass = 0.05;     // kg, spread over lattice nodes
    double edge_stiffness = 80.0; // N/m per unit strut
    double damping = 2.0;         // mass-proportional damping, 1/s
    double spring_damping = 0.05; // along-spring damping
    double dt = 0.01;
    double pressure_gain = 0.25;  // rest-length expansion fraction at max pressure
    double cable_stiffness = 400.0;
    double ground_friction = 0.8;
    // nodes clamped (fixed or carried by the actuated base translation)
    std::vector<LatticeBox> clamped;
};

// ---------------------------------------------------------------------------
// Calibration / planner / transfer configuration carried by the scenario
// ---------------------------------------------------------------------------

struct CalibrationGroup {
    std::string name;
    std::vector<std::string> beam_ids;
    // search bounds; a fixed dimension uses min == max
    double stiffness_min = 0.0, stiffness_max = 0.0;
    double mass_min = 0.0, mass_max = 0.0;
    double precurv_min = 0.0, precurv_max = 0.0;
};

struct CalibrationPlanStep {
    VecX command;      // faithful actuation channel values
    double duration = 0.0;
};

struct CalibrationSpec {
    std::vector<CalibrationGroup> groups;
    std::vector<int> marker_vertices;  // surface vertex indices compared between models
    std::vector<CalibrationPlanStep> plan;
    double safety_factor = 0.9;
    bool fit_object_mass = false;
    double object_mass_min = 0.0, object_mass_max = 0.0;
};

struct PlannerSpec {
    std::string task;          // "multigait" | "trunk"
    double trunk_reward_weight = 0.1;
    double success_threshold = 0.008;   // m, cube-goal distance
    double base_step = 0.004;           // m per control step at full command
};

struct TransferSpec {
    std::vector<MarkerId> controlled_points;
    std::vector<std::string> contact_angle_beams;  // Multigait corrector legs
    double feedback_gain = 0.5;
    double corrector_gain = 0.0;
    int realign_period = 3;
};

// ---------------------------------------------------------------------------
// Scenario
// ---------------------------------------------------------------------------

struct RobotScenario {
    std::string name;
    SkeletonSpec skeleton;
    SurfaceMesh surface;
    BarycentricMapping mapping;
    EnvironmentSpec environment;
    ActuationModel actuation;
    FaithfulSpec faithful;
    CalibrationSpec calibration;
    PlannerSpec planner;
    TransferSpec transfer;

    double control_interval = 0.6;  // s per planner action
    int episode_steps = 6;
    double physics_dt = 0.01;       // proxy integration step
    double characteristic_length = 0.2;
    std::vector<std::string> terminal_ends;  // declared contact/controlled extremities

    void validate() const;
};

RobotScenario load_scenario(const std::string& path);
void save_scenario(const RobotScenario& scenario, const std::string& path);

// ---------------------------------------------------------------------------
// Proxy construction
// ---------------------------------------------------------------------------

enum class ActuatorType { Cavity, Cables };

/// One annotated actuator region: its neutral fiber (base placement +
/// length) and the actuator type deciding the bending DoF count.
struct ActuatorAnnotation {
    std::string id;
    ActuatorType type = ActuatorType::Cavity;
    int cable_count = 0;  // Cables only; >= 3 required for 2-DoF bending
    bool has_fiber = false;
    BeamAttachment parent;
    Vec3 base_translation = Vec3::Zero();
    Quat base_rotation = Quat::Identity();
    double length = 0.0;
    int node_count = 5;
    Vec3 bend_axis = Vec3::UnitZ();
    double stiffness = 1e-3;
    double mass = 0.01;
    double max_precurvature = 10.0;
    BaseMode base_mode = BaseMode::Fixed;
    std::array<bool, 3> base_translation_actuated = {false, false, false};
};

struct PassiveClosure {
    std::string id;
    BeamAttachment parent;
    Vec3 base_translation = Vec3::Zero();
    Quat base_rotation = Quat::Identity();
    double length = 0.0;
    int node_count = 5;
    double stiffness = 1e-3;
    double mass = 0.005;
};

struct ProxyAnnotation {
    std::vector<ActuatorAnnotation> actuators;
    std::vector<PassiveClosure> passive_closures;
    std::vector<MarkerId> marker_ids;
    std::vector<std::string> terminal_ends;  // "beam_id:base" / "beam_id:tip"
};

/// Builds the beam skeleton from an annotated robot description: one
/// actuated beam per actuator region (cavity -> 1 bending DoF, >= 3 cables
/// -> 2 bending DoFs) plus the declared passive beams, then checks that no
/// extremity is left free. Throws ScenarioError on cyclic attachments or
/// missing neutral fibers.
SkeletonSpec build_proxy(const ProxyAnnotation& annotation);

/// Rest-pose positions and frames of every node of every beam.
struct RestPose {
    std::vector<std::vector<Vec3>> positions;  // [beam][node]
    std::vector<std::vector<Mat3>> frames;
};

RestPose skeleton_rest_pose(const SkeletonSpec& skeleton);

/// Assigns every surface vertex to its nearest beam segment in the rest
/// configuration. Ties break to the lowest beam index, then the lowest
/// segment index. Throws ScenarioError for an empty mesh.
BarycentricMapping build_mapping(const SkeletonSpec& skeleton, const SurfaceMesh& surface);

}  // namespace proxyplan
