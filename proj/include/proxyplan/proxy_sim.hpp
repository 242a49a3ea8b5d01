#pragma once

#include "proxyplan/contact.hpp"
#include "proxyplan/math.hpp"
#include "proxyplan/scene.hpp"

#include <vector>

namespace proxyplan {

/// Full proxy configuration. Canonical variables are the per-segment
/// curvature vectors and the base pose; node positions and frames are the
/// cached forward kinematics of those variables. Arc length per segment is
/// constant by construction (inextensible bending).
struct ProxyState {
    std::vector<VecX> curvatures;              // [beam], packed (ky, kz) per segment
    Frame base;                                // skeleton root frame
    VecX applied_precurvature;                 // current slewed targets per actuated DoF
    VecX base_offset;                          // actuated base translation values

    std::vector<std::vector<Vec3>> positions;  // [beam][node], cached kinematics
    std::vector<std::vector<Mat3>> frames;

    std::vector<ObjectState> objects;
    std::vector<StickAnchor> ground_anchors;   // per surface vertex
    std::vector<ContactRecord> contacts;       // active set after the last step
    double sim_time = 0.0;
};

/// Planner-facing action: pre-curvature targets per actuated bending DoF
/// (flattened in beam order) plus actuated base translation increments.
struct ProxyAction {
    VecX precurvature;
    VecX base_increment;
};

struct StepReport {
    bool converged = true;
    int iterations = 0;
    double residual = 0.0;  // last max node displacement, m
};

struct BeamShape {
    std::vector<Vec3> positions;
    std::vector<Mat3> frames;
    int iterations = 0;
    double residual = 0.0;
};

/// Static shape of a single inextensible bending beam: intrinsic curvature
/// equals the pre-curvature, elastic response resists external node loads
/// and (optionally) gravity on the uniform beam mass. Throws SolveError on
/// divergence, ScenarioError when |precurvature| exceeds the beam bound.
BeamShape solve_beam_shape(const BeamSpec& beam, double precurvature, const Frame& base,
                           const std::vector<Vec3>& external_loads, bool gravity);

/// Damped quasi-static simulator over a beam skeleton with the mapped
/// surface in contact with the ground and rigid objects.
///
/// One instance is immutable and safe to share; all mutable data lives in
/// ProxyState, so parallel workers run independent states side by side.
class ProxySimulator {
public:
    struct Options {
        bool gravity = true;
        bool contacts = true;
        int max_iterations = 120;
        double displacement_tol = 1e-7;  // m per relaxation iteration
    };

    explicit ProxySimulator(const RobotScenario& scenario, Options options = {});

    const RobotScenario& scenario() const { return *scenario_; }
    int actuated_dof_count() const { return actuated_dofs_; }
    int actuated_base_axes() const { return base_axes_; }

    ProxyState make_rest_state() const;

    /// One physics step of dt: relaxes the skeleton to quasi-static
    /// equilibrium under the action's pre-curvature (clamped to the beam
    /// bounds), then integrates object poses under the converged contact
    /// forces. Throws SolveError on divergence or NaN.
    StepReport step(ProxyState& state, const ProxyAction& action, double dt) const;

    /// Applies an action over one control interval, slewing pre-curvature
    /// and base offsets linearly across the interval's physics steps.
    StepReport advance_interval(ProxyState& state, const ProxyAction& action, double interval) const;

    /// Steps with the currently applied action until the state stops
    /// moving (rest-on-ground equilibrium). Returns steps taken.
    int settle(ProxyState& state, int max_steps = 200, double tol = 1e-7) const;

    std::vector<Vec3> map_surface(const ProxyState& state) const;
    std::vector<Vec3> observe_markers(const ProxyState& state) const;
    std::vector<Vec3> marker_rest_positions() const;

    /// Skeleton + contact energy (bending, gravity, penalties) of a state.
    double total_energy(const ProxyState& state) const;

    /// Relaxation energy trace of the last step (diagnostics; used by the
    /// dissipation tests).
    const std::vector<double>& last_energy_trace() const { return energy_trace_; }

    /// Re-solves equilibrium without advancing time or objects (used by
    /// transfer realignment).
    StepReport resolve_equilibrium(ProxyState& state) const;

    Frame frame_at_arc(const ProxyState& state, int beam, double arc) const;

    const ContactParams& contact_params() const { return contact_; }

    /// Per-channel (beam, local curvature axis) descriptors for the
    /// flattened actuated DoF vector.
    struct ActuatedChannel {
        int beam = 0;
        Vec2 axis = Vec2(0, 1);  // local (y, z) bending axis
        double max_curvature = 0.0;
    };
    const std::vector<ActuatedChannel>& channels() const { return channels_; }

private:
    struct DofMap {
        int total = 0;
        bool floating_base = false;
        int base_offset = -1;              // first of 6 base DoFs when floating
        std::vector<int> beam_offset;      // first curvature DoF per beam
    };

    void forward_kinematics(ProxyState& state) const;
    void build_jacobian(const ProxyState& state, std::vector<Vec3>& lin, std::vector<Vec3>& ang) const;
    double energy_with_loads(const ProxyState& state) const;
    StepReport relax(ProxyState& state, bool track_energy) const;
    Vec3 vertex_position(const ProxyState& state, int vi) const;
    void accumulate_contact_forces(const ProxyState& state, std::vector<Vec3>& vertex_forces,
                                   std::vector<Vec3>& object_forces,
                                   std::vector<ContactRecord>* records) const;

    std::shared_ptr<const RobotScenario> scenario_;
    Options options_;
    ContactParams contact_;
    DofMap dofs_;
    std::vector<ActuatedChannel> channels_;
    int actuated_dofs_ = 0;
    int base_axes_ = 0;
    std::vector<int> node_offset_;  // global node index per beam
    int total_nodes_ = 0;
    std::vector<std::vector<double>> node_mass_;  // lumped per node
    RestPose rest_;
    double broadphase_margin_ = 0.02;
    mutable std::vector<double> energy_trace_;

    friend BeamShape solve_beam_shape(const BeamSpec&, double, const Frame&,
                                      const std::vector<Vec3>&, bool);
    StepReport relax_with_external(ProxyState& state, const std::vector<Vec3>& node_loads) const;
};

}  // namespace proxyplan
