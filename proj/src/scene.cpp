#include "proxyplan/scene.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace proxyplan {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Skeleton
// ---------------------------------------------------------------------------

int SkeletonSpec::beam_index(const std::string& id) const {
    for (size_t i = 0; i < beams.size(); ++i) {
        if (beams[i].id == id) return static_cast<int>(i);
    }
    throw ScenarioError("unknown beam id '" + id + "'");
}

const BeamSpec& SkeletonSpec::beam(const std::string& id) const {
    return beams[beam_index(id)];
}

void SkeletonSpec::validate(const std::vector<std::string>& terminal_ends) const {
    if (beams.empty()) throw ScenarioError("skeleton has no beams");

    std::set<std::string> ids;
    for (const auto& b : beams) {
        if (!ids.insert(b.id).second) throw ScenarioError("duplicate beam id '" + b.id + "'");
        if (b.length <= 0.0) throw ScenarioError("beam '" + b.id + "': length must be > 0");
        if (b.stiffness <= 0.0) throw ScenarioError("beam '" + b.id + "': stiffness must be > 0");
        if (b.mass < 0.0) throw ScenarioError("beam '" + b.id + "': mass must be >= 0");
        if (b.max_precurvature < 0.0)
            throw ScenarioError("beam '" + b.id + "': max precurvature must be >= 0");
        if (b.node_count < 2) throw ScenarioError("beam '" + b.id + "': node_count must be >= 2");
        if (b.bending_dofs < 0 || b.bending_dofs > 2)
            throw ScenarioError("beam '" + b.id + "': bending_dofs must be 0, 1 or 2");
        if (b.passive() && b.max_precurvature != 0.0)
            throw ScenarioError("beam '" + b.id + "': passive beam must have zero max precurvature");
    }

    // attachment graph must be a tree rooted at the world base
    for (const auto& b : beams) {
        std::set<std::string> seen{b.id};
        const BeamSpec* cur = &b;
        while (!cur->parent.world_base) {
            const std::string& pid = cur->parent.parent_id;
            if (seen.count(pid))
                throw ScenarioError("cyclic attachment through beam '" + pid + "'");
            seen.insert(pid);
            int pi = -1;
            for (size_t i = 0; i < beams.size(); ++i) {
                if (beams[i].id == pid) { pi = static_cast<int>(i); break; }
            }
            if (pi < 0) throw ScenarioError("beam '" + cur->id + "': unknown parent '" + pid + "'");
            const BeamSpec& parent = beams[pi];
            if (cur->parent.arc_offset < -1e-9 || cur->parent.arc_offset > parent.length + 1e-9)
                throw ScenarioError("beam '" + cur->id + "': attachment arc offset outside parent");
            cur = &parent;
        }
    }

    for (const auto& m : marker_ids) {
        const BeamSpec& b = beam(m.beam_id);
        if (m.node_index < 0 || m.node_index >= b.node_count)
            throw ScenarioError("marker on beam '" + m.beam_id + "': node index out of range");
    }

    // no dangling free ends: every tip either carries a child attachment,
    // is a marker/controlled point, or is declared terminal
    std::set<std::string> declared(terminal_ends.begin(), terminal_ends.end());
    for (const auto& b : beams) {
        bool closed = declared.count(b.id + ":tip") > 0;
        for (const auto& other : beams) {
            if (!other.parent.world_base && other.parent.parent_id == b.id &&
                other.parent.arc_offset > b.length - 1e-9) {
                closed = true;
            }
        }
        for (const auto& m : marker_ids) {
            if (m.beam_id == b.id && m.node_index == b.node_count - 1) closed = true;
        }
        if (!closed)
            throw ScenarioError("beam '" + b.id + "': free tip (attach a passive beam, a marker, "
                                "or declare the end terminal)");
    }
}

// ---------------------------------------------------------------------------
// Surface
// ---------------------------------------------------------------------------

void SurfaceMesh::validate() const {
    const int n = static_cast<int>(vertices.size());
    for (const auto& tri : triangles) {
        for (int k : tri) {
            if (k < 0 || k >= n) throw ScenarioError("surface triangle index out of range");
        }
        const Vec3 a = vertices[tri[1]] - vertices[tri[0]];
        const Vec3 b = vertices[tri[2]] - vertices[tri[0]];
        if (a.cross(b).norm() < 1e-16) throw ScenarioError("degenerate zero-area surface triangle");
    }
}

SurfaceMesh load_off(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open OFF file '" + path + "'");
    std::string tag;
    in >> tag;
    if (tag != "OFF") throw ScenarioError("'" + path + "': missing OFF header");
    size_t nv = 0, nf = 0, ne = 0;
    in >> nv >> nf >> ne;
    SurfaceMesh mesh;
    mesh.vertices.resize(nv);
    for (size_t i = 0; i < nv; ++i) in >> mesh.vertices[i].x() >> mesh.vertices[i].y() >> mesh.vertices[i].z();
    mesh.triangles.resize(nf);
    for (size_t i = 0; i < nf; ++i) {
        int cnt = 0;
        in >> cnt;
        if (cnt != 3) throw ScenarioError("'" + path + "': only triangle faces are supported");
        in >> mesh.triangles[i][0] >> mesh.triangles[i][1] >> mesh.triangles[i][2];
    }
    if (!in) throw ScenarioError("'" + path + "': truncated OFF file");
    return mesh;
}

void save_off(const SurfaceMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    out << "OFF\n" << mesh.vertices.size() << " " << mesh.triangles.size() << " 0\n";
    out.precision(12);
    for (const auto& v : mesh.vertices) out << v.x() << " " << v.y() << " " << v.z() << "\n";
    for (const auto& t : mesh.triangles) out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
}

// ---------------------------------------------------------------------------
// Environment
// ---------------------------------------------------------------------------

void EnvironmentSpec::validate() const {
    if (ground.friction < 0.0) throw ScenarioError("ground friction must be >= 0");
    if (std::abs(ground.normal.norm() - 1.0) > 1e-9)
        throw ScenarioError("ground normal must be unit length");
    for (const auto& obj : rigid_objects) {
        if (obj.mass <= 0.0) throw ScenarioError("rigid object '" + obj.id + "': mass must be > 0");
        if (obj.friction < 0.0) throw ScenarioError("rigid object '" + obj.id + "': friction must be >= 0");
        if (obj.half_extents.minCoeff() <= 0.0)
            throw ScenarioError("rigid object '" + obj.id + "': half extents must be > 0");
    }
}

void RobotScenario::validate() const {
    skeleton.validate(terminal_ends);
    surface.validate();
    environment.validate();

    int actuated = 0;
    for (const auto& b : skeleton.beams) actuated += b.passive() ? 0 : 1;
    if (actuation.kind == ActuationKind::Pneumatic) {
        if (static_cast<int>(actuation.pressures.size()) != actuated)
            throw ScenarioError("pneumatic channel count does not match actuated beam count");
        for (const auto& ch : actuation.pressures) {
            if (skeleton.beam(ch.beam_id).passive())
                throw ScenarioError("pressure channel targets passive beam '" + ch.beam_id + "'");
        }
    } else {
        std::set<std::string> covered;
        for (const auto& ch : actuation.cables) {
            if (skeleton.beam(ch.beam_id).passive())
                throw ScenarioError("cable channel targets passive beam '" + ch.beam_id + "'");
            covered.insert(ch.beam_id);
        }
        for (const auto& b : skeleton.beams) {
            if (!b.passive() && !covered.count(b.id))
                throw ScenarioError("actuated beam '" + b.id + "' has no cable channel");
        }
    }

    if (physics_dt <= 0.0) throw ScenarioError("physics_dt must be > 0");
    const double ratio = control_interval / physics_dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-6)
        throw ScenarioError("control_interval must be an integer multiple of physics_dt");
    if (episode_steps <= 0) throw ScenarioError("episode_steps must be > 0");
    if (characteristic_length <= 0.0) throw ScenarioError("characteristic_length must be > 0");
}

// ---------------------------------------------------------------------------
// Rest pose
// ---------------------------------------------------------------------------

namespace {

std::vector<int> topological_order(const SkeletonSpec& skeleton) {
    const int n = static_cast<int>(skeleton.beams.size());
    std::vector<int> order;
    std::vector<bool> placed(n, false);
    for (int pass = 0; pass < n && static_cast<int>(order.size()) < n; ++pass) {
        for (int i = 0; i < n; ++i) {
            if (placed[i]) continue;
            const auto& b = skeleton.beams[i];
            if (b.parent.world_base) {
                order.push_back(i);
                placed[i] = true;
            } else {
                int pi = skeleton.beam_index(b.parent.parent_id);
                if (placed[pi]) {
                    order.push_back(i);
                    placed[i] = true;
                }
            }
        }
    }
    if (static_cast<int>(order.size()) != n)
        throw ScenarioError("attachment graph is not a tree rooted at the world base");
    return order;
}

}  // namespace

RestPose skeleton_rest_pose(const SkeletonSpec& skeleton) {
    RestPose rest;
    const int n = static_cast<int>(skeleton.beams.size());
    rest.positions.resize(n);
    rest.frames.resize(n);

    for (int bi : topological_order(skeleton)) {
        const BeamSpec& b = skeleton.beams[bi];
        Frame base;
        if (b.parent.world_base) {
            base.p = b.base_translation;
            base.R = b.base_rotation.toRotationMatrix();
        } else {
            const int pi = skeleton.beam_index(b.parent.parent_id);
            const BeamSpec& parent = skeleton.beams[pi];
            const double h = parent.segment_length();
            const double s = clampd(b.parent.arc_offset, 0.0, parent.length);
            const int seg = std::min(parent.segment_count() - 1, static_cast<int>(s / h));
            const double local = s - seg * h;
            // rest beams are straight; interpolate along the parent tangent
            Frame at;
            at.R = rest.frames[pi][seg];
            at.p = rest.positions[pi][seg] + at.R * Vec3(local, 0, 0);
            base.p = at.p + at.R * b.base_translation;
            base.R = at.R * b.base_rotation.toRotationMatrix();
        }
        const double h = b.segment_length();
        rest.positions[bi].resize(b.node_count);
        rest.frames[bi].resize(b.node_count);
        for (int k = 0; k < b.node_count; ++k) {
            rest.positions[bi][k] = base.p + base.R * Vec3(k * h, 0, 0);
            rest.frames[bi][k] = base.R;
        }
    }
    return rest;
}

// ---------------------------------------------------------------------------
// Mapping
// ---------------------------------------------------------------------------

BarycentricMapping build_mapping(const SkeletonSpec& skeleton, const SurfaceMesh& surface) {
    if (surface.vertices.empty()) throw ScenarioError("cannot map an empty surface mesh");
    const RestPose rest = skeleton_rest_pose(skeleton);

    BarycentricMapping mapping;
    mapping.vertices.resize(surface.vertices.size());

    for (size_t vi = 0; vi < surface.vertices.size(); ++vi) {
        const Vec3& v = surface.vertices[vi];
        double best = std::numeric_limits<double>::max();
        VertexAttachment att;
        for (size_t bi = 0; bi < skeleton.beams.size(); ++bi) {
            const auto& pos = rest.positions[bi];
            for (size_t seg = 0; seg + 1 < pos.size(); ++seg) {
                const Vec3& a = pos[seg];
                const Vec3& b = pos[seg + 1];
                const Vec3 ab = b - a;
                const double t = clampd(ab.dot(v - a) / ab.squaredNorm(), 0.0, 1.0);
                const double d2 = (v - (a + t * ab)).squaredNorm();
                // strict '<' keeps the lowest beam/segment on exact ties
                if (d2 < best - 1e-18) {
                    best = d2;
                    att.beam = static_cast<int>(bi);
                    att.segment = static_cast<int>(seg);
                    att.w1 = t;
                    att.w0 = 1.0 - t;
                }
            }
        }
        const Vec3& p0 = rest.positions[att.beam][att.segment];
        const Vec3& p1 = rest.positions[att.beam][att.segment + 1];
        const Vec3 d = v - (att.w0 * p0 + att.w1 * p1);
        att.offset0 = rest.frames[att.beam][att.segment].transpose() * d;
        att.offset1 = rest.frames[att.beam][att.segment + 1].transpose() * d;
        mapping.vertices[vi] = att;
    }
    return mapping;
}

// ---------------------------------------------------------------------------
// Proxy construction
// ---------------------------------------------------------------------------

SkeletonSpec build_proxy(const ProxyAnnotation& annotation) {
    SkeletonSpec skeleton;
    for (const auto& act : annotation.actuators) {
        if (!act.has_fiber)
            throw ScenarioError("actuator region '" + act.id + "': neutral fiber not declared");
        BeamSpec beam;
        beam.id = act.id;
        beam.length = act.length;
        beam.stiffness = act.stiffness;
        beam.mass = act.mass;
        beam.max_precurvature = act.max_precurvature;
        beam.bending_dofs = act.type == ActuatorType::Cavity ? 1 : (act.cable_count >= 3 ? 2 : 1);
        beam.node_count = act.node_count;
        beam.parent = act.parent;
        beam.base_translation = act.base_translation;
        beam.base_rotation = act.base_rotation;
        beam.bend_axis = act.bend_axis;
        beam.base_mode = act.base_mode;
        beam.base_translation_actuated = act.base_translation_actuated;
        skeleton.beams.push_back(beam);
    }
    for (const auto& pc : annotation.passive_closures) {
        BeamSpec beam;
        beam.id = pc.id;
        beam.length = pc.length;
        beam.stiffness = pc.stiffness;
        beam.mass = pc.mass;
        beam.max_precurvature = 0.0;
        beam.bending_dofs = 0;
        beam.node_count = pc.node_count;
        beam.parent = pc.parent;
        beam.base_translation = pc.base_translation;
        beam.base_rotation = pc.base_rotation;
        skeleton.beams.push_back(beam);
    }
    skeleton.marker_ids = annotation.marker_ids;
    skeleton.validate(annotation.terminal_ends);
    return skeleton;
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

namespace {

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }
Vec3 vec3_from_json(const json& j) { return Vec3(j.at(0), j.at(1), j.at(2)); }

json quat_to_json(const Quat& q) { return json::array({q.w(), q.x(), q.y(), q.z()}); }
Quat quat_from_json(const json& j) {
    Quat q(j.at(0), j.at(1), j.at(2), j.at(3));
    q.normalize();
    return q;
}

json beam_to_json(const BeamSpec& b) {
    json j;
    j["id"] = b.id;
    j["length"] = b.length;
    j["stiffness"] = b.stiffness;
    j["mass"] = b.mass;
    j["max_precurvature"] = b.max_precurvature;
    j["bending_dofs"] = b.bending_dofs;
    j["node_count"] = b.node_count;
    if (b.parent.world_base) {
        j["parent"] = "world";
    } else {
        j["parent"] = json{{"beam", b.parent.parent_id}, {"arc_offset", b.parent.arc_offset}};
    }
    j["base_translation"] = vec3_to_json(b.base_translation);
    j["base_rotation"] = quat_to_json(b.base_rotation);
    j["bend_axis"] = vec3_to_json(b.bend_axis);
    j["base_mode"] = b.base_mode == BaseMode::Floating ? "floating" : "fixed";
    j["base_translation_actuated"] = b.base_translation_actuated;
    return j;
}

BeamSpec beam_from_json(const json& j) {
    BeamSpec b;
    b.id = j.at("id");
    b.length = j.at("length");
    b.stiffness = j.at("stiffness");
    b.mass = j.at("mass");
    b.max_precurvature = j.at("max_precurvature");
    b.bending_dofs = j.at("bending_dofs");
    b.node_count = j.at("node_count");
    if (j.at("parent").is_string()) {
        b.parent.world_base = true;
    } else {
        b.parent.world_base = false;
        b.parent.parent_id = j.at("parent").at("beam");
        b.parent.arc_offset = j.at("parent").at("arc_offset");
    }
    b.base_translation = vec3_from_json(j.at("base_translation"));
    b.base_rotation = quat_from_json(j.at("base_rotation"));
    if (j.contains("bend_axis")) b.bend_axis = vec3_from_json(j.at("bend_axis"));
    if (j.contains("base_mode")) b.base_mode = j.at("base_mode") == "floating" ? BaseMode::Floating : BaseMode::Fixed;
    if (j.contains("base_translation_actuated")) {
        auto arr = j.at("base_translation_actuated");
        for (int k = 0; k < 3; ++k) b.base_translation_actuated[k] = arr.at(k);
    }
    return b;
}

json markers_to_json(const std::vector<MarkerId>& markers) {
    json arr = json::array();
    for (const auto& m : markers) arr.push_back(json::array({m.beam_id, m.node_index}));
    return arr;
}

std::vector<MarkerId> markers_from_json(const json& arr) {
    std::vector<MarkerId> markers;
    for (const auto& j : arr) markers.push_back({j.at(0), j.at(1)});
    return markers;
}

json box_to_json(const LatticeBox& b) {
    json j;
    j["lo"] = vec3_to_json(b.lo);
    j["hi"] = vec3_to_json(b.hi);
    if (!b.region.empty()) j["region"] = b.region;
    return j;
}

LatticeBox box_from_json(const json& j) {
    LatticeBox b;
    b.lo = vec3_from_json(j.at("lo"));
    b.hi = vec3_from_json(j.at("hi"));
    if (j.contains("region")) b.region = j.at("region");
    return b;
}

}  // namespace

void save_scenario(const RobotScenario& s, const std::string& path) {
    json j;
    j["name"] = s.name;

    json sk;
    sk["beams"] = json::array();
    for (const auto& b : s.skeleton.beams) sk["beams"].push_back(beam_to_json(b));
    sk["markers"] = markers_to_json(s.skeleton.marker_ids);
    sk["terminal_ends"] = s.terminal_ends;
    j["skeleton"] = sk;

    json surf;
    surf["vertices"] = json::array();
    for (const auto& v : s.surface.vertices) surf["vertices"].push_back(vec3_to_json(v));
    surf["triangles"] = json::array();
    for (const auto& t : s.surface.triangles) surf["triangles"].push_back(json::array({t[0], t[1], t[2]}));
    j["surface"] = surf;

    json env;
    env["ground"] = json{{"point", vec3_to_json(s.environment.ground.point)},
                         {"normal", vec3_to_json(s.environment.ground.normal)},
                         {"friction", s.environment.ground.friction}};
    env["objects"] = json::array();
    for (const auto& o : s.environment.rigid_objects) {
        env["objects"].push_back(json{{"id", o.id},
                                      {"half_extents", vec3_to_json(o.half_extents)},
                                      {"mass", o.mass},
                                      {"friction", o.friction},
                                      {"position", vec3_to_json(o.initial_position)},
                                      {"rotation", quat_to_json(o.initial_rotation)}});
    }
    env["goal"] = vec3_to_json(s.environment.goal);
    env["goal_region"] = json{{"x", {s.environment.goal_region.x_min, s.environment.goal_region.x_max}},
                              {"z", {s.environment.goal_region.z_min, s.environment.goal_region.z_max}}};
    env["proxy_object_ground_friction"] = s.environment.proxy_object_ground_friction;
    j["environment"] = env;

    json act;
    act["kind"] = s.actuation.kind == ActuationKind::Pneumatic ? "pneumatic" : "cable";
    act["pressures"] = json::array();
    for (const auto& c : s.actuation.pressures)
        act["pressures"].push_back(json{{"beam", c.beam_id}, {"max", c.max_value}, {"region", c.region}});
    act["cables"] = json::array();
    for (const auto& c : s.actuation.cables)
        act["cables"].push_back(json{{"beam", c.beam_id},
                                     {"max", c.max_value},
                                     {"offset", vec3_to_json(c.offset)},
                                     {"arc", {c.arc_begin, c.arc_end}}});
    act["base_translation"] = s.actuation.base_translation;
    act["base_axis"] = s.actuation.base_axis;
    act["base_range"] = {s.actuation.base_min, s.actuation.base_max};
    j["actuation"] = act;

    json ft;
    ft["boxes"] = json::array();
    for (const auto& b : s.faithful.boxes) ft["boxes"].push_back(box_to_json(b));
    ft["clamped"] = json::array();
    for (const auto& b : s.faithful.clamped) ft["clamped"].push_back(box_to_json(b));
    ft["voxel"] = s.faithful.voxel;
    ft["total_mass"] = s.faithful.total_mass;
    ft["edge_stiffness"] = s.faithful.edge_stiffness;
    ft["damping"] = s.faithful.damping;
    ft["spring_damping"] = s.faithful.spring_damping;
    ft["dt"] = s.faithful.dt;
    ft["pressure_gain"] = s.faithful.pressure_gain;
    ft["cable_stiffness"] = s.faithful.cable_stiffness;
    ft["ground_friction"] = s.faithful.ground_friction;
    j["faithful"] = ft;

    json cal;
    cal["groups"] = json::array();
    for (const auto& g : s.calibration.groups) {
        cal["groups"].push_back(json{{"name", g.name},
                                     {"beams", g.beam_ids},
                                     {"stiffness", {g.stiffness_min, g.stiffness_max}},
                                     {"mass", {g.mass_min, g.mass_max}},
                                     {"precurvature", {g.precurv_min, g.precurv_max}}});
    }
    cal["marker_vertices"] = s.calibration.marker_vertices;
    cal["plan"] = json::array();
    for (const auto& step : s.calibration.plan) {
        json cmd = json::array();
        for (int i = 0; i < step.command.size(); ++i) cmd.push_back(step.command[i]);
        cal["plan"].push_back(json{{"command", cmd}, {"duration", step.duration}});
    }
    cal["safety_factor"] = s.calibration.safety_factor;
    cal["fit_object_mass"] = s.calibration.fit_object_mass;
    cal["object_mass"] = {s.calibration.object_mass_min, s.calibration.object_mass_max};
    j["calibration"] = cal;

    json pl;
    pl["task"] = s.planner.task;
    pl["trunk_reward_weight"] = s.planner.trunk_reward_weight;
    pl["success_threshold"] = s.planner.success_threshold;
    pl["base_step"] = s.planner.base_step;
    pl["control_interval"] = s.control_interval;
    pl["episode_steps"] = s.episode_steps;
    pl["physics_dt"] = s.physics_dt;
    pl["characteristic_length"] = s.characteristic_length;
    j["planner"] = pl;

    json tr;
    tr["controlled_points"] = markers_to_json(s.transfer.controlled_points);
    tr["contact_angle_beams"] = s.transfer.contact_angle_beams;
    tr["feedback_gain"] = s.transfer.feedback_gain;
    tr["corrector_gain"] = s.transfer.corrector_gain;
    tr["realign_period"] = s.transfer.realign_period;
    j["transfer"] = tr;

    std::ofstream out(path);
    if (!out) throw ScenarioError("cannot write scenario '" + path + "'");
    out << j.dump(1) << "\n";
}

RobotScenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ScenarioError("scenario '" + path + "': " + e.what());
    }

    RobotScenario s;
    try {
        s.name = j.value("name", "scenario");

        const json& sk = j.at("skeleton");
        for (const auto& bj : sk.at("beams")) s.skeleton.beams.push_back(beam_from_json(bj));
        s.skeleton.marker_ids = markers_from_json(sk.at("markers"));
        if (sk.contains("terminal_ends"))
            s.terminal_ends = sk.at("terminal_ends").get<std::vector<std::string>>();

        const json& surf = j.at("surface");
        if (surf.contains("off")) {
            std::string dir = path;
            const size_t slash = dir.find_last_of('/');
            dir = slash == std::string::npos ? "." : dir.substr(0, slash);
            s.surface = load_off(dir + "/" + surf.at("off").get<std::string>());
        } else {
            for (const auto& vj : surf.at("vertices")) s.surface.vertices.push_back(vec3_from_json(vj));
            for (const auto& tj : surf.at("triangles"))
                s.surface.triangles.push_back({tj.at(0), tj.at(1), tj.at(2)});
        }

        const json& env = j.at("environment");
        s.environment.ground.point = vec3_from_json(env.at("ground").at("point"));
        s.environment.ground.normal = vec3_from_json(env.at("ground").at("normal"));
        s.environment.ground.friction = env.at("ground").at("friction");
        for (const auto& oj : env.at("objects")) {
            RigidObjectSpec o;
            o.id = oj.at("id");
            o.half_extents = vec3_from_json(oj.at("half_extents"));
            o.mass = oj.at("mass");
            o.friction = oj.at("friction");
            o.initial_position = vec3_from_json(oj.at("position"));
            o.initial_rotation = quat_from_json(oj.at("rotation"));
            s.environment.rigid_objects.push_back(o);
        }
        s.environment.goal = vec3_from_json(env.at("goal"));
        s.environment.goal_region.x_min = env.at("goal_region").at("x").at(0);
        s.environment.goal_region.x_max = env.at("goal_region").at("x").at(1);
        s.environment.goal_region.z_min = env.at("goal_region").at("z").at(0);
        s.environment.goal_region.z_max = env.at("goal_region").at("z").at(1);
        s.environment.proxy_object_ground_friction = env.value("proxy_object_ground_friction", false);

        const json& act = j.at("actuation");
        s.actuation.kind = act.at("kind") == "pneumatic" ? ActuationKind::Pneumatic : ActuationKind::Cable;
        for (const auto& cj : act.at("pressures")) {
            PressureChannel c;
            c.beam_id = cj.at("beam");
            c.max_value = cj.at("max");
            c.region = cj.value("region", "");
            s.actuation.pressures.push_back(c);
        }
        for (const auto& cj : act.at("cables")) {
            CableChannel c;
            c.beam_id = cj.at("beam");
            c.max_value = cj.at("max");
            c.offset = vec3_from_json(cj.at("offset"));
            c.arc_begin = cj.at("arc").at(0);
            c.arc_end = cj.at("arc").at(1);
            s.actuation.cables.push_back(c);
        }
        s.actuation.base_translation = act.at("base_translation");
        s.actuation.base_axis = act.at("base_axis");
        s.actuation.base_min = act.at("base_range").at(0);
        s.actuation.base_max = act.at("base_range").at(1);

        const json& ft = j.at("faithful");
        for (const auto& bj : ft.at("boxes")) s.faithful.boxes.push_back(box_from_json(bj));
        for (const auto& bj : ft.at("clamped")) s.faithful.clamped.push_back(box_from_json(bj));
        s.faithful.voxel = ft.at("voxel");
        s.faithful.total_mass = ft.at("total_mass");
        s.faithful.edge_stiffness = ft.at("edge_stiffness");
        s.faithful.damping = ft.at("damping");
        s.faithful.spring_damping = ft.at("spring_damping");
        s.faithful.dt = ft.at("dt");
        s.faithful.pressure_gain = ft.at("pressure_gain");
        s.faithful.cable_stiffness = ft.at("cable_stiffness");
        s.faithful.ground_friction = ft.at("ground_friction");

        const json& cal = j.at("calibration");
        for (const auto& gj : cal.at("groups")) {
            CalibrationGroup g;
            g.name = gj.at("name");
            g.beam_ids = gj.at("beams").get<std::vector<std::string>>();
            g.stiffness_min = gj.at("stiffness").at(0);
            g.stiffness_max = gj.at("stiffness").at(1);
            g.mass_min = gj.at("mass").at(0);
            g.mass_max = gj.at("mass").at(1);
            g.precurv_min = gj.at("precurvature").at(0);
            g.precurv_max = gj.at("precurvature").at(1);
            s.calibration.groups.push_back(g);
        }
        s.calibration.marker_vertices = cal.at("marker_vertices").get<std::vector<int>>();
        for (const auto& pj : cal.at("plan")) {
            CalibrationPlanStep step;
            const auto& cmd = pj.at("command");
            step.command.resize(cmd.size());
            for (size_t i = 0; i < cmd.size(); ++i) step.command[static_cast<int>(i)] = cmd.at(i);
            step.duration = pj.at("duration");
            s.calibration.plan.push_back(step);
        }
        s.calibration.safety_factor = cal.at("safety_factor");
        s.calibration.fit_object_mass = cal.at("fit_object_mass");
        s.calibration.object_mass_min = cal.at("object_mass").at(0);
        s.calibration.object_mass_max = cal.at("object_mass").at(1);

        const json& pl = j.at("planner");
        s.planner.task = pl.at("task");
        s.planner.trunk_reward_weight = pl.at("trunk_reward_weight");
        s.planner.success_threshold = pl.at("success_threshold");
        s.planner.base_step = pl.value("base_step", 0.004);
        s.control_interval = pl.at("control_interval");
        s.episode_steps = pl.at("episode_steps");
        s.physics_dt = pl.at("physics_dt");
        s.characteristic_length = pl.at("characteristic_length");

        const json& tr = j.at("transfer");
        s.transfer.controlled_points = markers_from_json(tr.at("controlled_points"));
        s.transfer.contact_angle_beams = tr.at("contact_angle_beams").get<std::vector<std::string>>();
        s.transfer.feedback_gain = tr.at("feedback_gain");
        s.transfer.corrector_gain = tr.at("corrector_gain");
        s.transfer.realign_period = tr.at("realign_period");
    } catch (const json::exception& e) {
        throw ScenarioError("scenario '" + path + "': " + e.what());
    }

    s.validate();
    s.mapping = build_mapping(s.skeleton, s.surface);
    return s;
}

}  // namespace proxyplan
