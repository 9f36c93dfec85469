#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grasp/point_cloud.hpp"

namespace grasp {

/// Ground truth for one scene: which points belong to which graspable object.
struct ObjectRecord {
    std::uint32_t object_id = 0;
    std::string label;
    std::vector<std::uint32_t> members;  // indices into the scene cloud
};

struct SceneAnnotation {
    std::string scene_id;
    std::vector<ObjectRecord> objects;
    std::size_t total_graspable() const { return objects.size(); }
};

struct Primitive {
    enum class Kind { Cuboid, Cylinder, Sphere } kind = Kind::Cuboid;
    // cuboid: dims = (lx, ly, lz); cylinder: dims = (radius, height, -);
    // sphere: dims = (radius, -, -)
    Vec3 dims = Vec3::Zero();
    Vec3 position = Vec3::Zero();
    double yaw = 0;  // rotation about +z
    std::string label;
};

struct SyntheticSceneSpec {
    std::string scene_id = "scene";
    std::vector<Primitive> primitives;
    double density = 4e5;           // points per m^2 of surface
    Vec3 sensor = {0, 0, 1.0};      // sensor origin
    double noise_sigma = 0;         // meters, per coordinate
    bool occlusion = true;          // single-viewpoint hidden-surface removal
    std::uint64_t seed = 1;
};

/// Surface-samples the primitives, removes hidden surfaces when enabled
/// (backface culling plus a spherical z-buffer against nearer objects), adds
/// Gaussian noise, and returns the cloud with an exact membership annotation.
std::pair<PointCloud, SceneAnnotation> synth_scene(const SyntheticSceneSpec& spec);

}  // namespace grasp
