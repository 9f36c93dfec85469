#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/Geometry>

#include "grasp/synth.hpp"

namespace grasp {

namespace {

struct Sample {
    Vec3 point;
    Vec3 normal;      // outward surface normal, world frame
    std::uint32_t object;
};

Eigen::Matrix3d yaw_rotation(double yaw) {
    return Eigen::AngleAxisd(yaw, Vec3::UnitZ()).toRotationMatrix();
}

std::size_t count_for(double area, double density, std::mt19937_64& rng) {
    const double expected = area * density;
    std::poisson_distribution<std::size_t> d(expected);
    return std::max<std::size_t>(1, d(rng));
}

void sample_cuboid(const Primitive& prim, std::uint32_t id, double density,
                   std::mt19937_64& rng, std::vector<Sample>& out) {
    const Vec3 half = prim.dims / 2;
    const Eigen::Matrix3d rot = yaw_rotation(prim.yaw);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    // face axis, sign
    for (int axis = 0; axis < 3; ++axis) {
        const int u_axis = (axis + 1) % 3, v_axis = (axis + 2) % 3;
        const double area = 4 * half[u_axis] * half[v_axis];
        for (int sign : {-1, +1}) {
            const std::size_t n = count_for(area, density, rng);
            for (std::size_t i = 0; i < n; ++i) {
                Vec3 local = Vec3::Zero();
                local[axis] = sign * half[axis];
                local[u_axis] = u(rng) * half[u_axis];
                local[v_axis] = u(rng) * half[v_axis];
                Vec3 normal = Vec3::Zero();
                normal[axis] = sign;
                out.push_back({rot * local + prim.position, rot * normal, id});
            }
        }
    }
}

void sample_cylinder(const Primitive& prim, std::uint32_t id, double density,
                     std::mt19937_64& rng, std::vector<Sample>& out) {
    const double radius = prim.dims[0], height = prim.dims[1];
    const Eigen::Matrix3d rot = yaw_rotation(prim.yaw);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    // side shell
    {
        const double area = 2 * M_PI * radius * height;
        const std::size_t n = count_for(area, density, rng);
        for (std::size_t i = 0; i < n; ++i) {
            const double phi = 2 * M_PI * u01(rng);
            const double z = (u01(rng) - 0.5) * height;
            const Vec3 local{radius * std::cos(phi), radius * std::sin(phi), z};
            const Vec3 normal{std::cos(phi), std::sin(phi), 0};
            out.push_back({rot * local + prim.position, rot * normal, id});
        }
    }
    // caps
    for (int sign : {-1, +1}) {
        const double area = M_PI * radius * radius;
        const std::size_t n = count_for(area, density, rng);
        for (std::size_t i = 0; i < n; ++i) {
            const double rr = radius * std::sqrt(u01(rng));
            const double phi = 2 * M_PI * u01(rng);
            const Vec3 local{rr * std::cos(phi), rr * std::sin(phi),
                             sign * height / 2};
            out.push_back({rot * local + prim.position,
                           rot * Vec3{0, 0, double(sign)}, id});
        }
    }
}

void sample_sphere(const Primitive& prim, std::uint32_t id, double density,
                   std::mt19937_64& rng, std::vector<Sample>& out) {
    const double radius = prim.dims[0];
    const double area = 4 * M_PI * radius * radius;
    const std::size_t n = count_for(area, density, rng);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 dir{g(rng), g(rng), g(rng)};
        if (dir.norm() < 1e-12) dir = Vec3::UnitZ();
        dir.normalize();
        out.push_back({prim.position + radius * dir, dir, id});
    }
}

}  // namespace

std::pair<PointCloud, SceneAnnotation> synth_scene(const SyntheticSceneSpec& spec) {
    if (spec.primitives.empty())
        throw std::invalid_argument("synth_scene: empty primitive list");
    if (spec.density <= 0)
        throw std::invalid_argument("synth_scene: density must be > 0");
    if (spec.noise_sigma < 0)
        throw std::invalid_argument("synth_scene: noise must be >= 0");

    std::mt19937_64 rng(spec.seed);
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < spec.primitives.size(); ++i) {
        const auto& prim = spec.primitives[i];
        const auto id = static_cast<std::uint32_t>(i);
        switch (prim.kind) {
            case Primitive::Kind::Cuboid:
                sample_cuboid(prim, id, spec.density, rng, samples);
                break;
            case Primitive::Kind::Cylinder:
                sample_cylinder(prim, id, spec.density, rng, samples);
                break;
            case Primitive::Kind::Sphere:
                sample_sphere(prim, id, spec.density, rng, samples);
                break;
        }
    }

    std::vector<char> visible(samples.size(), 1);
    if (spec.occlusion) {
        // backface culling against the sensor ray
        for (std::size_t i = 0; i < samples.size(); ++i)
            if (samples[i].normal.dot(spec.sensor - samples[i].point) <= 0)
                visible[i] = 0;
        // spherical z-buffer: keep only points near the closest depth in
        // each angular cell; removes surfaces hidden behind nearer objects
        constexpr double cell = 2.5e-3;  // radians, ~0.14 deg
        constexpr double depth_margin = 8e-3;  // meters
        std::unordered_map<std::uint64_t, double> zbuf;
        auto cell_key = [&](const Vec3& p) {
            const Vec3 d = p - spec.sensor;
            const double az = std::atan2(d.y(), d.x());
            const double el = std::atan2(d.z(), std::hypot(d.x(), d.y()));
            const auto ia = static_cast<std::int64_t>(std::floor(az / cell));
            const auto ie = static_cast<std::int64_t>(std::floor(el / cell));
            return (static_cast<std::uint64_t>(ia + (1ll << 31)) << 32) |
                   static_cast<std::uint64_t>(ie + (1ll << 31));
        };
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (!visible[i]) continue;
            const double depth = (samples[i].point - spec.sensor).norm();
            auto [it, inserted] = zbuf.try_emplace(cell_key(samples[i].point), depth);
            if (!inserted && depth < it->second) it->second = depth;
        }
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (!visible[i]) continue;
            const double depth = (samples[i].point - spec.sensor).norm();
            if (depth > zbuf[cell_key(samples[i].point)] + depth_margin)
                visible[i] = 0;
        }
    }

    PointCloud cloud;
    cloud.viewpoint = spec.sensor;
    SceneAnnotation ann;
    ann.scene_id = spec.scene_id;
    ann.objects.resize(spec.primitives.size());
    for (std::size_t i = 0; i < spec.primitives.size(); ++i) {
        ann.objects[i].object_id = static_cast<std::uint32_t>(i);
        ann.objects[i].label = spec.primitives[i].label.empty()
                                   ? "object_" + std::to_string(i)
                                   : spec.primitives[i].label;
    }
    std::normal_distribution<double> noise(0.0, spec.noise_sigma);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!visible[i]) continue;
        Vec3 p = samples[i].point;
        if (spec.noise_sigma > 0) p += Vec3{noise(rng), noise(rng), noise(rng)};
        ann.objects[samples[i].object].members.push_back(
            static_cast<std::uint32_t>(cloud.size()));
        cloud.push_back(p);
    }
    cloud.width = static_cast<std::uint32_t>(cloud.size());
    cloud.height = 1;
    return {std::move(cloud), std::move(ann)};
}

}  // namespace grasp
