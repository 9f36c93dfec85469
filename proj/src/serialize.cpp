#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "grasp/serialize.hpp"

namespace grasp {

using nlohmann::json;

std::string annotation_to_json(const SceneAnnotation& ann) {
    json j;
    j["scene_id"] = ann.scene_id;
    j["total_graspable"] = ann.total_graspable();
    j["objects"] = json::array();
    for (const auto& obj : ann.objects)
        j["objects"].push_back({{"id", obj.object_id},
                                {"label", obj.label},
                                {"members", obj.members}});
    return j.dump();
}

SceneAnnotation annotation_from_json(const std::string& text) {
    const json j = json::parse(text);
    SceneAnnotation ann;
    ann.scene_id = j.value("scene_id", "scene");
    for (const auto& jo : j.at("objects")) {
        ObjectRecord obj;
        obj.object_id = jo.at("id").get<std::uint32_t>();
        obj.label = jo.value("label", "");
        obj.members = jo.at("members").get<std::vector<std::uint32_t>>();
        ann.objects.push_back(std::move(obj));
    }
    return ann;
}

SceneAnnotation load_annotation(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return annotation_from_json(ss.str());
}

namespace {

Vec3 vec3_from(const json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

}  // namespace

SyntheticSceneSpec scene_spec_from_json(const std::string& text) {
    const json j = json::parse(text);
    SyntheticSceneSpec spec;
    spec.scene_id = j.value("scene_id", "scene");
    spec.density = j.value("density", spec.density);
    spec.noise_sigma = j.value("noise_sigma", 0.0);
    spec.occlusion = j.value("occlusion", true);
    spec.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("sensor")) spec.sensor = vec3_from(j.at("sensor"));
    for (const auto& jp : j.at("primitives")) {
        Primitive prim;
        const std::string type = jp.at("type").get<std::string>();
        if (type == "cuboid")
            prim.kind = Primitive::Kind::Cuboid;
        else if (type == "cylinder")
            prim.kind = Primitive::Kind::Cylinder;
        else if (type == "sphere")
            prim.kind = Primitive::Kind::Sphere;
        else
            throw std::runtime_error("unknown primitive type '" + type + "'");
        const auto& dims = jp.at("dims");
        for (std::size_t i = 0; i < dims.size() && i < 3; ++i)
            prim.dims[static_cast<int>(i)] = dims.at(i).get<double>();
        prim.position = vec3_from(jp.at("position"));
        prim.yaw = jp.value("yaw", 0.0);
        prim.label = jp.value("label", "");
        spec.primitives.push_back(std::move(prim));
    }
    return spec;
}

SyntheticSceneSpec load_scene_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return scene_spec_from_json(ss.str());
}

std::string handles_to_json(const std::vector<GraspHandle>& handles,
                            const PipelineConfig& cfg,
                            const StageTimings& timings) {
    auto vec = [](const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); };
    json j;
    j["config"] = {
        {"gripper",
         {{"d", cfg.gripper.max_aperture},
          {"w", cfg.gripper.finger_width},
          {"e", cfg.gripper.finger_thickness},
          {"h", cfg.gripper.finger_length},
          {"l", cfg.gripper.min_grasp_depth},
          {"g", cfg.gripper.min_clearance}}},
        {"segmentation",
         {{"theta_low_rad", cfg.seg.theta_low},
          {"theta_high_rad", cfg.seg.theta_high},
          {"edge_ratio_k", cfg.seg.edge_ratio_k},
          {"radius_r", cfg.seg.radius_r},
          {"min_segment_size", cfg.seg.min_segment_size}}},
        {"filter",
         {{"voxel_leaf", cfg.filter.voxel_leaf},
          {"smoothing_radius", cfg.filter.smoothing_radius}}}};
    j["timings"] = {{"filter_s", timings.filter_s},
                    {"index_s", timings.index_s},
                    {"normals_s", timings.normals_s},
                    {"segmentation_s", timings.segmentation_s},
                    {"handle_search_s", timings.handles_s}};
    j["handles"] = json::array();
    for (const auto& h : handles) {
        j["handles"].push_back({{"segment_id", h.segment_label},
                                {"position", vec(h.position)},
                                {"center", vec(h.search_center)},
                                {"axes",
                                 {{"f", vec(h.frame.f)},
                                  {"a", vec(h.frame.a)},
                                  {"n", vec(h.frame.n)}}},
                                {"angles_xyz", vec(h.angles_xyz)},
                                {"patch_extent_f", h.patch_extent_f},
                                {"depth_l", h.depth},
                                {"n_points", h.patch.size()}});
    }
    return j.dump(2);
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace grasp
