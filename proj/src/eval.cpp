#include <algorithm>
#include <memory>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "grasp/eval.hpp"

namespace grasp {

int credit_handle(const GraspHandle& handle,
                  const std::vector<std::uint32_t>& patch_in_annotated,
                  const SceneAnnotation& ann) {
    if (patch_in_annotated.empty()) return -1;
    // membership lookup per object
    std::unordered_map<std::uint32_t, std::uint32_t> owner;  // point -> object
    for (const auto& obj : ann.objects)
        for (std::uint32_t i : obj.members) owner.emplace(i, obj.object_id);
    std::unordered_map<std::uint32_t, std::size_t> hits;
    for (std::uint32_t i : patch_in_annotated) {
        auto it = owner.find(i);
        if (it != owner.end()) ++hits[it->second];
    }
    for (const auto& [obj, count] : hits) {
        if (static_cast<double>(count) >=
            kCreditThreshold * static_cast<double>(patch_in_annotated.size()))
            return static_cast<int>(obj);
    }
    (void)handle;
    return -1;
}

EvalReport evaluate(
    const std::vector<std::pair<PointCloud, SceneAnnotation>>& scenes,
    const PipelineConfig& cfg) {
    EvalReport report;
    for (const auto& [cloud, ann] : scenes) {
        SceneResult sr;
        sr.scene_id = ann.scene_id;
        sr.total_graspable = ann.total_graspable();
        // validate annotation indices
        bool bad = false;
        for (const auto& obj : ann.objects)
            for (std::uint32_t i : obj.members)
                if (i >= cloud.size()) bad = true;
        if (bad || cloud.empty()) {
            sr.error = "annotation does not match cloud";
            report.scenes.push_back(std::move(sr));
            continue;
        }

        const PipelineResult res = run_pipeline(cloud, cfg);
        sr.timings = res.timings;
        sr.handle_count = res.handles.size();

        // map patch indices back to the annotated cloud if filters changed it
        const bool same_cloud = res.cloud.size() == cloud.size();
        std::unique_ptr<NeighborIndex> orig_idx;
        if (!same_cloud) orig_idx = std::make_unique<NeighborIndex>(cloud);

        std::vector<char> detected(ann.objects.size(), 0);
        for (const auto& h : res.handles) {
            std::vector<std::uint32_t> patch;
            patch.reserve(h.patch.size());
            if (same_cloud) {
                patch = h.patch;
            } else {
                for (std::uint32_t i : h.patch)
                    patch.push_back(orig_idx->k_nearest(res.cloud.point(i), 1)[0]);
            }
            const int obj = credit_handle(h, patch, ann);
            if (obj >= 0 && static_cast<std::size_t>(obj) < detected.size())
                detected[obj] = 1;
        }
        sr.detected_objects = static_cast<std::size_t>(
            std::count(detected.begin(), detected.end(), 1));
        sr.recall_pct = sr.total_graspable == 0
                            ? 0
                            : 100.0 * static_cast<double>(sr.detected_objects) /
                                  static_cast<double>(sr.total_graspable);
        report.total_objects += sr.total_graspable;
        report.total_detected += sr.detected_objects;
        report.scenes.push_back(std::move(sr));
    }
    report.aggregate_recall_pct =
        report.total_objects == 0
            ? 0
            : 100.0 * static_cast<double>(report.total_detected) /
                  static_cast<double>(report.total_objects);
    return report;
}

BenchReport bench(const PointCloud& cloud, const PipelineConfig& cfg,
                  std::size_t repeats) {
    if (repeats < 3) throw std::invalid_argument("bench: repeats must be >= 3");
    BenchReport report;
    report.points = cloud.size();
    report.repeats = repeats;
    std::vector<StageTimings> runs;
    for (std::size_t r = 0; r < repeats; ++r) {
        PipelineResult res = run_pipeline(cloud, cfg);
        runs.push_back(res.timings);
        report.handle_count = res.handles.size();
        report.segment_count = res.segmentation.segments.size();
    }
    auto summarize = [&](auto member) {
        std::vector<double> v;
        for (const auto& t : runs) v.push_back(member(t));
        std::sort(v.begin(), v.end());
        TimingSummary s;
        s.median = v[v.size() / 2];
        s.p90 = v[std::min(v.size() - 1,
                           static_cast<std::size_t>(0.9 * double(v.size())))];
        return s;
    };
    report.filter = summarize([](const StageTimings& t) { return t.filter_s; });
    report.index = summarize([](const StageTimings& t) { return t.index_s; });
    report.normals = summarize([](const StageTimings& t) { return t.normals_s; });
    report.segmentation =
        summarize([](const StageTimings& t) { return t.segmentation_s; });
    report.handles = summarize([](const StageTimings& t) { return t.handles_s; });
    report.total = summarize([](const StageTimings& t) { return t.total(); });
    return report;
}

std::string bench_to_json(const BenchReport& r) {
    nlohmann::json j;
    j["points"] = r.points;
    j["repeats"] = r.repeats;
    j["segments"] = r.segment_count;
    j["handles"] = r.handle_count;
    auto stage = [](const TimingSummary& s) {
        return nlohmann::json{{"median_s", s.median}, {"p90_s", s.p90}};
    };
    j["stages"] = {{"filter", stage(r.filter)},
                   {"index", stage(r.index)},
                   {"normals", stage(r.normals)},
                   {"segmentation", stage(r.segmentation)},
                   {"handle_search", stage(r.handles)},
                   {"total", stage(r.total)}};
    return j.dump(2);
}

std::string report_to_json(const EvalReport& r) {
    nlohmann::json j;
    j["aggregate_recall_pct"] = r.aggregate_recall_pct;
    j["total_objects"] = r.total_objects;
    j["total_detected"] = r.total_detected;
    j["scenes"] = nlohmann::json::array();
    for (const auto& s : r.scenes) {
        nlohmann::json js{{"scene_id", s.scene_id},
                          {"n_objects", s.total_graspable},
                          {"n_detected", s.detected_objects},
                          {"n_handles", s.handle_count},
                          {"recall_pct", s.recall_pct},
                          {"timings",
                           {{"filter_s", s.timings.filter_s},
                            {"index_s", s.timings.index_s},
                            {"normals_s", s.timings.normals_s},
                            {"segmentation_s", s.timings.segmentation_s},
                            {"handle_search_s", s.timings.handles_s}}}};
        if (!s.error.empty()) js["error"] = s.error;
        j["scenes"].push_back(std::move(js));
    }
    return j.dump(2);
}

std::string report_to_csv(const EvalReport& r) {
    std::ostringstream out;
    out << "frame,n_objects,n_handles,recall\n";
    for (const auto& s : r.scenes)
        out << s.scene_id << ',' << s.total_graspable << ',' << s.handle_count
            << ',' << s.recall_pct << '\n';
    return out.str();
}

}  // namespace grasp
