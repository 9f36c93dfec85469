#include <fstream>
#include <sstream>

#include "grasp/cloud_io.hpp"
#include "grasp/handles.hpp"

namespace grasp {

namespace {

struct Rgb {
    std::uint8_t r, g, b;
};

// reserved colors
constexpr Rgb kUnlabeledColor{90, 90, 90};
constexpr Rgb kEdgeColor{255, 255, 255};
constexpr Rgb kPatchColor{255, 215, 0};

// distinct-ish palette cycled per segment label
Rgb label_color(std::uint32_t label) {
    static constexpr Rgb palette[] = {
        {230, 25, 75},  {60, 180, 75},   {0, 130, 200},  {245, 130, 48},
        {145, 30, 180}, {70, 240, 240},  {240, 50, 230}, {210, 245, 60},
        {0, 128, 128},  {170, 110, 40},  {128, 0, 0},    {0, 0, 128},
        {128, 128, 0},  {250, 190, 190}, {0, 255, 127},  {255, 105, 180},
    };
    return palette[label % (sizeof(palette) / sizeof(palette[0]))];
}

}  // namespace

void export_ply(const PointCloud& cloud, const Segmentation* labels,
                const std::vector<GraspHandle>* handles,
                const std::filesystem::path& path) {
    const std::size_t n_handles = handles ? handles->size() : 0;
    const std::size_t n_vertices = cloud.size() + 6 * n_handles;
    const std::size_t n_edges = 3 * n_handles;

    std::vector<Rgb> colors(cloud.size(), Rgb{200, 200, 200});
    if (labels) {
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            const std::uint32_t l = labels->labels[i];
            colors[i] = l == kUnlabeled ? kUnlabeledColor : label_color(l);
        }
        for (std::uint32_t e : labels->edge_points) colors[e] = kEdgeColor;
    }
    if (handles) {
        for (const auto& h : *handles)
            for (std::uint32_t i : h.patch) colors[i] = kPatchColor;
    }

    std::ostringstream body;
    body.precision(9);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        body << cloud.xs[i] << ' ' << cloud.ys[i] << ' ' << cloud.zs[i] << ' '
             << int(colors[i].r) << ' ' << int(colors[i].g) << ' '
             << int(colors[i].b) << '\n';
    }
    // frame glyphs: short segments along f (red), a (green), n (blue)
    const double glyph = 0.02;
    std::ostringstream edges;
    std::size_t v = cloud.size();
    if (handles) {
        for (const auto& h : *handles) {
            const Vec3 axes[3] = {h.frame.f, h.frame.a, h.frame.n};
            const Rgb axis_colors[3] = {{255, 0, 0}, {0, 255, 0}, {0, 0, 255}};
            for (int k = 0; k < 3; ++k) {
                const Vec3 p0 = h.position;
                const Vec3 p1 = h.position + glyph * axes[k];
                for (const Vec3& p : {p0, p1})
                    body << p.x() << ' ' << p.y() << ' ' << p.z() << ' '
                         << int(axis_colors[k].r) << ' ' << int(axis_colors[k].g)
                         << ' ' << int(axis_colors[k].b) << '\n';
                edges << v << ' ' << v + 1 << '\n';
                v += 2;
            }
        }
    }

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << n_vertices << '\n';
    out << "property float x\nproperty float y\nproperty float z\n";
    out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    out << "element edge " << n_edges << '\n';
    out << "property int vertex1\nproperty int vertex2\n";
    out << "end_header\n";
    out << body.str() << edges.str();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

PointCloud load_ply_vertices(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    std::size_t n_vertices = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string k;
        ls >> k;
        if (k == "element") {
            std::string what;
            ls >> what;
            if (what == "vertex") ls >> n_vertices;
        } else if (k == "end_header") {
            break;
        }
    }
    PointCloud cloud;
    cloud.reserve(n_vertices);
    for (std::size_t i = 0; i < n_vertices; ++i) {
        if (!std::getline(in, line))
            throw std::runtime_error("PLY truncated: " + path.string());
        std::istringstream ls(line);
        double x, y, z;
        ls >> x >> y >> z;
        cloud.push_back({x, y, z});
    }
    cloud.width = static_cast<std::uint32_t>(cloud.size());
    cloud.height = 1;
    return cloud;
}

}  // namespace grasp
