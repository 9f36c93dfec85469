#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "grasp/cloud_io.hpp"
#include "grasp/handles.hpp"

namespace grasp {

namespace {

struct FieldDesc {
    std::string name;
    std::size_t size = 4;
    char type = 'F';
    std::size_t count = 1;
    std::size_t offset = 0;  // byte offset within a binary row
};

struct PcdHeader {
    std::vector<FieldDesc> fields;
    std::size_t width = 0, height = 1, points = 0;
    Vec3 viewpoint = Vec3::Zero();
    std::string data;  // ascii | binary | binary_compressed
    std::size_t header_end = 0;  // byte offset just past the DATA line
};

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw PcdParseError("PCD parse error at line " + std::to_string(line) +
                        ": " + msg);
}

PcdHeader parse_header(std::istream& in) {
    PcdHeader h;
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::size_t> sizes, counts;
    std::vector<char> types;
    bool have_fields = false, have_points = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "VERSION") {
            continue;
        } else if (key == "FIELDS" || key == "COLUMNS") {
            std::string f;
            while (ls >> f) h.fields.push_back({f});
            have_fields = true;
        } else if (key == "SIZE") {
            std::size_t s;
            while (ls >> s) sizes.push_back(s);
        } else if (key == "TYPE") {
            char t;
            while (ls >> t) types.push_back(t);
        } else if (key == "COUNT") {
            std::size_t c;
            while (ls >> c) counts.push_back(c);
        } else if (key == "WIDTH") {
            if (!(ls >> h.width)) fail(lineno, "bad WIDTH");
        } else if (key == "HEIGHT") {
            if (!(ls >> h.height)) fail(lineno, "bad HEIGHT");
        } else if (key == "VIEWPOINT") {
            double tx, ty, tz, qw, qx, qy, qz;
            if (!(ls >> tx >> ty >> tz >> qw >> qx >> qy >> qz))
                fail(lineno, "bad VIEWPOINT");
            h.viewpoint = {tx, ty, tz};
        } else if (key == "POINTS") {
            if (!(ls >> h.points)) fail(lineno, "bad POINTS");
            have_points = true;
        } else if (key == "DATA") {
            if (!(ls >> h.data)) fail(lineno, "bad DATA");
            h.header_end = static_cast<std::size_t>(in.tellg());
            break;
        } else {
            fail(lineno, "unknown header key '" + key + "'");
        }
    }
    if (!have_fields || h.fields.empty()) fail(lineno, "missing FIELDS");
    if (h.data.empty()) fail(lineno, "missing DATA line");
    if (!have_points) h.points = h.width * h.height;
    if (sizes.size() != h.fields.size() || types.size() != h.fields.size())
        fail(lineno, "SIZE/TYPE arity does not match FIELDS");
    if (counts.empty()) counts.assign(h.fields.size(), 1);
    if (counts.size() != h.fields.size())
        fail(lineno, "COUNT arity does not match FIELDS");
    std::size_t off = 0;
    for (std::size_t i = 0; i < h.fields.size(); ++i) {
        h.fields[i].size = sizes[i];
        h.fields[i].type = types[i];
        h.fields[i].count = counts[i];
        h.fields[i].offset = off;
        off += sizes[i] * counts[i];
    }
    return h;
}

int field_index(const PcdHeader& h, const std::string& name) {
    for (std::size_t i = 0; i < h.fields.size(); ++i)
        if (h.fields[i].name == name) return static_cast<int>(i);
    return -1;
}

double read_binary_scalar(const char* p, const FieldDesc& f) {
    switch (f.type) {
        case 'F':
            if (f.size == 4) {
                float v;
                std::memcpy(&v, p, 4);
                return v;
            } else {
                double v;
                std::memcpy(&v, p, 8);
                return v;
            }
        case 'U': {
            std::uint64_t v = 0;
            std::memcpy(&v, p, f.size);
            return static_cast<double>(v);
        }
        case 'I': {
            std::int64_t v = 0;
            if (f.size == 1) { std::int8_t t; std::memcpy(&t, p, 1); v = t; }
            else if (f.size == 2) { std::int16_t t; std::memcpy(&t, p, 2); v = t; }
            else if (f.size == 4) { std::int32_t t; std::memcpy(&t, p, 4); v = t; }
            else { std::memcpy(&v, p, 8); }
            return static_cast<double>(v);
        }
        default:
            throw PcdParseError("unsupported field type");
    }
}

std::array<std::uint8_t, 3> unpack_rgb(double raw, char type) {
    std::uint32_t packed;
    if (type == 'F') {
        const float f = static_cast<float>(raw);
        std::memcpy(&packed, &f, 4);
    } else {
        packed = static_cast<std::uint32_t>(raw);
    }
    return {static_cast<std::uint8_t>((packed >> 16) & 0xff),
            static_cast<std::uint8_t>((packed >> 8) & 0xff),
            static_cast<std::uint8_t>(packed & 0xff)};
}

}  // namespace

PointCloud load_pcd(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    PcdHeader h = parse_header(in);

    const int ix = field_index(h, "x"), iy = field_index(h, "y"),
              iz = field_index(h, "z");
    if (ix < 0 || iy < 0 || iz < 0)
        throw PcdParseError("PCD FIELDS must contain x, y and z");
    int irgb = field_index(h, "rgb");
    if (irgb < 0) irgb = field_index(h, "rgba");

    PointCloud cloud;
    cloud.viewpoint = h.viewpoint;
    cloud.reserve(h.points);
    if (irgb >= 0) cloud.colors.reserve(h.points);

    auto push_row = [&](double x, double y, double z, double rgb_raw) {
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
            ++cloud.dropped_non_finite;
            return;
        }
        cloud.push_back({x, y, z});
        if (irgb >= 0)
            cloud.colors.push_back(unpack_rgb(rgb_raw, h.fields[irgb].type));
    };

    if (h.data == "ascii") {
        std::size_t tokens_per_row = 0;
        for (const auto& f : h.fields) tokens_per_row += f.count;
        std::string line;
        std::size_t rows = 0, lineno = 0;
        // token position of each wanted field (count>1 fields occupy a block)
        std::vector<std::size_t> tokpos(h.fields.size());
        {
            std::size_t t = 0;
            for (std::size_t i = 0; i < h.fields.size(); ++i) {
                tokpos[i] = t;
                t += h.fields[i].count;
            }
        }
        std::vector<std::string> toks;
        while (rows < h.points && std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            toks.clear();
            std::istringstream ls(line);
            std::string t;
            while (ls >> t) toks.push_back(t);
            if (toks.empty()) continue;
            if (toks.size() != tokens_per_row)
                throw PcdParseError("PCD parse error: data row " +
                                    std::to_string(rows + 1) + " has " +
                                    std::to_string(toks.size()) +
                                    " tokens, expected " +
                                    std::to_string(tokens_per_row));
            const double x = std::stod(toks[tokpos[ix]]);
            const double y = std::stod(toks[tokpos[iy]]);
            const double z = std::stod(toks[tokpos[iz]]);
            double rgb = 0;
            if (irgb >= 0) rgb = std::stod(toks[tokpos[irgb]]);
            push_row(x, y, z, rgb);
            ++rows;
        }
        if (rows != h.points)
            throw PcdParseError("PCD parse error: POINTS declares " +
                                std::to_string(h.points) + " but only " +
                                std::to_string(rows) + " data rows present");
    } else if (h.data == "binary") {
        std::size_t stride = 0;
        for (const auto& f : h.fields) stride += f.size * f.count;
        std::vector<char> buf(stride * h.points);
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (static_cast<std::size_t>(in.gcount()) != buf.size())
            throw PcdParseError("PCD parse error: binary payload truncated");
        for (std::size_t r = 0; r < h.points; ++r) {
            const char* row = buf.data() + r * stride;
            const double x = read_binary_scalar(row + h.fields[ix].offset, h.fields[ix]);
            const double y = read_binary_scalar(row + h.fields[iy].offset, h.fields[iy]);
            const double z = read_binary_scalar(row + h.fields[iz].offset, h.fields[iz]);
            double rgb = 0;
            if (irgb >= 0)
                rgb = read_binary_scalar(row + h.fields[irgb].offset, h.fields[irgb]);
            push_row(x, y, z, rgb);
        }
    } else if (h.data == "binary_compressed") {
        throw PcdParseError("compressed binary PCD is not supported");
    } else {
        throw PcdParseError("unknown DATA encoding '" + h.data + "'");
    }

    if (cloud.dropped_non_finite == 0 && h.width * h.height == cloud.size()) {
        cloud.width = static_cast<std::uint32_t>(h.width);
        cloud.height = static_cast<std::uint32_t>(h.height);
    } else {
        cloud.width = static_cast<std::uint32_t>(cloud.size());
        cloud.height = cloud.empty() ? 0 : 1;
    }
    return cloud;
}

void save_pcd(const PointCloud& cloud, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    const bool rgb = cloud.has_colors();
    out << "# .PCD v0.7 - Point Cloud Data file format\n";
    out << "VERSION 0.7\n";
    out << (rgb ? "FIELDS x y z rgb\n" : "FIELDS x y z\n");
    out << (rgb ? "SIZE 4 4 4 4\n" : "SIZE 4 4 4\n");
    out << (rgb ? "TYPE F F F U\n" : "TYPE F F F\n");
    out << (rgb ? "COUNT 1 1 1 1\n" : "COUNT 1 1 1\n");
    const std::uint32_t w = cloud.width && cloud.height &&
                                    std::size_t(cloud.width) * cloud.height ==
                                        cloud.size()
                                ? cloud.width
                                : static_cast<std::uint32_t>(cloud.size());
    const std::uint32_t ht = w == cloud.width ? cloud.height : 1;
    out << "WIDTH " << w << "\nHEIGHT " << ht << "\n";
    out << "VIEWPOINT " << cloud.viewpoint.x() << ' ' << cloud.viewpoint.y()
        << ' ' << cloud.viewpoint.z() << " 1 0 0 0\n";
    out << "POINTS " << cloud.size() << "\nDATA ascii\n";
    out.precision(9);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        out << cloud.xs[i] << ' ' << cloud.ys[i] << ' ' << cloud.zs[i];
        if (rgb) {
            const auto& c = cloud.colors[i];
            const std::uint32_t packed = (std::uint32_t(c[0]) << 16) |
                                         (std::uint32_t(c[1]) << 8) |
                                         std::uint32_t(c[2]);
            out << ' ' << packed;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace grasp
