#include "spinorbit/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace spinorbit {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_u32_be(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>((v >> 24) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>(v & 0xff));
}

std::uint32_t crc32(const std::string& data) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t n = 0; n < 256; ++n) {
            std::uint32_t c = n;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
            t[n] = c;
        }
        return t;
    }();
    std::uint32_t c = 0xffffffffu;
    for (unsigned char ch : data) c = table[(c ^ ch) & 0xff] ^ (c >> 8);
    return c ^ 0xffffffffu;
}

std::uint32_t adler32(const std::string& data) {
    std::uint32_t a = 1, b = 0;
    for (unsigned char ch : data) {
        a = (a + ch) % 65521u;
        b = (b + a) % 65521u;
    }
    return (b << 16) | a;
}

void append_chunk(std::string& out, const char type[4], const std::string& payload) {
    append_u32_be(out, static_cast<std::uint32_t>(payload.size()));
    std::string body(type, 4);
    body += payload;
    out += body;
    append_u32_be(out, crc32(body));
}

// Deflate stream made of stored (uncompressed) blocks; valid zlib, no
// external dependency, bitwise deterministic.
std::string zlib_stored(const std::string& raw) {
    std::string out;
    out.push_back(0x78);
    out.push_back(0x01);
    std::size_t pos = 0;
    do {
        const std::size_t block = std::min<std::size_t>(raw.size() - pos, 65535);
        const bool last = pos + block == raw.size();
        out.push_back(last ? 1 : 0);
        out.push_back(static_cast<char>(block & 0xff));
        out.push_back(static_cast<char>((block >> 8) & 0xff));
        out.push_back(static_cast<char>(~block & 0xff));
        out.push_back(static_cast<char>((~block >> 8) & 0xff));
        out.append(raw, pos, block);
        pos += block;
    } while (pos < raw.size());
    append_u32_be(out, adler32(raw));
    return out;
}

json angles_json(const PoincareAngles& a) {
    return json{{"theta", a.theta}, {"phi", a.phi}, {"alpha", a.alpha}, {"beta", a.beta}};
}

} // namespace

std::vector<std::uint8_t> quantize_power(const std::vector<double>& power, double p_max) {
    std::vector<std::uint8_t> out(power.size(), 0);
    if (p_max > 0.0) {
        for (std::size_t i = 0; i < power.size(); ++i) {
            const double v = std::lround(255.0 * power[i] / p_max);
            out[i] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
        }
    }
    return out;
}

std::string encode_pgm(int width, int height, const std::vector<std::uint8_t>& pixels) {
    std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(pixels.data()), pixels.size());
    return out;
}

std::string encode_png_gray8(int width, int height, const std::vector<std::uint8_t>& pixels) {
    std::string out("\x89PNG\r\n\x1a\n", 8);

    std::string ihdr;
    append_u32_be(ihdr, static_cast<std::uint32_t>(width));
    append_u32_be(ihdr, static_cast<std::uint32_t>(height));
    ihdr.push_back(8); // bit depth
    ihdr.push_back(0); // grayscale
    ihdr.push_back(0); // deflate
    ihdr.push_back(0); // filter method
    ihdr.push_back(0); // no interlace
    append_chunk(out, "IHDR", ihdr);

    std::string raw;
    raw.reserve(static_cast<std::size_t>(height) * (width + 1));
    for (int row = 0; row < height; ++row) {
        raw.push_back(0); // filter type none
        raw.append(reinterpret_cast<const char*>(pixels.data()) +
                       static_cast<std::size_t>(row) * width,
                   width);
    }
    append_chunk(out, "IDAT", zlib_stored(raw));
    append_chunk(out, "IEND", "");
    return out;
}

std::string encode_profile_csv(const Profile& profile) {
    std::string out = "phi_rad,r_over_w0,power\n";
    for (std::size_t i = 0; i < profile.phi_report.size(); ++i) {
        out += fmt_double(profile.phi_report[i]);
        out += ",1,";
        out += fmt_double(profile.azimuthal_power[i]);
        out += "\n";
    }
    for (std::size_t i = 0; i < profile.r_over_w0.size(); ++i) {
        out += "0,";
        out += fmt_double(profile.r_over_w0[i]);
        out += ",";
        out += fmt_double(profile.radial_power[i]);
        out += "\n";
    }
    return out;
}

std::string encode_ellipse_csv(const EllipseMap& map, int stride) {
    if (stride < 1) stride = 1;
    std::string out = "x,y,orientation_rad,ellipticity,intensity\n";
    const int n = map.spec.samples_per_axis;
    for (int row = 0; row < n; row += stride) {
        for (int col = 0; col < n; col += stride) {
            const PixelCoords p = pixel_coords(map.spec, row, col);
            const PolarizationEllipse& e =
                map.values[static_cast<std::size_t>(row) * n + col];
            out += fmt_double(p.x_image);
            out += ",";
            out += fmt_double(p.y_image);
            out += ",";
            out += fmt_double(e.orientation);
            out += ",";
            out += fmt_double(e.ellipticity);
            out += ",";
            out += fmt_double(e.intensity);
            out += "\n";
        }
    }
    return out;
}

std::string encode_hom_csv(const std::vector<HomPoint>& points) {
    std::string out = "delta_rad,coincidence,bunching\n";
    for (const HomPoint& p : points) {
        out += fmt_double(p.delta);
        out += ",";
        out += fmt_double(p.coincidence);
        out += ",";
        out += fmt_double(p.bunching);
        out += "\n";
    }
    return out;
}

std::string encode_report_json(const RunReport& report) {
    const ScenarioConfig& cfg = report.config;

    json j;
    j["schema_version"] = 1;
    j["scenario"] = scenario_name(cfg.scenario);
    j["angles"] = angles_json(cfg.angles);
    j["delta"] = cfg.delta;
    if (cfg.gamma) j["gamma"] = *cfg.gamma;
    j["amplitude"] = cfg.amplitude;
    j["grid"] = json{{"half_extent", cfg.grid.half_extent},
                     {"samples_per_axis", cfg.grid.samples_per_axis},
                     {"waist_w0", cfg.grid.waist_w0}};
    j["image_port"] = cfg.image_port == Port::c ? "c" : "d";

    json frames = json::array();
    for (const FrameMetrics& f : report.frames) {
        json jf;
        jf["index"] = f.index;
        jf["parameter"] = f.parameter;
        jf["value"] = f.value;
        jf["p_max"] = f.p_max;
        jf["power_port_c"] = f.power_port_c;
        jf["power_port_d"] = f.power_port_d;
        jf["modulation_depth"] = f.modulation;
        jf["fit_amplitude"] = f.fit_amplitude;
        jf["fit_phase_rad"] = f.fit_phase;
        jf["rotation_from_first_rad"] = f.rotation_from_first;
        if (!f.image_file.empty()) jf["image"] = f.image_file;
        if (!f.profile_file.empty()) jf["profile"] = f.profile_file;
        if (!f.ellipse_file.empty()) jf["ellipses"] = f.ellipse_file;
        frames.push_back(jf);
    }
    j["frames"] = frames;

    if (!report.hom.empty()) {
        json points = json::array();
        double min_c = report.hom.front().coincidence;
        double min_d = report.hom.front().delta;
        for (const HomPoint& p : report.hom) {
            points.push_back(json{{"delta", p.delta},
                                  {"coincidence", p.coincidence},
                                  {"bunching", p.bunching}});
            if (p.coincidence < min_c) {
                min_c = p.coincidence;
                min_d = p.delta;
            }
        }
        j["hom"] = json{{"points", points},
                        {"min_coincidence", min_c},
                        {"min_coincidence_delta", min_d}};
    }

    j["files"] = report.files;
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& bytes) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace spinorbit
