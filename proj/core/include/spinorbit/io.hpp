// Deterministic file emission: 8-bit binary PGM (the golden-test format),
// a minimal stored-deflate PNG, CSV profiles and the JSON run report.
// Identical inputs produce bitwise-identical bytes.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinorbit/scenario.hpp"

namespace spinorbit {

// round(255 * p / p_max) per pixel, row-major; all zeros when p_max <= 0.
std::vector<std::uint8_t> quantize_power(const std::vector<double>& power, double p_max);

std::string encode_pgm(int width, int height, const std::vector<std::uint8_t>& pixels);
std::string encode_png_gray8(int width, int height, const std::vector<std::uint8_t>& pixels);

std::string encode_profile_csv(const Profile& profile);
std::string encode_ellipse_csv(const EllipseMap& map, int stride);
std::string encode_hom_csv(const std::vector<HomPoint>& points);
std::string encode_report_json(const RunReport& report);

// Creates parent directories as needed; throws std::runtime_error on failure.
void write_file(const std::string& path, const std::string& bytes);

} // namespace spinorbit
