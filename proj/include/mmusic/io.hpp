#pragma once

#include <string>
#include <vector>

#include "mmusic/types.hpp"

namespace mmusic {

/// Shortest round-trippable decimal representation (%.17g trimmed).
std::string format_double(double value);

/// Samples file: one pulse per line, two whitespace-separated columns
/// (real, imaginary). Lines starting with '#' are ignored.
std::vector<cplx> read_samples_file(const std::string& path);
void write_samples_file(const std::string& path, const std::vector<cplx>& samples);

/// Mask file: one 0/1 flag per line. Lines starting with '#' are ignored.
AvailabilityMask read_mask_file(const std::string& path);
void write_mask_file(const std::string& path, const AvailabilityMask& mask);

}  // namespace mmusic
