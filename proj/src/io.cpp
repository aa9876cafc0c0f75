#include "mmusic/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mmusic/errors.hpp"

namespace mmusic {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  std::string best = buffer;
  // %.17g is exact; try shorter forms and keep the first that round-trips.
  for (int precision = 1; precision < 17; ++precision) {
    char shorter[64];
    std::snprintf(shorter, sizeof(shorter), "%.*g", precision, value);
    double parsed = 0.0;
    std::sscanf(shorter, "%lf", &parsed);
    if (parsed == value) {
      best = shorter;
      break;
    }
  }
  // Integral values print in plain decimal when that is no longer than the
  // %g form ("40" over "4e+01"); large magnitudes keep scientific notation.
  if (value == std::floor(value) && std::abs(value) <= 9007199254740992.0) {
    char plain[64];
    std::snprintf(plain, sizeof(plain), "%.0f", value);
    if (std::strlen(plain) <= best.size()) return plain;
  }
  return best;
}

std::vector<cplx> read_samples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open samples file: " + path);
  std::vector<cplx> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    double re = 0.0;
    double im = 0.0;
    if (!(fields >> re >> im)) {
      std::ostringstream msg;
      msg << path << ":" << line_no << ": expected two numeric columns";
      throw InvalidInputError(msg.str());
    }
    samples.emplace_back(re, im);
  }
  if (samples.empty()) throw InvalidInputError("samples file is empty: " + path);
  return samples;
}

void write_samples_file(const std::string& path, const std::vector<cplx>& samples) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write samples file: " + path);
  for (const cplx& s : samples)
    out << format_double(s.real()) << " " << format_double(s.imag()) << "\n";
}

AvailabilityMask read_mask_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open mask file: " + path);
  AvailabilityMask mask;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    int flag = -1;
    if (!(fields >> flag) || (flag != 0 && flag != 1)) {
      std::ostringstream msg;
      msg << path << ":" << line_no << ": expected a 0/1 flag";
      throw InvalidInputError(msg.str());
    }
    mask.flags.push_back(static_cast<uint8_t>(flag));
  }
  if (mask.flags.empty()) throw InvalidInputError("mask file is empty: " + path);
  return mask;
}

void write_mask_file(const std::string& path, const AvailabilityMask& mask) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write mask file: " + path);
  for (const uint8_t flag : mask.flags) out << static_cast<int>(flag) << "\n";
}

}  // namespace mmusic
