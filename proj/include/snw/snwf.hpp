#pragma once

#include <string>

#include "snw/field.hpp"

namespace snw {

// "SNWF1" field file: one line of JSON header prefixed by the magic word,
//   SNWF1 {"h":...,"n":...,"norm_target":...,"time":...,"units":"..."}
// followed by n^3 little-endian (re,im) double pairs, row-major over (x,y,z).
// Round-trips bit-exactly.
struct SnwfRecord {
    ComplexField field;
    double time = 0.0;
    std::string units = "dimensionless";
    double norm_target = 1.0;
};

void write_snwf(const std::string& path, const SnwfRecord& rec);
SnwfRecord read_snwf(const std::string& path);

}  // namespace snw
