#pragma once

#include <filesystem>
#include <iosfwd>

#include "delaylab/field.hpp"
#include "delaylab/segment.hpp"

namespace delaylab {

// Flat binary field record, all little-endian:
//   int64 d, int64 n, float64 L, then n^d float64 values (row-major).
// A segment file is int64 count, float64 dt, then `count` field records.

void write_field_binary(std::ostream& os, const Field& field);
Field read_field_binary(std::istream& is);
void save_field(const std::filesystem::path& path, const Field& field);
Field load_field(const std::filesystem::path& path);

void write_segment_binary(std::ostream& os, const Segment& segment);
Segment read_segment_binary(std::istream& is);
void save_segment(const std::filesystem::path& path, const Segment& segment);
Segment load_segment(const std::filesystem::path& path);

/// Columns x,value (d = 1) or x,y,value (d = 2).
void write_field_csv(std::ostream& os, const Field& field);

}  // namespace delaylab
