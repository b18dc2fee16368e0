#include "delaylab/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace delaylab {
namespace {

static_assert(std::endian::native == std::endian::little, "binary field format assumes a little-endian host");

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) throw Error("truncated binary field stream");
  return v;
}

}  // namespace

void write_field_binary(std::ostream& os, const Field& field) {
  const Grid& g = field.grid();
  put<std::int64_t>(os, g.dim);
  put<std::int64_t>(os, g.points_per_axis);
  put<double>(os, g.half_length);
  os.write(reinterpret_cast<const char*>(field.values().data()),
           static_cast<std::streamsize>(field.size() * sizeof(double)));
}

Field read_field_binary(std::istream& is) {
  const auto d = get<std::int64_t>(is);
  const auto n = get<std::int64_t>(is);
  const auto L = get<double>(is);
  Grid grid(static_cast<int>(d), L, n);
  Field out(grid);
  if (!is.read(reinterpret_cast<char*>(out.values().data()), static_cast<std::streamsize>(out.size() * sizeof(double))))
    throw Error("truncated binary field stream");
  return out;
}

void save_field(const std::filesystem::path& path, const Field& field) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  write_field_binary(os, field);
}

Field load_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path.string());
  return read_field_binary(is);
}

void write_segment_binary(std::ostream& os, const Segment& segment) {
  put<std::int64_t>(os, static_cast<std::int64_t>(segment.samples.size()));
  put<double>(os, segment.dt);
  for (const auto& f : segment.samples) write_field_binary(os, f);
}

Segment read_segment_binary(std::istream& is) {
  const auto count = get<std::int64_t>(is);
  const auto dt = get<double>(is);
  if (count < 2) throw Error("segment stream holds fewer than two samples");
  std::vector<Field> samples;
  samples.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) samples.push_back(read_field_binary(is));
  return {std::move(samples), dt};
}

void save_segment(const std::filesystem::path& path, const Segment& segment) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  write_segment_binary(os, segment);
}

Segment load_segment(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path.string());
  return read_segment_binary(is);
}

void write_field_csv(std::ostream& os, const Field& field) {
  const Grid& g = field.grid();
  const auto n = static_cast<Eigen::Index>(g.points_per_axis);
  os << std::setprecision(17);
  if (g.dim == 1) {
    os << "x,value\n";
    for (Eigen::Index i = 0; i < n; ++i) os << g.coordinate(i) << ',' << field.values()[i] << '\n';
    return;
  }
  os << "x,y,value\n";
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      os << g.coordinate(i) << ',' << g.coordinate(j) << ',' << field.values()[i * n + j] << '\n';
}

}  // namespace delaylab
