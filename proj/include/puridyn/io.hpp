#pragma once

#include <string>
#include <vector>

#include "puridyn/field2.hpp"
#include "puridyn/field4.hpp"
#include "puridyn/scenario.hpp"

namespace puridyn {

/// CSV with a fixed header row; values printed with %.17g so a reload is
/// bit-exact. An empty row list writes the header only.
void write_timeseries(const std::vector<TimeSeriesRow>& rows, const std::string& path);

/// Binary field dump, little endian:
///   magic "PURF", u32 version = 1, u32 rank, u32 element count per axis
///   padding the preamble to 16 bytes, u32 dims[rank], then the values as
///   (real, imag) float64 pairs in row-major order.
/// For the square fields here every dims entry equals the grid n; the count
/// field repeats it so the preamble is self-contained.
void write_field_dump(const Field2C& f, const std::string& path);
void write_field_dump(const Field4C& f, const std::string& path);

struct FieldDump {
  std::uint32_t rank = 0;
  std::vector<std::uint32_t> dims;
  std::vector<cplx> values;  // row-major
};

FieldDump read_field_dump(const std::string& path);

/// JSON report with the purity summary and the two continuity reports.
void write_report(const ScenarioResult& result, const std::string& path);

}  // namespace puridyn
