#include "puridyn/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include "json.hpp"
#include "puridyn/errors.hpp"

namespace puridyn {

namespace {

constexpr char kMagic[4] = {'P', 'U', 'R', 'F'};
constexpr std::uint32_t kVersion = 1;

std::ofstream open_out(const std::string& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  // Fields are little endian; this writer runs on little-endian hosts only.
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& in, const std::string& path) {
  std::uint32_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) {
    throw IoError("truncated dump header: " + path);
  }
  return v;
}

void write_dump(const std::string& path, std::uint32_t rank, std::uint32_t count,
                std::span<const cplx> values) {
  std::ofstream out = open_out(path, std::ios::binary);
  out.write(kMagic, sizeof kMagic);
  put_u32(out, kVersion);
  put_u32(out, rank);
  put_u32(out, count);
  for (std::uint32_t k = 0; k < rank; ++k) put_u32(out, count);
  static_assert(sizeof(cplx) == 16);
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(cplx)));
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

void write_timeseries(const std::vector<TimeSeriesRow>& rows, const std::string& path) {
  std::ofstream out = open_out(path, std::ios::out);
  out << "t,purity,schmidt_number,concurrence,imag_total,norm,"
         "purity_rate_lhs,purity_rate_rhs\n";
  char buf[256];
  for (const TimeSeriesRow& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.purity,
                  r.schmidt_number, r.concurrence, r.imag_total, r.norm,
                  r.purity_rate_lhs, r.purity_rate_rhs);
    out << buf;
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_field_dump(const Field2C& f, const std::string& path) {
  write_dump(path, 2, static_cast<std::uint32_t>(f.n()), f.values());
}

void write_field_dump(const Field4C& f, const std::string& path) {
  if (f.dense()) {
    write_dump(path, 4, static_cast<std::uint32_t>(f.n()), f.values());
  } else {
    const Field4C d = materialize(f);
    write_dump(path, 4, static_cast<std::uint32_t>(d.n()), d.values());
  }
}

FieldDump read_field_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);

  char magic[4];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, 4) != 0) {
    throw IoError("not a field dump (bad magic): " + path);
  }
  const std::uint32_t version = get_u32(in, path);
  if (version != kVersion) {
    throw IoError("unsupported dump version " + std::to_string(version) + ": " + path);
  }

  FieldDump dump;
  dump.rank = get_u32(in, path);
  const std::uint32_t count = get_u32(in, path);
  if (dump.rank == 0 || dump.rank > 8) {
    throw IoError("implausible dump rank " + std::to_string(dump.rank) + ": " + path);
  }
  std::size_t total = 1;
  for (std::uint32_t k = 0; k < dump.rank; ++k) {
    const std::uint32_t d = get_u32(in, path);
    if (d != count) throw IoError("inconsistent dump dims: " + path);
    dump.dims.push_back(d);
    total *= d;
  }
  dump.values.resize(total);
  if (!in.read(reinterpret_cast<char*>(dump.values.data()),
               static_cast<std::streamsize>(total * sizeof(cplx)))) {
    throw IoError("truncated dump payload: " + path);
  }
  return dump;
}

namespace {

nlohmann::json report_json(const ContinuityReport& r) {
  return {
      {"mode", r.mode == ContinuityMode::free_flow ? "free" : "interacting"},
      {"l2_residual_re", r.l2_residual_re},
      {"linf_residual_re", r.linf_residual_re},
      {"l2_residual_im", r.l2_residual_im},
      {"linf_residual_im", r.linf_residual_im},
      {"reference_scale", r.reference_scale},
      {"relative_mode", r.relative_mode},
      {"relative_linf_re", r.relative_linf_re()},
      {"relative_linf_im", r.relative_linf_im()},
  };
}

}  // namespace

void write_report(const ScenarioResult& result, const std::string& path) {
  nlohmann::json j;
  j["rows"] = result.rows.size();
  if (!result.rows.empty()) {
    const TimeSeriesRow& first = result.rows.front();
    const TimeSeriesRow& last = result.rows.back();
    j["initial"] = {{"t", first.t},
                    {"purity", first.purity},
                    {"schmidt_number", first.schmidt_number},
                    {"concurrence", first.concurrence}};
    j["final"] = {{"t", last.t},
                  {"purity", last.purity},
                  {"schmidt_number", last.schmidt_number},
                  {"concurrence", last.concurrence},
                  {"norm", last.norm},
                  {"imag_total", last.imag_total}};
  }
  j["initial_residual"] = report_json(result.initial_report);
  j["final_residual"] = report_json(result.final_report);
  j["warnings"] = result.warnings;

  std::ofstream out = open_out(path, std::ios::out);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace puridyn
