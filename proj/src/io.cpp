#include "lcflow/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "lcflow/config.hpp"

namespace lcflow {

namespace {

const std::vector<std::string> kFieldOrder = {"q1", "q2", "u1", "u2"};

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int k = 0; k < 8; ++k) r |= ((v >> (8 * k)) & 0xffULL) << (8 * (7 - k));
    return r;
  }
}

void append_field(std::string& buf, const ScalarField& f) {
  for (double v : f.values()) {
    const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(v));
    char bytes[8];
    std::memcpy(bytes, &bits, 8);
    buf.append(bytes, 8);
  }
}

void read_field(const std::string& buf, std::size_t offset, ScalarField& f) {
  for (std::size_t k = 0; k < f.size(); ++k) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, buf.data() + offset + 8 * k, 8);
    f[k] = std::bit_cast<double>(to_little(bits));
  }
}

std::filesystem::path with_suffix(std::filesystem::path base, const char* ext) {
  base += ext;
  return base;
}

}  // namespace

std::string series_csv(const std::vector<SeriesRow>& rows) {
  std::ostringstream o;
  o << kSeriesHeader << "\n";
  for (const SeriesRow& r : rows) {
    const EnergyLedger& l = r.ledger;
    const double cols[] = {r.t, l.kinetic, l.bulk, l.elastic, l.total, l.viscous_diss, l.rotational_diss,
                           l.reg_diss, r.residual, r.q_linf, r.u_l2};
    bool first = true;
    for (double v : cols) {
      if (!first) o << ',';
      o << format_double(v);
      first = false;
    }
    o << "\n";
  }
  return o.str();
}

void write_series_csv(const std::filesystem::path& path, const std::vector<SeriesRow>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << series_csv(rows);
}

void write_snapshot(const std::filesystem::path& base, const SimulationState& s) {
  std::string buf;
  buf.reserve(4 * 8 * s.q.q1.size());
  append_field(buf, s.q.q1);
  append_field(buf, s.q.q2);
  append_field(buf, s.u.u1);
  append_field(buf, s.u.u2);
  {
    std::ofstream f(with_suffix(base, ".bin"), std::ios::binary);
    if (!f) throw std::runtime_error("cannot write snapshot " + base.string());
    f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
  nlohmann::json meta = {{"n", s.grid().n()}, {"t", s.t}, {"fields", kFieldOrder}, {"byte_order", "little"}};
  std::ofstream j(with_suffix(base, ".json"));
  if (!j) throw std::runtime_error("cannot write snapshot sidecar " + base.string());
  j << meta.dump(2) << "\n";
}

SimulationState read_snapshot(const std::filesystem::path& base) {
  std::ifstream j(with_suffix(base, ".json"));
  if (!j) throw std::runtime_error("cannot read snapshot sidecar " + base.string());
  const nlohmann::json meta = nlohmann::json::parse(j);
  if (meta.at("byte_order").get<std::string>() != "little") throw std::runtime_error("unsupported byte order");
  if (meta.at("fields").get<std::vector<std::string>>() != kFieldOrder) throw std::runtime_error("unexpected field list");
  const GridSpec g(meta.at("n").get<int>());
  const double t = meta.at("t").get<double>();

  std::ifstream f(with_suffix(base, ".bin"), std::ios::binary);
  if (!f) throw std::runtime_error("cannot read snapshot " + base.string());
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string buf = ss.str();
  const std::size_t bytes = 8 * g.size();
  if (buf.size() != 4 * bytes) throw std::runtime_error("snapshot size does not match its sidecar");

  QTensorField q(g);
  VelocityField u(g);
  read_field(buf, 0, q.q1);
  read_field(buf, bytes, q.q2);
  read_field(buf, 2 * bytes, u.u1);
  read_field(buf, 3 * bytes, u.u2);
  return SimulationState(t, std::move(u), std::move(q));
}

}  // namespace lcflow
