#include "momap/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace momap::io {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw InputError("field '" + field + "': " + what);
}

const Json& require(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

int as_int(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<int>();
}

double as_double(const Json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

cplx as_complex(const Json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) fail(field, "expected [re, im] or a real number");
  return {as_double(j[0], field + "[0]"), as_double(j[1], field + "[1]")};
}

std::vector<int> int_list(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a nonempty array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_int(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

bool scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void render(const Json& j, std::string& out, int indent) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map: sorted keys
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        render(it.value(), out, indent + 2);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j) flat = flat && (scalar(e) || (e.is_array() && e.size() == 2 &&
                                                             scalar(e[0]) && scalar(e[1])));
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          render(j[i], out, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        render(j[i], out, indent + 2);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0) x = 0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump(const Json& j) {
  std::string out;
  render(j, out, 0);
  out += "\n";
  return out;
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(origin + ": malformed JSON: " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

SectorSpec parse_sector(const Json& j) {
  std::string kind = "distinguishable";
  if (j.is_object() && j.contains("kind")) {
    if (!j["kind"].is_string()) fail("sector.kind", "expected a string");
    kind = j["kind"].get<std::string>();
  }
  const auto dims = int_list(require(j, "dims", "sector"), "sector.dims");
  try {
    const ParticleKind pk = particle_kind_from_string(kind);
    if (pk == ParticleKind::distinguishable) return SectorSpec::distinguishable(dims);
    const int particles = as_int(require(j, "particles", "sector"), "sector.particles");
    for (int d : dims)
      if (d != dims[0]) fail("sector.dims", "identical particles need one local dimension");
    return pk == ParticleKind::bosonic ? SectorSpec::bosonic(dims[0], particles)
                                       : SectorSpec::fermionic(dims[0], particles);
  } catch (const std::invalid_argument& e) {
    fail("sector", e.what());
  }
}

PureState parse_state(const Json& j) {
  const SectorSpec sec = parse_sector(require(j, "sector", ""));
  const Json& amps = require(j, "amplitudes", "");
  if (!amps.is_array()) fail("amplitudes", "expected an array");
  if (amps.size() != sec.tensor_dim())
    fail("amplitudes", "expected " + std::to_string(sec.tensor_dim()) + " entries, got " +
                           std::to_string(amps.size()));
  CVector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = as_complex(amps[i], "amplitudes[" + std::to_string(i) + "]");
  try {
    return make_state(sec, v);
  } catch (const std::invalid_argument& e) {
    fail("amplitudes", e.what());
  }
}

DensityMatrix parse_density(const Json& j) {
  const auto dims = int_list(require(j, "dims", ""), "dims");
  const Json& rows = require(j, "matrix", "");
  long n = 1;
  for (int d : dims) n *= d;
  if (!rows.is_array() || static_cast<long>(rows.size()) != n)
    fail("matrix", "expected " + std::to_string(n) + " rows");
  CMatrix m(n, n);
  for (long r = 0; r < n; ++r) {
    const std::string rf = "matrix[" + std::to_string(r) + "]";
    if (!rows[r].is_array() || static_cast<long>(rows[r].size()) != n)
      fail(rf, "expected " + std::to_string(n) + " entries");
    for (long c = 0; c < n; ++c) m(r, c) = as_complex(rows[r][c], rf + "[" + std::to_string(c) + "]");
  }
  try {
    return DensityMatrix::make(dims, m);
  } catch (const std::invalid_argument& e) {
    fail("matrix", e.what());
  }
}

PureState load_state(const std::string& path) {
  try {
    return parse_state(read_json_file(path));
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    throw InputError(path + ": " + msg);
  }
}

DensityMatrix load_density(const std::string& path) {
  try {
    return parse_density(read_json_file(path));
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    throw InputError(path + ": " + msg);
  }
}

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json vector_to_json(const RVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json cvector_to_json(const CVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v(i)));
  return a;
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Json sector_to_json(const SectorSpec& s) {
  Json j;
  j["kind"] = to_string(s.kind());
  if (s.is_distinguishable()) {
    j["dims"] = s.slot_dims();
  } else {
    j["dims"] = Json::array({s.slot_dims()[0]});
    j["particles"] = s.num_slots();
  }
  return j;
}

Json state_to_json(const PureState& s) {
  return Json{{"sector", sector_to_json(s.sector())}, {"amplitudes", cvector_to_json(s.amplitudes())}};
}

Json density_to_json(const DensityMatrix& d) {
  return Json{{"dims", d.dims()}, {"matrix", matrix_to_json(d.matrix())}};
}

Json spectra_to_json(const SpectraPoint& p) {
  Json a = Json::array();
  for (const auto& l : p.lambdas) a.push_back(vector_to_json(l));
  return a;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_double(r[i]);
    os << "\n";
  }
}

}  // namespace momap::io
