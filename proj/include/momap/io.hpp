#pragma once

// JSON and CSV I/O.
//
// State:   {"sector": {"kind": "distinguishable", "dims": [2, 2, 2]},
//           "amplitudes": [[re, im], ...]}
//          identical particles: {"kind": "bosonic"|"fermionic", "dims": [d], "particles": L}
// Density: {"dims": [2, 2], "matrix": [[[re, im], ...], ...]}
// Amplitudes and matrix entries may also be given as plain real numbers.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "momap/momentum_map.hpp"
#include "momap/tensor_state.hpp"

namespace momap::io {

using Json = nlohmann::json;

/// Malformed input; the message names the offending field or position.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path);
Json parse_json_text(const std::string& text, const std::string& origin = "<string>");

SectorSpec parse_sector(const Json& j);
PureState parse_state(const Json& j);
DensityMatrix parse_density(const Json& j);
PureState load_state(const std::string& path);
DensityMatrix load_density(const std::string& path);

Json sector_to_json(const SectorSpec& s);
Json state_to_json(const PureState& s);
Json density_to_json(const DensityMatrix& d);
Json complex_to_json(cplx z);
Json vector_to_json(const RVector& v);
Json cvector_to_json(const CVector& v);
Json matrix_to_json(const CMatrix& m);
Json spectra_to_json(const SpectraPoint& p);

/// Deterministic rendering: sorted keys, two-space indent, arrays of scalars on
/// one line, doubles with 17 significant digits, -0 printed as 0.
std::string dump(const Json& j);

/// %.17g with -0 mapped to 0 and non-finite values as "nan"/"inf".
std::string format_double(double x);

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace momap::io
