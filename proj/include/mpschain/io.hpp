#pragma once

#include "mpschain/ed.hpp"
#include "mpschain/mps.hpp"
#include "mpschain/parent.hpp"

#include <json.hpp>

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace mpschain::io {

using nlohmann::json;

/// Real entries are plain numbers, complex ones [re, im].
json to_json(const MatrixC& m);
MatrixC matrix_from_json(const json& j);

/// {"d", "D", "labels", "matrices": {label: rows}, "params"}
json to_json(const MpsFamily& mps);
MpsFamily family_from_json(const json& j);

/// {"k", "d", "couplings", "basis": [vectors], "matrix"}
json to_json(const LocalHamiltonian& h);
LocalHamiltonian hamiltonian_from_json(const json& j);

/// {"n_sites", "ground_energy", "kernel_dim", "kernel_dim_upper", "kernel_tol", "spectrum_head"}
json to_json(const ed::EdReport& r);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

/// %.17g
std::string format_double(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Plain comma separated cells, no quoting, '\n' line ends.
void write_csv(std::ostream& os, const CsvTable& t);
CsvTable parse_csv(std::istream& is);

}  // namespace mpschain::io
