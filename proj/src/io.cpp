#include "mpschain/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mpschain::io {

json to_json(const MatrixC& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const cplx z = m(i, j);
      if (z.imag() == 0.0) row.push_back(z.real());
      else row.push_back(json::array({z.real(), z.imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixC matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) throw std::invalid_argument("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  MatrixC m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != cols) throw std::invalid_argument("ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row.at(static_cast<std::size_t>(c));
      if (e.is_number()) m(i, c) = e.get<double>();
      else if (e.is_array() && e.size() == 2) m(i, c) = cplx(e[0].get<double>(), e[1].get<double>());
      else throw std::invalid_argument("matrix entry must be a number or [re, im]");
    }
  }
  return m;
}

json to_json(const MpsFamily& mps) {
  json mats = json::object();
  for (std::size_t i = 0; i < mps.labels().size(); ++i) mats[mps.labels()[i]] = to_json(mps[i]);
  json params = json::object();
  for (const auto& [k, v] : mps.params()) params[k] = v;
  return {{"d", mps.d()}, {"D", mps.bond_dim()}, {"labels", mps.labels()}, {"matrices", mats}, {"params", params}};
}

MpsFamily family_from_json(const json& j) {
  const auto labels = j.at("labels").get<std::vector<std::string>>();
  std::vector<MatrixC> mats;
  for (const auto& l : labels) mats.push_back(matrix_from_json(j.at("matrices").at(l)));
  std::map<std::string, double> params;
  if (j.contains("params"))
    for (const auto& [k, v] : j.at("params").items()) params[k] = v.get<double>();
  MpsFamily out(labels, mats, params);
  if (j.contains("d") && j.at("d").get<int>() != out.d()) throw std::invalid_argument("\"d\" disagrees with the labels");
  if (j.contains("D") && j.at("D").get<int>() != out.bond_dim()) throw std::invalid_argument("\"D\" disagrees with the matrices");
  return out;
}

json to_json(const LocalHamiltonian& h) {
  json basis = json::array();
  for (Eigen::Index a = 0; a < h.basis.cols(); ++a) {
    const MatrixC col = h.basis.col(a).transpose();
    basis.push_back(to_json(col).front());
  }
  return {{"k", h.k}, {"d", h.d}, {"couplings", h.couplings}, {"basis", basis}, {"matrix", to_json(h.matrix)}};
}

LocalHamiltonian hamiltonian_from_json(const json& j) {
  LocalHamiltonian h;
  h.k = j.at("k").get<int>();
  h.matrix = matrix_from_json(j.at("matrix"));
  h.d = j.contains("d") ? j.at("d").get<int>() : static_cast<int>(std::lround(std::pow(h.matrix.rows(), 1.0 / h.k)));
  h.couplings = j.at("couplings").get<std::vector<double>>();
  const json& basis = j.at("basis");
  h.basis = MatrixC(h.matrix.rows(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a)
    h.basis.col(static_cast<Eigen::Index>(a)) = matrix_from_json(json::array({basis[a]})).row(0).transpose();
  return h;
}

json to_json(const ed::EdReport& r) {
  return {{"n_sites", r.n_sites},
          {"ground_energy", r.ground_energy},
          {"kernel_dim", r.kernel.lower},
          {"kernel_dim_upper", r.kernel.upper},
          {"kernel_tol", r.kernel.tol},
          {"spectrum_head", r.spectrum_head}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& os, const CsvTable& t) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
}

CsvTable parse_csv(std::istream& is) {
  CsvTable t;
  std::string raw;
  bool first = true;
  while (std::getline(is, raw)) {
    std::vector<std::string> cells;
    std::stringstream ss(raw);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!raw.empty() && raw.back() == ',') cells.emplace_back();
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != t.header.size()) throw std::invalid_argument("csv row width differs from header");
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

}  // namespace mpschain::io
