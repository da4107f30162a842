#include "polyft/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace polyft {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Polytope load_polytope(const std::string& path) {
  ordered_json j = ordered_json::parse(read_text_file(path));
  if (!j.contains("dim") || !j.contains("vertices"))
    throw std::runtime_error("polytope file missing dim/vertices: " + path);
  const int dim = j["dim"].get<int>();
  std::vector<Vec> pts;
  for (const auto& row : j["vertices"]) {
    if (static_cast<int>(row.size()) != dim)
      throw std::runtime_error("vertex arity mismatch in " + path);
    Vec v(dim);
    for (int k = 0; k < dim; ++k) v[k] = row[static_cast<std::size_t>(k)];
    pts.push_back(std::move(v));
  }
  return convex_hull(pts);  // facet structure is never trusted from disk
}

void save_polytope(const Polytope& p, const std::string& path) {
  ordered_json j;
  j["dim"] = p.dim();
  ordered_json verts = ordered_json::array();
  for (const auto& v : p.vertices()) {
    ordered_json row = ordered_json::array();
    for (int k = 0; k < p.dim(); ++k) row.push_back(v[k]);
    verts.push_back(std::move(row));
  }
  j["vertices"] = std::move(verts);
  write_text_file(path, j.dump(2) + "\n");
}

void save_efunction(const EFunction& f, const std::string& path) {
  ordered_json j;
  j["dim"] = f.dim;
  j["degree"] = f.degree;
  ordered_json terms = ordered_json::array();
  for (const auto& t : f.terms) {
    ordered_json jt;
    ordered_json expo = ordered_json::array();
    for (int k = 0; k < f.dim; ++k) expo.push_back(t.exponent[k]);
    jt["exponent"] = std::move(expo);
    jt["phase"] = t.phase;
    jt["multiplicity"] = t.multiplicity;
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : t.coefficients) {
      ordered_json jc;
      jc["weight"] = c.weight;
      ordered_json edges = ordered_json::array();
      for (const auto& e : c.edges) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < f.dim; ++k) row.push_back(e[k]);
        edges.push_back(std::move(row));
      }
      jc["edges"] = std::move(edges);
      coeffs.push_back(std::move(jc));
    }
    jt["coefficients"] = std::move(coeffs);
    terms.push_back(std::move(jt));
  }
  j["terms"] = std::move(terms);
  write_text_file(path, j.dump(2) + "\n");
}

EFunction load_efunction(const std::string& path) {
  ordered_json j = ordered_json::parse(read_text_file(path));
  EFunction f;
  f.dim = j["dim"].get<int>();
  f.degree = j["degree"].get<int>();
  for (const auto& jt : j["terms"]) {
    EFunctionTerm t;
    t.exponent = Vec(f.dim);
    for (int k = 0; k < f.dim; ++k)
      t.exponent[k] = jt["exponent"][static_cast<std::size_t>(k)];
    t.phase = jt["phase"].get<int>();
    t.multiplicity = jt["multiplicity"].get<int>();
    for (const auto& jc : jt["coefficients"]) {
      ConeCoefficient c;
      c.weight = jc["weight"].get<double>();
      for (const auto& je : jc["edges"]) {
        Vec e(f.dim);
        for (int k = 0; k < f.dim; ++k) e[k] = je[static_cast<std::size_t>(k)];
        c.edges.push_back(std::move(e));
      }
      t.coefficients.push_back(std::move(c));
    }
    f.terms.push_back(std::move(t));
  }
  return f;
}

void save_field_csv(const CovariogramField& field, const std::string& path) {
  std::ostringstream out;
  for (int j = 0; j < field.dim; ++j) out << 'x' << (j + 1) << ',';
  out << "value\n";
  std::vector<int> k(field.dim);
  for (int j = 0; j < field.dim; ++j) k[j] = -field.counts[j];
  for (;;) {
    for (int j = 0; j < field.dim; ++j)
      out << format_double(field.step * k[j]) << ',';
    out << format_double(field.values[field.index(k)]) << '\n';
    int j = field.dim - 1;
    for (; j >= 0; --j) {
      if (++k[j] <= field.counts[j]) break;
      k[j] = -field.counts[j];
    }
    if (j < 0) break;
  }
  write_text_file(path, out.str());
}

CovariogramField load_field_csv(const std::string& path, int dim) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty covariogram CSV: " + path);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (static_cast<int>(vals.size()) != dim + 1)
      throw std::runtime_error("bad covariogram CSV row in " + path);
    rows.push_back(std::move(vals));
  }
  CovariogramField field;
  field.dim = dim;
  // Lattice geometry is recovered from the coordinate columns.
  double step = 0.0;
  std::vector<double> maxes(dim, 0.0);
  for (const auto& r : rows)
    for (int j = 0; j < dim; ++j)
      maxes[j] = std::max(maxes[j], std::abs(r[j]));
  for (const auto& r : rows)
    for (int j = 0; j < dim; ++j)
      if (r[j] > 0.0) step = step == 0.0 ? r[j] : std::min(step, r[j]);
  field.step = step;
  for (int j = 0; j < dim; ++j)
    field.counts.push_back(
        static_cast<int>(std::llround(maxes[j] / step)));
  std::size_t total = 1;
  for (int j = 0; j < dim; ++j)
    total *= static_cast<std::size_t>(2 * field.counts[j] + 1);
  if (total != rows.size())
    throw std::runtime_error("covariogram CSV row count mismatch in " + path);
  field.values.assign(total, 0.0);
  std::vector<int> k(dim);
  for (const auto& r : rows) {
    for (int j = 0; j < dim; ++j)
      k[j] = static_cast<int>(std::llround(r[j] / step));
    field.values[field.index(k)] = r[dim];
  }
  return field;
}

void save_field_text(const CovariogramField& field, const std::string& path) {
  std::ostringstream out;
  out << "covariogram-field\n";
  out << "dim " << field.dim << '\n';
  out << "step " << format_double(field.step) << '\n';
  out << "counts";
  for (int c : field.counts) out << ' ' << c;
  out << '\n';
  for (double v : field.values) out << format_double(v) << '\n';
  write_text_file(path, out.str());
}

CovariogramField load_field_text(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string tag;
  if (!(in >> tag) || tag != "covariogram-field")
    throw std::runtime_error("not a covariogram field file: " + path);
  CovariogramField field;
  std::string key;
  in >> key >> field.dim;
  if (key != "dim") throw std::runtime_error("bad field header in " + path);
  in >> key >> field.step;
  if (key != "step") throw std::runtime_error("bad field header in " + path);
  in >> key;
  if (key != "counts") throw std::runtime_error("bad field header in " + path);
  std::size_t total = 1;
  for (int j = 0; j < field.dim; ++j) {
    int c;
    in >> c;
    field.counts.push_back(c);
    total *= static_cast<std::size_t>(2 * c + 1);
  }
  field.values.resize(total);
  for (std::size_t i = 0; i < total; ++i)
    if (!(in >> field.values[i]))
      throw std::runtime_error("truncated field file: " + path);
  return field;
}

}  // namespace polyft
