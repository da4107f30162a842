#pragma once

#include <string>
#include <vector>

#include "polyft/covariogram.hpp"
#include "polyft/fourier.hpp"
#include "polyft/polytope.hpp"

namespace polyft {

// 17 significant digits, enough to round-trip the double exactly; used by
// every text writer so outputs are byte-stable.
std::string format_double(double x);

// Polytope JSON: {"dim": n, "vertices": [[...], ...]}.  Facet structure is
// recomputed from the vertices on load.
Polytope load_polytope(const std::string& path);
void save_polytope(const Polytope& p, const std::string& path);

// EFunction JSON: degree, phase, terms with exponents and weighted edge lists.
void save_efunction(const EFunction& f, const std::string& path);
EFunction load_efunction(const std::string& path);

// Covariogram field as CSV (x_1,...,x_n,value) and back.
void save_field_csv(const CovariogramField& field, const std::string& path);
CovariogramField load_field_csv(const std::string& path, int dim);

// Plain-text header (dim, step, counts) plus flat value list; the golden-file
// format.
void save_field_text(const CovariogramField& field, const std::string& path);
CovariogramField load_field_text(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace polyft
