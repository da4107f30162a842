#include "polyft/diffraction.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "polyft/fourier.hpp"
#include "polyft/io.hpp"
#include "parallel.hpp"

namespace polyft {

namespace {

constexpr double pi = std::numbers::pi;

void check_not_excluded(double value, const std::vector<double>& excluded,
                        double guard, const char* what) {
  for (double e : excluded)
    if (std::abs(value - e) <= guard)
      throw ExcludedAngle(std::string(what) + " lies in an excluded band");
}

}  // namespace

Eigen::Vector2d scattering_vector_2d(double phi, const ScatterConfig& config) {
  const double g = config.guard;
  if (phi <= g || phi >= pi - g)
    throw ExcludedAngle("phi outside (0, pi)");
  if (std::abs(phi - pi / 2.0) <= g)
    throw ExcludedAngle("phi in the excluded band around pi/2");
  check_not_excluded(phi, config.extra_excluded_phi, g, "phi");
  return config.wavelength_scale *
         Eigen::Vector2d(std::cos(phi), std::sin(phi) - 1.0);
}

Eigen::Vector3d scattering_vector_3d(double phi, double theta,
                                     const ScatterConfig& config) {
  const double g = config.guard;
  if (theta <= g || theta > pi / 2.0)
    throw ExcludedAngle("theta outside (0, pi/2]");
  if (phi < 0.0 || phi >= 2.0 * pi)
    throw ExcludedAngle("phi outside [0, 2 pi)");
  check_not_excluded(theta, config.extra_excluded_theta, g, "theta");
  check_not_excluded(phi, config.extra_excluded_phi, g, "phi");
  double st = std::sin(theta);
  return config.wavelength_scale *
         Eigen::Vector3d(st * std::cos(phi), st * std::sin(phi),
                         std::cos(theta) - 1.0);
}

double intensity(const Polytope& p, const Vec& q) {
  return std::abs(polytope_ft(p, q));
}

DiffractionPattern render_pattern(const Polytope& p, int mode,
                                  const GridSpec& grid,
                                  const ScatterConfig& config, int jobs) {
  if (mode != 2 && mode != 3)
    throw std::invalid_argument("render_pattern: mode must be 2 or 3");
  if (p.dim() != mode)
    throw std::invalid_argument("render_pattern: polytope dimension mismatch");
  if (grid.n_phi < 1 || (mode == 3 && grid.n_theta < 1))
    throw std::invalid_argument("render_pattern: empty grid");

  DiffractionPattern pat;
  pat.mode = mode;
  pat.grid = grid;
  pat.wavelength_scale = config.wavelength_scale;

  const int n_theta = mode == 3 ? grid.n_theta : 1;
  for (int i = 0; i < grid.n_phi; ++i)
    pat.phi.push_back(grid.phi_lo +
                      (i + 0.5) * (grid.phi_hi - grid.phi_lo) / grid.n_phi);
  if (mode == 3)
    for (int j = 0; j < n_theta; ++j)
      pat.theta.push_back(grid.theta_lo + (j + 0.5) *
                          (grid.theta_hi - grid.theta_lo) / grid.n_theta);

  // Validate the whole grid before any work: excluded angles are a usage
  // error here, not a per-cell condition.
  std::vector<Vec> qs(static_cast<std::size_t>(grid.n_phi) * n_theta);
  try {
    for (int j = 0; j < n_theta; ++j)
      for (int i = 0; i < grid.n_phi; ++i) {
        if (mode == 2) {
          Eigen::Vector2d q = scattering_vector_2d(pat.phi[i], config);
          qs[static_cast<std::size_t>(i)] = make_vec({q[0], q[1]});
        } else {
          Eigen::Vector3d q =
              scattering_vector_3d(pat.phi[i], pat.theta[j], config);
          qs[static_cast<std::size_t>(j) * grid.n_phi + i] =
              make_vec({q[0], q[1], q[2]});
        }
      }
  } catch (const ExcludedAngle& e) {
    throw std::invalid_argument(std::string("render_pattern: grid hits an "
                                            "excluded angle: ") +
                                e.what());
  }

  pat.intensities.assign(qs.size(), 0.0);
  FourierEvaluator ft(p);
  detail::parallel_for(0, n_theta, jobs, [&](int j) {
    for (int i = 0; i < grid.n_phi; ++i) {
      std::size_t idx = static_cast<std::size_t>(j) * grid.n_phi + i;
      pat.intensities[idx] = std::abs(ft(qs[idx]));
    }
  });
  return pat;
}

void export_pattern_csv(const DiffractionPattern& pat,
                        const std::string& path) {
  std::ostringstream out;
  ScatterConfig config;
  config.wavelength_scale = pat.wavelength_scale;
  if (pat.mode == 2) {
    out << "phi,q1,q2,intensity\n";
    for (std::size_t i = 0; i < pat.phi.size(); ++i) {
      Eigen::Vector2d q = scattering_vector_2d(pat.phi[i], config);
      out << format_double(pat.phi[i]) << ',' << format_double(q[0]) << ','
          << format_double(q[1]) << ',' << format_double(pat.intensities[i])
          << '\n';
    }
  } else {
    out << "phi,theta,q1,q2,q3,intensity\n";
    for (std::size_t j = 0; j < pat.theta.size(); ++j)
      for (std::size_t i = 0; i < pat.phi.size(); ++i) {
        Eigen::Vector3d q =
            scattering_vector_3d(pat.phi[i], pat.theta[j], config);
        out << format_double(pat.phi[i]) << ',' << format_double(pat.theta[j])
            << ',' << format_double(q[0]) << ',' << format_double(q[1]) << ','
            << format_double(q[2]) << ','
            << format_double(pat.intensities[j * pat.phi.size() + i]) << '\n';
      }
  }
  write_text_file(path, out.str());
}

DiffractionPattern import_pattern_csv(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("import_pattern_csv: empty file: " + path);
  const bool is3d = line.rfind("phi,theta", 0) == 0;

  DiffractionPattern pat;
  pat.mode = is3d ? 3 : 2;
  std::vector<double> phis, thetas;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> cells;
    while (std::getline(row, cell, ',')) cells.push_back(std::stod(cell));
    phis.push_back(cells[0]);
    if (is3d) thetas.push_back(cells[1]);
    pat.intensities.push_back(cells.back());
  }
  // Distinct angles in file order give the grid axes back.
  for (double v : phis)
    if (std::find(pat.phi.begin(), pat.phi.end(), v) == pat.phi.end())
      pat.phi.push_back(v);
  for (double v : thetas)
    if (std::find(pat.theta.begin(), pat.theta.end(), v) == pat.theta.end())
      pat.theta.push_back(v);
  pat.grid.n_phi = static_cast<int>(pat.phi.size());
  pat.grid.n_theta = is3d ? static_cast<int>(pat.theta.size()) : 1;
  return pat;
}

void export_pattern_pgm(const DiffractionPattern& pat,
                        const std::string& path) {
  const int width = static_cast<int>(pat.phi.size());
  const int height = pat.mode == 3 ? static_cast<int>(pat.theta.size()) : 1;
  double max_i = 0.0;
  for (double v : pat.intensities) max_i = std::max(max_i, v);
  const double scale = max_i > 0.0 ? 65535.0 / max_i : 0.0;

  std::string bytes;
  bytes.reserve(pat.intensities.size() * 2 + 64);
  bytes += "P5\n# scale ";
  bytes += format_double(scale);
  bytes += '\n';
  bytes += std::to_string(width) + " " + std::to_string(height) + "\n65535\n";
  for (double v : pat.intensities) {
    long pix = std::lround(v * scale);
    pix = std::min(65535L, std::max(0L, pix));
    bytes += static_cast<char>((pix >> 8) & 0xff);  // big-endian
    bytes += static_cast<char>(pix & 0xff);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("export_pattern_pgm: cannot open " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out)
    throw std::runtime_error("export_pattern_pgm: write failed: " + path);
}

}  // namespace polyft
