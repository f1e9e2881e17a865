#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "slinv/diagnostics.hpp"
#include "slinv/main_equation.hpp"
#include "slinv/reconstruction.hpp"

namespace slinv::io {

namespace fs = std::filesystem;

/// {p, N, tail_is_model, items: [{lambda_re, lambda_im, alpha_re, alpha_im}]}; rho is recomputed on load.
std::string spectral_to_json(const SpectralData& S);
SpectralData spectral_from_json(const std::string& text);
void write_spectral(const fs::path& path, const SpectralData& S);
SpectralData read_spectral(const fs::path& path);

/// CSV with header x,sigma_re,sigma_im.
void write_potential(const fs::path& path, const PotentialGrid& sigma);
PotentialGrid read_potential(const fs::path& path);

struct ResultFile {
  int p = 0;
  std::vector<cplx> c, d;
  double leading_deviation = 0.0;
  std::string sigma_file;
};

/// {p, c: [[re, im], ...], d: [...], leading_deviation, sigma_file}.
void write_result(const fs::path& path, const ReconstructionResult& R, const std::string& sigma_file);
ResultFile read_result(const fs::path& path);

/// family_param,Z,sigma_distance,coeff_distance,ratio,K_hat
void write_sweep(const fs::path& path, const std::vector<SweepRow>& rows);

/// Row-major complex entries of E + H~(x) followed by psi~, one "re,im" pair per field.
void write_system(const fs::path& path, const TruncatedMainSystem& sys);

void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace slinv::io
