#include "slinv/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace slinv::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string spectral_to_json(const SpectralData& S) {
  json j;
  j["p"] = S.p;
  j["N"] = S.size();
  j["tail_is_model"] = S.tail_is_model;
  j["items"] = json::array();
  for (const auto& d : S.items)
    j["items"].push_back({{"lambda_re", d.lambda.real()},
                          {"lambda_im", d.lambda.imag()},
                          {"alpha_re", d.alpha.real()},
                          {"alpha_im", d.alpha.imag()}});
  return j.dump(2) + "\n";
}

SpectralData spectral_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    SpectralData S;
    S.p = j.at("p").get<int>();
    S.tail_is_model = j.value("tail_is_model", true);
    for (const auto& it : j.at("items"))
      S.items.push_back(SpectralDatum::from_lambda({it.at("lambda_re").get<double>(), it.value("lambda_im", 0.0)},
                                                   {it.at("alpha_re").get<double>(), it.value("alpha_im", 0.0)}));
    if (j.contains("N") && j.at("N").get<std::size_t>() != S.size())
      throw InputError("spectral data: N does not match the item count");
    if (S.p < 0) throw InputError("spectral data: p must be non-negative");
    return S;
  } catch (const json::exception& e) {
    throw InputError(std::string("spectral data: ") + e.what());
  }
}

void write_spectral(const fs::path& path, const SpectralData& S) { write_text(path, spectral_to_json(S)); }

SpectralData read_spectral(const fs::path& path) { return spectral_from_json(read_text(path)); }

void write_potential(const fs::path& path, const PotentialGrid& sigma) {
  std::ostringstream out;
  out << "x,sigma_re,sigma_im\n";
  for (int j = 0; j <= sigma.cells(); ++j)
    out << format_double(sigma.x(j)) << ',' << format_double(sigma[j].real()) << ','
        << format_double(sigma[j].imag()) << '\n';
  write_text(path, out.str());
}

PotentialGrid read_potential(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  std::getline(in, line);
  if (line.rfind("x,sigma_re,sigma_im", 0) != 0) throw InputError("potential CSV: unexpected header");
  std::vector<cplx> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c, ','))
      throw InputError("potential CSV: malformed row");
    vals.emplace_back(std::stod(b), std::stod(c));
  }
  Eigen::VectorXcd v(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) v[i] = vals[i];
  return PotentialGrid(std::move(v));
}

namespace {

json complex_array(const std::vector<cplx>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back({z.real(), z.imag()});
  return a;
}

std::vector<cplx> complex_vector(const json& a) {
  std::vector<cplx> v;
  for (const auto& z : a) v.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
  return v;
}

}  // namespace

void write_result(const fs::path& path, const ReconstructionResult& R, const std::string& sigma_file) {
  json j;
  j["p"] = R.polys.degree();
  j["c"] = complex_array(R.polys.c());
  j["d"] = complex_array(R.polys.d());
  j["leading_deviation"] = R.diagnostics.leading_deviation;
  j["sigma_file"] = sigma_file;
  write_text(path, j.dump(2) + "\n");
}

ResultFile read_result(const fs::path& path) {
  try {
    const json j = json::parse(read_text(path));
    ResultFile r;
    r.p = j.at("p").get<int>();
    r.c = complex_vector(j.at("c"));
    r.d = complex_vector(j.at("d"));
    r.leading_deviation = j.at("leading_deviation").get<double>();
    r.sigma_file = j.at("sigma_file").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("result file: ") + e.what());
  }
}

void write_sweep(const fs::path& path, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "family_param,Z,sigma_distance,coeff_distance,ratio,K_hat\n";
  for (const auto& r : rows) {
    out << format_double(r.family_param) << ',' << format_double(r.report.Z) << ','
        << format_double(r.report.sigma_distance) << ',' << format_double(r.report.coeff_distance) << ','
        << (r.report.ratio ? format_double(*r.report.ratio) : std::string("nan")) << ','
        << format_double(r.K_hat) << '\n';
  }
  write_text(path, out.str());
}

void write_system(const fs::path& path, const TruncatedMainSystem& sys) {
  std::ostringstream out;
  const Eigen::MatrixXcd A = sys.system_matrix();
  out << "# x=" << format_double(sys.x) << " N=" << sys.N << " rows=" << A.rows() << " then psi_tilde\n";
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (j) out << ',';
      out << format_double(A(i, j).real()) << ',' << format_double(A(i, j).imag());
    }
    out << '\n';
  }
  for (Eigen::Index i = 0; i < sys.psi_tilde.size(); ++i) {
    if (i) out << ',';
    out << format_double(sys.psi_tilde[i].real()) << ',' << format_double(sys.psi_tilde[i].imag());
  }
  out << '\n';
  write_text(path, out.str());
}

}  // namespace slinv::io
