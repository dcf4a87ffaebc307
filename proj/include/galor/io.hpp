#pragma once

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "galor/evaluation.hpp"
#include "galor/mcmc.hpp"
#include "galor/ordinal.hpp"

// CSV ingestion/serialization.  Datasets are plain CSVs with a header; the
// column named "y" holds the ordinal outcome (integers starting at 1) and
// every other column is a numeric covariate.  Values are written with 17
// significant digits so round-trips are exact.

namespace galor::io {

inline std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os << content;
  }
  std::filesystem::rename(tmp, path);
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    std::size_t b = field.find_first_not_of(" \t\r");
    std::size_t e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

inline double parse_number(const std::string& s, int row, const std::string& col) {
  if (s.empty())
    throw std::invalid_argument("row " + std::to_string(row) + ": empty value in column '" + col + "'");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE)
    throw std::invalid_argument("row " + std::to_string(row) + ": '" + s +
                                "' in column '" + col + "' is not a number");
  if (std::isnan(v))
    throw std::invalid_argument("row " + std::to_string(row) + ": NaN in column '" + col + "'");
  return v;
}

}  // namespace detail

/// Load a dataset CSV.  `add_intercept` prepends a constant column named
/// "intercept".  Errors carry 1-based data row numbers.
inline OrdinalDataset load_dataset(const std::filesystem::path& path,
                                   bool add_intercept = false) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument(path.string() + ": empty file");
  const auto header = detail::split_csv_line(line);
  int y_col = -1;
  std::vector<std::string> cov_names;
  std::vector<int> cov_cols;
  for (int c = 0; c < static_cast<int>(header.size()); ++c) {
    if (header[c] == "y") {
      if (y_col >= 0) throw std::invalid_argument(path.string() + ": duplicate 'y' column");
      y_col = c;
    } else {
      cov_names.push_back(header[c]);
      cov_cols.push_back(c);
    }
  }
  if (y_col < 0) throw std::invalid_argument(path.string() + ": no 'y' column");
  if (cov_cols.empty() && !add_intercept)
    throw std::invalid_argument(path.string() + ": no covariate columns");

  std::vector<std::vector<double>> rows;
  std::vector<int> ys;
  int row = 0;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++row;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != header.size())
      throw std::invalid_argument("row " + std::to_string(row) + ": expected " +
                                  std::to_string(header.size()) + " fields, got " +
                                  std::to_string(fields.size()));
    const double yv = detail::parse_number(fields[y_col], row, "y");
    if (yv != std::floor(yv))
      throw std::invalid_argument("row " + std::to_string(row) +
                                  ": y must be an integer, got " + fields[y_col]);
    if (yv < 1.0)
      throw std::invalid_argument("row " + std::to_string(row) +
                                  ": categories must start at 1");
    ys.push_back(static_cast<int>(yv));
    std::vector<double> r;
    r.reserve(cov_cols.size());
    for (std::size_t c = 0; c < cov_cols.size(); ++c)
      r.push_back(detail::parse_number(fields[cov_cols[c]], row, cov_names[c]));
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw std::invalid_argument(path.string() + ": no data rows");

  OrdinalDataset data;
  const int n = static_cast<int>(rows.size());
  const int base_k = static_cast<int>(cov_cols.size());
  const int k = base_k + (add_intercept ? 1 : 0);
  data.X.resize(n, k);
  data.y.resize(n);
  data.J = 0;
  for (int i = 0; i < n; ++i) {
    int c = 0;
    if (add_intercept) data.X(i, c++) = 1.0;
    for (int j = 0; j < base_k; ++j) data.X(i, c++) = rows[i][j];
    data.y(i) = ys[i];
    data.J = std::max(data.J, ys[i]);
  }
  data.covariate_names.clear();
  if (add_intercept) data.covariate_names.push_back("intercept");
  data.covariate_names.insert(data.covariate_names.end(), cov_names.begin(),
                              cov_names.end());
  data.validate();
  return data;
}

inline std::string dataset_summary(const OrdinalDataset& data) {
  std::ostringstream os;
  os << "n=" << data.n() << " k=" << data.k() << " J=" << data.J << " counts=";
  const auto counts = data.category_counts();
  for (int j = 0; j < data.J; ++j) os << (j ? "/" : "") << counts[j];
  return os.str();
}

inline void save_dataset(const std::filesystem::path& path, const OrdinalDataset& data) {
  std::ostringstream os;
  for (const auto& name : data.covariate_names) os << name << ',';
  os << "y\n";
  for (int i = 0; i < data.n(); ++i) {
    for (int j = 0; j < data.k(); ++j) os << format_full(data.X(i, j)) << ',';
    os << data.y(i) << '\n';
  }
  write_file_atomic(path, os.str());
}

inline void save_latent(const std::filesystem::path& path, const Eigen::VectorXd& z) {
  std::ostringstream os;
  os << "z\n";
  for (int i = 0; i < z.size(); ++i) os << format_full(z(i)) << '\n';
  write_file_atomic(path, os.str());
}

inline void write_chain_csv(const std::filesystem::path& path, const ChainOutput& chain) {
  std::ostringstream os;
  os << "iter";
  for (const auto& name : chain.param_names) os << ',' << name;
  os << ",loglik\n";
  for (int r = 0; r < chain.draws.rows(); ++r) {
    os << chain.burnin + r + 1;
    for (int c = 0; c < chain.draws.cols(); ++c)
      os << ',' << format_full(chain.draws(r, c));
    os << ',' << format_full(chain.loglik[r]) << '\n';
  }
  write_file_atomic(path, os.str());
}

/// Rebuild enough of a ChainOutput from a chain CSV to drive post-processing;
/// run metadata (model, quantile, cut2, J) comes from the caller.
inline ChainOutput read_chain_csv(const std::filesystem::path& path, ModelKind model,
                                  double quantile, double cut2, int J) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument(path.string() + ": empty chain");
  const auto header = detail::split_csv_line(line);
  if (header.size() < 4 || header.front() != "iter" || header.back() != "loglik")
    throw std::invalid_argument(path.string() + ": not a chain CSV");
  ChainOutput chain;
  chain.param_names.assign(header.begin() + 1, header.end() - 1);
  std::vector<std::vector<double>> rows;
  int row = 0;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++row;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != header.size())
      throw std::invalid_argument(path.string() + ": malformed row " + std::to_string(row));
    std::vector<double> r(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c)
      r[c] = detail::parse_number(fields[c], row, header[c]);
    rows.push_back(std::move(r));
  }
  const int nr = static_cast<int>(rows.size());
  const int np = static_cast<int>(chain.param_names.size());
  chain.draws.resize(nr, np);
  chain.loglik.resize(nr);
  for (int r = 0; r < nr; ++r) {
    for (int c = 0; c < np; ++c) chain.draws(r, c) = rows[r][c + 1];
    chain.loglik[r] = rows[r].back();
  }
  chain.burnin = nr > 0 ? static_cast<int>(rows[0][0]) - 1 : 0;
  chain.model = model;
  chain.quantile = quantile;
  chain.cut2 = cut2;
  chain.J = J;
  chain.k = np - 2 - (J - 3);
  if (chain.k < 1 || chain.k + 2 + (J - 3) != np)
    throw std::invalid_argument(path.string() + ": column count inconsistent with J");
  return chain;
}

inline void write_fit_summary(const std::filesystem::path& dir, const FitSummary& s) {
  {
    std::ostringstream os;
    os << "key,value\n";
    os << "model," << s.model << '\n';
    os << "quantile," << format_full(s.quantile) << '\n';
    os << "n," << s.n << '\n';
    os << "k," << s.k << '\n';
    os << "J," << s.J << '\n';
    os << "cut2," << format_full(s.cut2) << '\n';
    os << "k_params," << s.k_params << '\n';
    os << "loglik," << format_full(s.loglik) << '\n';
    os << "aic," << format_full(s.aic) << '\n';
    os << "bic," << format_full(s.bic) << '\n';
    os << "accept_sigma_gamma," << format_full(s.accept_sigma_gamma) << '\n';
    os << "accept_delta," << format_full(s.accept_delta) << '\n';
    os << "runtime_seconds," << format_full(s.runtime_seconds) << '\n';
    write_file_atomic(dir / "summary.csv", os.str());
  }
  {
    std::ostringstream os;
    os << "param,mean,sd,inefficiency\n";
    for (std::size_t i = 0; i < s.param_names.size(); ++i)
      os << s.param_names[i] << ',' << format_full(s.post_mean(i)) << ','
         << format_full(s.post_sd(i)) << ',' << format_full(s.inefficiency[i]) << '\n';
    write_file_atomic(dir / "params.csv", os.str());
  }
  {
    std::ostringstream os;
    char buf[160];
    os << "model " << s.model << "  quantile " << s.quantile << "  n " << s.n
       << "  J " << s.J << "  cut2 " << s.cut2 << "\n\n";
    os << "parameter        mean      sd      IF\n";
    for (std::size_t i = 0; i < s.param_names.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%-12s %8.2f %7.2f %7.2f\n",
                    s.param_names[i].c_str(), s.post_mean(i), s.post_sd(i),
                    s.inefficiency[i]);
      os << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "\nlnL %.2f  AIC %.2f  BIC %.2f  (k_params %d)\n"
                  "acceptance: sigma-gamma %.3f, delta %.3f\nruntime %.1f s\n",
                  s.loglik, s.aic, s.bic, s.k_params, s.accept_sigma_gamma,
                  s.accept_delta, s.runtime_seconds);
    os << buf;
    write_file_atomic(dir / "summary.txt", os.str());
  }
}

/// Read back the scalar block of a fit summary (for model comparison).
inline FitSummary read_fit_summary_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::getline(is, line);
  FitSummary s;
  int row = 0;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++row;
    const auto f = detail::split_csv_line(line);
    if (f.size() != 2)
      throw std::invalid_argument(path.string() + ": malformed row " + std::to_string(row));
    const auto& key = f[0];
    if (key == "model") s.model = f[1];
    else if (key == "quantile") s.quantile = detail::parse_number(f[1], row, key);
    else if (key == "n") s.n = static_cast<int>(detail::parse_number(f[1], row, key));
    else if (key == "k") s.k = static_cast<int>(detail::parse_number(f[1], row, key));
    else if (key == "J") s.J = static_cast<int>(detail::parse_number(f[1], row, key));
    else if (key == "cut2") s.cut2 = detail::parse_number(f[1], row, key);
    else if (key == "k_params") s.k_params = static_cast<int>(detail::parse_number(f[1], row, key));
    else if (key == "loglik") s.loglik = detail::parse_number(f[1], row, key);
    else if (key == "aic") s.aic = detail::parse_number(f[1], row, key);
    else if (key == "bic") s.bic = detail::parse_number(f[1], row, key);
  }
  if (s.model.empty()) throw std::invalid_argument(path.string() + ": not a summary CSV");
  return s;
}

}  // namespace galor::io
