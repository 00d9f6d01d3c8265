#include "asss/la/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace asss::la {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

CsrMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error("matrix market: empty input");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "coordinate") {
    throw Error("matrix market: only 'matrix coordinate' files are supported");
  }
  field = lower(field);
  symmetry = lower(symmetry);
  if (field != "real" && field != "integer" && field != "double") {
    throw Error("matrix market: unsupported field '" + field + "'");
  }
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general") {
    throw Error("matrix market: unsupported symmetry '" + symmetry + "'");
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream dims(line);
  std::size_t nrows = 0, ncols = 0, nnz = 0;
  if (!(dims >> nrows >> ncols >> nnz)) throw Error("matrix market: bad size line");

  std::vector<Triplet> entries;
  entries.reserve(symmetric ? 2 * nnz : nnz);
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v)) throw Error("matrix market: truncated entry list");
    if (i == 0 || j == 0 || i > nrows || j > ncols) throw Error("matrix market: index out of range");
    entries.push_back({i - 1, j - 1, v});
    if (symmetric && i != j) entries.push_back({j - 1, i - 1, v});
  }
  return CsrMatrix::from_triplets(nrows, ncols, entries);
}

CsrMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("matrix market: cannot open " + path.string());
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const CsrMatrix& a, MatrixMarketSymmetry symmetry) {
  const bool sym = symmetry == MatrixMarketSymmetry::symmetric;
  if (sym && !a.is_symmetric()) {
    throw Error("matrix market: symmetric storage requested for a non-symmetric matrix");
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    for (std::size_t j : a.row_cols(i)) {
      if (!sym || j <= i) ++count;
    }
  }
  out << "%%MatrixMarket matrix coordinate real " << (sym ? "symmetric" : "general") << '\n';
  out << a.nrows() << ' ' << a.ncols() << ' ' << count << '\n';
  const auto old = out.precision();
  out << std::setprecision(17);
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    for (std::size_t q = 0; q < cols.size(); ++q) {
      if (sym && cols[q] > i) continue;
      out << i + 1 << ' ' << cols[q] + 1 << ' ' << vals[q] << '\n';
    }
  }
  out.precision(old);
}

void write_matrix_market(const std::filesystem::path& path, const CsrMatrix& a,
                         MatrixMarketSymmetry symmetry) {
  std::ofstream out(path);
  if (!out) throw Error("matrix market: cannot write " + path.string());
  write_matrix_market(out, a, symmetry);
}

}  // namespace asss::la
