#pragma once

#include <filesystem>
#include <iosfwd>

#include "asss/la/csr.hpp"

namespace asss::la {

enum class MatrixMarketSymmetry { general, symmetric };

/// Reads a `matrix coordinate real` file; symmetric storage is expanded.
CsrMatrix read_matrix_market(std::istream& in);
CsrMatrix read_matrix_market(const std::filesystem::path& path);

/// Symmetric storage writes only the lower triangle and requires
/// A.is_symmetric().
void write_matrix_market(std::ostream& out, const CsrMatrix& a,
                         MatrixMarketSymmetry symmetry = MatrixMarketSymmetry::general);
void write_matrix_market(const std::filesystem::path& path, const CsrMatrix& a,
                         MatrixMarketSymmetry symmetry = MatrixMarketSymmetry::general);

}  // namespace asss::la
