#pragma once

// Matrix Market array files, the exchange format for the CLI:
//
//   %%MatrixMarket matrix array complex general
//   % optional comments
//   n n
//   re im        <- one entry per line, column-major
//
// Dense real headers (array real general) are accepted with im = 0. Sparse
// (coordinate) files are rejected. Writing uses 17 significant digits so a
// read-back is bit-exact for finite doubles.

#include <filesystem>

#include "waxsolve/linalg.hpp"

namespace waxsolve {

// Throws IoError when the file cannot be opened, ParseError (with a line
// number) on malformed content, DimensionError when the matrix is not square.
Matrix read_matrix(const std::filesystem::path& path);

void write_matrix(const std::filesystem::path& path, const Matrix& a);

} // namespace waxsolve
