#pragma once

#include <filesystem>
#include <iosfwd>

#include "ksimplex/sparse_matrix.hpp"

namespace ksimplex {

/// Reads a coordinate Matrix Market file (real or integer field, general or
/// symmetric). Symmetric files are expanded to full storage; duplicate
/// entries are summed.
SparseMatrix read_matrix_market(const std::filesystem::path& path);
SparseMatrix read_matrix_market(std::istream& in);

/// Writes a coordinate real general file with 17 significant digits, which
/// round-trips every double exactly.
void write_matrix_market(const SparseMatrix& a, const std::filesystem::path& path);
void write_matrix_market(const SparseMatrix& a, std::ostream& out);

/// Reads a dense vector. Accepts Matrix Market array format (n x 1) or plain
/// text with one value per line; the format is detected from the banner.
Vector read_vector(const std::filesystem::path& path);
Vector read_vector(std::istream& in);

/// Writes a vector in Matrix Market array format.
void write_vector(const Vector& v, const std::filesystem::path& path);
void write_vector(const Vector& v, std::ostream& out);

}  // namespace ksimplex
