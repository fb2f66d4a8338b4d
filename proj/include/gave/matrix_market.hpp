#pragma once

#include <filesystem>

#include "gave/matrix.hpp"

namespace gave {

// Matrix Market I/O. Banded matrices are written in coordinate format
// with a "% band <kl> <ku>" comment so the storage kind round-trips;
// dense matrices and vectors use array format. Values are printed with
// 17 significant digits, so decimal literals round-trip exactly.
void write_matrix(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix(const std::filesystem::path& path);

void write_vector(const std::filesystem::path& path, const Vector& v);
Vector read_vector(const std::filesystem::path& path);

}  // namespace gave
