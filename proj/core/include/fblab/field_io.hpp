#pragma once

#include <string>

#include "fblab/fields.hpp"

namespace fblab {

/// Checkpoint format: magic "FBLB", u32 header length, JSON header
/// {nx, ny, h, origin, upsilon, kind}, then the flat payload
/// (row-major float64 for fields, bit-packed masks for sets).
void save_field(const std::string& path, const ScalarField& u);
void save_set(const std::string& path, const IndicatorSet& e);

/// Loaded objects reference `grid`; the header must match it.
ScalarField load_field(const std::string& path, const Grid& grid);
IndicatorSet load_set(const std::string& path, const Grid& grid);

/// Reads just the header of a checkpoint file.
std::string read_header_json(const std::string& path);

/// Writes to path via a temporary file plus rename.
void atomic_write(const std::string& path, const std::string& bytes);

}  // namespace fblab
