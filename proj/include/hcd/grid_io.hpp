#pragma once

// CoeffGrid on disk: `<name>.csv` with header `k,j,value` (one row per entry,
// 17 significant digits) plus a sidecar `<name>.meta` of key=value lines.

#include <filesystem>
#include <map>
#include <string>

#include "hcd/coeffs.hpp"

namespace hcd {

using KeyValues = std::map<std::string, std::string>;

std::filesystem::path sidecar_path(const std::filesystem::path& csv);

/// Writes the grid and its provenance; `extra` lands in the sidecar too.
void write_coeff_grid(const CoeffGrid& grid, const std::filesystem::path& csv,
                      const KeyValues& extra = {});

/// Reads a grid written by write_coeff_grid. Extra sidecar keys go to `extra`
/// when given. Throws std::runtime_error on malformed input.
CoeffGrid read_coeff_grid(const std::filesystem::path& csv, KeyValues* extra = nullptr);

KeyValues read_key_values(const std::filesystem::path& path);
void write_key_values(const KeyValues& kv, const std::filesystem::path& path);

}  // namespace hcd
