#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "slepian/dpss.hpp"
#include "slepian/harness.hpp"
#include "slepian/moments.hpp"

namespace slepian {

/// Shortest round-trip decimal, or fixed notation with `precision` digits.
std::string format_number(double value, std::optional<int> precision = std::nullopt);

/// {"n":int,"w":float,"k":int,"eigenvalues":[float],"sequences":[[float]]}
std::string basis_to_json(const DpssBasis& basis);
DpssBasis basis_from_json(std::string_view text);

/// Metadata plus an array of {"m","n","re","im"} records (n from -L to L).
std::string moments_to_json(const MomentSet& moments);
MomentSet moments_from_json(std::string_view text);

/// Single-row CSV with header phi_m_n in flattening order.
std::string invariants_to_csv(const InvariantVector& phi, std::optional<int> precision = std::nullopt);

/// {"radial","angular","imag_residual","samples":[[float]]}
std::string reconstruction_to_json(const Reconstruction& rec);

/// One row per angle, then a "std" row; header angle,phi_m_n,...
std::string stability_to_csv(const StabilityReport& report, std::optional<int> precision = std::nullopt);
std::string stability_to_json(const StabilityReport& report);

/// One row per training fraction: train_percent,mean,std.
std::string classification_to_csv(const ClassificationReport& report,
                                  std::optional<int> precision = std::nullopt);
std::string classification_to_json(const ClassificationReport& report);

std::string read_text_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

}  // namespace slepian
