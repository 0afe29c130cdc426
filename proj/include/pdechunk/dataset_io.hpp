#pragma once

#include <string>

#include "pdechunk/datagen.hpp"

namespace pdechunk {

// Dataset file, version tag "DNT1": one JSON manifest line (grid shape, P,
// batch count, batch size, generation ranges, seed, mean, stddev, payload
// length, CRC-32), then the payload. Per batch: t0 as unsigned 64-bit
// little-endian, then each sample as input field followed by target field in
// the row-major 64-bit little-endian layout. Bit-exact across platforms.

inline constexpr const char* kDatasetVersion = "DNT1";

void write_dataset(const Dataset& dataset, const std::string& path);
Dataset read_dataset(const std::string& path);

std::vector<std::uint8_t> dataset_to_bytes(const Dataset& dataset);
Dataset dataset_from_bytes(const std::vector<std::uint8_t>& bytes);

}  // namespace pdechunk
