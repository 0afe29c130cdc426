#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace pdechunk {

// On-disk container shared by dataset, propagator, and trajectory files:
// one UTF-8 JSON manifest line terminated by '\n', then the raw payload.
// The manifest always carries "version", "payload_bytes", and "crc32"
// (CRC-32 of the payload); readers raise MalformedHeaderError,
// TruncatedPayloadError, or ChecksumMismatchError as distinct failures.

struct Container {
    nlohmann::json manifest;
    std::vector<std::uint8_t> payload;
};

std::uint32_t crc32_of(const std::vector<std::uint8_t>& bytes);

/// Serializes manifest + payload, filling in payload_bytes and crc32.
std::vector<std::uint8_t> container_to_bytes(nlohmann::json manifest,
                                             std::vector<std::uint8_t> payload);

/// Parses and validates a container; expected_version is matched against the
/// manifest "version" tag.
Container container_from_bytes(const std::vector<std::uint8_t>& bytes,
                               const std::string& expected_version);

void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> read_file_bytes(const std::string& path);

}  // namespace pdechunk
