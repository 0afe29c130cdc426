#include "pdechunk/container_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <fstream>

#include "pdechunk/errors.hpp"

namespace pdechunk {

std::uint32_t crc32_of(const std::vector<std::uint8_t>& bytes) {
    uLong crc = ::crc32(0L, Z_NULL, 0);
    if (!bytes.empty()) {
        crc = ::crc32(crc, bytes.data(), static_cast<uInt>(bytes.size()));
    }
    return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t> container_to_bytes(nlohmann::json manifest,
                                             std::vector<std::uint8_t> payload) {
    manifest["payload_bytes"] = payload.size();
    manifest["crc32"] = crc32_of(payload);
    const std::string header = manifest.dump();
    std::vector<std::uint8_t> out;
    out.reserve(header.size() + 1 + payload.size());
    out.insert(out.end(), header.begin(), header.end());
    out.push_back('\n');
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

Container container_from_bytes(const std::vector<std::uint8_t>& bytes,
                               const std::string& expected_version) {
    auto newline = std::find(bytes.begin(), bytes.end(), static_cast<std::uint8_t>('\n'));
    if (newline == bytes.end()) {
        throw MalformedHeaderError("no manifest line found");
    }
    Container container;
    try {
        container.manifest = nlohmann::json::parse(bytes.begin(), newline);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedHeaderError(std::string("manifest is not valid JSON: ") + e.what());
    }
    if (!container.manifest.is_object() || !container.manifest.contains("version") ||
        !container.manifest.contains("payload_bytes") || !container.manifest.contains("crc32")) {
        throw MalformedHeaderError("manifest is missing required keys");
    }
    if (container.manifest["version"] != expected_version) {
        throw MalformedHeaderError("unexpected version tag, wanted " + expected_version);
    }

    const auto payload_bytes = container.manifest["payload_bytes"].get<std::uint64_t>();
    const std::size_t available = static_cast<std::size_t>(bytes.end() - (newline + 1));
    if (available < payload_bytes) {
        throw TruncatedPayloadError("payload has " + std::to_string(available) + " of " +
                                    std::to_string(payload_bytes) + " bytes");
    }
    if (available > payload_bytes) {
        throw MalformedHeaderError("trailing bytes after payload");
    }
    container.payload.assign(newline + 1, bytes.end());
    if (crc32_of(container.payload) != container.manifest["crc32"].get<std::uint32_t>()) {
        throw ChecksumMismatchError("payload CRC-32 does not match manifest");
    }
    return container;
}

void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::runtime_error("failed writing " + path);
    }
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

}  // namespace pdechunk
