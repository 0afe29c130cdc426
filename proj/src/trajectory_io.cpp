#include "pdechunk/trajectory_io.hpp"

#include <fstream>
#include <ostream>
#include <span>

#include "pdechunk/container_io.hpp"
#include "pdechunk/errors.hpp"

namespace pdechunk {

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
    out << "time_index,i,j,value\n";
    out.precision(17);
    for (std::size_t s = 0; s < trajectory.size(); ++s) {
        const Field& state = trajectory.state(s);
        for (std::size_t i = 0; i < state.rows(); ++i) {
            for (std::size_t j = 0; j < state.cols(); ++j) {
                out << trajectory.index(s) << ',' << i << ',' << j << ',' << state(i, j)
                    << '\n';
            }
        }
    }
}

void write_trajectory_csv(const Trajectory& trajectory, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    write_trajectory_csv(trajectory, out);
}

void write_trajectory_binary(const Trajectory& trajectory, const std::string& path) {
    if (trajectory.empty()) {
        throw std::invalid_argument("cannot export an empty trajectory");
    }
    nlohmann::json manifest;
    manifest["version"] = kTrajectoryVersion;
    manifest["rows"] = trajectory.state(0).rows();
    manifest["cols"] = trajectory.state(0).cols();
    manifest["time_indices"] = trajectory.indices();
    std::vector<std::uint8_t> payload;
    payload.reserve(trajectory.size() * trajectory.state(0).byte_size());
    for (std::size_t s = 0; s < trajectory.size(); ++s) {
        trajectory.state(s).append_bytes(payload);
    }
    write_file_bytes(path, container_to_bytes(std::move(manifest), std::move(payload)));
}

Trajectory read_trajectory_binary(const std::string& path) {
    const Container container = container_from_bytes(read_file_bytes(path), kTrajectoryVersion);
    const nlohmann::json& m = container.manifest;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> indices;
    try {
        rows = m.at("rows").get<std::size_t>();
        cols = m.at("cols").get<std::size_t>();
        indices = m.at("time_indices").get<std::vector<std::size_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw MalformedHeaderError(std::string("bad manifest field: ") + e.what());
    }
    if (rows == 0 || cols == 0) {
        throw MalformedHeaderError("zero-sized shape in manifest");
    }
    using u128 = unsigned __int128;
    const u128 expected = static_cast<u128>(indices.size()) * rows * cols * 8;
    if (static_cast<u128>(container.payload.size()) != expected) {
        throw MalformedHeaderError("state count does not match payload size");
    }
    const std::size_t field_bytes = rows * cols * 8;
    Trajectory trajectory;
    std::span<const std::uint8_t> cursor(container.payload);
    for (std::size_t t : indices) {
        trajectory.push_back(t, Field::from_bytes(cursor, rows, cols));
        cursor = cursor.subspan(field_bytes);
    }
    return trajectory;
}

}  // namespace pdechunk
