#include "pdechunk/dataset_io.hpp"

#include <span>

#include "pdechunk/container_io.hpp"
#include "pdechunk/errors.hpp"

namespace pdechunk {

namespace {

void append_u64le(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
        out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
    }
}

std::uint64_t read_u64le(std::span<const std::uint8_t> bytes) {
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) {
        v |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
    }
    return v;
}

nlohmann::json make_manifest(const Dataset& dataset) {
    const GenConfig& c = dataset.config;
    nlohmann::json m;
    m["version"] = kDatasetVersion;
    m["rows"] = c.rows;
    m["cols"] = c.cols;
    m["prediction_step"] = c.prediction_step;
    m["batches"] = dataset.batches.size();
    m["batch_size"] = c.batch_size;
    m["bc_ic_range"] = c.bc_ic_range;
    m["lambda_range"] = c.lambda_range;
    m["t_range"] = c.t_range;
    m["seed"] = c.seed;
    m["mean"] = dataset.stats.mean;
    m["stddev"] = dataset.stats.stddev;
    return m;
}

}  // namespace

std::vector<std::uint8_t> dataset_to_bytes(const Dataset& dataset) {
    const std::size_t field_bytes = dataset.config.rows * dataset.config.cols * 8;
    std::vector<std::uint8_t> payload;
    payload.reserve(dataset.batches.size() *
                    (8 + dataset.config.batch_size * 2 * field_bytes));
    for (const Batch& batch : dataset.batches) {
        if (batch.samples.size() != dataset.config.batch_size) {
            throw std::invalid_argument("batch size differs from config");
        }
        append_u64le(payload, batch.t0);
        for (const Sample& sample : batch.samples) {
            sample.input.append_bytes(payload);
            sample.target.append_bytes(payload);
        }
    }
    return container_to_bytes(make_manifest(dataset), std::move(payload));
}

Dataset dataset_from_bytes(const std::vector<std::uint8_t>& bytes) {
    const Container container = container_from_bytes(bytes, kDatasetVersion);
    const nlohmann::json& m = container.manifest;

    Dataset dataset;
    GenConfig& c = dataset.config;
    try {
        c.rows = m.at("rows").get<std::size_t>();
        c.cols = m.at("cols").get<std::size_t>();
        c.prediction_step = m.at("prediction_step").get<std::size_t>();
        c.batches = m.at("batches").get<std::size_t>();
        c.batch_size = m.at("batch_size").get<std::size_t>();
        c.bc_ic_range = m.at("bc_ic_range").get<std::array<double, 2>>();
        c.lambda_range = m.at("lambda_range").get<std::array<double, 2>>();
        c.t_range = m.at("t_range").get<std::array<std::uint64_t, 2>>();
        c.seed = m.at("seed").get<std::uint64_t>();
        dataset.stats.mean = m.at("mean").get<double>();
        dataset.stats.stddev = m.at("stddev").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw MalformedHeaderError(std::string("bad manifest field: ") + e.what());
    }
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw MalformedHeaderError(std::string("bad manifest field: ") + e.what());
    }

    // Size arithmetic in 128 bits so absurd manifest dimensions mismatch the
    // payload instead of wrapping around.
    using u128 = unsigned __int128;
    const u128 field_bytes128 = static_cast<u128>(c.rows) * c.cols * 8;
    const u128 expected =
        static_cast<u128>(c.batches) * (8 + static_cast<u128>(c.batch_size) * 2 * field_bytes128);
    if (static_cast<u128>(container.payload.size()) != expected) {
        throw MalformedHeaderError("sample count does not match payload size");
    }
    const std::size_t field_bytes = c.rows * c.cols * 8;

    std::span<const std::uint8_t> cursor(container.payload);
    dataset.batches.reserve(c.batches);
    for (std::size_t k = 0; k < c.batches; ++k) {
        Batch batch;
        batch.t0 = read_u64le(cursor);
        batch.t1 = batch.t0 + c.prediction_step;
        cursor = cursor.subspan(8);
        batch.samples.reserve(c.batch_size);
        for (std::size_t j = 0; j < c.batch_size; ++j) {
            Field input = Field::from_bytes(cursor, c.rows, c.cols);
            cursor = cursor.subspan(field_bytes);
            Field target = Field::from_bytes(cursor, c.rows, c.cols);
            cursor = cursor.subspan(field_bytes);
            batch.samples.push_back(Sample{std::move(input), std::move(target)});
        }
        dataset.batches.push_back(std::move(batch));
    }
    return dataset;
}

void write_dataset(const Dataset& dataset, const std::string& path) {
    write_file_bytes(path, dataset_to_bytes(dataset));
}

Dataset read_dataset(const std::string& path) {
    return dataset_from_bytes(read_file_bytes(path));
}

}  // namespace pdechunk
