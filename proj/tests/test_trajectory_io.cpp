#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "pdechunk/adi.hpp"
#include "pdechunk/errors.hpp"
#include "pdechunk/trajectory_io.hpp"

using namespace pdechunk;

namespace {

Trajectory sample_trajectory() {
    BoundarySpec bc;
    bc.top = 10.0;
    bc.bottom = 20.0;
    bc.left = 30.0;
    bc.right = 40.0;
    const HeatProblem problem(5, 5, bc, 0.0, 0.5);
    return heat_solve_2d(problem, 4);
}

}  // namespace

TEST_CASE("csv export has the fixed schema and full coverage") {
    const Trajectory t = sample_trajectory();
    std::ostringstream out;
    write_trajectory_csv(t, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "time_index,i,j,value");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == t.size() * 25);
}

TEST_CASE("binary export round trips bitwise") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "pdechunk_trajectory_test.bin";
    const Trajectory t = sample_trajectory();
    write_trajectory_binary(t, path.string());
    const Trajectory back = read_trajectory_binary(path.string());
    CHECK(back == t);
    fs::remove(path);
}

TEST_CASE("trajectory invariants") {
    Trajectory t;
    t.push_back(0, Field(3, 3, 1.0));
    CHECK_THROWS_AS(t.push_back(0, Field(3, 3, 2.0)), std::invalid_argument);
    CHECK_THROWS_AS(t.push_back(3, Field(4, 3, 2.0)), std::invalid_argument);
    t.push_back(3, Field(3, 3, 2.0));
    CHECK(t.has_index(3));
    CHECK_FALSE(t.has_index(1));
    CHECK_THROWS_AS(t.state_at(1), std::out_of_range);
}
