/// @file fixtures.hpp
/// @brief Access to files under tests/fixtures.

#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace kgcl::testing {

inline auto fixture_path(const std::string& name) -> std::string {
    return std::string(KGCL_FIXTURE_DIR) + "/" + name;
}

inline auto read_fixture(const std::string& name) -> std::string {
    std::ifstream in(fixture_path(name), std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace kgcl::testing
