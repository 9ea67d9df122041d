#pragma once

#include <string>

#include "railnet/network.hpp"

namespace railnet::testing {

inline std::string fixture_path(const std::string& name) { return std::string(RAILNET_FIXTURES) + "/" + name; }

inline RawNetwork fixture(const std::string& name) { return load_network(fixture_path(name)); }

}  // namespace railnet::testing
