#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "abi/harness/records.hpp"
#include "abi/net/line_server.hpp"

namespace abi::harness {

/// Line server speaking the playground protocol, one independent session
/// per connection. With a default technique, each session starts out
/// configured with that technique's default parameters.
std::unique_ptr<net::LineServer> make_playground_server(std::uint16_t port,
                                                        std::optional<Technique> default_technique = {});

}  // namespace abi::harness
