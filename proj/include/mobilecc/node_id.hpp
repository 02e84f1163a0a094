#pragma once

#include <cstdint>
#include <string>

namespace mobilecc {

enum class NodeId : std::uint32_t {};

constexpr std::uint32_t raw(NodeId id) { return static_cast<std::uint32_t>(id); }
inline std::string to_string(NodeId id) { return std::to_string(raw(id)); }

enum class NodeKind { sink, fixed, mobile };

}  // namespace mobilecc
