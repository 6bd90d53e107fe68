#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dsmdp::env {

// Grid world where the agent must pick up objects in a target type order.
// Text format:
//   target: a b          object types to collect, in order
//   grid:                followed by rows; '#' wall, '.' free,
//   #########            'a'..'z' object of that type on a free cell,
//   #.a..@..#            '@' fixed agent start (otherwise uniform)
// Blank lines and lines starting with ';' are ignored.
struct PickupWorldConfig {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<bool> wall;  // row-major
  struct Object {
    std::size_t cell;
    char type;
  };
  std::vector<Object> objects;
  std::vector<char> target;
  std::optional<std::size_t> fixed_start;

  void validate() const;
};

PickupWorldConfig parse_pickup_config(std::istream& is);
PickupWorldConfig parse_pickup_config_string(const std::string& text);
PickupWorldConfig load_pickup_config(const std::string& path);
const std::string& default_pickup_config_text();

}  // namespace dsmdp::env
