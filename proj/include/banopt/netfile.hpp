#pragma once

#include <string>

#include "banopt/network.hpp"

namespace banopt {

// A parsed network file: the module as declared plus any wire lines.
struct NetworkFile {
  NetworkDef network;
  Wiring wiring;

  friend bool operator==(const NetworkFile&, const NetworkFile&) = default;
};

// Line-oriented format: `network NAME`, then `input IDENT`, `node IDENT =
// EXPR` and `wire INPUT -> NODE` lines; `#` starts a comment. Node order is
// declaration order.
NetworkFile parse_network_file(const std::string& text);

NetworkFile load_network_file(const std::string& path);

std::string print_network_file(const NetworkFile& file);

// Applies the declared wiring; throws OpenInputsError when inputs remain.
NetworkDef closed_network(const NetworkFile& file);

}  // namespace banopt
