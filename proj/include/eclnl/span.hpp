#pragma once

#include <cstdint>

namespace eclnl {

// Source location of a token or term: 1-based line/column plus length in
// characters. A default-constructed span (line 0) means "no location", as on
// machine-built terms.
struct Span {
  uint32_t line = 0;
  uint32_t col = 0;
  uint32_t len = 0;

  bool known() const { return line != 0; }
  bool operator==(const Span&) const = default;
};

}  // namespace eclnl
