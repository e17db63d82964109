#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace eclnl {

// Interned identifier. Equality is O(1); ordering compares the underlying
// strings so that every ordered container iterates deterministically no
// matter in which order names were first seen.
class Name {
 public:
  Name() : id_(0) {}  // the empty name
  explicit Name(std::string_view text);

  const std::string& str() const;

  bool operator==(const Name& other) const { return id_ == other.id_; }
  bool operator!=(const Name& other) const { return id_ != other.id_; }
  bool operator<(const Name& other) const {
    return id_ != other.id_ && str() < other.str();
  }

  uint32_t raw() const { return id_; }

 private:
  uint32_t id_;
};

}  // namespace eclnl
