#include "eclnl/names.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace eclnl {
namespace {

// Strings live in a deque so interned views stay valid as the table grows.
struct Interner {
  std::mutex mu;
  std::deque<std::string> strings;
  std::unordered_map<std::string_view, uint32_t> index;

  Interner() { intern(""); }  // id 0 is the empty name

  uint32_t intern(std::string_view text) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = index.find(text);
    if (it != index.end()) return it->second;
    strings.emplace_back(text);
    uint32_t id = static_cast<uint32_t>(strings.size() - 1);
    index.emplace(strings.back(), id);
    return id;
  }

  const std::string& lookup(uint32_t id) {
    std::lock_guard<std::mutex> lock(mu);
    return strings[id];
  }
};

Interner& table() {
  static Interner t;
  return t;
}

}  // namespace

Name::Name(std::string_view text) : id_(table().intern(text)) {}

const std::string& Name::str() const { return table().lookup(id_); }

}  // namespace eclnl
