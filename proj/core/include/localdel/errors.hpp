#pragma once

#include <stdexcept>
#include <string>

namespace localdel {

// Every failure carries a short machine-readable kind, e.g. "VertexOutOfRange".
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what);
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

[[noreturn]] void fail(const std::string& kind, const std::string& what);

}  // namespace localdel
