#include "localdel/errors.hpp"

namespace localdel {

Error::Error(std::string kind, const std::string& what)
    : std::runtime_error(what), kind_(std::move(kind)) {}

void fail(const std::string& kind, const std::string& what) { throw Error(kind, what); }

}  // namespace localdel
