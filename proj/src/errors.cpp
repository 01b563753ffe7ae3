#include "modfront/errors.hpp"

namespace modfront {

Error::Error(std::string name, const std::string& message)
    : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

void fail(const std::string& name, const std::string& message) { throw Error(name, message); }

}  // namespace modfront
