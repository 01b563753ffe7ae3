#pragma once

#include <stdexcept>
#include <string>

namespace modfront {

// Domain error carrying a stable, machine-readable name (e.g. "GapViolation").
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& message);
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

[[noreturn]] void fail(const std::string& name, const std::string& message);

}  // namespace modfront
