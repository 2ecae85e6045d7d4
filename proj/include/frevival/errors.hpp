#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace frevival {

// Error with a stable machine-readable code such as "spectral-core/NonSquare".
// The code is what the CLI surfaces; the what() string carries the detail.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
    throw Error(std::move(code), message);
}

}  // namespace frevival
