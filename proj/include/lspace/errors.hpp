#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lspace {

// Every failure carries a machine-readable code; `internal` marks invariant
// violations (bad fixture or bug) as opposed to bad user input.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail, bool internal = false)
        : std::runtime_error(detail), code_(std::move(code)), internal_(internal) {}

    const std::string& code() const noexcept { return code_; }
    bool internal() const noexcept { return internal_; }

private:
    std::string code_;
    bool internal_;
};

// Outcome of a structural check.
struct Report {
    bool ok = true;
    std::string detail;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& detail)
{
    throw Error(code, detail);
}

[[noreturn]] inline void invariant_failure(const std::string& code, const std::string& detail)
{
    throw Error(code, detail, true);
}

} // namespace lspace
