#pragma once

#include <stdexcept>
#include <string>

namespace rostlab {

// Every failure mode surfaced to callers carries a stable name so that the
// CLI can report it verbatim and tests can match on it.  The what() string
// is "Name: detail".
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

[[noreturn]] inline void fail(const std::string& name, const std::string& detail) {
    throw Error(name, detail);
}

// Internal consistency checks stay on in release builds.  A failure here
// means the library disagrees with itself, never bad user input.
inline void check_internal(bool ok, const std::string& detail) {
    if (!ok) fail("InternalVerificationFailed", detail);
}

} // namespace rostlab
