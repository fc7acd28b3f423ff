#pragma once

#include <stdexcept>
#include <string>

namespace vanhove {

enum class ErrorKind {
    Dimension,
    Numeric,
    Config,
    Parse,
    Precondition,
    Capability,
    Assumption,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) throw Error(kind, what);
}

}  // namespace vanhove
