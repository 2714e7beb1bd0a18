#pragma once

#include <stdexcept>
#include <string>

namespace cmnf {

enum class ErrorCode {
    parse = 1,
    validation = 2,
    internal = 3,
    criterion = 4,
    usage = 5,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail_parse(const std::string& msg) { throw Error(ErrorCode::parse, msg); }
[[noreturn]] inline void fail_validation(const std::string& msg) { throw Error(ErrorCode::validation, msg); }
[[noreturn]] inline void fail_internal(const std::string& msg) { throw Error(ErrorCode::internal, msg); }

inline void require(bool cond, ErrorCode code, const std::string& msg) {
    if (!cond) throw Error(code, msg);
}

}  // namespace cmnf
