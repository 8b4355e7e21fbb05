#pragma once

#include <stdexcept>
#include <string>

namespace zonoclt {

enum class ErrorCode {
  InvalidInput,
  RankDeficient,
  ResourceLimit,
  Io,
};

/// Single exception type for the library; the code drives C API status and CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidInput, what);
}

}  // namespace zonoclt
