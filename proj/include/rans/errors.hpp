#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rans {

enum class ErrorCode {
  kInvalidArgument = 1,
  kParse = 2,
  kCapExceeded = 3,
  kOutOfRange = 4,
  kIo = 5,
  kVerification = 6,
  kInsufficientData = 7,
};

/// Base of every exception thrown by the library. The C API maps `code()`
/// onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error(ErrorCode::kParse, what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t requested, std::size_t cap)
      : Error(ErrorCode::kCapExceeded, what + ": requested " + std::to_string(requested) +
                                           " exceeds cap " + std::to_string(cap)),
        cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

}  // namespace rans
