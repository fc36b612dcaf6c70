#pragma once

#include <stdexcept>
#include <string>

namespace translid {

enum class ErrorCode {
  kInvalidArgument,  // caller passed something outside a documented range
  kIo,               // file missing / unreadable / unwritable
  kData,             // input parsed but unusable (empty corpus, single label, ...)
  kModeMismatch,     // tokenizer mode or pattern set disagrees with a model
  kCorrupt,          // model file failed magic/version/checksum validation
  kNumeric,          // non-finite value during training
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace translid
