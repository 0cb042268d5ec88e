// vtinv/error.h

// Copyright 2026  The vtinv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef VTINV_ERROR_H_
#define VTINV_ERROR_H_

#include <stdexcept>
#include <string>

namespace vtinv {

/// Category of a failure. The command-line tool maps categories to exit codes.
enum class ErrorKind {
  kFormat,       // malformed WAV/PGM/VTF1/config content
  kAlignment,    // audio length and frame count disagree
  kSize,         // too few items (rows, utterances, training pairs)
  kShape,        // tensor or image extents do not compose
  kInput,        // non-finite or otherwise invalid numeric input
  kNumeric,      // an algorithm failed to converge or find its roots
  kDivergence,   // training produced a non-finite loss
  kCorruption,   // model container manifest and payload disagree
  kCoverage,     // predictions missing for some reference utterances
  kIo,           // file system failure
  kValidation,   // bad parameter value
};

const char *ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void Fail(ErrorKind kind, const std::string &what);

}  // namespace vtinv

#endif  // VTINV_ERROR_H_
