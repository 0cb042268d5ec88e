// core/src/error.cc

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

#include "vtinv/error.h"

namespace vtinv {

const char *ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kAlignment: return "alignment error";
    case ErrorKind::kSize: return "size error";
    case ErrorKind::kShape: return "shape error";
    case ErrorKind::kInput: return "input error";
    case ErrorKind::kNumeric: return "numeric error";
    case ErrorKind::kDivergence: return "divergence error";
    case ErrorKind::kCorruption: return "corruption error";
    case ErrorKind::kCoverage: return "coverage error";
    case ErrorKind::kIo: return "I/O error";
    case ErrorKind::kValidation: return "validation error";
  }
  return "error";
}

void Fail(ErrorKind kind, const std::string &what) {
  throw Error(kind, std::string(ErrorKindName(kind)) + ": " + what);
}

}  // namespace vtinv
