// util/logging.h

// Copyright 2026  CJFE Authors

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

#ifndef CJFE_UTIL_LOGGING_H_
#define CJFE_UTIL_LOGGING_H_

#include <string>

namespace cjfe {

// Run-log lines go to stderr so command output stays machine-parseable.
void LogInfo(const std::string &message);
void LogWarn(const std::string &message);

// Silences LogInfo (tests use this to keep output readable). Warnings are
// always printed.
void SetQuietLogging(bool quiet);

}  // namespace cjfe

#endif  // CJFE_UTIL_LOGGING_H_
