// util/logging.cc

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

#include "util/logging.h"

#include <iostream>

namespace cjfe {

namespace {
bool g_quiet = false;
}  // namespace

void LogInfo(const std::string &message) {
  if (!g_quiet) std::cerr << "INFO (cjfe): " << message << "\n";
}

void LogWarn(const std::string &message) {
  std::cerr << "WARNING (cjfe): " << message << "\n";
}

void SetQuietLogging(bool quiet) { g_quiet = quiet; }

}  // namespace cjfe
