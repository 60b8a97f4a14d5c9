// Copyright 2026 The qkdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qkd::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitInvariant = 2,
    kExitIo = 3,
};

/// Runs the `qkdsim` command line. `args` excludes the program name.
/// Reports go to the output file or `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Tolerance resolution: flag, then the QKDSIM_TOL environment variable,
/// then the built-in default.
double resolve_tolerance(const std::string& flag_value);

}  // namespace qkd::cli
