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

#include <cstdio>
#include <fstream>
#include <iostream>

#include "dense_oracle.hpp"
#include "golden.hpp"

// Regenerates the committed feasibility golden files from the full-space
// oracle. Run by hand; the test suite only reads the files.
int main() {
    for (int d : {2, 3}) {
        const auto path = oracle::golden_path("post_round1_round2", d);
        std::ofstream out(path);
        out << oracle::feasibility_golden("post_round1_round2", d, 1).dump(2) << "\n";
        if (!out) {
            std::cerr << "cannot write " << path << "\n";
            return 1;
        }
        std::printf("wrote %s\n", path.c_str());
    }
    return 0;
}
