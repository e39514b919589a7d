// Copyright 2026 The geomatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// The geomatch command line: validate, run, gen and render.
//
// Exit codes: 0 success, 1 validation or precondition failure, 2 parse or
// usage error, 3 internal assertion (including a failed --verify).

#pragma once

#include <iosfwd>

namespace geomatch {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace geomatch
