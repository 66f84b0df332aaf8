// Copyright 2026 The gpnn Authors.
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


#ifndef GPNN_TOOLS_COMMANDS_HPP_
#define GPNN_TOOLS_COMMANDS_HPP_

#include <iosfwd>

namespace gpnn::cli {

// Entry point for the gpnn tool. Returns the process exit code: 0 when every
// requested output was written, 1 on a runtime error, 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gpnn::cli

#endif  // GPNN_TOOLS_COMMANDS_HPP_
