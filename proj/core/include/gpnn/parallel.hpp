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

#ifndef GPNN_PARALLEL_HPP_
#define GPNN_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace gpnn {

// Worker cap for every parallel loop in the library. Defaults to the
// GPNN_THREADS environment variable, else the hardware concurrency.
std::size_t max_threads();
void set_max_threads(std::size_t threads);

// Splits [0, count) into contiguous chunks, one per worker, and calls
// body(begin, end) for each. The first exception thrown by any worker is
// rethrown on the calling thread after all workers join.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace gpnn

#endif  // GPNN_PARALLEL_HPP_
