// Copyright 2026 The nscert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace nsc {

/// Resolves a requested worker count: 0 means "all hardware threads".
unsigned effective_threads(unsigned requested);

/// Runs body(begin, end) over a static block partition of [0, count).
/// Blocks are disjoint, so workers may write to per-index slots without
/// synchronization. The first worker exception (lowest block index) is
/// rethrown on the calling thread after all workers join.
void parallel_for_blocks(
    std::size_t count, unsigned threads,
    const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace nsc
