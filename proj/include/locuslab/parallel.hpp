/*
   Copyright 2026 The locuslab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef LOCUSLAB_PARALLEL_HPP
#define LOCUSLAB_PARALLEL_HPP

#include <functional>

namespace locuslab {

/// Worker count: hardware concurrency clamped to 8, capped further by the
/// LOCUSLAB_THREADS environment variable (values < 1 mean sequential).
int worker_count();

/// Run fn(begin, end) over [0, n) split into contiguous chunks, one chunk per
/// worker. Chunks are disjoint, so writes into per-index slots need no locks;
/// results are identical at any worker count.
void parallel_chunks(int n, const std::function<void(int, int)>& fn);

}  // namespace locuslab

#endif  // LOCUSLAB_PARALLEL_HPP
