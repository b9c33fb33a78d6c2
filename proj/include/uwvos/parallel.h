/* Copyright 2026 The UW-VOS Toolkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef UWVOS_PARALLEL_H_
#define UWVOS_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace uwvos {

// Worker cap: UWVOS_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned ThreadCap();

// Runs body(i) for i in [0, n) on up to `threads` workers. Callers write
// results into slot i, so output order never depends on scheduling. If any
// call throws, the exception from the lowest index is rethrown.
void ParallelFor(std::size_t n, unsigned threads,
                 const std::function<void(std::size_t)>& body);

}  // namespace uwvos

#endif  // UWVOS_PARALLEL_H_
