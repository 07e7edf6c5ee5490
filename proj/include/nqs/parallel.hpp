// Copyright 2026 The nqs-circuits Authors.
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

#ifndef NQS_PARALLEL_HPP
#define NQS_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace nqs {

// Worker count used by the sampler and the noise trajectories. Defaults to
// the NQS_NUM_THREADS environment variable, else hardware concurrency.
int num_threads();
void set_num_threads(int n);

// Runs body(i) for i in [0, n). Work is split into contiguous blocks; callers
// write results into per-index slots so the outcome never depends on the
// thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

}  // namespace nqs

#endif  // NQS_PARALLEL_HPP
