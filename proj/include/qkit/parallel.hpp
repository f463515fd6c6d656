// Copyright 2026 The qkit Authors
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

#pragma once

#include <functional>

namespace qkit {

/// Worker cap: QKIT_THREADS if set and positive, else hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, n). Work is spread over worker threads when
/// called from the top level; nested calls run serially on the caller.
/// Results must be written to per-index slots so the reduction order is fixed.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace qkit
