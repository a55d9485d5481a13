// Copyright 2026 The pbp Authors
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

#include <pthread.h>
#include <sys/mman.h>

#include <exception>

#include "pbp/eval.hpp"

namespace pbp {

namespace {

// Reserved lazily; pages are only committed as the recursion touches them.
constexpr std::size_t kStackBytes = std::size_t{4} << 30;

thread_local bool on_large_stack = false;

struct Task {
  const std::function<void()>* fn;
  std::exception_ptr error;
};

void* trampoline(void* arg) {
  auto* task = static_cast<Task*>(arg);
  on_large_stack = true;
  try {
    (*task->fn)();
  } catch (...) {
    task->error = std::current_exception();
  }
  return nullptr;
}

}  // namespace

void run_with_large_stack(const std::function<void()>& fn) {
  if (on_large_stack) {
    fn();
    return;
  }
  void* stack = mmap(nullptr, kStackBytes, PROT_READ | PROT_WRITE,
                     MAP_PRIVATE | MAP_ANONYMOUS | MAP_NORESERVE | MAP_STACK, -1, 0);
  if (stack == MAP_FAILED) {
    fn();
    return;
  }
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstack(&attr, stack, kStackBytes);
  Task task{&fn, nullptr};
  pthread_t thread;
  const int rc = pthread_create(&thread, &attr, trampoline, &task);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    munmap(stack, kStackBytes);
    fn();
    return;
  }
  pthread_join(thread, nullptr);
  munmap(stack, kStackBytes);
  if (task.error) std::rethrow_exception(task.error);
}

}  // namespace pbp
