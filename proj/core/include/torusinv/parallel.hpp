#pragma once

#include <cstddef>
#include <functional>

namespace torusinv {

// TORUSINV_THREADS caps the worker count; defaults to hardware concurrency.
std::size_t thread_count();

// Runs body(i) for i in [0, count); each index is visited exactly once.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace torusinv
