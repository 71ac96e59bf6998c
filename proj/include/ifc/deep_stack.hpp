#pragma once

#include <cstddef>
#include <functional>

namespace ifc {

// Runs f on a thread with a large stack (the interpreters recurse on the term and the derivation).
// Nested calls run inline. Exceptions thrown by f propagate to the caller.
void with_deep_stack(const std::function<void()>& f, std::size_t bytes = std::size_t{512} << 20);

}  // namespace ifc
