#pragma once

#include <stdexcept>
#include <string>

namespace bellgame {

// Malformed input data: bad shapes, broken invariants, unreadable files.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Refusal to start a computation whose size exceeds a documented guard.
class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Worker cap for parallel sections. Reads BELLGAME_THREADS, defaults to the
// hardware concurrency, and is always at least 1.
int thread_budget();

}  // namespace bellgame
