#pragma once

// Worker-count control for the OpenMP kernels. The default comes from the
// ARCFORGE_WORKERS environment variable, falling back to the OpenMP default.

namespace arcforge {

int worker_count();
/// n <= 0 restores the default.
void set_worker_count(int n);

/// Restores the previous worker count on scope exit.
class ScopedWorkers {
 public:
  explicit ScopedWorkers(int n) : saved_(worker_count()) { set_worker_count(n); }
  ~ScopedWorkers() { set_worker_count(saved_); }
  ScopedWorkers(const ScopedWorkers&) = delete;
  ScopedWorkers& operator=(const ScopedWorkers&) = delete;

 private:
  int saved_;
};

}  // namespace arcforge
