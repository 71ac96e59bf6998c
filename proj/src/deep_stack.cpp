#include "ifc/deep_stack.hpp"

#include <pthread.h>

#include <exception>
#include <stdexcept>

namespace ifc {

namespace {
thread_local bool t_on_deep_stack = false;

struct Job {
  const std::function<void()>* f;
  std::exception_ptr error;
};

void* trampoline(void* arg) {
  auto* job = static_cast<Job*>(arg);
  t_on_deep_stack = true;
  try {
    (*job->f)();
  } catch (...) {
    job->error = std::current_exception();
  }
  return nullptr;
}
}  // namespace

void with_deep_stack(const std::function<void()>& f, std::size_t bytes) {
  if (t_on_deep_stack) {
    f();
    return;
  }
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, bytes);
  Job job{&f, nullptr};
  pthread_t tid;
  int rc = pthread_create(&tid, &attr, trampoline, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) throw std::runtime_error("cannot start evaluation thread");
  pthread_join(tid, nullptr);
  if (job.error) std::rethrow_exception(job.error);
}

}  // namespace ifc
