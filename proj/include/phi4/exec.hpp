#ifndef PHI4_EXEC_HPP
#define PHI4_EXEC_HPP

#include <exception>
#include <string_view>

namespace phi4 {

// serial: plain loop, kept as the reference.  parallel: OpenMP.
enum class Exec { serial, parallel };

std::string_view to_string(Exec e);
Exec parse_exec(std::string_view s);

// Runs body(i) for i in [0, count).  Exceptions thrown by the body are
// collected and the one with the lowest index is rethrown, so serial and
// parallel runs fail identically.
template <class F>
void for_each_index(int count, Exec exec, F&& body) {
  std::exception_ptr first;
  int first_index = count;
  if (exec == Exec::serial) {
    for (int i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        first = std::current_exception();
        first_index = i;
        break;
      }
    }
  } else {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
#pragma omp critical(phi4_for_each_index)
        {
          if (i < first_index) {
            first_index = i;
            first = std::current_exception();
          }
        }
      }
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace phi4

#endif
