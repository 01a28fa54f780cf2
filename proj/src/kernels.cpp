#include "phi4/kernels.hpp"

#include <limits>
#include <string>

#include "phi4/errors.hpp"

namespace phi4 {

std::string_view to_string(Exec e) {
  return e == Exec::serial ? "serial" : "parallel";
}

Exec parse_exec(std::string_view s) {
  if (s == "serial") return Exec::serial;
  if (s == "parallel") return Exec::parallel;
  throw DomainError("unknown execution mode '" + std::string(s) + "'");
}

namespace kernels {

std::vector<double> d_table(const GreenSequence& h,
                            const PartitionTable& table, Exec exec) {
  const int N = h.truncation();
  std::vector<double> d(slot(N) + 1, std::numeric_limits<double>::quiet_NaN());
  for_each_index(slot(N), exec, [&](int i) {
    d[i + 1] = d_value(h, index_of_slot(i + 1), table);
  });
  return d;
}

std::vector<TreeTerms> tree_table(const GreenSequence& h,
                                  const PartitionTable& table, Exec exec) {
  const int N = h.truncation();
  std::vector<TreeTerms> t(slot(N) + 1);
  for_each_index(slot(N), exec, [&](int i) {
    t[i + 1] = tree_terms(h, index_of_slot(i + 1), table);
  });
  return t;
}

}  // namespace kernels
}  // namespace phi4
