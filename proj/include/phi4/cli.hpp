#ifndef PHI4_CLI_HPP
#define PHI4_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace phi4 {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailed = 2;

// args[0] is the program name.  Returns 0 on success, 1 on usage errors,
// 2 on non-convergence or failed checks.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace phi4

#endif
