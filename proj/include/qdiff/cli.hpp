/*
   Copyright 2026 The qdiff authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef QDIFF_CLI_HPP
#define QDIFF_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qdiff {

inline constexpr const char* kToolVersion = "0.1.0";

/// Command-line entry point; args exclude the program name.  Returns the
/// process exit code: 0 on success, 1 on domain/parse errors, 2 on usage
/// errors.  Scans with bad primes still exit 0 and list them.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdiff

#endif
